#include "ldi/backend.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "ldi/errors.hpp"
#include "ldi/prompt.hpp"
#include "ldi/unicode.hpp"

namespace ldi {

const char* to_string(BackendKind kind) noexcept {
  return kind == BackendKind::kMock ? "mock" : "remote";
}

BackendKind parse_backend_kind(std::string_view text) {
  if (text == "mock") return BackendKind::kMock;
  if (text == "remote" || text == "remote-chat") return BackendKind::kRemoteChat;
  throw InvalidArgument("unknown backend: " + std::string(text));
}

// ---------------------------------------------------------------------------
// Mock

std::size_t shared_substring_length(std::string_view a, std::string_view b,
                                    std::size_t min_length) {
  const auto ua = utf8_decode(a);
  const auto ub = utf8_decode(b);
  if (ua.size() < min_length || ub.size() < min_length) return 0;

  std::set<std::u32string> runs;
  const auto na = static_cast<std::ptrdiff_t>(ua.size());
  const auto nb = static_cast<std::ptrdiff_t>(ub.size());
  for (std::ptrdiff_t offset = -(na - 1); offset < nb; ++offset) {
    std::ptrdiff_t i = offset < 0 ? -offset : 0;
    std::ptrdiff_t j = offset < 0 ? 0 : offset;
    std::ptrdiff_t run = 0;
    for (; i <= na && j <= nb; ++i, ++j) {
      const bool match = i < na && j < nb && ua[i] == ub[j];
      if (match) {
        ++run;
        continue;
      }
      if (run >= static_cast<std::ptrdiff_t>(min_length)) runs.insert(ua.substr(i - run, run));
      run = 0;
    }
  }

  std::vector<const std::u32string*> ordered;
  for (const auto& r : runs) ordered.push_back(&r);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const auto* x, const auto* y) { return x->size() > y->size(); });
  std::vector<const std::u32string*> kept;
  std::size_t total = 0;
  for (const auto* r : ordered) {
    const bool inside = std::any_of(kept.begin(), kept.end(), [&](const auto* longer) {
      return longer->size() > r->size() && longer->find(*r) != std::u32string::npos;
    });
    if (!inside) {
      kept.push_back(r);
      total += r->size();
    }
  }
  return total;
}

std::string mock_answer(std::string_view prompt) {
  ParsedPrompt parsed;
  try {
    parsed = parse_prompt(prompt);
  } catch (const ParseError& e) {
    throw OracleMissError(std::string("mock backend cannot parse prompt: ") + e.what());
  }
  if (parsed.examples.empty()) throw OracleMissError("mock backend needs at least one example");

  std::size_t best_total = 0;
  std::size_t best = 0;
  for (std::size_t e = 0; e < parsed.examples.size(); ++e) {
    std::size_t total = 0;
    for (const auto& pair : parsed.examples[e].pairs) {
      auto q = std::find_if(parsed.query.begin(), parsed.query.end(),
                            [&](const auto& qp) { return qp.attribute == pair.attribute; });
      if (q != parsed.query.end()) total += shared_substring_length(pair.value, q->value);
    }
    if (total > best_total) {
      best_total = total;
      best = e;
    }
  }
  return parsed.examples[best].target_value;
}

Completion MockBackend::complete(const std::string& prompt) {
  return Completion{mock_answer(prompt), 0, 0.0};
}

// ---------------------------------------------------------------------------
// HTTP transport

namespace {

class HttplibTransport : public HttpTransport {
 public:
  HttpResponse post(const std::string& url, const HttpHeaders& headers, const std::string& body,
                    std::chrono::milliseconds timeout) override {
    // split "scheme://host[:port]" from the path
    const std::size_t scheme_end = url.find("://");
    if (scheme_end == std::string::npos) throw ConfigError("endpoint must be an absolute URL: " + url);
    const std::size_t path_start = url.find('/', scheme_end + 3);
    const std::string origin = url.substr(0, path_start);
    const std::string path = path_start == std::string::npos ? "/" : url.substr(path_start);
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
    if (url.rfind("https://", 0) == 0) {
      throw ConfigError("this build has no TLS support; cannot reach " + origin);
    }
#endif
    httplib::Client client(origin);
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(timeout);
    const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(timeout - secs);
    client.set_connection_timeout(secs.count(), usecs.count());
    client.set_read_timeout(secs.count(), usecs.count());
    client.set_write_timeout(secs.count(), usecs.count());

    httplib::Headers h;
    for (const auto& [k, v] : headers) h.emplace(k, v);
    auto result = client.Post(path, h, body, "application/json");
    HttpResponse out;
    if (!result) {
      out.error = httplib::to_string(result.error());
      return out;
    }
    out.status = result->status;
    out.body = result->body;
    return out;
  }
};

bool is_transient(int status) {
  return status == 0 || status == 408 || status == 429 || (status >= 500 && status <= 599);
}

}  // namespace

std::shared_ptr<HttpTransport> make_http_transport() {
  return std::make_shared<HttplibTransport>();
}

RateLimiter::RateLimiter(double requests_per_second) {
  if (requests_per_second < 0.0) throw InvalidArgument("rate limit must be >= 0");
  if (requests_per_second > 0.0) {
    interval_ = std::chrono::duration_cast<std::chrono::steady_clock::duration>(
        std::chrono::duration<double>(1.0 / requests_per_second));
  }
}

void RateLimiter::acquire() {
  if (interval_.count() == 0) return;
  std::chrono::steady_clock::time_point slot;
  {
    std::lock_guard lock(mutex_);
    const auto now = std::chrono::steady_clock::now();
    slot = std::max(now, next_);
    next_ = slot + interval_;
  }
  std::this_thread::sleep_until(slot);
}

// ---------------------------------------------------------------------------
// Remote chat backend

RemoteChatBackend::RemoteChatBackend(BackendConfig config, std::shared_ptr<HttpTransport> transport,
                                     Sleeper sleeper)
    : config_(std::move(config)),
      transport_(std::move(transport)),
      sleeper_(std::move(sleeper)),
      limiter_(config_.rate_limit) {
  if (config_.temperature < 0.0) throw ConfigError("temperature must be >= 0");
  if (config_.max_retries < 0) throw ConfigError("max retries must be >= 0");
  const char* key = std::getenv(config_.api_key_env.c_str());
  if (key == nullptr || *key == '\0') {
    throw ConfigError("API key environment variable " + config_.api_key_env + " is not set");
  }
  api_key_ = key;
  if (!sleeper_) sleeper_ = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
}

std::string RemoteChatBackend::request_body(const BackendConfig& config, const std::string& prompt) {
  nlohmann::ordered_json body;
  body["model"] = config.model;
  body["temperature"] = config.temperature;
  body["messages"] = nlohmann::ordered_json::array(
      {nlohmann::ordered_json{{"role", "user"}, {"content", prompt}}});
  return body.dump();
}

Completion RemoteChatBackend::complete(const std::string& prompt) {
  const std::string body = request_body(config_, prompt);
  const HttpHeaders headers{{"Authorization", "Bearer " + api_key_}};
  int last_status = 0;
  std::string last_error;
  for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
    if (attempt > 0) {
      const auto delay = config_.backoff_base * (1LL << std::min(attempt - 1, 20));
      sleeper_(delay);
    }
    limiter_.acquire();
    const auto started = std::chrono::steady_clock::now();
    HttpResponse response = transport_->post(config_.endpoint, headers, body, config_.timeout);
    const double latency =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
    last_status = response.status;
    last_error = response.error.empty() ? response.body.substr(0, 200) : response.error;

    if (response.status == 401 || response.status == 403) {
      throw ConfigError("backend rejected the credentials (HTTP " + std::to_string(response.status) + ")");
    }
    if (response.status >= 200 && response.status < 300) {
      try {
        auto json = nlohmann::json::parse(response.body);
        std::string text = json.at("choices").at(0).at("message").at("content").get<std::string>();
        return Completion{std::move(text), attempt, latency};
      } catch (const nlohmann::json::exception& e) {
        throw TransportError(std::string("malformed completion response: ") + e.what(),
                             response.status, attempt);
      }
    }
    if (!is_transient(response.status)) {
      throw TransportError("backend request failed (HTTP " + std::to_string(response.status) +
                               "): " + last_error,
                           response.status, attempt);
    }
  }
  throw TransportError("backend retries exhausted after " + std::to_string(config_.max_retries) +
                           " retries (last status " + std::to_string(last_status) + "): " + last_error,
                       last_status, config_.max_retries);
}

std::unique_ptr<Backend> make_backend(const BackendConfig& config) {
  if (config.kind == BackendKind::kMock) return std::make_unique<MockBackend>();
  return std::make_unique<RemoteChatBackend>(config);
}

// ---------------------------------------------------------------------------
// Answer normalization

namespace {

bool is_space(char ch) { return ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r' || ch == '\f' || ch == '\v'; }

std::string_view trim_space(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::string_view strip_quotes(std::string_view s) {
  static constexpr std::pair<std::string_view, std::string_view> kPairs[] = {
      {"\"", "\""}, {"'", "'"}, {"`", "`"}, {"\xE2\x80\x9C", "\xE2\x80\x9D"}, {"\xE2\x80\x98", "\xE2\x80\x99"}};
  bool changed = true;
  while (changed) {
    changed = false;
    s = trim_space(s);
    for (const auto& [open, close] : kPairs) {
      if (s.size() >= open.size() + close.size() && s.substr(0, open.size()) == open &&
          s.substr(s.size() - close.size()) == close) {
        s = s.substr(open.size(), s.size() - open.size() - close.size());
        changed = true;
        break;
      }
    }
  }
  return s;
}

// "City: New York" -> "New York". The label must start with a letter, be at
// most 40 characters of letters/digits/space/_-./(), and be followed by ':'
// and whitespace, which leaves times ("12:30") and URLs alone.
std::string_view strip_label(std::string_view s) {
  const std::size_t colon = s.find(':');
  if (colon == 0 || colon == std::string_view::npos || colon > 40) return s;
  if (!std::isalpha(static_cast<unsigned char>(s.front()))) return s;
  for (std::size_t i = 0; i < colon; ++i) {
    const auto ch = static_cast<unsigned char>(s[i]);
    if (!(std::isalnum(ch) || ch == ' ' || ch == '_' || ch == '-' || ch == '.' || ch == '(' || ch == ')')) {
      return s;
    }
  }
  if (colon + 1 >= s.size() || !is_space(s[colon + 1])) return s;
  auto rest = trim_space(s.substr(colon + 1));
  return rest.empty() ? s : rest;
}

}  // namespace

std::string normalize_answer(std::string_view raw) {
  std::string_view s = strip_quotes(raw);
  s = strip_quotes(strip_label(s));
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (char ch : s) {
    if (is_space(ch)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(ch);
  }
  return out;
}

}  // namespace ldi
