#pragma once

#include <chrono>
#include <cstddef>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ldi {

enum class BackendKind { kMock, kRemoteChat };

struct BackendConfig {
  BackendKind kind = BackendKind::kMock;
  std::string endpoint = "https://api.openai.com/v1/chat/completions";
  std::string model = "gpt-4o-mini";
  std::string api_key_env = "OPENAI_API_KEY";
  double temperature = 0.0;
  int max_retries = 3;
  std::chrono::milliseconds timeout{30000};
  double rate_limit = 0.0;  // requests per second, 0 = unlimited
  std::chrono::milliseconds backoff_base{500};
};

const char* to_string(BackendKind kind) noexcept;
BackendKind parse_backend_kind(std::string_view text);

struct Completion {
  std::string text;
  int retries = 0;
  double latency_ms = 0.0;  // transport time; 0 for the in-process mock
};

/// A completion service. Implementations must tolerate concurrent calls.
class Backend {
 public:
  virtual ~Backend() = default;
  virtual Completion complete(const std::string& prompt) = 0;
};

/// Offline test double. For each example, sums the lengths of the maximal
/// common substrings (>= 3 characters) between its attribute values and the
/// query's; answers with the target of the highest-scoring example (first
/// wins ties). Not a model of any real LLM.
class MockBackend : public Backend {
 public:
  static constexpr std::size_t kMinShared = 3;
  Completion complete(const std::string& prompt) override;
};

/// Total length of the distinct maximal common substrings of a and b with
/// at least min_length characters, after dropping any that is contained in
/// another one.
std::size_t shared_substring_length(std::string_view a, std::string_view b,
                                    std::size_t min_length = MockBackend::kMinShared);

/// Pure function behind MockBackend. Throws OracleMissError when the prompt
/// has no examples or cannot be parsed.
std::string mock_answer(std::string_view prompt);

struct HttpResponse {
  int status = 0;  // 0 = no response (timeout, connection failure)
  std::string body;
  std::string error;
};

using HttpHeaders = std::vector<std::pair<std::string, std::string>>;

class HttpTransport {
 public:
  virtual ~HttpTransport() = default;
  virtual HttpResponse post(const std::string& url, const HttpHeaders& headers,
                            const std::string& body, std::chrono::milliseconds timeout) = 0;
};

/// cpp-httplib backed transport; https:// needs the OpenSSL build.
std::shared_ptr<HttpTransport> make_http_transport();

/// Spaces calls at least 1/rate seconds apart across all callers.
class RateLimiter {
 public:
  explicit RateLimiter(double requests_per_second);
  void acquire();

 private:
  std::mutex mutex_;
  std::chrono::steady_clock::duration interval_{0};
  std::chrono::steady_clock::time_point next_{};
};

/// Chat-completion client: {model, temperature, messages:[{role:"user",
/// content}]}. Timeouts, 408, 429 and 5xx are retried with exponential
/// backoff; 401/403 raise ConfigError immediately.
class RemoteChatBackend : public Backend {
 public:
  using Sleeper = std::function<void(std::chrono::milliseconds)>;

  explicit RemoteChatBackend(BackendConfig config,
                             std::shared_ptr<HttpTransport> transport = make_http_transport(),
                             Sleeper sleeper = {});

  Completion complete(const std::string& prompt) override;

  static std::string request_body(const BackendConfig& config, const std::string& prompt);

 private:
  BackendConfig config_;
  std::string api_key_;
  std::shared_ptr<HttpTransport> transport_;
  Sleeper sleeper_;
  RateLimiter limiter_;
};

std::unique_ptr<Backend> make_backend(const BackendConfig& config);

/// Trims whitespace and surrounding quotes, drops a leading "Label:" echo,
/// and collapses internal whitespace. Case is preserved.
std::string normalize_answer(std::string_view raw);

}  // namespace ldi
