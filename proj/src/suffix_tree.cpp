#include "ldi/suffix_tree.hpp"

#include <algorithm>

#include "ldi/errors.hpp"

namespace ldi {

GeneralizedSuffixTree::GeneralizedSuffixTree(std::span<const std::u32string> documents) {
  std::size_t total = documents.size();
  for (const auto& d : documents) total += d.size();
  if (total >= static_cast<std::size_t>(INT32_MAX / 2)) {
    throw InvalidArgument("document set too large for a 32-bit suffix tree");
  }
  text_.reserve(total);
  doc_start_.reserve(documents.size());
  doc_end_.reserve(documents.size());
  for (std::size_t i = 0; i < documents.size(); ++i) {
    doc_start_.push_back(static_cast<std::int32_t>(text_.size()));
    for (char32_t ch : documents[i]) {
      if (is_terminator(static_cast<std::uint32_t>(ch))) {
        throw InvalidArgument("document " + std::to_string(i) +
                              " contains a value outside the Unicode range");
      }
      text_.push_back(static_cast<std::uint32_t>(ch));
    }
    doc_end_.push_back(static_cast<std::int32_t>(text_.size()));
    text_.push_back(kTerminatorBase + static_cast<std::uint32_t>(i));
  }
  nodes_.reserve(2 * text_.size() + 1);
  build();
  finalize();
}

std::int32_t GeneralizedSuffixTree::new_node(std::int32_t start, std::int32_t end) {
  Node n;
  n.start = start;
  n.end = end;
  n.link = 0;
  nodes_.push_back(n);
  return static_cast<std::int32_t>(nodes_.size() - 1);
}

std::int32_t GeneralizedSuffixTree::find_child(std::int32_t node, std::uint32_t symbol) const {
  if (is_terminator(symbol)) return kNone;
  for (std::int32_t c = nodes_[node].first_child; c != kNone; c = nodes_[c].next_sibling) {
    if (text_[nodes_[c].start] == symbol) return c;
  }
  return kNone;
}

void GeneralizedSuffixTree::attach(std::int32_t parent, std::int32_t child) {
  Node& p = nodes_[parent];
  Node& c = nodes_[child];
  c.parent = parent;
  if (is_terminator(text_[c.start])) {
    c.next_sibling = p.first_terminal;
    p.first_terminal = child;
  } else {
    c.next_sibling = p.first_child;
    p.first_child = child;
  }
}

void GeneralizedSuffixTree::replace_child(std::int32_t parent, std::int32_t old_child,
                                          std::int32_t new_child) {
  // old_child starts with a text symbol, so it lives in the regular chain.
  std::int32_t* slot = &nodes_[parent].first_child;
  while (*slot != old_child) slot = &nodes_[*slot].next_sibling;
  nodes_[new_child].next_sibling = nodes_[old_child].next_sibling;
  nodes_[new_child].parent = parent;
  *slot = new_child;
}

std::int32_t GeneralizedSuffixTree::edge_length(std::int32_t id, std::int32_t position) const {
  const Node& n = nodes_[id];
  return std::min(n.end, position + 1) - n.start;
}

void GeneralizedSuffixTree::build() {
  const std::int32_t root = new_node(0, 0);
  std::int32_t active_node = root;
  std::int32_t active_edge = 0;
  std::int32_t active_length = 0;
  std::int32_t remainder = 0;

  const auto n = static_cast<std::int32_t>(text_.size());
  for (std::int32_t i = 0; i < n; ++i) {
    const std::uint32_t symbol = text_[i];
    ++remainder;
    std::int32_t pending_link = kNone;
    while (remainder > 0) {
      if (active_length == 0) active_edge = i;
      const std::int32_t next = find_child(active_node, text_[active_edge]);
      if (next == kNone) {
        attach(active_node, new_node(i, kLeafEnd));
        if (pending_link != kNone) {
          nodes_[pending_link].link = active_node;
          pending_link = kNone;
        }
      } else {
        const std::int32_t len = edge_length(next, i);
        if (active_length >= len) {
          // skip/count down the edge
          active_edge += len;
          active_length -= len;
          active_node = next;
          continue;
        }
        if (text_[nodes_[next].start + active_length] == symbol) {
          if (pending_link != kNone && active_node != root) {
            nodes_[pending_link].link = active_node;
            pending_link = kNone;
          }
          ++active_length;
          break;
        }
        const std::int32_t split = new_node(nodes_[next].start, nodes_[next].start + active_length);
        replace_child(active_node, next, split);
        nodes_[next].start += active_length;
        attach(split, next);
        attach(split, new_node(i, kLeafEnd));
        if (pending_link != kNone) nodes_[pending_link].link = split;
        pending_link = split;
      }
      --remainder;
      if (active_node == root && active_length > 0) {
        --active_length;
        active_edge = i - remainder + 1;
      } else if (active_node != root) {
        active_node = nodes_[active_node].link;
      }
    }
  }
}

void GeneralizedSuffixTree::finalize() {
  const auto n = static_cast<std::int32_t>(text_.size());
  for (auto& node : nodes_) {
    if (node.end == kLeafEnd) node.end = n;
  }
  // string depths, top-down
  std::vector<std::int32_t> stack{root()};
  nodes_[0].depth = 0;
  while (!stack.empty()) {
    std::int32_t id = stack.back();
    stack.pop_back();
    for (std::int32_t chain : {nodes_[id].first_child, nodes_[id].first_terminal}) {
      for (std::int32_t c = chain; c != kNone; c = nodes_[c].next_sibling) {
        nodes_[c].depth = nodes_[id].depth + (nodes_[c].end - nodes_[c].start);
        stack.push_back(c);
      }
    }
  }
}

std::int32_t GeneralizedSuffixTree::label_start(std::int32_t id) const {
  const Node& n = nodes_[id];
  return n.end - n.depth;
}

std::uint32_t GeneralizedSuffixTree::leaf_document(std::int32_t leaf) const {
  const std::int32_t pos = label_start(leaf);
  auto it = std::upper_bound(doc_start_.begin(), doc_start_.end(), pos);
  return static_cast<std::uint32_t>((it - doc_start_.begin()) - 1);
}

std::int32_t GeneralizedSuffixTree::leaf_text_length(std::int32_t leaf) const {
  const std::int32_t pos = label_start(leaf);
  return doc_end_[leaf_document(leaf)] - pos;
}

std::vector<std::int32_t> GeneralizedSuffixTree::postorder() const {
  std::vector<std::int32_t> order;
  order.reserve(nodes_.size());
  std::vector<std::int32_t> stack{root()};
  while (!stack.empty()) {
    std::int32_t id = stack.back();
    stack.pop_back();
    order.push_back(id);
    for (std::int32_t chain : {nodes_[id].first_child, nodes_[id].first_terminal}) {
      for (std::int32_t c = chain; c != kNone; c = nodes_[c].next_sibling) stack.push_back(c);
    }
  }
  std::reverse(order.begin(), order.end());
  return order;
}

bool GeneralizedSuffixTree::contains(std::u32string_view pattern) const {
  std::int32_t node = root();
  std::size_t matched = 0;
  while (matched < pattern.size()) {
    const std::int32_t child = find_child(node, static_cast<std::uint32_t>(pattern[matched]));
    if (child == kNone) return false;
    const Node& c = nodes_[child];
    for (std::int32_t p = c.start; p < c.end && matched < pattern.size(); ++p, ++matched) {
      if (text_[p] != static_cast<std::uint32_t>(pattern[matched])) return false;
    }
    node = child;
  }
  return true;
}

}  // namespace ldi
