#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ldi {

/// Generalized suffix tree over a set of documents, built online with
/// Ukkonen's algorithm on the concatenation d_0 $_0 d_1 $_1 ... where every
/// terminator $_i is a distinct symbol above U+10FFFF (so no valid text can
/// collide with one).
///
/// Children are kept in two sibling chains per node: one for edges that start
/// with a text character (bounded by the alphabet) and one for edges that
/// start with a terminator. Terminators are unique, so a lookup by terminator
/// can never succeed and the second chain is never searched.
class GeneralizedSuffixTree {
 public:
  static constexpr std::uint32_t kTerminatorBase = 0x110000;
  static constexpr std::int32_t kNone = -1;

  struct Node {
    std::int32_t start = 0;          // edge label = text[start, end)
    std::int32_t end = 0;            // kLeafEnd for leaves during construction
    std::int32_t link = 0;           // suffix link (internal nodes)
    std::int32_t parent = kNone;
    std::int32_t first_child = kNone;
    std::int32_t first_terminal = kNone;
    std::int32_t next_sibling = kNone;
    std::int32_t depth = 0;          // string depth at the bottom of the edge
  };

  explicit GeneralizedSuffixTree(std::span<const std::u32string> documents);

  std::size_t num_documents() const noexcept { return doc_start_.size(); }
  std::size_t num_nodes() const noexcept { return nodes_.size(); }
  const Node& node(std::int32_t id) const { return nodes_[id]; }
  std::int32_t root() const noexcept { return 0; }
  bool is_leaf(std::int32_t id) const {
    const Node& n = nodes_[id];
    return n.first_child == kNone && n.first_terminal == kNone && id != 0;
  }

  const std::vector<std::uint32_t>& text() const noexcept { return text_; }

  /// For a leaf: the document its suffix belongs to.
  std::uint32_t leaf_document(std::int32_t leaf) const;
  /// For a leaf: the length of its suffix inside the document, terminator excluded.
  std::int32_t leaf_text_length(std::int32_t leaf) const;
  /// Text position where the path label of the node starts.
  std::int32_t label_start(std::int32_t id) const;

  /// Nodes in an order where every child precedes its parent.
  std::vector<std::int32_t> postorder() const;

  /// True if pattern occurs in some document (walks from the root).
  bool contains(std::u32string_view pattern) const;

  static bool is_terminator(std::uint32_t symbol) noexcept {
    return symbol >= kTerminatorBase;
  }

 private:
  static constexpr std::int32_t kLeafEnd = INT32_MAX;

  std::int32_t new_node(std::int32_t start, std::int32_t end);
  std::int32_t find_child(std::int32_t node, std::uint32_t symbol) const;
  void attach(std::int32_t parent, std::int32_t child);
  void replace_child(std::int32_t parent, std::int32_t old_child, std::int32_t new_child);
  std::int32_t edge_length(std::int32_t id, std::int32_t position) const;
  void build();
  void finalize();

  std::vector<std::uint32_t> text_;
  std::vector<std::int32_t> doc_start_;
  std::vector<std::int32_t> doc_end_;  // position of each document's terminator
  std::vector<Node> nodes_;
};

}  // namespace ldi
