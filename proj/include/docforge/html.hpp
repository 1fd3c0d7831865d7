#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace docforge::html {

using NodeId = std::size_t;

enum class NodeKind { Document, Element, Text };

struct Node {
  NodeKind kind = NodeKind::Element;
  std::string tag;  // lowercase element name, "#document" or "#text"
  std::vector<std::pair<std::string, std::string>> attributes;
  std::string text;  // Text nodes only, entities decoded
  std::optional<NodeId> parent;
  std::vector<NodeId> children;
};

// Error-tolerant HTML tree. Node ids are preorder positions; id 0 is the
// document root.
//
// Rendered text is the concatenation of text nodes with <script> and <style>
// subtrees removed. A newline is inserted at block-level element boundaries
// (p, div, li, td, ...) so that adjacent table cells or paragraphs do not
// fuse into one token. Each node's rendered text is a substring of the
// document's rendered text.
class Document {
 public:
  static Document parse(std::string_view html);

  std::size_t size() const { return nodes_.size(); }
  const Node& node(NodeId id) const { return nodes_.at(id); }
  static constexpr NodeId root() { return 0; }

  std::string_view rendered_text() const { return text_; }
  std::string_view rendered_text(NodeId id) const;
  std::size_t text_begin(NodeId id) const { return spans_.at(id).first; }
  std::size_t text_end(NodeId id) const { return spans_.at(id).second; }

  // True iff `ancestor` is a proper ancestor of `node`.
  bool is_ancestor(NodeId ancestor, NodeId node) const {
    return ancestor < node && node < subtree_end_.at(ancestor);
  }
  bool is_ancestor_or_self(NodeId ancestor, NodeId node) const {
    return ancestor == node || is_ancestor(ancestor, node);
  }

  std::optional<std::string_view> attribute(NodeId id, std::string_view name) const;

  // The text node whose rendered text covers `offset`, if any.
  std::optional<NodeId> text_node_at(std::size_t offset) const;

  // Deepest element whose rendered text covers [begin, end).
  NodeId deepest_covering_element(std::size_t begin, std::size_t end) const;

  // Position of `id` among its parent's children.
  std::size_t child_index(NodeId id) const;

  bool has_ancestor_tag(NodeId id, std::string_view tag) const;

 private:
  void finish();

  std::vector<Node> nodes_;
  std::vector<NodeId> subtree_end_;
  std::vector<std::pair<std::size_t, std::size_t>> spans_;
  std::vector<std::pair<std::size_t, NodeId>> text_runs_;  // (start offset, text node)
  std::string text_;
};

std::string decode_entities(std::string_view text);

}  // namespace docforge::html
