#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sqkit::html {

enum class NodeKind { Document, Element, Text, Comment };

// One DOM node. Elements own their children; parent pointers are stable for
// the lifetime of the owning Document.
struct Node {
  NodeKind kind = NodeKind::Document;
  std::string name;  // element name, lowercased
  std::vector<std::pair<std::string, std::string>> attrs;
  std::string data;  // text or comment payload (text is entity-decoded)

  Node* parent = nullptr;
  std::vector<std::unique_ptr<Node>> children;
  int order = 0;  // preorder position within the document

  const std::string* attr(std::string_view attr_name) const;
  // Whitespace-splits the class attribute and compares tokens case-sensitively.
  bool has_class_token(std::string_view token) const;
  bool is_element(std::string_view element_name) const;
  // Index of this node within parent->children, -1 for the root.
  int index_in_parent() const;
};

// Error-tolerant HTML document. Parsing never fails: malformed markup
// degrades to text or gets structurally repaired (unclosed tags, stray end
// tags, implied end tags for p/li/td/...).
class Document {
 public:
  Document();
  Document(Document&&) noexcept = default;
  Document& operator=(Document&&) noexcept = default;

  Node& root() { return *root_; }
  const Node& root() const { return *root_; }

  // All elements with the given name whose class attribute contains the
  // given token, in document order.
  std::vector<const Node*> find_all(std::string_view tag_type, std::string_view tag_class) const;

  // First element with the given name, document order.
  const Node* find_first(std::string_view tag_type) const;

 private:
  friend Document parse(std::string_view);
  std::unique_ptr<Node> root_;
};

Document parse(std::string_view html_source);

// Concatenated text of the subtree, skipping script/style/template subtrees
// and comments, whitespace-collapsed and trimmed.
std::string visible_text(const Node& node);

// Decodes the handful of common named entities plus numeric references.
std::string decode_entities(std::string_view text);

}  // namespace sqkit::html
