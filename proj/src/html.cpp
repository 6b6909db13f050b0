#include "sqkit/html.hpp"

#include <array>
#include <cctype>

#include "sqkit/text.hpp"

namespace sqkit::html {

namespace {

bool is_void_element(std::string_view name) {
  static const std::array<std::string_view, 14> kVoid = {
      "area", "base", "br",    "col",    "embed",  "hr",  "img",
      "input", "link", "meta", "param", "source", "track", "wbr"};
  for (auto v : kVoid) {
    if (name == v) return true;
  }
  return false;
}

bool is_raw_text_element(std::string_view name) {
  return name == "script" || name == "style";
}

// Elements whose start tag implicitly closes an open <p>.
bool closes_paragraph(std::string_view name) {
  static const std::array<std::string_view, 26> kBlock = {
      "address", "article", "aside", "blockquote", "div",  "dl",
      "fieldset", "figcaption", "figure", "footer", "form", "h1",
      "h2",       "h3",      "h4",    "h5",         "h6",   "header",
      "hr",       "main",    "nav",   "ol",         "p",    "pre",
      "section",  "ul"};
  for (auto v : kBlock) {
    if (name == v) return true;
  }
  return false;
}

bool is_letter(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

struct NamedEntity {
  std::string_view name;
  std::string_view utf8;
};

constexpr std::array<NamedEntity, 10> kEntities = {{
    {"amp", "&"},
    {"lt", "<"},
    {"gt", ">"},
    {"quot", "\""},
    {"apos", "'"},
    {"nbsp", "\xC2\xA0"},
    {"mdash", "\xE2\x80\x94"},
    {"ndash", "\xE2\x80\x93"},
    {"hellip", "\xE2\x80\xA6"},
    {"copy", "\xC2\xA9"},
}};

void append_codepoint(std::string& out, uint32_t cp) {
  if (cp == 0 || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) cp = 0xFFFD;
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  std::unique_ptr<Node> run() {
    auto root = std::make_unique<Node>();
    root->kind = NodeKind::Document;
    stack_.push_back(root.get());

    while (pos_ < src_.size()) {
      if (src_[pos_] == '<') {
        if (!handle_markup()) {
          // Not recognizable markup: emit "<" literally.
          text_.push_back('<');
          ++pos_;
        }
      } else {
        size_t next = src_.find('<', pos_);
        if (next == std::string_view::npos) next = src_.size();
        text_.append(src_.substr(pos_, next - pos_));
        pos_ = next;
      }
    }
    flush_text();
    return root;
  }

 private:
  Node* top() { return stack_.back(); }

  void flush_text() {
    if (text_.empty()) return;
    auto node = std::make_unique<Node>();
    node->kind = NodeKind::Text;
    node->data = decode_entities(text_);
    node->parent = top();
    top()->children.push_back(std::move(node));
    text_.clear();
  }

  void append_comment(std::string_view data) {
    flush_text();
    auto node = std::make_unique<Node>();
    node->kind = NodeKind::Comment;
    node->data = std::string(data);
    node->parent = top();
    top()->children.push_back(std::move(node));
  }

  // Returns false if src_[pos_] == '<' does not start recognizable markup.
  bool handle_markup() {
    if (pos_ + 1 >= src_.size()) return false;
    char next = src_[pos_ + 1];
    if (next == '!') {
      if (src_.compare(pos_, 4, "<!--") == 0) {
        size_t end = src_.find("-->", pos_ + 4);
        size_t data_end = end == std::string_view::npos ? src_.size() : end;
        append_comment(src_.substr(pos_ + 4, data_end - pos_ - 4));
        pos_ = end == std::string_view::npos ? src_.size() : end + 3;
      } else {
        // Doctype or bogus declaration: swallow to ">".
        size_t end = src_.find('>', pos_);
        pos_ = end == std::string_view::npos ? src_.size() : end + 1;
      }
      return true;
    }
    if (next == '/') {
      size_t p = pos_ + 2;
      if (p >= src_.size() || !is_letter(src_[p])) return false;
      size_t name_start = p;
      while (p < src_.size() && src_[p] != '>' && !std::isspace(static_cast<unsigned char>(src_[p]))) ++p;
      std::string name = to_lower(src_.substr(name_start, p - name_start));
      size_t end = src_.find('>', p);
      pos_ = end == std::string_view::npos ? src_.size() : end + 1;
      handle_end_tag(name);
      return true;
    }
    if (!is_letter(next)) return false;
    return handle_start_tag();
  }

  bool handle_start_tag() {
    size_t p = pos_ + 1;
    size_t name_start = p;
    while (p < src_.size() && (is_letter(src_[p]) || std::isdigit(static_cast<unsigned char>(src_[p])) ||
                               src_[p] == '-' || src_[p] == ':')) {
      ++p;
    }
    std::string name = to_lower(src_.substr(name_start, p - name_start));
    if (name.empty()) return false;

    std::vector<std::pair<std::string, std::string>> attrs;
    bool self_closing = false;
    while (p < src_.size() && src_[p] != '>') {
      while (p < src_.size() && std::isspace(static_cast<unsigned char>(src_[p]))) ++p;
      if (p < src_.size() && src_[p] == '/') {
        self_closing = true;
        ++p;
        continue;
      }
      if (p >= src_.size() || src_[p] == '>') break;
      size_t attr_start = p;
      while (p < src_.size() && src_[p] != '=' && src_[p] != '>' && src_[p] != '/' &&
             !std::isspace(static_cast<unsigned char>(src_[p]))) {
        ++p;
      }
      std::string attr_name = to_lower(src_.substr(attr_start, p - attr_start));
      std::string attr_value;
      if (p < src_.size() && src_[p] == '=') {
        ++p;
        while (p < src_.size() && std::isspace(static_cast<unsigned char>(src_[p]))) ++p;
        if (p < src_.size() && (src_[p] == '"' || src_[p] == '\'')) {
          char quote = src_[p++];
          size_t value_start = p;
          while (p < src_.size() && src_[p] != quote) ++p;
          attr_value = decode_entities(src_.substr(value_start, p - value_start));
          if (p < src_.size()) ++p;
        } else {
          size_t value_start = p;
          while (p < src_.size() && src_[p] != '>' &&
                 !std::isspace(static_cast<unsigned char>(src_[p]))) {
            ++p;
          }
          attr_value = decode_entities(src_.substr(value_start, p - value_start));
        }
      }
      if (!attr_name.empty()) attrs.emplace_back(std::move(attr_name), std::move(attr_value));
    }
    pos_ = p < src_.size() ? p + 1 : src_.size();

    flush_text();
    apply_implied_end_tags(name);

    auto node = std::make_unique<Node>();
    node->kind = NodeKind::Element;
    node->name = name;
    node->attrs = std::move(attrs);
    node->parent = top();
    Node* raw = node.get();
    top()->children.push_back(std::move(node));

    if (is_raw_text_element(name)) {
      consume_raw_text(*raw, name);
      return true;
    }
    if (!self_closing && !is_void_element(name)) stack_.push_back(raw);
    return true;
  }

  void consume_raw_text(Node& element, const std::string& name) {
    std::string closer = "</" + name;
    size_t end = pos_;
    while (end < src_.size()) {
      size_t candidate = src_.find('<', end);
      if (candidate == std::string_view::npos) {
        end = src_.size();
        break;
      }
      if (candidate + closer.size() <= src_.size() &&
          to_lower(src_.substr(candidate, closer.size())) == closer) {
        end = candidate;
        break;
      }
      end = candidate + 1;
    }
    if (end > pos_) {
      auto text = std::make_unique<Node>();
      text->kind = NodeKind::Text;
      text->data = std::string(src_.substr(pos_, end - pos_));
      text->parent = &element;
      element.children.push_back(std::move(text));
    }
    size_t close_end = src_.find('>', end);
    pos_ = close_end == std::string_view::npos ? src_.size() : close_end + 1;
  }

  void apply_implied_end_tags(const std::string& incoming) {
    const std::string& open = top()->name;
    if (top()->kind != NodeKind::Element) return;
    bool close = false;
    if (open == "p" && closes_paragraph(incoming)) close = true;
    if (open == "li" && incoming == "li") close = true;
    if ((open == "dt" || open == "dd") && (incoming == "dt" || incoming == "dd")) close = true;
    if (open == "option" && incoming == "option") close = true;
    if ((open == "td" || open == "th") &&
        (incoming == "td" || incoming == "th" || incoming == "tr")) {
      close = true;
    }
    if (open == "tr" && incoming == "tr") close = true;
    if (close) {
      stack_.pop_back();
      apply_implied_end_tags(incoming);  // e.g. td -> tr chains
    }
  }

  void handle_end_tag(const std::string& name) {
    flush_text();
    if (is_void_element(name)) return;  // stray </br> and friends
    for (size_t i = stack_.size(); i-- > 1;) {
      if (stack_[i]->name == name) {
        stack_.resize(i);
        return;
      }
    }
    // No matching open element: ignore.
  }

  std::string_view src_;
  size_t pos_ = 0;
  std::string text_;
  std::vector<Node*> stack_;
};

void assign_order(Node& node, int& counter) {
  node.order = counter++;
  for (auto& child : node.children) assign_order(*child, counter);
}

void collect_matches(const Node& node, std::string_view tag, std::string_view token,
                     std::vector<const Node*>& out) {
  if (node.kind == NodeKind::Element && node.name == tag && node.has_class_token(token)) {
    out.push_back(&node);
  }
  for (const auto& child : node.children) collect_matches(*child, tag, token, out);
}

const Node* find_first_named(const Node& node, std::string_view tag) {
  if (node.kind == NodeKind::Element && node.name == tag) return &node;
  for (const auto& child : node.children) {
    if (const Node* hit = find_first_named(*child, tag)) return hit;
  }
  return nullptr;
}

void gather_text(const Node& node, std::string& out) {
  if (node.kind == NodeKind::Comment) return;
  if (node.kind == NodeKind::Text) {
    out.append(node.data);
    return;
  }
  if (node.kind == NodeKind::Element &&
      (node.name == "script" || node.name == "style" || node.name == "template")) {
    return;
  }
  for (const auto& child : node.children) gather_text(*child, out);
}

}  // namespace

const std::string* Node::attr(std::string_view attr_name) const {
  for (const auto& [k, v] : attrs) {
    if (k == attr_name) return &v;
  }
  return nullptr;
}

bool Node::has_class_token(std::string_view token) const {
  const std::string* cls = attr("class");
  if (!cls) return false;
  for (const auto& t : split_on_any(*cls, " \t\r\n\f")) {
    if (t == token) return true;
  }
  return false;
}

bool Node::is_element(std::string_view element_name) const {
  return kind == NodeKind::Element && name == element_name;
}

int Node::index_in_parent() const {
  if (!parent) return -1;
  for (size_t i = 0; i < parent->children.size(); ++i) {
    if (parent->children[i].get() == this) return static_cast<int>(i);
  }
  return -1;
}

Document::Document() : root_(std::make_unique<Node>()) {
  root_->kind = NodeKind::Document;
}

std::vector<const Node*> Document::find_all(std::string_view tag_type,
                                            std::string_view tag_class) const {
  std::vector<const Node*> out;
  collect_matches(*root_, tag_type, tag_class, out);
  return out;
}

const Node* Document::find_first(std::string_view tag_type) const {
  return find_first_named(*root_, tag_type);
}

Document parse(std::string_view html_source) {
  Document doc;
  Parser parser(html_source);
  doc.root_ = parser.run();
  int counter = 0;
  assign_order(*doc.root_, counter);
  return doc;
}

std::string visible_text(const Node& node) {
  std::string raw;
  gather_text(node, raw);
  return collapse_whitespace(raw);
}

std::string decode_entities(std::string_view text) {
  size_t amp = text.find('&');
  if (amp == std::string_view::npos) return std::string(text);

  std::string out;
  out.reserve(text.size());
  size_t i = 0;
  while (i < text.size()) {
    if (text[i] != '&') {
      out.push_back(text[i++]);
      continue;
    }
    size_t semi = text.find(';', i + 1);
    if (semi == std::string_view::npos || semi - i > 12) {
      out.push_back(text[i++]);
      continue;
    }
    std::string_view body = text.substr(i + 1, semi - i - 1);
    if (!body.empty() && body[0] == '#') {
      uint32_t cp = 0;
      bool ok = body.size() > 1;
      if (body.size() > 2 && (body[1] == 'x' || body[1] == 'X')) {
        for (size_t k = 2; k < body.size() && ok; ++k) {
          char c = body[k];
          if (!std::isxdigit(static_cast<unsigned char>(c))) {
            ok = false;
          } else {
            cp = cp * 16 + (std::isdigit(static_cast<unsigned char>(c))
                                ? c - '0'
                                : std::tolower(c) - 'a' + 10);
          }
        }
      } else {
        for (size_t k = 1; k < body.size() && ok; ++k) {
          if (!std::isdigit(static_cast<unsigned char>(body[k]))) {
            ok = false;
          } else {
            cp = cp * 10 + (body[k] - '0');
          }
        }
      }
      if (ok) {
        append_codepoint(out, cp);
        i = semi + 1;
        continue;
      }
    } else {
      bool matched = false;
      for (const auto& entity : kEntities) {
        if (body == entity.name) {
          out.append(entity.utf8);
          matched = true;
          break;
        }
      }
      if (matched) {
        i = semi + 1;
        continue;
      }
    }
    out.push_back(text[i++]);  // unknown entity: keep literal
  }
  return out;
}

}  // namespace sqkit::html
