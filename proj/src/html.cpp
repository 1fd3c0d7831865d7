#include "docforge/html.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <unordered_map>
#include <unordered_set>

namespace docforge::html {
namespace {

const std::unordered_set<std::string_view> kVoidElements = {
    "area", "base", "br", "col", "embed", "hr", "img", "input",
    "link", "meta", "param", "source", "track", "wbr"};

// Elements whose start tag closes an open <p>.
const std::unordered_set<std::string_view> kClosesParagraph = {
    "address", "article", "aside", "blockquote", "details", "div", "dl", "fieldset",
    "figcaption", "figure", "footer", "form", "h1", "h2", "h3", "h4", "h5", "h6",
    "header", "hr", "main", "menu", "nav", "ol", "p", "pre", "section", "summary",
    "table", "ul", "li", "dd", "dt"};

const std::unordered_set<std::string_view> kBlockElements = {
    "address", "article", "aside", "blockquote", "body", "br", "caption", "dd",
    "details", "div", "dl", "dt", "fieldset", "figcaption", "figure", "footer",
    "form", "h1", "h2", "h3", "h4", "h5", "h6", "head", "header", "hr", "html",
    "li", "main", "nav", "ol", "option", "p", "pre", "section", "summary", "table",
    "tbody", "td", "tfoot", "th", "thead", "title", "tr", "ul"};

const std::unordered_set<std::string_view> kScopeBoundary = {
    "applet", "caption", "html", "table", "td", "th", "marquee", "object", "template"};

const std::unordered_map<std::string_view, std::string_view> kNamedEntities = {
    {"amp", "&"},       {"lt", "<"},        {"gt", ">"},        {"quot", "\""},
    {"apos", "'"},      {"nbsp", " "}, {"copy", "©"}, {"reg", "®"},
    {"trade", "™"}, {"mdash", "—"}, {"ndash", "–"}, {"hellip", "…"},
    {"lsquo", "‘"}, {"rsquo", "’"}, {"ldquo", "“"}, {"rdquo", "”"},
    {"laquo", "«"}, {"raquo", "»"}, {"bull", "•"}, {"middot", "·"},
    {"times", "×"}, {"divide", "÷"}, {"euro", "€"}, {"pound", "£"},
    {"yen", "¥"},   {"cent", "¢"}, {"sect", "§"}, {"para", "¶"},
    {"deg", "°"},   {"plusmn", "±"}, {"larr", "←"}, {"rarr", "→"},
    {"uarr", "↑"},  {"darr", "↓"}, {"lbrace", "{"},    {"rbrace", "}"},
    {"lcub", "{"},       {"rcub", "}"},     {"lsqb", "["},      {"rsqb", "]"},
    {"lpar", "("},       {"rpar", ")"},     {"colon", ":"},     {"sol", "/"},
    {"quest", "?"},      {"equals", "="},   {"num", "#"},       {"percnt", "%"},
    {"zwj", "‍"},   {"zwnj", "‌"}, {"shy", "­"}, {"thinsp", " "},
    {"ensp", " "},  {"emsp", " "}};

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp == 0 || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) cp = 0xFFFD;
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

bool is_name_char(char c) {
  auto u = static_cast<unsigned char>(c);
  return std::isalnum(u) || c == '-' || c == '_' || c == ':' || c == '.';
}

std::string to_lower_ascii(std::string_view text) {
  std::string out(text);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f'; }

bool is_heading(std::string_view tag) {
  return tag.size() == 2 && tag[0] == 'h' && tag[1] >= '1' && tag[1] <= '6';
}

std::size_t find_ci(std::string_view hay, std::string_view needle, std::size_t from) {
  if (needle.empty()) return from;
  for (std::size_t i = from; i + needle.size() <= hay.size(); ++i) {
    bool match = true;
    for (std::size_t j = 0; j < needle.size(); ++j) {
      if (std::tolower(static_cast<unsigned char>(hay[i + j])) != needle[j]) {
        match = false;
        break;
      }
    }
    if (match) return i;
  }
  return std::string_view::npos;
}

class TreeBuilder {
 public:
  TreeBuilder() {
    Node root;
    root.kind = NodeKind::Document;
    root.tag = "#document";
    nodes_.push_back(std::move(root));
    stack_.push_back(0);
  }

  void text(std::string value) {
    if (value.empty()) return;
    NodeId parent = stack_.back();
    auto& siblings = nodes_[parent].children;
    if (!siblings.empty() && nodes_[siblings.back()].kind == NodeKind::Text) {
      nodes_[siblings.back()].text += value;
      return;
    }
    Node n;
    n.kind = NodeKind::Text;
    n.tag = "#text";
    n.text = std::move(value);
    append(std::move(n));
  }

  void start(std::string tag, std::vector<std::pair<std::string, std::string>> attrs, bool self_closing) {
    apply_implied_end_tags(tag);
    Node n;
    n.kind = NodeKind::Element;
    n.tag = tag;
    n.attributes = std::move(attrs);
    NodeId id = append(std::move(n));
    if (!self_closing && !kVoidElements.contains(tag)) stack_.push_back(id);
  }

  void end(std::string_view tag) {
    if (tag == "br") {
      start("br", {}, true);
      return;
    }
    for (std::size_t i = stack_.size(); i-- > 1;) {
      if (nodes_[stack_[i]].tag == tag) {
        stack_.resize(i);
        return;
      }
      // An end tag never closes past a table cell or table it is not inside.
      if (kScopeBoundary.contains(nodes_[stack_[i]].tag) && tag != "table" && tag != "td" &&
          tag != "th" && tag != "caption" && tag != "tr" && tag != "tbody" && tag != "thead" &&
          tag != "tfoot") {
        return;
      }
    }
  }

  std::vector<Node> take() { return std::move(nodes_); }

 private:
  NodeId append(Node n) {
    NodeId id = nodes_.size();
    n.parent = stack_.back();
    nodes_[stack_.back()].children.push_back(id);
    nodes_.push_back(std::move(n));
    return id;
  }

  const std::string& current() const { return nodes_[stack_.back()].tag; }

  // Pops through the nearest open `target` unless a boundary element is hit
  // first. Returns whether anything was closed.
  bool close_in_scope(std::initializer_list<std::string_view> targets,
                      std::initializer_list<std::string_view> extra_boundaries) {
    for (std::size_t i = stack_.size(); i-- > 1;) {
      const auto& tag = nodes_[stack_[i]].tag;
      if (std::find(targets.begin(), targets.end(), tag) != targets.end()) {
        stack_.resize(i);
        return true;
      }
      if (kScopeBoundary.contains(tag) ||
          std::find(extra_boundaries.begin(), extra_boundaries.end(), tag) != extra_boundaries.end()) {
        return false;
      }
    }
    return false;
  }

  void apply_implied_end_tags(std::string_view tag) {
    if (kClosesParagraph.contains(tag)) close_in_scope({"p"}, {"button"});
    if (tag == "li") close_in_scope({"li"}, {"ol", "ul"});
    if (tag == "dt" || tag == "dd") close_in_scope({"dt", "dd"}, {"dl"});
    if (is_heading(tag) && is_heading(current())) stack_.pop_back();
    if (tag == "option" && current() == "option") stack_.pop_back();
    if (tag == "a") close_in_scope({"a"}, {});
    if (tag == "td" || tag == "th") close_cells_until({"tr", "table", "tbody", "thead", "tfoot"}, {"td", "th"});
    if (tag == "tr") close_cells_until({"table", "tbody", "thead", "tfoot"}, {"td", "th", "tr"});
    if (tag == "tbody" || tag == "thead" || tag == "tfoot") {
      close_cells_until({"table"}, {"td", "th", "tr", "tbody", "thead", "tfoot"});
    }
  }

  void close_cells_until(std::initializer_list<std::string_view> stop,
                         std::initializer_list<std::string_view> closable) {
    std::size_t keep = stack_.size();
    for (std::size_t i = stack_.size(); i-- > 1;) {
      const auto& t = nodes_[stack_[i]].tag;
      if (std::find(stop.begin(), stop.end(), t) != stop.end()) break;
      if (std::find(closable.begin(), closable.end(), t) != closable.end()) keep = i;
    }
    stack_.resize(keep);
  }

  std::vector<Node> nodes_;
  std::vector<NodeId> stack_;
};

void parse_into(std::string_view s, TreeBuilder& builder) {
  std::size_t pos = 0;
  std::string pending;
  auto flush = [&] {
    if (!pending.empty()) {
      builder.text(decode_entities(pending));
      pending.clear();
    }
  };

  while (pos < s.size()) {
    char c = s[pos];
    if (c != '<') {
      auto next = s.find('<', pos);
      if (next == std::string_view::npos) next = s.size();
      pending.append(s.substr(pos, next - pos));
      pos = next;
      continue;
    }
    if (s.substr(pos, 4) == "<!--") {
      flush();
      auto close = s.find("-->", pos + 4);
      pos = close == std::string_view::npos ? s.size() : close + 3;
      continue;
    }
    if (pos + 1 < s.size() && (s[pos + 1] == '!' || s[pos + 1] == '?')) {
      flush();
      auto close = s.find('>', pos);
      pos = close == std::string_view::npos ? s.size() : close + 1;
      continue;
    }
    bool is_end = pos + 1 < s.size() && s[pos + 1] == '/';
    std::size_t name_start = pos + (is_end ? 2 : 1);
    if (name_start >= s.size() || !std::isalpha(static_cast<unsigned char>(s[name_start]))) {
      pending += '<';
      ++pos;
      continue;
    }
    flush();
    std::size_t i = name_start;
    while (i < s.size() && is_name_char(s[i])) ++i;
    std::string tag = to_lower_ascii(s.substr(name_start, i - name_start));

    if (is_end) {
      auto close = s.find('>', i);
      pos = close == std::string_view::npos ? s.size() : close + 1;
      builder.end(tag);
      continue;
    }

    std::vector<std::pair<std::string, std::string>> attrs;
    bool self_closing = false;
    while (i < s.size() && s[i] != '>') {
      if (is_space(s[i])) {
        ++i;
        continue;
      }
      if (s[i] == '/') {
        self_closing = i + 1 < s.size() && s[i + 1] == '>';
        ++i;
        continue;
      }
      std::size_t an = i;
      while (i < s.size() && !is_space(s[i]) && s[i] != '=' && s[i] != '>' && s[i] != '/') ++i;
      if (i == an) {
        ++i;
        continue;
      }
      std::string name = to_lower_ascii(s.substr(an, i - an));
      while (i < s.size() && is_space(s[i])) ++i;
      std::string value;
      if (i < s.size() && s[i] == '=') {
        ++i;
        while (i < s.size() && is_space(s[i])) ++i;
        if (i < s.size() && (s[i] == '"' || s[i] == '\'')) {
          char q = s[i++];
          auto close = s.find(q, i);
          if (close == std::string_view::npos) close = s.size();
          value = decode_entities(s.substr(i, close - i));
          i = std::min(close + 1, s.size());
        } else {
          std::size_t vs = i;
          while (i < s.size() && !is_space(s[i]) && s[i] != '>') ++i;
          value = decode_entities(s.substr(vs, i - vs));
        }
      }
      attrs.emplace_back(std::move(name), std::move(value));
    }
    pos = i < s.size() ? i + 1 : s.size();

    bool raw = tag == "script" || tag == "style";
    bool rcdata = tag == "textarea" || tag == "title";
    builder.start(tag, std::move(attrs), self_closing);
    if ((raw || rcdata) && !self_closing) {
      std::string closer = "</" + tag;
      auto close = find_ci(s, closer, pos);
      if (close == std::string_view::npos) close = s.size();
      auto content = s.substr(pos, close - pos);
      builder.text(rcdata ? decode_entities(content) : std::string(content));
      builder.end(tag);
      auto gt = close == s.size() ? s.size() : s.find('>', close);
      pos = gt == std::string_view::npos ? s.size() : gt + 1;
    }
  }
  flush();
}

}  // namespace

std::string decode_entities(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] != '&') {
      out += text[i++];
      continue;
    }
    std::size_t j = i + 1;
    if (j < text.size() && text[j] == '#') {
      ++j;
      int base = 10;
      if (j < text.size() && (text[j] == 'x' || text[j] == 'X')) {
        base = 16;
        ++j;
      }
      std::size_t start = j;
      while (j < text.size() && std::isxdigit(static_cast<unsigned char>(text[j])) &&
             (base == 16 || std::isdigit(static_cast<unsigned char>(text[j])))) {
        ++j;
      }
      std::uint32_t cp = 0;
      if (j > start && j - start <= 8) {
        std::from_chars(text.data() + start, text.data() + j, cp, base);
        append_utf8(out, cp);
        if (j < text.size() && text[j] == ';') ++j;
        i = j;
        continue;
      }
      out += text[i++];
      continue;
    }
    while (j < text.size() && std::isalnum(static_cast<unsigned char>(text[j]))) ++j;
    auto name = text.substr(i + 1, j - i - 1);
    bool has_semicolon = j < text.size() && text[j] == ';';
    auto it = kNamedEntities.find(name);
    bool legacy = name == "amp" || name == "lt" || name == "gt" || name == "quot" || name == "nbsp";
    if (it != kNamedEntities.end() && (has_semicolon || legacy)) {
      out += it->second;
      i = has_semicolon ? j + 1 : j;
    } else {
      out += text[i++];
    }
  }
  return out;
}

Document Document::parse(std::string_view html) {
  TreeBuilder builder;
  parse_into(html, builder);
  Document doc;
  doc.nodes_ = builder.take();
  doc.finish();
  return doc;
}

void Document::finish() {
  const std::size_t n = nodes_.size();
  subtree_end_.assign(n, 0);
  for (std::size_t i = n; i-- > 0;) {
    std::size_t end = i + 1;
    for (auto child : nodes_[i].children) end = std::max(end, subtree_end_[child]);
    subtree_end_[i] = end;
  }

  spans_.assign(n, {0, 0});
  text_.clear();
  text_runs_.clear();
  auto separate = [this] {
    if (!text_.empty() && text_.back() != '\n') text_ += '\n';
  };
  std::vector<NodeId> open;
  std::size_t skip_begin = 0;
  std::size_t skip_until = 0;
  auto in_skipped = [&](NodeId id) { return skip_begin <= id && id < skip_until; };
  auto close_until = [&](std::size_t id) {
    while (!open.empty() && subtree_end_[open.back()] <= id) {
      NodeId top = open.back();
      open.pop_back();
      spans_[top].second = text_.size();
      if (kBlockElements.contains(nodes_[top].tag) && !in_skipped(top)) separate();
    }
  };
  for (NodeId id = 0; id < n; ++id) {
    close_until(id);
    const Node& node = nodes_[id];
    bool skipped = in_skipped(id);
    if (node.kind == NodeKind::Text) {
      spans_[id].first = text_.size();
      if (!skipped) {
        text_runs_.emplace_back(text_.size(), id);
        text_ += node.text;
      }
      spans_[id].second = text_.size();
      continue;
    }
    if (!skipped && (node.tag == "script" || node.tag == "style")) {
      skip_begin = id;
      skip_until = subtree_end_[id];
    }
    if (!skipped && kBlockElements.contains(node.tag)) separate();
    spans_[id].first = text_.size();
    open.push_back(id);
  }
  close_until(n);
}

std::string_view Document::rendered_text(NodeId id) const {
  auto [b, e] = spans_.at(id);
  return std::string_view(text_).substr(b, e - b);
}

std::optional<std::string_view> Document::attribute(NodeId id, std::string_view name) const {
  for (const auto& [k, v] : nodes_.at(id).attributes) {
    if (k == name) return std::string_view(v);
  }
  return std::nullopt;
}

std::optional<NodeId> Document::text_node_at(std::size_t offset) const {
  auto it = std::upper_bound(text_runs_.begin(), text_runs_.end(), offset,
                             [](std::size_t off, const auto& run) { return off < run.first; });
  if (it == text_runs_.begin()) return std::nullopt;
  --it;
  NodeId id = it->second;
  if (offset < spans_[id].second) return id;
  return std::nullopt;
}

NodeId Document::deepest_covering_element(std::size_t begin, std::size_t end) const {
  auto start = text_node_at(begin);
  NodeId id = start ? *start : root();
  if (nodes_[id].kind == NodeKind::Text) id = *nodes_[id].parent;
  while (id != root()) {
    if (spans_[id].first <= begin && end <= spans_[id].second) return id;
    id = *nodes_[id].parent;
  }
  return root();
}

std::size_t Document::child_index(NodeId id) const {
  const auto& parent = nodes_.at(id).parent;
  if (!parent) return 0;
  const auto& siblings = nodes_[*parent].children;
  return static_cast<std::size_t>(std::find(siblings.begin(), siblings.end(), id) - siblings.begin());
}

bool Document::has_ancestor_tag(NodeId id, std::string_view tag) const {
  auto p = nodes_.at(id).parent;
  while (p) {
    if (nodes_[*p].tag == tag) return true;
    p = nodes_[*p].parent;
  }
  return false;
}

}  // namespace docforge::html
