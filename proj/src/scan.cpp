#include "docforge/scan.hpp"

#include <algorithm>
#include <cctype>

#include "docforge/url.hpp"

namespace docforge {
namespace {

bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

bool is_url_char(char c) {
  if (is_alnum(c)) return true;
  switch (c) {
    case '-': case '.': case '_': case '~': case ':': case '/': case '?': case '#':
    case '[': case ']': case '@': case '!': case '$': case '&': case '\'': case '(':
    case ')': case '*': case '+': case ',': case ';': case '=': case '%': case '{':
    case '}': case '<': case '>':
      return true;
    default:
      return false;
  }
}

bool is_segment_char(char c) {
  if (is_alnum(c)) return true;
  switch (c) {
    case '-': case '.': case '_': case '~': case '!': case '$': case '&': case '\'':
    case '*': case '+': case ',': case ';': case '=': case ':': case '@': case '%':
    case '{': case '}': case '[': case ']': case '(': case ')': case '<': case '>':
      return true;
    default:
      return false;
  }
}

// Characters that make a following "/" part of something else (a host, a
// word, a date, a closing tag) rather than the start of a path mention.
bool blocks_relative_start(char c) {
  if (is_alnum(c)) return true;
  switch (c) {
    case '-': case '_': case '.': case '~': case ':': case '/': case '%': case '@':
    case '<': case '\\':
      return true;
    default:
      return false;
  }
}

char opener_for(char closer) {
  switch (closer) {
    case ')': return '(';
    case ']': return '[';
    case '}': return '{';
    case '>': return '<';
    default: return 0;
  }
}

// Shrinks `end` past trailing punctuation and unbalanced closing brackets.
std::size_t trim_token_end(std::string_view text, std::size_t begin, std::size_t end) {
  while (end > begin) {
    char last = text[end - 1];
    if (last == '.' || last == ',' || last == ';' || last == ':' || last == '!' || last == '?' ||
        last == '\'' || last == '"' || last == '*') {
      --end;
      continue;
    }
    if (char open = opener_for(last)) {
      auto token = text.substr(begin, end - begin);
      auto opens = std::count(token.begin(), token.end(), open);
      auto closes = std::count(token.begin(), token.end(), last);
      if (closes > opens) {
        --end;
        continue;
      }
    }
    break;
  }
  return end;
}

bool istarts_with(std::string_view text, std::size_t pos, std::string_view prefix) {
  if (text.size() - pos < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(text[pos + i])) != prefix[i]) return false;
  }
  return true;
}

struct RawSpan {
  std::size_t begin;
  std::size_t end;  // untrimmed
};

std::vector<RawSpan> absolute_spans(std::string_view text) {
  std::vector<RawSpan> spans;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto h = text.find_first_of("hH", pos);
    if (h == std::string_view::npos) break;
    std::size_t scheme_len = 0;
    if (istarts_with(text, h, "https://")) {
      scheme_len = 8;
    } else if (istarts_with(text, h, "http://")) {
      scheme_len = 7;
    }
    if (scheme_len == 0) {
      pos = h + 1;
      continue;
    }
    std::size_t end = h + scheme_len;
    while (end < text.size() && is_url_char(text[end])) ++end;
    spans.push_back({h, end});
    pos = end;
  }
  return spans;
}

}  // namespace

bool is_marker_char(char c) {
  return c == '{' || c == '}' || c == '[' || c == ']' || c == '(' || c == ')' || c == '<' || c == '>';
}

bool contains_marker(std::string_view text) {
  return std::any_of(text.begin(), text.end(), is_marker_char);
}

std::vector<TextToken> scan_absolute_urls(std::string_view text) {
  std::vector<TextToken> out;
  for (auto span : absolute_spans(text)) {
    std::size_t end = trim_token_end(text, span.begin, span.end);
    auto token = text.substr(span.begin, end - span.begin);
    auto parsed = parse_url(token);
    if (!parsed || parsed->scheme == "file") continue;
    out.push_back({span.begin, end, std::string(token)});
  }
  return out;
}

std::vector<TextToken> scan_relative_paths(std::string_view text) {
  std::vector<TextToken> out;
  auto blocked = absolute_spans(text);
  std::size_t next_block = 0;

  std::size_t pos = 0;
  while (pos < text.size()) {
    auto slash = text.find('/', pos);
    if (slash == std::string_view::npos) break;
    while (next_block < blocked.size() && blocked[next_block].end <= slash) ++next_block;
    if (next_block < blocked.size() && blocked[next_block].begin <= slash) {
      pos = blocked[next_block].end;
      continue;
    }
    if (slash > 0 && blocks_relative_start(text[slash - 1])) {
      pos = slash + 1;
      continue;
    }

    std::size_t end = slash;
    bool double_slash = false;
    while (end < text.size() && text[end] == '/') {
      if (end + 1 < text.size() && text[end + 1] == '/') {
        double_slash = true;
        break;
      }
      std::size_t seg = end + 1;
      while (seg < text.size() && is_segment_char(text[seg])) ++seg;
      if (seg == end + 1) {
        end = seg;  // trailing "/"
        break;
      }
      end = seg;
    }
    if (double_slash && end == slash) {
      // protocol-relative "//host/..." is not a path mention
      auto skip = slash;
      while (skip < text.size() && (text[skip] == '/' || is_segment_char(text[skip]))) ++skip;
      pos = skip;
      continue;
    }
    // Keep a query or fragment attached so trimming sees the whole token.
    if (!double_slash && end < text.size() && (text[end] == '?' || text[end] == '#')) {
      while (end < text.size() && is_url_char(text[end])) ++end;
    }
    std::size_t trimmed = trim_token_end(text, slash, end);
    auto token = text.substr(slash, trimmed - slash);
    auto path = strip_query_and_fragment(token);
    auto segments = split_path(path);
    bool meaningful = !segments.empty() &&
                      std::any_of(segments.front().begin(), segments.front().end(),
                                  [](char c) { return is_alnum(c) || is_marker_char(c); });
    if (meaningful) out.push_back({slash, trimmed, std::string(token)});
    pos = std::max(end, slash + 1);
  }
  return out;
}

}  // namespace docforge
