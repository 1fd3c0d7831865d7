#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace docforge {

// A token found in rendered text; [begin, end) indexes the scanned string.
struct TextToken {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::string text;
};

// Absolute http(s) URLs, possibly carrying parameter markers ({} [] () <>)
// or ':'-prefixed segments in the path. Trailing sentence punctuation is
// trimmed, as is a closing bracket with no opener inside the token.
std::vector<TextToken> scan_absolute_urls(std::string_view text);

// Relative path mentions: a "/" not preceded by a host-like character, then
// one or more segments. Positions inside absolute URLs never qualify.
std::vector<TextToken> scan_relative_paths(std::string_view text);

bool is_marker_char(char c);
bool contains_marker(std::string_view text);

}  // namespace docforge
