#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace docforge {

// A parsed absolute URL. Only the pieces this tool needs are kept apart;
// the path keeps its raw spelling (parameter markers included).
struct Url {
  std::string scheme;  // lowercase
  std::string host;    // as written; see normalize()
  int port = -1;       // -1 when absent
  std::string path;    // begins with "/" or is empty
  std::string query;   // without the leading '?'
  std::string fragment;
  bool has_query = false;
  bool has_fragment = false;

  // host[:port]
  std::string authority() const;
  std::string to_string() const;
  // scheme://authority + path, no query or fragment.
  std::string without_query() const;
};

// Parses http, https and file URLs. Returns nullopt for anything else or
// when an http(s) URL has no host.
std::optional<Url> parse_url(std::string_view text);

// Lowercases the host, drops default ports (80/443) and a trailing "/".
Url normalize(Url url);

int default_port(std::string_view scheme);

// RFC 3986 reference resolution, enough for crawling: absolute, network-path,
// absolute-path and relative-path references. The fragment is dropped.
std::optional<std::string> resolve_reference(std::string_view base, std::string_view ref);

// Splits a path on "/" and drops empty segments.
std::vector<std::string> split_path(std::string_view path);

// Cuts at the first '?' or '#'.
std::string_view strip_query_and_fragment(std::string_view text);

std::string to_lower(std::string_view text);

bool starts_with_http_scheme(std::string_view text);

}  // namespace docforge
