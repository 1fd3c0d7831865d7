#include "docforge/url.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace docforge {
namespace {

bool iequals_prefix(std::string_view text, std::string_view prefix) {
  if (text.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(text[i])) != prefix[i]) return false;
  }
  return true;
}

bool valid_host(std::string_view host) {
  if (host.empty()) return false;
  return std::all_of(host.begin(), host.end(), [](char c) {
    auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || c == '-' || c == '.' || c == '_';
  });
}

std::string remove_dot_segments(std::string_view path) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  bool trailing_slash = !path.empty() && path.back() == '/';
  while (pos <= path.size()) {
    auto next = path.find('/', pos);
    if (next == std::string_view::npos) next = path.size();
    auto seg = path.substr(pos, next - pos);
    if (seg == "..") {
      if (!out.empty()) out.pop_back();
      trailing_slash = true;
    } else if (seg == ".") {
      trailing_slash = true;
    } else if (!seg.empty()) {
      out.push_back(seg);
      trailing_slash = false;
    }
    pos = next + 1;
  }
  if (!path.empty() && path.back() == '/') trailing_slash = true;
  std::string result;
  for (auto seg : out) {
    result += '/';
    result += seg;
  }
  if (trailing_slash || result.empty()) result += '/';
  return result;
}

}  // namespace

std::string to_lower(std::string_view text) {
  std::string out(text);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool starts_with_http_scheme(std::string_view text) {
  return iequals_prefix(text, "http://") || iequals_prefix(text, "https://");
}

int default_port(std::string_view scheme) {
  if (scheme == "http") return 80;
  if (scheme == "https") return 443;
  return -1;
}

std::string Url::authority() const {
  std::string out = host;
  if (port >= 0) {
    out += ':';
    out += std::to_string(port);
  }
  return out;
}

std::string Url::without_query() const {
  if (scheme == "file") return "file://" + path;
  return scheme + "://" + authority() + path;
}

std::string Url::to_string() const {
  std::string out = without_query();
  if (has_query) out += "?" + query;
  if (has_fragment) out += "#" + fragment;
  return out;
}

std::optional<Url> parse_url(std::string_view text) {
  Url url;
  std::string_view rest;
  if (iequals_prefix(text, "https://")) {
    url.scheme = "https";
    rest = text.substr(8);
  } else if (iequals_prefix(text, "http://")) {
    url.scheme = "http";
    rest = text.substr(7);
  } else if (iequals_prefix(text, "file:")) {
    url.scheme = "file";
    rest = text.substr(5);
    if (rest.starts_with("//")) rest.remove_prefix(2);
    // file URLs carry no host here; "file:///a" and "file:/a" both give "/a".
    if (!rest.starts_with('/')) {
      auto slash = rest.find('/');
      rest = slash == std::string_view::npos ? std::string_view{} : rest.substr(slash);
    }
  } else {
    return std::nullopt;
  }

  if (url.scheme != "file") {
    auto end = rest.find_first_of("/?#");
    if (end == std::string_view::npos) end = rest.size();
    std::string_view authority = rest.substr(0, end);
    rest.remove_prefix(end);
    if (auto at = authority.rfind('@'); at != std::string_view::npos) authority.remove_prefix(at + 1);
    if (auto colon = authority.rfind(':'); colon != std::string_view::npos) {
      auto port_text = authority.substr(colon + 1);
      authority = authority.substr(0, colon);
      if (!port_text.empty()) {
        int port = 0;
        auto [ptr, ec] = std::from_chars(port_text.data(), port_text.data() + port_text.size(), port);
        if (ec != std::errc{} || ptr != port_text.data() + port_text.size() || port > 65535) {
          return std::nullopt;
        }
        url.port = port;
      }
    }
    if (!valid_host(authority)) return std::nullopt;
    url.host = std::string(authority);
  }

  if (auto hash = rest.find('#'); hash != std::string_view::npos) {
    url.fragment = std::string(rest.substr(hash + 1));
    url.has_fragment = true;
    rest = rest.substr(0, hash);
  }
  if (auto q = rest.find('?'); q != std::string_view::npos) {
    url.query = std::string(rest.substr(q + 1));
    url.has_query = true;
    rest = rest.substr(0, q);
  }
  url.path = std::string(rest);
  return url;
}

Url normalize(Url url) {
  url.host = to_lower(url.host);
  if (url.port >= 0 && url.port == default_port(url.scheme)) url.port = -1;
  while (!url.path.empty() && url.path.back() == '/') url.path.pop_back();
  return url;
}

std::optional<std::string> resolve_reference(std::string_view base, std::string_view ref) {
  auto base_url = parse_url(base);
  if (!base_url) return std::nullopt;

  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  ref = trim(ref);
  if (auto hash = ref.find('#'); hash != std::string_view::npos) ref = ref.substr(0, hash);
  if (ref.empty()) {
    Url copy = *base_url;
    copy.has_fragment = false;
    copy.fragment.clear();
    return copy.to_string();
  }

  // Any other scheme (mailto:, javascript:, ...) is not followable.
  auto colon = ref.find(':');
  auto first_delim = ref.find_first_of("/?#");
  if (colon != std::string_view::npos && (first_delim == std::string_view::npos || colon < first_delim)) {
    auto parsed = parse_url(ref);
    if (!parsed || parsed->scheme == "file") return std::nullopt;
    parsed->path = remove_dot_segments(parsed->path.empty() ? "/" : parsed->path);
    parsed->has_fragment = false;
    return parsed->to_string();
  }
  if (ref.starts_with("//")) {
    auto parsed = parse_url(base_url->scheme + ":" + std::string(ref));
    if (!parsed) return std::nullopt;
    parsed->path = remove_dot_segments(parsed->path.empty() ? "/" : parsed->path);
    return parsed->to_string();
  }

  Url out = *base_url;
  out.has_fragment = false;
  out.fragment.clear();
  std::string_view ref_path = ref;
  std::string_view ref_query;
  bool has_query = false;
  if (auto q = ref.find('?'); q != std::string_view::npos) {
    ref_path = ref.substr(0, q);
    ref_query = ref.substr(q + 1);
    has_query = true;
  }
  if (ref_path.empty()) {
    // query-only reference keeps the base path
  } else if (ref_path.starts_with('/')) {
    out.path = remove_dot_segments(ref_path);
  } else {
    std::string merged = base_url->path.empty() ? "/" : base_url->path;
    merged = merged.substr(0, merged.rfind('/') + 1);
    merged += ref_path;
    out.path = remove_dot_segments(merged);
  }
  out.has_query = has_query;
  out.query = std::string(ref_query);
  return out.to_string();
}

std::vector<std::string> split_path(std::string_view path) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= path.size()) {
    auto next = path.find('/', pos);
    if (next == std::string_view::npos) next = path.size();
    if (next > pos) out.emplace_back(path.substr(pos, next - pos));
    pos = next + 1;
  }
  return out;
}

std::string_view strip_query_and_fragment(std::string_view text) {
  auto cut = text.find_first_of("?#");
  return cut == std::string_view::npos ? text : text.substr(0, cut);
}

}  // namespace docforge
