#pragma once

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace docforge {

// scheme://host + base_path, e.g. https://api.instagram.com/v1.
// base_path is empty or starts with "/" and never ends with "/".
struct BaseUrl {
  std::string scheme = "https";
  std::string host;  // lowercase, non-default port kept ("localhost:8080")
  std::string base_path;

  std::string full() const { return scheme + "://" + host + base_path; }

  friend auto operator<=>(const BaseUrl&, const BaseUrl&) = default;
};

// Parses and normalizes "scheme://host/path". Query and fragment are ignored.
std::optional<BaseUrl> parse_base_url(std::string_view text);

// Longest common whole-segment prefix of the URLs on the majority host.
// Throws NoApiUrlsError for an empty input.
BaseUrl infer_base_url(std::span<const std::string> api_urls);

// Segments of `url`'s path that remain after removing `base`, or nullopt when
// `url` does not start with the base at a segment boundary.
std::optional<std::string> residual_path(std::string_view url, const BaseUrl& base);

}  // namespace docforge
