#include "docforge/baseurl.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "docforge/error.hpp"
#include "docforge/log.hpp"
#include "docforge/scan.hpp"
#include "docforge/url.hpp"

namespace docforge {
namespace {

bool is_parameter_segment(std::string_view segment) {
  return contains_marker(segment) || segment.starts_with(':');
}

}  // namespace

std::optional<BaseUrl> parse_base_url(std::string_view text) {
  auto parsed = parse_url(text);
  if (!parsed || parsed->scheme == "file") return std::nullopt;
  Url u = normalize(*parsed);
  BaseUrl base;
  base.scheme = u.scheme;
  base.host = u.authority();
  base.base_path = u.path;
  return base;
}

BaseUrl infer_base_url(std::span<const std::string> api_urls) {
  if (api_urls.empty()) throw NoApiUrlsError();

  std::vector<Url> urls;
  for (const auto& raw : api_urls) {
    auto parsed = parse_url(raw);
    if (!parsed || parsed->scheme == "file") {
      log::warn("ignoring non-absolute API URL " + raw);
      continue;
    }
    urls.push_back(normalize(*parsed));
  }
  if (urls.empty()) throw NoApiUrlsError();

  std::map<std::string, std::size_t> host_votes;
  for (const auto& u : urls) ++host_votes[u.authority()];
  // std::map iterates hosts in lexicographic order, so the first maximum
  // is the lexicographically smallest among tied hosts.
  auto winner = std::max_element(host_votes.begin(), host_votes.end(),
                                 [](const auto& a, const auto& b) { return a.second < b.second; });
  if (host_votes.size() > 1) {
    log::warn("API URLs span " + std::to_string(host_votes.size()) + " hosts; using majority host " +
              winner->first);
  }
  const std::string host = winner->first;

  std::map<std::string, std::size_t> scheme_votes;
  std::set<std::string> distinct;
  std::vector<std::vector<std::string>> paths;
  for (const auto& u : urls) {
    if (u.authority() != host) continue;
    ++scheme_votes[u.scheme];
    if (distinct.insert(u.without_query()).second) paths.push_back(split_path(u.path));
  }
  BaseUrl base;
  base.host = host;
  base.scheme = scheme_votes["https"] >= scheme_votes["http"] ? "https" : "http";
  if (distinct.size() < 2) return base;

  std::size_t common = paths.front().size();
  for (const auto& p : paths) {
    std::size_t k = 0;
    while (k < common && k < p.size() && p[k] == paths.front()[k]) ++k;
    common = k;
  }
  for (std::size_t k = 0; k < common; ++k) {
    if (is_parameter_segment(paths.front()[k])) {
      common = k;
      break;
    }
    base.base_path += "/" + paths.front()[k];
  }
  return base;
}

std::optional<std::string> residual_path(std::string_view url, const BaseUrl& base) {
  auto parsed = parse_url(url);
  if (!parsed || parsed->scheme == "file") return std::nullopt;
  Url u = normalize(*parsed);
  if (u.scheme != base.scheme || u.authority() != base.host) return std::nullopt;
  auto url_segments = split_path(u.path);
  auto base_segments = split_path(base.base_path);
  if (url_segments.size() < base_segments.size()) return std::nullopt;
  if (!std::equal(base_segments.begin(), base_segments.end(), url_segments.begin())) return std::nullopt;
  std::string rest;
  for (std::size_t k = base_segments.size(); k < url_segments.size(); ++k) rest += "/" + url_segments[k];
  return rest;
}

}  // namespace docforge
