#include "docforge/harvest.hpp"

#include <json.hpp>

#include <algorithm>
#include <regex>
#include <set>
#include <tuple>
#include <unordered_map>

#include "docforge/http.hpp"
#include "docforge/scan.hpp"
#include "docforge/url.hpp"

namespace docforge {

const std::array<std::string_view, kFeatureCount> kFeatureNames = {
    "clickable",       "code_tag",       "within_json", "same_domain_with_doc_link",
    "query_parameter", "api_convention", "path_template", "curl_return_json",
    "curl_return_auth_error", "curl_return_other"};

std::string_view to_string(ProbeResult result) {
  switch (result) {
    case ProbeResult::NotProbed: return "not_probed";
    case ProbeResult::JsonBody: return "json";
    case ProbeResult::AuthError: return "auth_error";
    case ProbeResult::Other: return "other";
  }
  return "?";
}

std::array<double, kFeatureCount> FeatureVector::values() const {
  return {static_cast<double>(clickable),       static_cast<double>(code_tag),
          static_cast<double>(within_json),     static_cast<double>(same_domain_with_doc_link),
          static_cast<double>(query_parameter), static_cast<double>(api_convention),
          static_cast<double>(path_template),   static_cast<double>(probe_json),
          static_cast<double>(probe_auth),      static_cast<double>(probe_other)};
}

FeatureVector FeatureVector::from_values(const std::array<double, kFeatureCount>& v) {
  auto i = [&](std::size_t k) { return static_cast<int>(v[k]); };
  return {i(0), i(1), i(2), i(3), i(4), i(5), i(6), i(7), i(8), i(9)};
}

namespace {

class JsonCache {
 public:
  explicit JsonCache(const html::Document& dom) : dom_(dom) {}

  bool element_is_json(html::NodeId id) {
    if (auto it = cache_.find(id); it != cache_.end()) return it->second;
    auto text = dom_.rendered_text(id);
    auto first = text.find_first_not_of(" \t\r\n");
    bool result = false;
    if (first != std::string_view::npos && (text[first] == '{' || text[first] == '[')) {
      result = nlohmann::json::accept(text);
    }
    cache_.emplace(id, result);
    return result;
  }

  bool within_json(html::NodeId text_node) {
    auto parent = dom_.node(text_node).parent;
    while (parent && *parent != html::Document::root()) {
      if (element_is_json(*parent)) return true;
      parent = dom_.node(*parent).parent;
    }
    return false;
  }

 private:
  const html::Document& dom_;
  std::unordered_map<html::NodeId, bool> cache_;
};

bool is_link_text(const html::Document& dom, html::NodeId id) {
  auto parent = dom.node(id).parent;
  while (parent) {
    const auto& n = dom.node(*parent);
    if (n.tag == "a" && dom.attribute(*parent, "href")) return true;
    parent = n.parent;
  }
  return false;
}

bool segment_is_templated(std::string_view segment) {
  if (segment.size() > 1 && segment.front() == ':') return true;
  static constexpr std::array<std::pair<char, char>, 4> kPairs = {
      {{'{', '}'}, {'[', ']'}, {'(', ')'}, {'<', '>'}}};
  for (auto [open, close] : kPairs) {
    auto o = segment.find(open);
    if (o != std::string_view::npos && segment.find(close, o + 1) != std::string_view::npos) return true;
  }
  return false;
}

}  // namespace

std::vector<CandidateUrl> extract_candidates(const Page& page) {
  auto dom = html::Document::parse(page.html);
  return extract_candidates(page, dom);
}

std::vector<CandidateUrl> extract_candidates(const Page& page, const html::Document& dom) {
  std::vector<CandidateUrl> out;
  std::set<std::tuple<std::string, bool, bool, bool>> seen;
  JsonCache json(dom);
  for (auto& token : scan_absolute_urls(dom.rendered_text())) {
    auto text_node = dom.text_node_at(token.begin);
    if (!text_node) continue;
    CandidateUrl c;
    c.raw = std::move(token.text);
    c.page_url = page.url;
    c.clickable = is_link_text(dom, *text_node);
    c.in_code_tag = dom.has_ancestor_tag(*text_node, "code");
    c.within_json = json.within_json(*text_node);
    if (seen.emplace(c.raw, c.clickable, c.in_code_tag, c.within_json).second) out.push_back(std::move(c));
  }
  return out;
}

int api_convention_score(std::string_view url) {
  static const std::regex version(R"((v|version)[0-9.]+)", std::regex::icase);
  auto lower = to_lower(url);
  int score = 0;
  if (lower.find("rest") != std::string::npos) ++score;
  if (lower.find("api") != std::string::npos) ++score;
  std::string path;
  if (auto parsed = parse_url(url)) path = parsed->path;
  for (const auto& segment : split_path(path)) {
    if (std::regex_match(segment, version)) {
      ++score;
      break;
    }
  }
  return score;
}

bool has_query_parameter(std::string_view url) {
  return url.find('?') != std::string_view::npos || url.find('=') != std::string_view::npos;
}

bool has_path_template(std::string_view url) {
  auto parsed = parse_url(url);
  std::string path = parsed ? parsed->path : std::string(strip_query_and_fragment(url));
  auto segments = split_path(path);
  return std::any_of(segments.begin(), segments.end(),
                     [](const std::string& s) { return segment_is_templated(s); });
}

FeatureVector featurize(const CandidateUrl& candidate, ProbeResult probe_result) {
  FeatureVector f;
  f.clickable = candidate.clickable ? 1 : 0;
  f.code_tag = candidate.in_code_tag ? 1 : 0;
  f.within_json = candidate.within_json ? 1 : 0;
  auto url = parse_url(candidate.raw);
  auto page = parse_url(candidate.page_url);
  if (url && page && !page->host.empty() && to_lower(url->host) == to_lower(page->host)) {
    f.same_domain_with_doc_link = 1;
  }
  f.query_parameter = has_query_parameter(candidate.raw) ? 1 : 0;
  f.api_convention = api_convention_score(candidate.raw);
  f.path_template = has_path_template(candidate.raw) ? 1 : 0;
  f.probe_json = probe_result == ProbeResult::JsonBody ? 1 : 0;
  f.probe_auth = probe_result == ProbeResult::AuthError ? 1 : 0;
  f.probe_other = probe_result == ProbeResult::Other ? 1 : 0;
  return f;
}

ProbeResult classify_probe_response(int status, std::string_view body) {
  // Authentication is checked first so that a 401 with a JSON error body
  // still counts as an authentication error.
  if (status == 401 || status == 407 || body.find("Invalid certificate") != std::string_view::npos) {
    return ProbeResult::AuthError;
  }
  if (nlohmann::json::accept(body)) return ProbeResult::JsonBody;
  return ProbeResult::Other;
}

ProbeResult probe(std::string_view url, bool enabled, std::chrono::milliseconds timeout) {
  if (!enabled || has_path_template(url) || contains_marker(url)) return ProbeResult::NotProbed;
  http::GetOptions options;
  options.timeout = timeout;
  options.user_agent = default_user_agent();
  auto response = http::get(url, options);
  if (!response) return ProbeResult::Other;
  return classify_probe_response(response->status, response->body);
}

}  // namespace docforge
