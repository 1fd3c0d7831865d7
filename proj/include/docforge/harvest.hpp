#pragma once

#include <array>
#include <chrono>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "docforge/corpus.hpp"
#include "docforge/html.hpp"

namespace docforge {

// A URL found in a page's rendered text, with the page context the
// classifier needs.
struct CandidateUrl {
  std::string raw;
  std::string page_url;
  bool clickable = false;    // link text of an <a href>
  bool in_code_tag = false;  // some ancestor is <code>
  bool within_json = false;  // some enclosing element's text is a JSON object/array

  friend bool operator==(const CandidateUrl&, const CandidateUrl&) = default;
};

enum class ProbeResult { NotProbed, JsonBody, AuthError, Other };

std::string_view to_string(ProbeResult result);

inline constexpr std::size_t kFeatureCount = 10;

// Feature order is fixed; it is also the order of LinearModel weights and
// of the model file's "feature_order".
struct FeatureVector {
  int clickable = 0;
  int code_tag = 0;
  int within_json = 0;
  int same_domain_with_doc_link = 0;
  int query_parameter = 0;
  int api_convention = 0;  // 0..3
  int path_template = 0;
  int probe_json = 0;
  int probe_auth = 0;
  int probe_other = 0;

  std::array<double, kFeatureCount> values() const;
  static FeatureVector from_values(const std::array<double, kFeatureCount>& values);

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

extern const std::array<std::string_view, kFeatureCount> kFeatureNames;

// Candidates in document order, deduplicated by (raw, clickable,
// in_code_tag, within_json). href attribute values and <script>/<style>
// content never contribute.
std::vector<CandidateUrl> extract_candidates(const Page& page);
std::vector<CandidateUrl> extract_candidates(const Page& page, const html::Document& dom);

FeatureVector featurize(const CandidateUrl& candidate, ProbeResult probe);

// Count of satisfied conventions: "rest" substring, "api" substring, and a
// path segment of the form v[0-9.]+ or version[0-9.]+.
int api_convention_score(std::string_view url);

bool has_query_parameter(std::string_view url);

// True iff some path segment carries a parameter marker pair or a ':' prefix.
bool has_path_template(std::string_view url);

// Pure classification of a probe response.
ProbeResult classify_probe_response(int status, std::string_view body);

// One GET to `url` when enabled and the URL has no parameter markers.
ProbeResult probe(std::string_view url, bool enabled,
                  std::chrono::milliseconds timeout = std::chrono::milliseconds(5000));

}  // namespace docforge
