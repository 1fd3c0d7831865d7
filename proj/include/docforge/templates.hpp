#pragma once

#include <cstddef>
#include <limits>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "docforge/baseurl.hpp"
#include "docforge/corpus.hpp"

namespace docforge {

struct PathSegment {
  enum class Kind { Literal, Parameter };

  Kind kind = Kind::Literal;
  std::string text;  // literal value, or parameter name without markers
  // For parameters: whether the name came from the documentation (directly
  // or propagated from a documented parameter) rather than being synthesized.
  bool documented = true;

  static PathSegment literal(std::string text) { return {Kind::Literal, std::move(text), true}; }
  static PathSegment parameter(std::string name, bool documented = true) {
    return {Kind::Parameter, std::move(name), documented};
  }
  bool is_parameter() const { return kind == Kind::Parameter; }

  friend bool operator==(const PathSegment& a, const PathSegment& b) {
    return a.kind == b.kind && a.text == b.text;
  }
};

using Segments = std::vector<PathSegment>;

// Classifies one raw segment. "{id}", "[id]", "(id)", "<id>" and ":id" are
// parameters named "id"; a parameter with no usable name is called
// param<position + 1>.
PathSegment parse_segment(std::string_view raw, std::size_t position);

// Splits a path (query and fragment removed), dropping empty segments.
Segments parse_path_segments(std::string_view path);

// "/a/{b}/c"; "/" for no segments.
std::string render_segments(std::span<const PathSegment> segments);

struct Path {
  Segments segments;
  std::string origin_page;
  std::string origin_raw;

  std::string canonical() const { return render_segments(segments); }
};

struct Cluster {
  std::vector<Path> members;  // sorted by canonical rendering

  // Concatenated canonical renderings of the members; used for ordering.
  std::string key() const;
};

struct ClusteringConfig {
  double threshold = 1.0;
  static constexpr double kParamDiscount = 0.8;
};

struct PathTemplate {
  Segments segments;

  std::string canonical() const { return render_segments(segments); }
  std::size_t parameter_count() const;

  friend bool operator==(const PathTemplate& a, const PathTemplate& b) { return a.segments == b.segments; }
};

// Parses a rendered template such as "/users/{id}/orgs".
PathTemplate parse_template(std::string_view text);

// Paths of the URLs that start with `base` at a segment boundary, with the
// base removed. URLs with an empty remainder are dropped.
std::vector<Path> paths_from_urls(std::span<const std::string> api_urls, const BaseUrl& base);

// Relative path mentions ("/users/{id}") in the pages' rendered text. When a
// base is given, a mention that begins with the base path has it removed.
std::vector<Path> paths_from_relative_mentions(std::span<const Page> pages);
std::vector<Path> paths_from_relative_mentions(std::span<const Page> pages, const BaseUrl& base);

// |s1| - (#equal literal positions + 0.8 * #positions where either side is a
// parameter); infinity when the lengths differ.
double dist_singles(std::span<const PathSegment> s1, std::span<const PathSegment> s2);

// Single linkage: minimum dist_singles over the member cross product.
double cluster_dist(const Cluster& c1, const Cluster& c2);

// Agglomerative clustering: repeatedly merges the closest pair while its
// distance is strictly below the threshold. Equal distances are broken by
// the lexicographically smallest pair of cluster keys. Input paths are
// deduplicated by canonical rendering. Clusters come back sorted by key.
std::vector<Cluster> hierarchical_clustering(std::span<const Path> paths, const ClusteringConfig& config);

// Literal texts found at positions where another member has a parameter.
std::set<std::string> infer_parameter_value(const Cluster& cluster);

// Fixed-point loop: mark known parameter values, cluster, learn new values,
// until no new value appears. One template per final cluster, sorted and
// deduplicated by canonical rendering.
std::vector<PathTemplate> iterate_templates(std::span<const Path> paths, const ClusteringConfig& config);

// Collapses a cluster into one template (position-wise merge).
PathTemplate template_from_cluster(const Cluster& cluster);

}  // namespace docforge
