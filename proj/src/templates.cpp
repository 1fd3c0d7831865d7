#include "docforge/templates.hpp"

#include <algorithm>
#include <cctype>
#include <climits>
#include <map>
#include <optional>
#include <tuple>
#include <unordered_set>

#include "docforge/html.hpp"
#include "docforge/scan.hpp"
#include "docforge/url.hpp"

namespace docforge {
namespace {

// Distances are multiples of 0.2, so they are kept exactly as integer
// fifths: 5|s| - 5*exact - 4*params.
std::optional<int> dist_fifths(std::span<const PathSegment> a, std::span<const PathSegment> b) {
  if (a.size() != b.size()) return std::nullopt;
  int exact = 0;
  int params = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_parameter() || b[i].is_parameter()) {
      ++params;
    } else if (a[i].text == b[i].text) {
      ++exact;
    }
  }
  return 5 * static_cast<int>(a.size()) - 5 * exact - 4 * params;
}

std::string synthesized_name(std::size_t position) { return "param" + std::to_string(position + 1); }

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

char closer_for(char open) {
  switch (open) {
    case '{': return '}';
    case '[': return ']';
    case '(': return ')';
    case '<': return '>';
    default: return 0;
  }
}

std::vector<Path> dedup_by_canonical(std::span<const Path> paths) {
  std::vector<Path> out;
  std::unordered_set<std::string> seen;
  for (const auto& p : paths) {
    if (p.segments.empty()) continue;
    if (seen.insert(p.canonical()).second) out.push_back(p);
  }
  return out;
}

struct Binding {
  std::string name;
  bool documented = true;
};

bool better_binding(const Binding& a, const Binding& b) {
  if (a.documented != b.documented) return a.documented;
  return a.name < b.name;
}

// A value's name may depend on where it occurs ("alice" is a username
// after /users but an owner after /repos), so names are also kept per
// (position, previous segment, value).
using Context = std::tuple<std::size_t, bool, std::string, std::string>;

Context context_of(const Segments& segments, std::size_t i) {
  if (i == 0) return {0, false, std::string(), segments[0].text};
  const auto& prev = segments[i - 1];
  return {i, prev.is_parameter(), prev.text, segments[i].text};
}

struct Bindings {
  std::map<std::string, Binding> by_value;
  std::map<Context, Binding> by_context;
};

template <class Key>
void offer(std::map<Key, Binding>& map, const Key& key, const Binding& candidate) {
  auto it = map.find(key);
  if (it == map.end()) {
    map.emplace(key, candidate);
  } else if (better_binding(candidate, it->second)) {
    it->second = candidate;
  }
}

// value -> parameter it instantiates, learned from one cluster.
Bindings infer_bindings(const Cluster& cluster) {
  Bindings out;
  for (const auto& path : cluster.members) {
    for (const auto& path_param : cluster.members) {
      if (&path == &path_param || path.segments.size() != path_param.segments.size()) continue;
      for (std::size_t i = 0; i < path.segments.size(); ++i) {
        const auto& value = path.segments[i];
        const auto& param = path_param.segments[i];
        if (value.is_parameter() || !param.is_parameter()) continue;
        Binding candidate{param.text, param.documented};
        offer(out.by_value, value.text, candidate);
        offer(out.by_context, context_of(path.segments, i), candidate);
      }
    }
  }
  return out;
}

Path annotate(const Path& path, const Bindings& values) {
  Path out = path;
  for (std::size_t i = 0; i < out.segments.size(); ++i) {
    auto& segment = out.segments[i];
    if (segment.is_parameter()) continue;
    auto it = values.by_value.find(segment.text);
    if (it == values.by_value.end()) continue;
    const Binding* binding = &it->second;
    if (auto c = values.by_context.find(context_of(out.segments, i)); c != values.by_context.end()) {
      binding = &c->second;
    }
    segment = PathSegment::parameter(binding->name, binding->documented);
  }
  return out;
}

Cluster make_cluster(std::vector<Path> members) {
  std::sort(members.begin(), members.end(),
            [](const Path& a, const Path& b) { return a.canonical() < b.canonical(); });
  return Cluster{std::move(members)};
}

// Clusters one group of equal-length paths.
std::vector<Cluster> cluster_group(std::vector<Path> group, const ClusteringConfig& config) {
  const std::size_t n = group.size();
  std::vector<Cluster> clusters;
  clusters.reserve(n);
  for (auto& p : group) clusters.push_back(Cluster{{std::move(p)}});
  std::vector<std::string> keys;
  for (const auto& c : clusters) keys.push_back(c.key());

  // Single-linkage distance matrix in fifths; INT_MAX marks removed clusters.
  std::vector<std::vector<int>> dist(n, std::vector<int>(n, INT_MAX));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      dist[i][j] = dist[j][i] = *dist_fifths(clusters[i].members[0].segments, clusters[j].members[0].segments);
    }
  }
  std::vector<bool> alive(n, true);
  const double limit = 5.0 * config.threshold;

  auto pair_key = [&](std::size_t i, std::size_t j) {
    return keys[i] < keys[j] ? keys[i] + keys[j] : keys[j] + keys[i];
  };

  for (std::size_t remaining = n; remaining > 1; --remaining) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    int best_dist = INT_MAX;
    std::string best_key;
    for (std::size_t i = 0; i < n; ++i) {
      if (!alive[i]) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!alive[j] || dist[i][j] > best_dist) continue;
        if (dist[i][j] < best_dist) {
          best = {i, j};
          best_dist = dist[i][j];
          best_key.clear();
          continue;
        }
        if (best_key.empty()) best_key = pair_key(best->first, best->second);
        auto key = pair_key(i, j);
        if (key < best_key) {
          best = {i, j};
          best_key = std::move(key);
        }
      }
    }
    if (!best || !(static_cast<double>(best_dist) < limit)) break;

    auto [i, j] = *best;
    auto members = std::move(clusters[i].members);
    for (auto& m : clusters[j].members) members.push_back(std::move(m));
    clusters[i] = make_cluster(std::move(members));
    keys[i] = clusters[i].key();
    alive[j] = false;
    for (std::size_t k = 0; k < n; ++k) {
      if (k == i || !alive[k]) continue;
      dist[i][k] = dist[k][i] = std::min(dist[i][k], dist[j][k]);
    }
  }

  std::vector<Cluster> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (alive[i]) out.push_back(std::move(clusters[i]));
  }
  return out;
}

}  // namespace

PathSegment parse_segment(std::string_view raw, std::size_t position) {
  auto named = [&](std::string name) {
    name = trim(name);
    if (name.empty()) return PathSegment::parameter(synthesized_name(position), false);
    return PathSegment::parameter(std::move(name), true);
  };
  if (raw.starts_with(':')) return named(std::string(raw.substr(1)));
  if (!contains_marker(raw)) return PathSegment::literal(std::string(raw));

  auto open = raw.find_first_of("{[(<");
  if (open != std::string_view::npos) {
    auto close = raw.find(closer_for(raw[open]), open + 1);
    if (close != std::string_view::npos) return named(std::string(raw.substr(open + 1, close - open - 1)));
  }
  std::string stripped;
  for (char c : raw) {
    if (!is_marker_char(c)) stripped += c;
  }
  return named(stripped);
}

Segments parse_path_segments(std::string_view path) {
  Segments out;
  auto parts = split_path(strip_query_and_fragment(path));
  for (std::size_t i = 0; i < parts.size(); ++i) out.push_back(parse_segment(parts[i], i));
  return out;
}

std::string render_segments(std::span<const PathSegment> segments) {
  if (segments.empty()) return "/";
  std::string out;
  for (const auto& s : segments) {
    out += '/';
    if (s.is_parameter()) {
      out += '{';
      out += s.text;
      out += '}';
    } else {
      out += s.text;
    }
  }
  return out;
}

std::string Cluster::key() const {
  std::string out;
  for (const auto& m : members) out += m.canonical();
  return out;
}

std::size_t PathTemplate::parameter_count() const {
  return static_cast<std::size_t>(
      std::count_if(segments.begin(), segments.end(), [](const PathSegment& s) { return s.is_parameter(); }));
}

PathTemplate parse_template(std::string_view text) { return PathTemplate{parse_path_segments(text)}; }

std::vector<Path> paths_from_urls(std::span<const std::string> api_urls, const BaseUrl& base) {
  std::vector<Path> out;
  for (const auto& url : api_urls) {
    auto rest = residual_path(url, base);
    if (!rest || rest->empty()) continue;
    Path p;
    p.segments = parse_path_segments(*rest);
    if (p.segments.empty()) continue;
    p.origin_raw = url;
    out.push_back(std::move(p));
  }
  return out;
}

namespace {

std::vector<Path> relative_mentions(std::span<const Page> pages, const BaseUrl* base) {
  std::vector<std::string> base_segments;
  if (base) base_segments = split_path(base->base_path);
  std::vector<Path> out;
  for (const auto& page : pages) {
    auto dom = html::Document::parse(page.html);
    for (const auto& token : scan_relative_paths(dom.rendered_text())) {
      auto parts = split_path(strip_query_and_fragment(token.text));
      if (!base_segments.empty() && parts.size() >= base_segments.size() &&
          std::equal(base_segments.begin(), base_segments.end(), parts.begin())) {
        parts.erase(parts.begin(), parts.begin() + static_cast<std::ptrdiff_t>(base_segments.size()));
      }
      if (parts.empty()) continue;
      Path p;
      for (std::size_t i = 0; i < parts.size(); ++i) p.segments.push_back(parse_segment(parts[i], i));
      p.origin_page = page.url;
      p.origin_raw = token.text;
      out.push_back(std::move(p));
    }
  }
  return out;
}

}  // namespace

std::vector<Path> paths_from_relative_mentions(std::span<const Page> pages) {
  return relative_mentions(pages, nullptr);
}

std::vector<Path> paths_from_relative_mentions(std::span<const Page> pages, const BaseUrl& base) {
  return relative_mentions(pages, &base);
}

double dist_singles(std::span<const PathSegment> s1, std::span<const PathSegment> s2) {
  auto d = dist_fifths(s1, s2);
  if (!d) return std::numeric_limits<double>::infinity();
  return static_cast<double>(*d) / 5.0;
}

double cluster_dist(const Cluster& c1, const Cluster& c2) {
  std::optional<int> best;
  for (const auto& a : c1.members) {
    for (const auto& b : c2.members) {
      auto d = dist_fifths(a.segments, b.segments);
      if (d && (!best || *d < *best)) best = d;
    }
  }
  if (!best) return std::numeric_limits<double>::infinity();
  return static_cast<double>(*best) / 5.0;
}

std::vector<Cluster> hierarchical_clustering(std::span<const Path> paths, const ClusteringConfig& config) {
  // Paths of different lengths are infinitely far apart, so each length is
  // clustered on its own.
  std::map<std::size_t, std::vector<Path>> groups;
  for (auto& p : dedup_by_canonical(paths)) groups[p.segments.size()].push_back(std::move(p));
  std::vector<Cluster> out;
  for (auto& [length, group] : groups) {
    for (auto& c : cluster_group(std::move(group), config)) out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [](const Cluster& a, const Cluster& b) { return a.key() < b.key(); });
  return out;
}

std::set<std::string> infer_parameter_value(const Cluster& cluster) {
  std::set<std::string> out;
  for (const auto& [value, binding] : infer_bindings(cluster).by_value) out.insert(value);
  return out;
}

PathTemplate template_from_cluster(const Cluster& cluster) {
  auto members = cluster.members;
  std::sort(members.begin(), members.end(),
            [](const Path& a, const Path& b) { return a.canonical() < b.canonical(); });
  PathTemplate t;
  if (members.empty()) return t;
  const std::size_t length = members.front().segments.size();
  for (std::size_t i = 0; i < length; ++i) {
    const PathSegment* documented = nullptr;
    bool any_parameter = false;
    bool literals_agree = true;
    for (const auto& m : members) {
      const auto& s = m.segments[i];
      if (s.is_parameter()) {
        any_parameter = true;
        if (!documented && s.documented) documented = &s;
      } else if (s.text != members.front().segments[i].text || members.front().segments[i].is_parameter()) {
        literals_agree = false;
      }
    }
    if (!any_parameter && literals_agree) {
      t.segments.push_back(members.front().segments[i]);
    } else if (documented) {
      t.segments.push_back(PathSegment::parameter(documented->text, true));
    } else {
      t.segments.push_back(PathSegment::parameter(synthesized_name(i), false));
    }
  }
  return t;
}

std::vector<PathTemplate> iterate_templates(std::span<const Path> paths, const ClusteringConfig& config) {
  Bindings values;
  std::vector<Cluster> clusters;
  while (true) {
    const std::size_t previous = values.by_value.size() + values.by_context.size();
    std::vector<Path> annotated;
    annotated.reserve(paths.size());
    for (const auto& p : paths) annotated.push_back(annotate(p, values));
    clusters = hierarchical_clustering(annotated, config);

    Bindings learned;
    for (const auto& c : clusters) {
      auto found = infer_bindings(c);
      for (auto& [value, binding] : found.by_value) offer(learned.by_value, value, binding);
      for (auto& [context, binding] : found.by_context) offer(learned.by_context, context, binding);
    }
    // Only new values and contexts are recorded; earlier names stay fixed.
    for (auto& [value, binding] : learned.by_value) values.by_value.emplace(value, binding);
    for (auto& [context, binding] : learned.by_context) values.by_context.emplace(context, binding);
    if (values.by_value.size() + values.by_context.size() == previous) break;
  }

  std::vector<PathTemplate> out;
  for (const auto& c : clusters) out.push_back(template_from_cluster(c));
  std::sort(out.begin(), out.end(),
            [](const PathTemplate& a, const PathTemplate& b) { return a.canonical() < b.canonical(); });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const PathTemplate& a, const PathTemplate& b) { return a.canonical() == b.canonical(); }),
            out.end());
  return out;
}

}  // namespace docforge
