#include "docforge/diff.hpp"

#include <algorithm>
#include <map>
#include <json.hpp>
#include <sstream>

namespace docforge {
namespace {

using nlohmann::json;
using ShapeKey = std::vector<std::pair<bool, std::string>>;

ShapeKey shape_of(const PathTemplate& t) {
  ShapeKey key;
  for (const auto& seg : t.segments) {
    key.emplace_back(seg.is_parameter(), seg.is_parameter() ? std::string() : seg.text);
  }
  return key;
}

std::map<ShapeKey, std::vector<const Endpoint*>> group_by_shape(const ApiSpec& spec) {
  std::map<ShapeKey, std::vector<const Endpoint*>> groups;
  for (const auto& e : spec.endpoints) groups[shape_of(e.path_template)].push_back(&e);
  for (auto& [_, v] : groups) {
    std::sort(v.begin(), v.end(), [](const Endpoint* a, const Endpoint* b) {
      return a->path_template.canonical() < b->path_template.canonical();
    });
  }
  return groups;
}

bool by_canonical(const PathTemplate& a, const PathTemplate& b) { return a.canonical() < b.canonical(); }

json method_list(const MethodSet& methods) {
  json out = json::array();
  for (auto m : methods) out.push_back(std::string(to_string(m)));
  return out;
}

}  // namespace

bool same_shape(const PathTemplate& a, const PathTemplate& b) { return shape_of(a) == shape_of(b); }

DiffReport diff_specs(const ApiSpec& generated, const ApiSpec& existing) {
  DiffReport report;
  report.generated_base = generated.base;
  report.existing_base = existing.base;
  report.base_url_match = generated.base.full() == existing.base.full();

  auto gen_groups = group_by_shape(generated);
  auto ex_groups = group_by_shape(existing);
  for (const auto& [key, gens] : gen_groups) {
    auto it = ex_groups.find(key);
    std::size_t paired = 0;
    if (it != ex_groups.end()) {
      const auto& exs = it->second;
      paired = std::min(gens.size(), exs.size());
      for (std::size_t i = 0; i < paired; ++i) {
        report.template_matches.push_back({gens[i]->path_template, exs[i]->path_template});
        if (gens[i]->methods != exs[i]->methods) {
          report.method_mismatches.push_back(
              {gens[i]->path_template, exs[i]->path_template, gens[i]->methods, exs[i]->methods});
        }
      }
      for (std::size_t i = paired; i < exs.size(); ++i) report.existing_only.push_back(exs[i]->path_template);
    }
    for (std::size_t i = paired; i < gens.size(); ++i) report.generated_only.push_back(gens[i]->path_template);
  }
  for (const auto& [key, exs] : ex_groups) {
    if (gen_groups.count(key)) continue;
    for (const auto* e : exs) report.existing_only.push_back(e->path_template);
  }

  std::sort(report.template_matches.begin(), report.template_matches.end(),
            [](const TemplatePair& a, const TemplatePair& b) {
              return std::pair(a.generated.canonical(), a.existing.canonical()) <
                     std::pair(b.generated.canonical(), b.existing.canonical());
            });
  std::sort(report.method_mismatches.begin(), report.method_mismatches.end(),
            [](const MethodMismatch& a, const MethodMismatch& b) {
              return std::pair(a.generated.canonical(), a.existing.canonical()) <
                     std::pair(b.generated.canonical(), b.existing.canonical());
            });
  std::sort(report.generated_only.begin(), report.generated_only.end(), by_canonical);
  std::sort(report.existing_only.begin(), report.existing_only.end(), by_canonical);
  return report;
}

std::string render_report(const DiffReport& report) {
  json matches = json::array();
  for (const auto& p : report.template_matches) {
    matches.push_back({{"generated", p.generated.canonical()}, {"existing", p.existing.canonical()}});
  }
  json generated_only = json::array();
  for (const auto& t : report.generated_only) generated_only.push_back(t.canonical());
  json existing_only = json::array();
  for (const auto& t : report.existing_only) existing_only.push_back(t.canonical());
  json mismatches = json::array();
  for (const auto& m : report.method_mismatches) {
    mismatches.push_back({{"generated", m.generated.canonical()},
                          {"existing", m.existing.canonical()},
                          {"generated_methods", method_list(m.generated_methods)},
                          {"existing_methods", method_list(m.existing_methods)}});
  }
  json doc = {
      {"base_url_match", report.base_url_match},
      {"generated_base", report.generated_base.full()},
      {"existing_base", report.existing_base.full()},
      {"counts",
       {{"matches", report.template_matches.size()},
        {"generated_only", report.generated_only.size()},
        {"existing_only", report.existing_only.size()},
        {"method_mismatches", report.method_mismatches.size()}}},
      {"details",
       {{"matches", std::move(matches)},
        {"generated_only", std::move(generated_only)},
        {"existing_only", std::move(existing_only)},
        {"method_mismatches", std::move(mismatches)}}},
  };
  return doc.dump(2) + "\n";
}

std::string render_summary(const DiffReport& report) {
  std::ostringstream out;
  out << "base url: " << (report.base_url_match ? "match" : "MISMATCH") << " (generated "
      << report.generated_base.full() << ", existing " << report.existing_base.full() << ")\n";
  out << "matched templates: " << report.template_matches.size() << "\n";
  out << "generated only: " << report.generated_only.size() << "\n";
  for (const auto& t : report.generated_only) out << "  + " << t.canonical() << "\n";
  out << "existing only: " << report.existing_only.size() << "\n";
  for (const auto& t : report.existing_only) out << "  - " << t.canonical() << "\n";
  out << "method mismatches: " << report.method_mismatches.size() << "\n";
  for (const auto& m : report.method_mismatches) {
    out << "  ~ " << m.generated.canonical() << ":";
    for (auto x : m.generated_methods) out << " " << to_string(x);
    out << " vs";
    for (auto x : m.existing_methods) out << " " << to_string(x);
    out << "\n";
  }
  return out.str();
}

}  // namespace docforge
