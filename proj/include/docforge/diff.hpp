#pragma once

#include <string>
#include <vector>

#include "docforge/specio.hpp"

namespace docforge {

struct TemplatePair {
  PathTemplate generated;
  PathTemplate existing;
};

struct MethodMismatch {
  PathTemplate generated;
  PathTemplate existing;
  MethodSet generated_methods;
  MethodSet existing_methods;
};

struct DiffReport {
  bool base_url_match = false;
  BaseUrl generated_base;
  BaseUrl existing_base;
  std::vector<TemplatePair> template_matches;
  std::vector<PathTemplate> generated_only;
  std::vector<PathTemplate> existing_only;
  std::vector<MethodMismatch> method_mismatches;

  bool clean() const {
    return base_url_match && generated_only.empty() && existing_only.empty() && method_mismatches.empty();
  }
};

// Templates match on shape: same length, equal literals, parameters at the
// same positions (names ignored). Within a group of equal shapes, templates
// are paired in canonical order.
bool same_shape(const PathTemplate& a, const PathTemplate& b);
DiffReport diff_specs(const ApiSpec& generated, const ApiSpec& existing);

// JSON with "counts" and sorted "details"; deterministic bytes.
std::string render_report(const DiffReport& report);
// A few lines for humans.
std::string render_summary(const DiffReport& report);

}  // namespace docforge
