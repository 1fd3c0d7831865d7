#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "docforge/classifier.hpp"
#include "docforge/corpus.hpp"
#include "docforge/specio.hpp"
#include "docforge/templates.hpp"

namespace docforge {

struct ExtractOptions {
  bool probe = false;
  ClusteringConfig clustering;
  std::string source;  // written into the spec's info.title
};

struct ExtractResult {
  ApiSpec spec;
  std::size_t pages = 0;
  std::size_t candidates = 0;
  std::vector<std::string> api_urls;  // positively classified, sorted, unique
  std::vector<PathTemplate> templates;
};

// Raw URLs with at least one positively classified context, sorted.
std::vector<std::string> classify_urls(std::span<const Page> pages, const LinearModel& model, bool probe_enabled,
                                       std::size_t* candidate_count = nullptr);

// Pages -> ApiSpec. Throws NoApiUrlsError when no candidate is classified
// as an API URL.
ExtractResult extract_spec(std::span<const Page> pages, const LinearModel& model, const ExtractOptions& options);

struct LabelRow {
  std::string page;  // path relative to the corpus directory, or a page URL
  std::string url;
  bool label = false;
};

// CSV with header "page,url,label"; label is 1/0 or true/false. Fields may
// be double-quoted.
std::vector<LabelRow> parse_labels(std::string_view csv);

// One example per context of each labeled URL on its page, in label-row
// order. Throws Error when a page or URL cannot be found.
std::vector<LabeledExample> build_examples(std::span<const Page> pages, std::span<const LabelRow> labels);

std::vector<LabeledExample> load_labeled_corpus(const std::filesystem::path& corpus_dir,
                                                const std::filesystem::path& labels_file);

}  // namespace docforge
