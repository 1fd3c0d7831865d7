#include "docforge/pipeline.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "docforge/baseurl.hpp"
#include "docforge/error.hpp"
#include "docforge/harvest.hpp"
#include "docforge/log.hpp"
#include "docforge/methods.hpp"
#include "docforge/url.hpp"

namespace docforge {
namespace {

std::vector<std::string> split_csv_line(std::string_view line, std::size_t line_no) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          fields.back() += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        fields.back() += c;
      }
    } else if (c == '"' && fields.back().empty()) {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  if (quoted) throw Error("labels line " + std::to_string(line_no) + ": unterminated quote");
  return fields;
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

bool page_matches(const Page& page, const std::string& name) {
  if (page.url == name) return true;
  std::string encoded;
  for (char c : name) {
    if (c == ' ') encoded += "%20";
    else encoded += c;
  }
  return page.url == "file:///" + encoded;
}

}  // namespace

std::vector<std::string> classify_urls(std::span<const Page> pages, const LinearModel& model, bool probe_enabled,
                                       std::size_t* candidate_count) {
  std::set<std::string> positives;
  std::map<std::string, ProbeResult> probes;
  std::size_t count = 0;
  for (const auto& page : pages) {
    auto candidates = extract_candidates(page);
    count += candidates.size();
    for (const auto& c : candidates) {
      auto it = probes.find(c.raw);
      if (it == probes.end()) it = probes.emplace(c.raw, probe(c.raw, probe_enabled)).first;
      auto features = featurize(c, it->second);
      if (predict(model, features)) positives.insert(c.raw);
    }
  }
  if (candidate_count) *candidate_count = count;
  return {positives.begin(), positives.end()};
}

ExtractResult extract_spec(std::span<const Page> pages, const LinearModel& model, const ExtractOptions& options) {
  ExtractResult result;
  result.pages = pages.size();
  result.api_urls = classify_urls(pages, model, options.probe, &result.candidates);
  if (result.api_urls.empty()) throw NoApiUrlsError();

  auto base = infer_base_url(result.api_urls);
  auto paths = paths_from_urls(result.api_urls, base);
  auto mentions = paths_from_relative_mentions(pages, base);
  paths.insert(paths.end(), std::make_move_iterator(mentions.begin()), std::make_move_iterator(mentions.end()));
  result.templates = iterate_templates(paths, options.clustering);

  auto blocks = locate_description_blocks(pages, result.templates, base);
  ApiSpec spec;
  spec.base = base;
  spec.source = options.source;
  for (std::size_t i = 0; i < result.templates.size(); ++i) {
    spec.endpoints.push_back({result.templates[i], extract_methods(blocks[i])});
  }
  normalize_endpoints(spec.endpoints);
  result.spec = std::move(spec);
  return result;
}

std::vector<LabelRow> parse_labels(std::string_view csv) {
  std::vector<LabelRow> rows;
  std::istringstream in{std::string(csv)};
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split_csv_line(line, line_no);
    for (auto& f : fields) f = trim(f);
    if (!header_seen) {
      header_seen = true;
      if (fields != std::vector<std::string>{"page", "url", "label"}) {
        throw Error("labels: expected header page,url,label");
      }
      continue;
    }
    if (fields.size() != 3) throw Error("labels line " + std::to_string(line_no) + ": expected 3 fields");
    LabelRow row{fields[0], fields[1], false};
    auto value = to_lower(fields[2]);
    if (value == "1" || value == "true") row.label = true;
    else if (value == "0" || value == "false") row.label = false;
    else throw Error("labels line " + std::to_string(line_no) + ": bad label '" + fields[2] + "'");
    rows.push_back(std::move(row));
  }
  if (!header_seen) throw Error("labels: empty file");
  return rows;
}

std::vector<LabeledExample> build_examples(std::span<const Page> pages, std::span<const LabelRow> labels) {
  std::map<std::string, std::vector<CandidateUrl>> candidates_by_page;
  std::vector<LabeledExample> out;
  for (const auto& row : labels) {
    auto page = std::find_if(pages.begin(), pages.end(), [&](const Page& p) { return page_matches(p, row.page); });
    if (page == pages.end()) throw Error("labels: no page " + row.page);
    auto it = candidates_by_page.find(page->url);
    if (it == candidates_by_page.end()) it = candidates_by_page.emplace(page->url, extract_candidates(*page)).first;
    bool found = false;
    for (const auto& c : it->second) {
      if (c.raw != row.url) continue;
      found = true;
      out.push_back({featurize(c, ProbeResult::NotProbed), row.label});
    }
    if (!found) throw Error("labels: " + row.url + " does not occur on " + row.page);
  }
  return out;
}

std::vector<LabeledExample> load_labeled_corpus(const std::filesystem::path& corpus_dir,
                                                const std::filesystem::path& labels_file) {
  auto pages = load_dir(corpus_dir);
  auto labels = parse_labels(read_text_file(labels_file));
  return build_examples(pages, labels);
}

}  // namespace docforge
