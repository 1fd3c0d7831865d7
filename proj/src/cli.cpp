#include "docforge/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "docforge/classifier.hpp"
#include "docforge/corpus.hpp"
#include "docforge/diff.hpp"
#include "docforge/error.hpp"
#include "docforge/log.hpp"
#include "docforge/pipeline.hpp"
#include "docforge/specio.hpp"

#ifndef DOCFORGE_DEFAULT_MODEL
#define DOCFORGE_DEFAULT_MODEL "models/default_model.json"
#endif

namespace docforge {
namespace {

struct RunConfig {
  std::string seed;
  std::string input_dir;
  std::string out;
  std::string model = DOCFORGE_DEFAULT_MODEL;
  bool probe = false;
  std::size_t max_pages = 200;
  std::size_t max_depth = 3;
  std::string cache_dir;

  std::string corpus;
  std::string labels;
  std::size_t epochs = 200;
  double reg = 0.01;
  std::uint64_t train_seed = 42;
  std::size_t folds = 10;

  std::string generated;
  std::string existing;

  int verbose = 0;
  bool quiet = false;
};

std::string fixed3(double v) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(3) << v;
  return s.str();
}

int run_extract(const RunConfig& config, std::ostream& out) {
  std::vector<Page> pages;
  std::string source;
  if (!config.seed.empty()) {
    CrawlConfig crawl_config;
    crawl_config.seed = config.seed;
    crawl_config.max_pages = config.max_pages;
    crawl_config.max_depth = config.max_depth;
    if (!config.cache_dir.empty()) crawl_config.cache_dir = config.cache_dir;
    pages = crawl(crawl_config);
    source = config.seed;
  } else {
    pages = load_dir(config.input_dir);
    source = std::filesystem::path(config.input_dir).lexically_normal().filename().string();
    if (source.empty()) source = std::filesystem::path(config.input_dir).lexically_normal().parent_path().filename().string();
  }
  auto model = load_model(config.model);
  ExtractOptions options;
  options.probe = config.probe;
  options.source = source;
  ExtractResult result;
  try {
    result = extract_spec(pages, model, options);
  } catch (const NoApiUrlsError& e) {
    log::error(e.what());
    out << "pages: " << pages.size() << "\n";
    return kExitNothingExtracted;
  }
  write_text_file(config.out, emit_spec(result.spec));
  std::size_t operations = 0;
  for (const auto& e : result.spec.endpoints) operations += e.methods.size();
  out << "pages: " << result.pages << "\n"
      << "candidates: " << result.candidates << "\n"
      << "positives: " << result.api_urls.size() << "\n"
      << "base url: " << result.spec.base.full() << "\n"
      << "templates: " << result.spec.endpoints.size() << "\n"
      << "endpoints: " << operations << "\n";
  return kExitOk;
}

int run_train(const RunConfig& config, std::ostream& out) {
  auto examples = load_labeled_corpus(config.corpus, config.labels);
  TrainOptions options{config.epochs, config.reg, config.train_seed};
  auto model = train(examples, options);
  save_model(model, config.out);
  auto m = evaluate(model, examples);
  out << "examples: " << examples.size() << "\n"
      << "training accuracy: " << fixed3(m.accuracy) << "\n"
      << "training f1: " << fixed3(m.f1) << "\n";
  return kExitOk;
}

int run_cv(const RunConfig& config, std::ostream& out) {
  if (config.folds < 2) throw Error("--folds must be at least 2");
  auto examples = load_labeled_corpus(config.corpus, config.labels);
  if (examples.size() < config.folds) throw Error("fewer examples than folds");
  auto m = cross_validate(examples, config.folds, config.train_seed, TrainOptions{config.epochs, config.reg, config.train_seed});
  out << "examples: " << examples.size() << "\n"
      << "folds: " << config.folds << "\n"
      << "accuracy: " << fixed3(m.accuracy) << "\n"
      << "f1: " << fixed3(m.f1) << "\n"
      << "tp: " << m.true_positives << " fp: " << m.false_positives << " tn: " << m.true_negatives
      << " fn: " << m.false_negatives << "\n";
  return kExitOk;
}

int run_diff(const RunConfig& config, std::ostream& out) {
  auto generated = read_spec_file(config.generated);
  auto existing = read_spec_file(config.existing);
  auto report = diff_specs(generated, existing);
  if (!config.out.empty()) write_text_file(config.out, render_report(report));
  out << render_summary(report);
  return report.clean() ? kExitOk : kExitDiffMismatch;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out) {
  CLI::App app{"Extract OpenAPI-style specs from web API documentation", "docforge"};
  app.require_subcommand(1);
  RunConfig config;
  app.add_flag("-v,--verbose", config.verbose, "More log output (repeatable)");
  app.add_flag("-q,--quiet", config.quiet, "Only log errors");

  auto* extract = app.add_subcommand("extract", "Build a spec from documentation pages");
  auto* seed = extract->add_option("--seed", config.seed, "Documentation URL to crawl from");
  auto* input = extract->add_option("--input-dir", config.input_dir, "Directory of saved HTML pages")
                    ->check(CLI::ExistingDirectory);
  seed->excludes(input);
  extract->add_option("--out", config.out, "Spec file to write")->required();
  extract->add_option("--model", config.model, "Classifier model file")->capture_default_str();
  extract->add_flag("--probe", config.probe, "Send one GET per candidate URL");
  extract->add_option("--max-pages", config.max_pages, "Crawl page limit")->capture_default_str();
  extract->add_option("--max-depth", config.max_depth, "Crawl link depth limit")->capture_default_str();
  extract->add_option("--cache-dir", config.cache_dir, "Cache fetched pages here");

  auto* train_cmd = app.add_subcommand("train", "Train the URL classifier");
  train_cmd->add_option("--corpus", config.corpus, "Directory of HTML pages")->required()->check(CLI::ExistingDirectory);
  train_cmd->add_option("--labels", config.labels, "CSV with page,url,label")->required()->check(CLI::ExistingFile);
  train_cmd->add_option("--out", config.out, "Model file to write")->required();
  train_cmd->add_option("--epochs", config.epochs)->capture_default_str();
  train_cmd->add_option("--reg", config.reg)->capture_default_str();
  train_cmd->add_option("--seed", config.train_seed)->capture_default_str();

  auto* cv_cmd = app.add_subcommand("cv", "Cross-validate the URL classifier");
  cv_cmd->add_option("--corpus", config.corpus, "Directory of HTML pages")->required()->check(CLI::ExistingDirectory);
  cv_cmd->add_option("--labels", config.labels, "CSV with page,url,label")->required()->check(CLI::ExistingFile);
  cv_cmd->add_option("--folds", config.folds)->capture_default_str();
  cv_cmd->add_option("--seed", config.train_seed)->capture_default_str();

  auto* diff_cmd = app.add_subcommand("diff", "Compare a generated spec with an existing one");
  diff_cmd->add_option("--generated", config.generated)->required()->check(CLI::ExistingFile);
  diff_cmd->add_option("--existing", config.existing)->required()->check(CLI::ExistingFile);
  diff_cmd->add_option("--out", config.out, "JSON report file");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    log::error(e.what());
    return kExitUsage;
  }

  const auto previous = log::level();
  if (config.quiet) log::set_level(log::Level::Error);
  else if (config.verbose > 0) log::set_level(log::Level::Debug);
  struct Restore {
    log::Level level;
    ~Restore() { log::set_level(level); }
  } restore{previous};

  try {
    if (extract->parsed()) {
      if (config.seed.empty() && config.input_dir.empty()) {
        log::error("extract needs --seed or --input-dir");
        return kExitUsage;
      }
      return run_extract(config, out);
    }
    if (train_cmd->parsed()) return run_train(config, out);
    if (cv_cmd->parsed()) return run_cv(config, out);
    if (diff_cmd->parsed()) return run_diff(config, out);
  } catch (const NoApiUrlsError& e) {
    log::error(e.what());
    return kExitNothingExtracted;
  } catch (const std::exception& e) {
    log::error(e.what());
    return kExitUsage;
  }
  return kExitUsage;
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, std::cout);
}

}  // namespace docforge
