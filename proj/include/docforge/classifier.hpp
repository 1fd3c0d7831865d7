#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "docforge/harvest.hpp"

namespace docforge {

// Linear max-margin classifier over standardized features:
//   score(x) = weights . ((x - means) / scales) + bias
struct LinearModel {
  std::array<double, kFeatureCount> weights{};
  double bias = 0.0;
  std::array<double, kFeatureCount> means{};
  std::array<double, kFeatureCount> scales{1, 1, 1, 1, 1, 1, 1, 1, 1, 1};

  friend bool operator==(const LinearModel&, const LinearModel&) = default;
};

struct LabeledExample {
  FeatureVector features;
  bool label = false;  // true: the URL is a web API call
};

struct TrainOptions {
  std::size_t epochs = 200;
  double reg = 0.01;
  std::uint64_t seed = 42;
};

// Hinge loss + L2 penalty minimized by stochastic subgradient descent with a
// seed-derived visiting order. Step t = 1, 2, ... uses the rate
// 0.1 / (1 + 0.1 * reg * t). Each epoch reshuffles the previous epoch's
// visiting order (the first starts from 0..n-1). Bit-reproducible for equal inputs. Throws
// Error unless both labels are present.
LinearModel train(std::span<const LabeledExample> examples, const TrainOptions& options = {});

double decision_value(const LinearModel& model, const FeatureVector& features);

// Positive iff the decision value is strictly greater than zero.
bool predict(const LinearModel& model, const FeatureVector& features);

struct Metrics {
  double accuracy = 0.0;
  double f1 = 0.0;
  std::size_t true_positives = 0;
  std::size_t false_positives = 0;
  std::size_t true_negatives = 0;
  std::size_t false_negatives = 0;
};

Metrics metrics_from_counts(std::size_t tp, std::size_t fp, std::size_t tn, std::size_t fn);
Metrics evaluate(const LinearModel& model, std::span<const LabeledExample> examples);

// Fold index per example. Stratified by label unless either class has fewer
// members than folds, in which case a plain shuffled split is used.
std::vector<std::size_t> assign_folds(std::span<const LabeledExample> examples, std::size_t folds,
                                      std::uint64_t seed);

// k-fold cross validation; each fold trains with `options` (its seed is
// replaced by `seed`) and metrics are pooled over all held-out predictions.
Metrics cross_validate(std::span<const LabeledExample> examples, std::size_t folds, std::uint64_t seed,
                       TrainOptions options = {});

std::string model_to_json(const LinearModel& model);
LinearModel model_from_json(std::string_view text);
void save_model(const LinearModel& model, const std::filesystem::path& path);
LinearModel load_model(const std::filesystem::path& path);

// Deterministic generator used for shuffling; independent of the standard
// library's distribution implementations.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  // Uniform in [0, bound).
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t state_;
};

// Fisher-Yates from the back: for i = n-1 .. 1, swap(i, below(i + 1)).
void shuffle_indices(std::vector<std::size_t>& indices, SplitMix64& rng);

}  // namespace docforge
