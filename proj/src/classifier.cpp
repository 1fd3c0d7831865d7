#include "docforge/classifier.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "docforge/error.hpp"
#include "docforge/log.hpp"

namespace docforge {
namespace {

constexpr double kInitialStep = 0.1;

using Vec = std::array<double, kFeatureCount>;

Vec standardize(const LinearModel& model, const FeatureVector& features) {
  Vec x = features.values();
  for (std::size_t k = 0; k < kFeatureCount; ++k) x[k] = (x[k] - model.means[k]) / model.scales[k];
  return x;
}

double dot(const Vec& a, const Vec& b) {
  double sum = 0.0;
  for (std::size_t k = 0; k < kFeatureCount; ++k) sum += a[k] * b[k];
  return sum;
}

LinearModel constant_model(bool label) {
  LinearModel m;
  m.bias = label ? 1.0 : -1.0;
  return m;
}

}  // namespace

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::below(std::uint64_t bound) {
  // Rejection keeps the result unbiased.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t r;
  do {
    r = next();
  } while (r >= limit);
  return r % bound;
}

void shuffle_indices(std::vector<std::size_t>& indices, SplitMix64& rng) {
  for (std::size_t i = indices.size(); i > 1; --i) {
    auto j = static_cast<std::size_t>(rng.below(i));
    std::swap(indices[i - 1], indices[j]);
  }
}

LinearModel train(std::span<const LabeledExample> examples, const TrainOptions& options) {
  std::size_t positives = 0;
  for (const auto& e : examples) positives += e.label ? 1 : 0;
  if (positives == 0 || positives == examples.size()) {
    throw Error("training data must contain both positive and negative examples");
  }
  if (options.epochs == 0) throw Error("epochs must be positive");
  if (!(options.reg > 0.0)) throw Error("reg must be positive");

  const auto n = static_cast<double>(examples.size());
  LinearModel model;
  for (const auto& e : examples) {
    auto v = e.features.values();
    for (std::size_t k = 0; k < kFeatureCount; ++k) model.means[k] += v[k];
  }
  for (auto& m : model.means) m /= n;
  Vec variance{};
  for (const auto& e : examples) {
    auto v = e.features.values();
    for (std::size_t k = 0; k < kFeatureCount; ++k) {
      double d = v[k] - model.means[k];
      variance[k] += d * d;
    }
  }
  for (std::size_t k = 0; k < kFeatureCount; ++k) {
    double sd = std::sqrt(variance[k] / n);
    model.scales[k] = sd > 1e-12 ? sd : 1.0;
  }

  std::vector<Vec> xs;
  xs.reserve(examples.size());
  for (const auto& e : examples) xs.push_back(standardize(model, e.features));

  SplitMix64 rng(options.seed);
  std::vector<std::size_t> order(examples.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::uint64_t step = 0;
  for (std::size_t epoch = 0; epoch < options.epochs; ++epoch) {
    shuffle_indices(order, rng);
    for (auto i : order) {
      ++step;
      const double eta = kInitialStep / (1.0 + kInitialStep * options.reg * static_cast<double>(step));
      const double y = examples[i].label ? 1.0 : -1.0;
      const double margin = y * (dot(model.weights, xs[i]) + model.bias);
      for (auto& w : model.weights) w *= (1.0 - eta * options.reg);
      if (margin < 1.0) {
        for (std::size_t k = 0; k < kFeatureCount; ++k) model.weights[k] += eta * y * xs[i][k];
        model.bias += eta * y;
      }
    }
  }
  return model;
}

double decision_value(const LinearModel& model, const FeatureVector& features) {
  return dot(model.weights, standardize(model, features)) + model.bias;
}

bool predict(const LinearModel& model, const FeatureVector& features) {
  return decision_value(model, features) > 0.0;
}

Metrics metrics_from_counts(std::size_t tp, std::size_t fp, std::size_t tn, std::size_t fn) {
  Metrics m;
  m.true_positives = tp;
  m.false_positives = fp;
  m.true_negatives = tn;
  m.false_negatives = fn;
  const std::size_t total = tp + fp + tn + fn;
  m.accuracy = total == 0 ? 0.0 : static_cast<double>(tp + tn) / static_cast<double>(total);
  // F1 = 2TP / (2TP + FP + FN); zero when there is no true positive.
  m.f1 = tp == 0 ? 0.0 : 2.0 * static_cast<double>(tp) / static_cast<double>(2 * tp + fp + fn);
  return m;
}

Metrics evaluate(const LinearModel& model, std::span<const LabeledExample> examples) {
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
  for (const auto& e : examples) {
    bool p = predict(model, e.features);
    if (p && e.label) ++tp;
    else if (p && !e.label) ++fp;
    else if (!p && !e.label) ++tn;
    else ++fn;
  }
  return metrics_from_counts(tp, fp, tn, fn);
}

std::vector<std::size_t> assign_folds(std::span<const LabeledExample> examples, std::size_t folds,
                                      std::uint64_t seed) {
  if (folds < 2) throw Error("folds must be at least 2");
  if (examples.size() < folds) throw Error("fewer examples than folds");
  std::vector<std::size_t> positives, negatives;
  for (std::size_t i = 0; i < examples.size(); ++i) (examples[i].label ? positives : negatives).push_back(i);

  SplitMix64 rng(seed);
  std::vector<std::size_t> fold_of(examples.size(), 0);
  if (positives.size() < folds || negatives.size() < folds) {
    log::warn("too few examples of one class for stratified folds; using an unstratified split");
    std::vector<std::size_t> all(examples.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    shuffle_indices(all, rng);
    for (std::size_t r = 0; r < all.size(); ++r) fold_of[all[r]] = r % folds;
    return fold_of;
  }
  shuffle_indices(positives, rng);
  shuffle_indices(negatives, rng);
  // Negatives continue the round robin where positives stopped so fold sizes
  // differ by at most one.
  for (std::size_t r = 0; r < positives.size(); ++r) fold_of[positives[r]] = r % folds;
  const std::size_t offset = positives.size() % folds;
  for (std::size_t r = 0; r < negatives.size(); ++r) fold_of[negatives[r]] = (offset + r) % folds;
  return fold_of;
}

Metrics cross_validate(std::span<const LabeledExample> examples, std::size_t folds, std::uint64_t seed,
                       TrainOptions options) {
  auto fold_of = assign_folds(examples, folds, seed);
  options.seed = seed;
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
  for (std::size_t f = 0; f < folds; ++f) {
    std::vector<LabeledExample> training, held_out;
    for (std::size_t i = 0; i < examples.size(); ++i) {
      (fold_of[i] == f ? held_out : training).push_back(examples[i]);
    }
    std::size_t train_pos = 0;
    for (const auto& e : training) train_pos += e.label ? 1 : 0;
    LinearModel model;
    if (train_pos == 0 || train_pos == training.size()) {
      // Single-class training split: fall back to predicting that class.
      model = constant_model(train_pos != 0);
    } else {
      model = train(training, options);
    }
    auto m = evaluate(model, held_out);
    tp += m.true_positives;
    fp += m.false_positives;
    tn += m.true_negatives;
    fn += m.false_negatives;
  }
  return metrics_from_counts(tp, fp, tn, fn);
}

std::string model_to_json(const LinearModel& model) {
  nlohmann::ordered_json doc;
  doc["feature_order"] = kFeatureNames;
  doc["weights"] = model.weights;
  doc["bias"] = model.bias;
  doc["means"] = model.means;
  doc["scales"] = model.scales;
  return doc.dump(2) + "\n";
}

LinearModel model_from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(std::string("model file is not valid JSON: ") + e.what());
  }
  auto read_vec = [&](const char* key) {
    if (!doc.contains(key) || !doc[key].is_array() || doc[key].size() != kFeatureCount) {
      throw Error(std::string("model field '") + key + "' must be an array of " +
                  std::to_string(kFeatureCount) + " numbers");
    }
    std::array<double, kFeatureCount> out{};
    for (std::size_t k = 0; k < kFeatureCount; ++k) {
      if (!doc[key][k].is_number()) throw Error(std::string("model field '") + key + "' has a non-number");
      out[k] = doc[key][k].get<double>();
    }
    return out;
  };
  if (doc.contains("feature_order")) {
    const auto& order = doc["feature_order"];
    bool ok = order.is_array() && order.size() == kFeatureCount;
    for (std::size_t k = 0; ok && k < kFeatureCount; ++k) {
      ok = order[k].is_string() && order[k].get<std::string>() == kFeatureNames[k];
    }
    if (!ok) throw Error("model feature_order does not match this build");
  }
  LinearModel model;
  model.weights = read_vec("weights");
  model.means = read_vec("means");
  model.scales = read_vec("scales");
  if (!doc.contains("bias") || !doc["bias"].is_number()) throw Error("model field 'bias' missing");
  model.bias = doc["bias"].get<double>();
  for (double s : model.scales) {
    if (!(s > 0.0)) throw Error("model scales must be strictly positive");
  }
  return model;
}

void save_model(const LinearModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write model file " + path.string());
  out << model_to_json(model);
}

LinearModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read model file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return model_from_json(ss.str());
}

}  // namespace docforge
