// Copyright 2026 The Sent2Span Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sent2span/baseline_scorer.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>

#include "sent2span/json_util.h"

namespace sent2span {
namespace {

using json = nlohmann::json;

constexpr std::string_view kBos = "<s>";
constexpr std::string_view kEos = "</s>";

std::string Lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

int HashFeature(std::string_view feature, int dim, std::uint64_t basis) {
  return static_cast<int>(Fnv1a64(feature, basis) %
                          static_cast<std::uint64_t>(dim));
}

// log(exp(a) + exp(b)).
double LogSumExp(double a, double b) {
  double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

double CrossEntropy(const Eigen::Vector2d &scores, int label) {
  int row = label == 1 ? kPositiveClass : kNegativeClass;
  return LogSumExp(scores[0], scores[1]) - scores[row];
}

// d CE / d scores = softmax(scores) - onehot(label).
Eigen::Vector2d ScoreGradient(const Eigen::Vector2d &scores, int label) {
  double p = PositiveProbability(scores[kPositiveClass], scores[kNegativeClass]);
  Eigen::Vector2d g(p, 1.0 - p);
  g[label == 1 ? kPositiveClass : kNegativeClass] -= 1.0;
  return g;
}

struct Featurized {
  SparseFeatures features;
  int label;
};

std::vector<Featurized> FeaturizeAll(std::span<const LabeledSentence> examples,
                                     const BaselineScorerModel &model) {
  std::vector<Featurized> out;
  out.reserve(examples.size());
  for (const LabeledSentence &ex : examples) {
    out.push_back({Featurize(ex.tokens, model.feature_dim, model.hash_seed,
                             model.max_length),
                   ex.label});
  }
  return out;
}

double MeanCrossEntropy(const BaselineScorerModel &model,
                        const std::vector<Featurized> &data) {
  double total = 0.0;
  for (const Featurized &ex : data) {
    total += CrossEntropy(model.Scores(ex.features), ex.label);
  }
  return data.empty() ? 0.0 : total / static_cast<double>(data.size());
}

}  // namespace

BaselineScorerModel BaselineScorerModel::Zero(PicoType type, int feature_dim,
                                              std::uint64_t hash_seed) {
  if (feature_dim <= 0) throw ConfigError("feature_dim must be positive");
  BaselineScorerModel model;
  model.pico_type = type;
  model.feature_dim = feature_dim;
  model.weights = ClassWeights::Zero(2, feature_dim);
  model.hash_seed = hash_seed;
  return model;
}

Eigen::Vector2d BaselineScorerModel::Scores(
    const SparseFeatures &features) const {
  Eigen::Vector2d scores = bias;
  for (const auto &[index, value] : features) {
    scores += weights.col(index) * value;
  }
  return scores;
}

json BaselineScorerModel::ToJson() const {
  json columns = json::array();
  for (int c = 0; c < feature_dim; ++c) {
    if (weights(0, c) != 0.0 || weights(1, c) != 0.0) {
      columns.push_back({c, weights(0, c), weights(1, c)});
    }
  }
  return {{"format", "sent2span-baseline/1"},
          {"pico", PicoName(pico_type)},
          {"feature_dim", feature_dim},
          {"hash_seed", hash_seed},
          {"mask_token", mask_token},
          {"max_length", max_length},
          {"bias", {bias[0], bias[1]}},
          {"weights", columns}};
}

BaselineScorerModel BaselineScorerModel::FromJson(const json &value) {
  try {
    BaselineScorerModel model = Zero(ParsePicoData(value.at("pico").get<std::string>()),
                                     value.at("feature_dim").get<int>(),
                                     value.at("hash_seed").get<std::uint64_t>());
    model.mask_token = value.at("mask_token").get<std::string>();
    model.max_length = value.at("max_length").get<int>();
    model.bias << value.at("bias").at(0).get<double>(),
        value.at("bias").at(1).get<double>();
    for (const json &column : value.at("weights")) {
      int c = column.at(0).get<int>();
      if (c < 0 || c >= model.feature_dim) {
        throw DataError("weight column " + std::to_string(c) + " out of range");
      }
      model.weights(0, c) = column.at(1).get<double>();
      model.weights(1, c) = column.at(2).get<double>();
    }
    if (!model.weights.allFinite() || !model.bias.allFinite()) {
      throw DataError("model parameters are not finite");
    }
    return model;
  } catch (const json::exception &e) {
    throw DataError(std::string("malformed baseline model: ") + e.what());
  }
}

void BaselineScorerModel::Save(const std::string &path) const {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write model file '" + path + "'");
  out << ToJson().dump() << '\n';
}

BaselineScorerModel BaselineScorerModel::Load(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open model file '" + path + "'");
  try {
    return FromJson(json::parse(in));
  } catch (const json::parse_error &e) {
    throw DataError("model file '" + path + "': " + e.what());
  }
}

SparseFeatures Featurize(std::span<const std::string> tokens, int feature_dim,
                         std::uint64_t hash_seed, int max_length) {
  const std::uint64_t basis =
      0xcbf29ce484222325ULL ^ (hash_seed * 0x9e3779b97f4a7c15ULL);
  const std::size_t n =
      std::min<std::size_t>(tokens.size(), static_cast<std::size_t>(max_length));
  std::vector<int> indices;
  indices.reserve(2 * n + 1);
  std::string prev(kBos);
  for (std::size_t i = 0; i <= n; ++i) {
    std::string current = i < n ? Lower(tokens[i]) : std::string(kEos);
    if (i < n) indices.push_back(HashFeature("u:" + current, feature_dim, basis));
    indices.push_back(
        HashFeature("b:" + prev + '\x1f' + current, feature_dim, basis));
    prev = std::move(current);
  }
  std::sort(indices.begin(), indices.end());
  SparseFeatures features;
  for (int index : indices) {
    if (!features.empty() && features.back().first == index) {
      features.back().second += 1.0;
    } else {
      features.emplace_back(index, 1.0);
    }
  }
  return features;
}

BaselineScorer::BaselineScorer(BaselineScorerModel model)
    : model_(std::move(model)) {
  if (model_.feature_dim <= 0 || model_.weights.cols() != model_.feature_dim) {
    throw ConfigError("baseline model weights do not match feature_dim");
  }
}

std::vector<ScoreResult> BaselineScorer::DoScoreBatch(
    std::span<const std::string> tokens,
    std::span<const std::optional<Span>> masks) const {
  const int effective =
      std::min(static_cast<int>(tokens.size()), model_.max_length);
  std::vector<ScoreResult> results;
  results.reserve(masks.size());
  for (const auto &mask : masks) {
    SparseFeatures features =
        mask ? Featurize(ApplyMask(tokens, *mask, model_.mask_token),
                         model_.feature_dim, model_.hash_seed, model_.max_length)
             : Featurize(tokens, model_.feature_dim, model_.hash_seed,
                         model_.max_length);
    Eigen::Vector2d scores = model_.Scores(features);
    results.push_back(MakeScoreResult(scores[kPositiveClass],
                                      scores[kNegativeClass], effective));
  }
  return results;
}

double TrainingObjective(const BaselineScorerModel &model,
                         std::span<const LabeledSentence> examples, double l2) {
  return MeanCrossEntropy(model, FeaturizeAll(examples, model)) +
         0.5 * l2 * model.weights.squaredNorm();
}

ModelGradient ObjectiveGradient(const BaselineScorerModel &model,
                                std::span<const LabeledSentence> examples,
                                double l2) {
  ModelGradient grad{l2 * model.weights, Eigen::Vector2d::Zero()};
  if (examples.empty()) return grad;
  const double scale = 1.0 / static_cast<double>(examples.size());
  for (const Featurized &ex : FeaturizeAll(examples, model)) {
    Eigen::Vector2d g = ScoreGradient(model.Scores(ex.features), ex.label) * scale;
    for (const auto &[index, value] : ex.features) {
      grad.weights.col(index) += g * value;
    }
    grad.bias += g;
  }
  return grad;
}

BaselineScorerModel TrainBaseline(std::span<const LabeledSentence> train,
                                  PicoType type, const TrainConfig &config,
                                  std::span<const LabeledSentence> dev,
                                  TrainingHistory *history) {
  if (config.epochs < 0 || config.batch_size <= 0 ||
      !(config.learning_rate > 0) || config.l2 < 0) {
    throw ConfigError("invalid training configuration");
  }
  int positives = 0;
  for (const LabeledSentence &ex : train) positives += ex.label == 1;
  if (positives == 0 || positives == static_cast<int>(train.size())) {
    throw TrainingError("training data must contain both positive and "
                        "negative sentences (got " + std::to_string(positives) +
                        " positive of " + std::to_string(train.size()) + ")");
  }

  BaselineScorerModel model =
      BaselineScorerModel::Zero(type, config.feature_dim, config.seed);
  const std::vector<Featurized> data = FeaturizeAll(train, model);
  const std::vector<Featurized> dev_data = FeaturizeAll(dev, model);

  TrainingHistory local_history;
  TrainingHistory &hist = history ? *history : local_history;
  hist = {};
  std::optional<BaselineScorerModel> best;
  double best_dev = std::numeric_limits<double>::infinity();

  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(config.seed);

  std::vector<Eigen::Vector2d> batch_grads;
  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    // Fisher-Yates with raw engine output, identical on every platform.
    for (std::size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[rng() % i]);
    }
    for (std::size_t begin = 0; begin < order.size();
         begin += config.batch_size) {
      const std::size_t end =
          std::min(order.size(), begin + static_cast<std::size_t>(config.batch_size));
      const double step = config.learning_rate / static_cast<double>(end - begin);
      batch_grads.clear();
      for (std::size_t k = begin; k < end; ++k) {
        const Featurized &ex = data[order[k]];
        batch_grads.push_back(ScoreGradient(model.Scores(ex.features), ex.label));
      }
      if (config.l2 > 0) model.weights *= 1.0 - config.learning_rate * config.l2;
      for (std::size_t k = begin; k < end; ++k) {
        const Eigen::Vector2d g = batch_grads[k - begin] * step;
        for (const auto &[index, value] : data[order[k]].features) {
          model.weights.col(index) -= g * value;
        }
        model.bias -= g;
      }
    }

    const double loss = MeanCrossEntropy(model, data) +
                        0.5 * config.l2 * model.weights.squaredNorm();
    if (!std::isfinite(loss)) {
      throw TrainingError("training diverged: non-finite loss at epoch " +
                          std::to_string(epoch));
    }
    hist.train_loss.push_back(loss);
    if (!dev_data.empty()) {
      const double dev_loss = MeanCrossEntropy(model, dev_data);
      hist.dev_loss.push_back(dev_loss);
      if (dev_loss < best_dev) {
        best_dev = dev_loss;
        best = model;
        hist.selected_epoch = epoch;
      }
    } else {
      hist.selected_epoch = epoch;
    }
  }
  if (best) return *std::move(best);
  return model;
}

}  // namespace sent2span
