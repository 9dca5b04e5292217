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

// Linear two-class sentence scorer over hashed unigram + bigram counts,
// trained with softmax cross-entropy by mini-batch gradient descent.

#ifndef SENT2SPAN_BASELINE_SCORER_H_
#define SENT2SPAN_BASELINE_SCORER_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"
#include "sent2span/scorer.h"
#include "sent2span/types.h"

namespace sent2span {

// Row layout of the weight matrix and bias vector.
inline constexpr int kPositiveClass = 0;
inline constexpr int kNegativeClass = 1;

using ClassWeights = Eigen::Matrix<double, 2, Eigen::Dynamic>;

// (index, value) pairs sorted by index, duplicates merged.
using SparseFeatures = std::vector<std::pair<int, double>>;

struct BaselineScorerModel {
  PicoType pico_type = PicoType::kPopulation;
  int feature_dim = 1 << 18;
  ClassWeights weights;  // 2 x feature_dim
  Eigen::Vector2d bias = Eigen::Vector2d::Zero();
  std::uint64_t hash_seed = 0;
  std::string mask_token = "[MASK]";
  // Tokens beyond this position are ignored and reported as truncated.
  int max_length = 512;

  // All-zero parameters.
  static BaselineScorerModel Zero(PicoType type, int feature_dim,
                                  std::uint64_t hash_seed = 0);

  // Class scores for already featurized input.
  Eigen::Vector2d Scores(const SparseFeatures &features) const;

  // Sparse JSON (only non-zero weight columns are stored); reloads to
  // bit-identical scores.
  nlohmann::json ToJson() const;
  static BaselineScorerModel FromJson(const nlohmann::json &value);
  void Save(const std::string &path) const;
  static BaselineScorerModel Load(const std::string &path);
};

// Lowercased unigrams and bigrams (with sentence boundary markers), hashed
// into [0, feature_dim). Only the first |max_length| tokens are used.
SparseFeatures Featurize(std::span<const std::string> tokens, int feature_dim,
                         std::uint64_t hash_seed, int max_length = 512);

class BaselineScorer : public Scorer {
 public:
  explicit BaselineScorer(BaselineScorerModel model);

  PicoType pico_type() const override { return model_.pico_type; }
  const BaselineScorerModel &model() const { return model_; }

 protected:
  std::vector<ScoreResult> DoScoreBatch(
      std::span<const std::string> tokens,
      std::span<const std::optional<Span>> masks) const override;

 private:
  BaselineScorerModel model_;
};

struct LabeledSentence {
  std::vector<std::string> tokens;
  int label = 0;  // 1 = positive sentence
};

struct TrainConfig {
  int epochs = 10;
  double learning_rate = 0.5;
  double l2 = 1e-4;
  std::uint64_t seed = 13;
  int feature_dim = 1 << 18;
  int batch_size = 16;
};

struct TrainingHistory {
  std::vector<double> train_loss;  // objective after each epoch
  std::vector<double> dev_loss;    // mean cross-entropy, if dev supplied
  int selected_epoch = 0;          // 0 = initialization
};

// Throws TrainingError when either class is missing or the loss becomes
// non-finite. With a non-empty |dev| the returned parameters are those of the
// epoch with the lowest dev cross-entropy; otherwise the final epoch.
BaselineScorerModel TrainBaseline(std::span<const LabeledSentence> train,
                                  PicoType type, const TrainConfig &config,
                                  std::span<const LabeledSentence> dev = {},
                                  TrainingHistory *history = nullptr);

// Mean cross-entropy over |examples| plus (l2 / 2) * ||W||^2.
double TrainingObjective(const BaselineScorerModel &model,
                         std::span<const LabeledSentence> examples, double l2);

struct ModelGradient {
  ClassWeights weights;
  Eigen::Vector2d bias;
};

// Analytic gradient of TrainingObjective.
ModelGradient ObjectiveGradient(const BaselineScorerModel &model,
                                std::span<const LabeledSentence> examples,
                                double l2);

}  // namespace sent2span

#endif  // SENT2SPAN_BASELINE_SCORER_H_
