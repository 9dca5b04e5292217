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

#include "sent2span/scorer.h"

#include <cmath>

namespace sent2span {

double PositiveProbability(double positive_score, double negative_score) {
  // 1 / (1 + exp(neg - pos)), branching on sign to stay finite.
  double d = positive_score - negative_score;
  if (d >= 0) return 1.0 / (1.0 + std::exp(-d));
  double e = std::exp(d);
  return e / (1.0 + e);
}

ScoreResult MakeScoreResult(double positive_score, double negative_score,
                            int effective_length) {
  return {positive_score, negative_score,
          PositiveProbability(positive_score, negative_score),
          effective_length};
}

std::vector<std::string> ApplyMask(std::span<const std::string> tokens,
                                   const Span &mask,
                                   const std::string &mask_token) {
  std::vector<std::string> masked(tokens.begin(), tokens.end());
  for (int i = mask.start; i < mask.end; ++i) masked[i] = mask_token;
  return masked;
}

ScoreResult Scorer::Score(std::span<const std::string> tokens,
                          std::optional<Span> mask) const {
  std::optional<Span> masks[] = {mask};
  return ScoreBatch(tokens, masks).front();
}

std::vector<ScoreResult> Scorer::ScoreBatch(
    std::span<const std::string> tokens,
    std::span<const std::optional<Span>> masks) const {
  if (tokens.empty()) throw PreconditionError("cannot score an empty sentence");
  const int n = static_cast<int>(tokens.size());
  long masked = 0;
  for (const auto &mask : masks) {
    if (!mask) continue;
    if (!mask->valid_for(n)) {
      throw PreconditionError("mask [" + std::to_string(mask->start) + "," +
                              std::to_string(mask->end) +
                              ") invalid for sentence of " +
                              std::to_string(n) + " tokens");
    }
    ++masked;
  }
  masked_calls_ += masked;
  total_calls_ += static_cast<long>(masks.size());
  if (masks.empty()) return {};
  return DoScoreBatch(tokens, masks);
}

SentencePrediction PredictSentenceClass(const Scorer &scorer,
                                        std::span<const std::string> tokens,
                                        double threshold) {
  ScoreResult result = scorer.Score(tokens);
  return {result.probability >= threshold, result.probability};
}

}  // namespace sent2span
