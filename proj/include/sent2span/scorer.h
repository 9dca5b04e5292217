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

// Sentence scorer interface. A scorer maps a token sequence, optionally with
// one span replaced by mask tokens, to a pair of pre-softmax class scores
//
//   score(y | h) = W h + b,   p(y | h) = softmax(score(y | h)),
//
// where h is whatever representation the implementation uses.

#ifndef SENT2SPAN_SCORER_H_
#define SENT2SPAN_SCORER_H_

#include <atomic>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sent2span/types.h"

namespace sent2span {

struct ScoreResult {
  double positive_score = 0.0;
  double negative_score = 0.0;
  double probability = 0.5;  // p(y = 1)
  int effective_length = 0;  // tokens the scorer actually consumed

  bool operator==(const ScoreResult &) const = default;
};

// exp(pos) / (exp(pos) + exp(neg)), computed without overflow.
double PositiveProbability(double positive_score, double negative_score);

ScoreResult MakeScoreResult(double positive_score, double negative_score,
                            int effective_length);

// Replaces each token in [mask.start, mask.end) by |mask_token|, one mask
// token per masked token.
std::vector<std::string> ApplyMask(std::span<const std::string> tokens,
                                   const Span &mask,
                                   const std::string &mask_token);

class Scorer {
 public:
  virtual ~Scorer() = default;

  virtual PicoType pico_type() const = 0;

  // Throws PreconditionError when |tokens| is empty or |mask| is not a valid
  // span for it.
  ScoreResult Score(std::span<const std::string> tokens,
                    std::optional<Span> mask = std::nullopt) const;

  // One result per entry of |masks|, in the same order.
  std::vector<ScoreResult> ScoreBatch(
      std::span<const std::string> tokens,
      std::span<const std::optional<Span>> masks) const;

  // Number of masked sequences scored so far.
  long masked_calls() const { return masked_calls_.load(); }
  long total_calls() const { return total_calls_.load(); }

 protected:
  virtual std::vector<ScoreResult> DoScoreBatch(
      std::span<const std::string> tokens,
      std::span<const std::optional<Span>> masks) const = 0;

 private:
  mutable std::atomic<long> masked_calls_{0};
  mutable std::atomic<long> total_calls_{0};
};

inline ScoreResult ScoreSentence(const Scorer &scorer,
                                 std::span<const std::string> tokens,
                                 std::optional<Span> mask = std::nullopt) {
  return scorer.Score(tokens, mask);
}

struct SentencePrediction {
  bool label;
  double probability;
};

// label = probability >= threshold.
SentencePrediction PredictSentenceClass(const Scorer &scorer,
                                        std::span<const std::string> tokens,
                                        double threshold = 0.5);

}  // namespace sent2span

#endif  // SENT2SPAN_SCORER_H_
