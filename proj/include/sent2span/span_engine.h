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

// Masked span prediction.
//
// Every candidate span <i,j> of at most M tokens is masked and the sentence
// re-scored; the span's contribution is base score minus masked score.
// Candidates are processed shortest first. Length-1 spans with negative
// contribution seed the eliminated set RM, and a longer span joins RM (and
// is never scored) as soon as it splits into two members of RM.

#ifndef SENT2SPAN_SPAN_ENGINE_H_
#define SENT2SPAN_SPAN_ENGINE_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sent2span/scorer.h"
#include "sent2span/types.h"

namespace sent2span {

enum class ScoreMode { kLogit, kProbability };

std::string_view ScoreModeName(ScoreMode mode);
ScoreMode ParseScoreMode(std::string_view name);

struct SpanConfig {
  // Maximum span length M per type.
  std::map<PicoType, int> max_span_len = {{PicoType::kPopulation, 20},
                                          {PicoType::kIntervention, 7},
                                          {PicoType::kOutcome, 10}};
  // Number of selected spans K per type.
  std::map<PicoType, int> top_k = {{PicoType::kPopulation, 2},
                                   {PicoType::kIntervention, 2},
                                   {PicoType::kOutcome, 2}};
  ScoreMode score_mode = ScoreMode::kLogit;
  // Sentence classification threshold for the predicted gate.
  double threshold = 0.5;
  int batch_size = 64;
  // Nested span elimination; off only for ablations.
  bool eliminate = true;

  int MaxSpanLength(PicoType type) const;
  int TopK(PicoType type) const;
  // Throws ConfigError unless M >= 1, K >= 1 and batch_size >= 1.
  void Validate() const;
};

struct ScoredSpan {
  Span span;
  double base_score = 0.0;
  double masked_score = 0.0;
  double contribution = 0.0;  // base_score - masked_score
};

struct EliminationSet {
  SpanSet eliminated;
  int singleton_scored = 0;

  bool contains(const Span &span) const { return eliminated.count(span) > 0; }
};

// M(2N - M + 1) / 2 for M <= N, else N(N + 1) / 2.
std::int64_t CandidateCount(int num_tokens, int max_span_len);

// All <i,j> with j - i <= M, ordered by length then start.
std::vector<Span> EnumerateCandidates(int num_tokens, int max_span_len);

// One step of nested span elimination for a span of length >= 2: adds
// |span| to |rm| and returns true iff some split point p in (i, j) has both
// <i,p> and <p,j> in |rm|.
bool TryEliminate(SpanSet &rm, const Span &span);

// Computes RM over all candidates of length <= |max_span_len|. |singletons|
// must be <0,1>, ..., <N-1,N> and each must have an entry in
// |contributions|; otherwise PreconditionError.
EliminationSet EliminateNested(const std::map<Span, double> &contributions,
                               const std::vector<Span> &singletons,
                               int max_span_len);

struct MspResult {
  ScoreResult base;
  std::vector<ScoredSpan> scored;  // non-eliminated candidates
  EliminationSet elimination;
  int num_tokens = 0;              // effective length used for enumeration
  std::int64_t total_candidates = 0;
};

// Full masked span prediction pass over one sentence. Spans are enumerated
// over the first base.effective_length tokens only.
MspResult ScoreAllCandidates(const Scorer &scorer,
                             std::span<const std::string> tokens,
                             PicoType type, const SpanConfig &config);

}  // namespace sent2span

#endif  // SENT2SPAN_SPAN_ENGINE_H_
