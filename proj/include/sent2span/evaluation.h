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

// Token-wise span metrics, sentence classification metrics, the BE/OE/FP/FN
// error taxonomy and candidate reduction statistics.

#ifndef SENT2SPAN_EVALUATION_H_
#define SENT2SPAN_EVALUATION_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "sent2span/inference.h"
#include "sent2span/types.h"

namespace sent2span {

struct TokenMetrics {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  static TokenMetrics FromCounts(std::int64_t tp, std::int64_t fp,
                                 std::int64_t fn);
  // Micro-averaging: sums the counts and recomputes the ratios.
  TokenMetrics &operator+=(const TokenMetrics &other);
};

// Compares the token sets covered by |predicted| and |gold| (overlapping
// spans are unioned). Throws PreconditionError for spans invalid for
// |num_tokens|.
TokenMetrics TokenPrf(const SpanSet &predicted, const SpanSet &gold,
                      int num_tokens);

struct SentenceMetrics {
  std::int64_t tp = 0, fp = 0, fn = 0, tn = 0;
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Throws PreconditionError on length mismatch.
SentenceMetrics ComputeSentenceMetrics(const std::vector<bool> &predicted,
                                       const std::vector<bool> &gold);

struct ErrorCounts {
  std::int64_t boundary = 0;
  std::int64_t overlap = 0;
  std::int64_t false_positive = 0;
  std::int64_t false_negative = 0;

  ErrorCounts &operator+=(const ErrorCounts &other);
  bool operator==(const ErrorCounts &) const = default;
};

// Each predicted span is matched to the gold span it overlaps most (ties:
// earliest). No overlap is FP; exact match is no error; containment in
// either direction is BE; a straddle is OE. Gold spans touched by no
// prediction are FN.
ErrorCounts ClassifyErrors(const SpanSet &predicted, const SpanSet &gold);

struct ReductionStats {
  std::int64_t total_candidates = 0;
  std::int64_t eliminated = 0;
  double ratio = 0.0;
};

// Throws PreconditionError when any eliminated count exceeds its total.
ReductionStats ComputeReductionStats(
    std::span<const std::pair<std::int64_t, std::int64_t>> per_sentence);

struct EvalReport {
  PicoType pico_type = PicoType::kPopulation;
  std::string label;  // free-form run name for tables
  int sentences = 0;
  TokenMetrics tokens;
  SentenceMetrics sentence;
  ErrorCounts errors;
  std::optional<ReductionStats> reduction;
  nlohmann::json run_config;  // embedded verbatim when known

  nlohmann::json ToJson() const;
  static EvalReport FromJson(const nlohmann::json &value);
  // Plain-text table in the layout of the detection / sentence / error
  // tables.
  std::string RenderText() const;
};

// Joins predictions to the expert layer of |corpus| by (doc_id, sent_index).
// Sentences without a prediction count as negative with no spans. Throws
// DataError for predictions naming unknown sentences or spans out of range.
EvalReport Evaluate(const Corpus &corpus,
                    const std::vector<DetectionResult> &predictions,
                    PicoType type);

// Reduction statistics from a scored-span dump file.
ReductionStats ReductionFromDump(const std::string &path);

// Side-by-side table over several reports (one row per report).
std::string RenderComparison(const std::vector<EvalReport> &reports);

}  // namespace sent2span

#endif  // SENT2SPAN_EVALUATION_H_
