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

#ifndef SENT2SPAN_INFERENCE_H_
#define SENT2SPAN_INFERENCE_H_

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sent2span/scorer.h"
#include "sent2span/span_engine.h"
#include "sent2span/types.h"
#include "sent2span/weak_labels.h"

namespace sent2span {

// Greedy top-K selection. Candidates with contribution <= 0 are dropped, the
// rest sorted by contribution descending (ties: smaller start, then shorter),
// and a span is taken iff it overlaps nothing already taken.
std::vector<Span> TopKSelect(std::vector<ScoredSpan> candidates, int k);

// Sentence gate deciding whether span inference runs at all.
enum class Gate { kPredicted, kCrowdAgg, kCrowdMajor, kCrowdMinor };

std::string_view GateName(Gate gate);
Gate ParseGate(std::string_view name);
// The label mode behind a crowd gate.
LabelMode GateLabelMode(Gate gate);

struct DetectionResult {
  std::string doc_id;
  int sent_index = 0;
  PicoType pico_type = PicoType::kPopulation;
  std::vector<Span> selected;
  bool sentence_positive = false;
  Gate gate = Gate::kPredicted;
  // Diagnostics; only filled when the sentence passed the gate.
  std::optional<MspResult> msp;
};

// Span detection for one sentence given an already decided gate value.
DetectionResult DetectWithGate(const SentenceRecord &sentence,
                               const Scorer &scorer, PicoType type,
                               const SpanConfig &config, Gate gate,
                               bool gate_value);

// Evaluates |gate| (classifier prediction or crowd label from |corpus|) and
// runs masked span prediction plus top-K selection on positive sentences.
DetectionResult DetectSpans(const Corpus &corpus,
                            const SentenceRecord &sentence,
                            const Scorer &scorer, PicoType type,
                            const SpanConfig &config, Gate gate);

// Runs DetectSpans over every sentence. Work is spread over |threads| workers;
// the output order is always the corpus order.
std::vector<DetectionResult> DetectCorpus(const Corpus &corpus,
                                          const Scorer &scorer, PicoType type,
                                          const SpanConfig &config, Gate gate,
                                          int threads = 1);

// Prediction file: {doc_id, sent_index, pico, spans, gate, positive,
// config_hash}. |config_hash| is omitted when empty.
void WritePredictions(const std::vector<DetectionResult> &results,
                      const std::string &config_hash, std::ostream &out);
std::vector<DetectionResult> ReadPredictions(const std::string &path);

// Scored-span dump: {doc_id, sent_index, pico, base_score, total_candidates,
// eliminated, spans: [{start, end, contribution}]}, gated sentences only.
void WriteScoredSpans(const std::vector<DetectionResult> &results,
                      const std::string &config_hash, std::ostream &out);

}  // namespace sent2span

#endif  // SENT2SPAN_INFERENCE_H_
