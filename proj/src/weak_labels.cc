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

#include "sent2span/weak_labels.h"

namespace sent2span {

std::string_view LabelModeName(LabelMode mode) {
  switch (mode) {
    case LabelMode::kAgg: return "agg";
    case LabelMode::kMajor: return "major";
    case LabelMode::kMinor: return "minor";
  }
  return "unknown";
}

LabelMode ParseLabelMode(std::string_view name) {
  if (name == "agg") return LabelMode::kAgg;
  if (name == "major") return LabelMode::kMajor;
  if (name == "minor") return LabelMode::kMinor;
  throw ConfigError("unknown label mode '" + std::string(name) +
                    "' (expected agg, major or minor)");
}

bool DeriveSentenceLabel(const SentenceRecord &sentence, PicoType type,
                         LabelMode mode, int document_annotators,
                         const std::optional<SpanSet> &aggregated_spans) {
  switch (mode) {
    case LabelMode::kMinor:
      return sentence.AnnotatorsMarking(type) >= 1;
    case LabelMode::kMajor:
      // Strict: exactly half is not a majority.
      return 2 * sentence.AnnotatorsMarking(type) > document_annotators;
    case LabelMode::kAgg: {
      if (!aggregated_spans) {
        throw ConfigError("label mode 'agg' needs an aggregated span layer "
                          "(document '" + sentence.doc_id + "')");
      }
      Span whole{0, sentence.num_tokens()};
      for (const Span &span : *aggregated_spans) {
        if (span.overlaps(whole)) return true;
      }
      return false;
    }
  }
  return false;
}

bool DeriveSentenceLabel(const Corpus &corpus, const SentenceRecord &sentence,
                         PicoType type, LabelMode mode) {
  return DeriveSentenceLabel(
      sentence, type, mode, corpus.DocumentAnnotatorCount(sentence.doc_id, type),
      sentence.AggregatedSpans(type));
}

std::vector<LabelRow> LabelCorpus(const Corpus &corpus, PicoType type,
                                  LabelMode mode) {
  std::vector<LabelRow> rows;
  rows.reserve(corpus.sentences.size());
  for (const SentenceRecord &s : corpus.sentences) {
    rows.push_back({s.doc_id, s.sent_index, type, mode,
                    DeriveSentenceLabel(corpus, s, type, mode)});
  }
  return rows;
}

}  // namespace sent2span
