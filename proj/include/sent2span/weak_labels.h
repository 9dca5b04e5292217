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

// Sentence-level weak labels derived from crowd span annotations.
//
//   minor  at least one annotator marked a span of the type in the sentence.
//   major  strictly more than half of the document's annotators for the type
//          marked a span in the sentence.
//   agg    the externally aggregated span layer intersects the sentence.

#ifndef SENT2SPAN_WEAK_LABELS_H_
#define SENT2SPAN_WEAK_LABELS_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sent2span/types.h"

namespace sent2span {

enum class LabelMode { kAgg, kMajor, kMinor };

std::string_view LabelModeName(LabelMode mode);
LabelMode ParseLabelMode(std::string_view name);

struct SentenceLabel {
  PicoType pico_type;
  LabelMode mode;
  bool value;
};

// |document_annotators| is the number of annotators who labelled the
// sentence's document for |type|. For kAgg, |aggregated_spans| must be set,
// otherwise ConfigError.
bool DeriveSentenceLabel(const SentenceRecord &sentence, PicoType type,
                         LabelMode mode, int document_annotators,
                         const std::optional<SpanSet> &aggregated_spans);

// Convenience overload that pulls the denominator and the aggregated layer
// from the corpus.
bool DeriveSentenceLabel(const Corpus &corpus, const SentenceRecord &sentence,
                         PicoType type, LabelMode mode);

struct LabelRow {
  std::string doc_id;
  int sent_index;
  PicoType pico_type;
  LabelMode mode;
  bool label;
};

std::vector<LabelRow> LabelCorpus(const Corpus &corpus, PicoType type,
                                  LabelMode mode);

}  // namespace sent2span

#endif  // SENT2SPAN_WEAK_LABELS_H_
