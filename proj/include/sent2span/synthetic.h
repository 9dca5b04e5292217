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

// Synthetic planted-phrase corpus with simulated crowd annotators.
//
// Positive sentences embed one 2-4 token keyword phrase inside filler text;
// the expert layer marks exactly that phrase. Each document gets a fixed
// annotator pool. Annotators find the phrase with probability |hit_rate|
// (with occasional one-token boundary noise) and mark a random short span in
// negative sentences with probability |false_mark_rate|. The aggregated
// layer is a token-level majority vote over the document's annotators.

#ifndef SENT2SPAN_SYNTHETIC_H_
#define SENT2SPAN_SYNTHETIC_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sent2span/types.h"

namespace sent2span {

struct SyntheticConfig {
  int sentences = 500;
  int sentences_per_doc = 5;
  double positive_rate = 0.5;
  int annotators_per_doc = 3;
  double hit_rate = 0.6;
  double boundary_noise = 0.3;
  double false_mark_rate = 0.08;
  int min_filler = 6;
  int max_filler = 14;
  PicoType pico_type = PicoType::kPopulation;
  std::uint64_t seed = 7;
  std::string doc_prefix = "syn";
};

Corpus GenerateSyntheticCorpus(const SyntheticConfig &config);

// Splits by document: the first |train_fraction| of documents go to the
// first corpus (split train), the rest to the second (split test).
std::pair<Corpus, Corpus> SplitByDocument(const Corpus &corpus,
                                          double train_fraction);

// The keyword phrases the generator plants.
const std::vector<std::vector<std::string>> &SyntheticPhrases();

}  // namespace sent2span

#endif  // SENT2SPAN_SYNTHETIC_H_
