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

#ifndef SENT2SPAN_PIPELINE_H_
#define SENT2SPAN_PIPELINE_H_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "sent2span/baseline_scorer.h"
#include "sent2span/inference.h"
#include "sent2span/scorer.h"
#include "sent2span/span_engine.h"
#include "sent2span/weak_labels.h"

namespace sent2span {

// Everything that determines a run. Serialized into every artifact.
struct RunConfig {
  std::string train_corpus;
  std::string dev_corpus;
  std::string test_corpus;
  PicoType pico_type = PicoType::kPopulation;
  LabelMode label_mode = LabelMode::kMinor;
  Gate gate = Gate::kPredicted;
  SpanConfig span;
  // "baseline" or "external".
  std::string scorer_kind = "baseline";
  std::string model_path;        // baseline: trained model, optional
  std::string scorer_endpoint;   // external: exec:... or tcp:host:port
  TrainConfig train;
  std::uint64_t seed = 13;
  std::string output_dir = ".";
  int threads = 1;

  nlohmann::json ToJson() const;
  // Missing keys keep their defaults. Throws ConfigError on bad values.
  static RunConfig FromJson(const nlohmann::json &value);
  static RunConfig Load(const std::string &path);
  // FNV-1a of the canonical JSON dump, as 16 hex digits.
  std::string Hash() const;
};

// (tokens, weak label) pairs for every non-empty sentence of |corpus|.
std::vector<LabeledSentence> BuildTrainingSet(const Corpus &corpus,
                                              PicoType type, LabelMode mode);

// Baseline: loads config.model_path, or trains on config.train_corpus when no
// model path is set. External: connects to config.scorer_endpoint.
std::unique_ptr<Scorer> MakeScorer(const RunConfig &config);

}  // namespace sent2span

#endif  // SENT2SPAN_PIPELINE_H_
