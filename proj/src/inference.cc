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

#include "sent2span/inference.h"

#include <algorithm>
#include <exception>
#include <ostream>
#include <thread>

#include "json.hpp"
#include "sent2span/json_util.h"

namespace sent2span {

using json = nlohmann::json;

std::vector<Span> TopKSelect(std::vector<ScoredSpan> candidates, int k) {
  if (k < 1) throw PreconditionError("K must be >= 1");
  std::erase_if(candidates,
                [](const ScoredSpan &s) { return !(s.contribution > 0); });
  std::sort(candidates.begin(), candidates.end(),
            [](const ScoredSpan &a, const ScoredSpan &b) {
              if (a.contribution != b.contribution) {
                return a.contribution > b.contribution;
              }
              if (a.span.start != b.span.start) return a.span.start < b.span.start;
              return a.span.length() < b.span.length();
            });
  std::vector<Span> selected;
  for (const ScoredSpan &candidate : candidates) {
    const bool free = std::none_of(
        selected.begin(), selected.end(),
        [&](const Span &s) { return s.overlaps(candidate.span); });
    if (free) selected.push_back(candidate.span);
    if (static_cast<int>(selected.size()) == k) break;
  }
  return selected;
}

std::string_view GateName(Gate gate) {
  switch (gate) {
    case Gate::kPredicted: return "predicted";
    case Gate::kCrowdAgg: return "crowd_agg";
    case Gate::kCrowdMajor: return "crowd_major";
    case Gate::kCrowdMinor: return "crowd_minor";
  }
  return "unknown";
}

Gate ParseGate(std::string_view name) {
  for (Gate gate : {Gate::kPredicted, Gate::kCrowdAgg, Gate::kCrowdMajor,
                    Gate::kCrowdMinor}) {
    if (GateName(gate) == name) return gate;
  }
  throw ConfigError("unknown gate '" + std::string(name) +
                    "' (expected predicted, crowd_agg, crowd_major or "
                    "crowd_minor)");
}

LabelMode GateLabelMode(Gate gate) {
  switch (gate) {
    case Gate::kCrowdAgg: return LabelMode::kAgg;
    case Gate::kCrowdMajor: return LabelMode::kMajor;
    case Gate::kCrowdMinor: return LabelMode::kMinor;
    case Gate::kPredicted: break;
  }
  throw ConfigError("the predicted gate has no label mode");
}

DetectionResult DetectWithGate(const SentenceRecord &sentence,
                               const Scorer &scorer, PicoType type,
                               const SpanConfig &config, Gate gate,
                               bool gate_value) {
  if (scorer.pico_type() != type) {
    throw PreconditionError("scorer is bound to " +
                            std::string(PicoName(scorer.pico_type())) +
                            ", not " + std::string(PicoName(type)));
  }
  DetectionResult result;
  result.doc_id = sentence.doc_id;
  result.sent_index = sentence.sent_index;
  result.pico_type = type;
  result.gate = gate;
  result.sentence_positive = gate_value;
  if (!gate_value || sentence.tokens.empty()) return result;

  const std::vector<std::string> tokens = sentence.token_texts();
  result.msp = ScoreAllCandidates(scorer, tokens, type, config);
  result.selected = TopKSelect(result.msp->scored, config.TopK(type));
  return result;
}

DetectionResult DetectSpans(const Corpus &corpus,
                            const SentenceRecord &sentence,
                            const Scorer &scorer, PicoType type,
                            const SpanConfig &config, Gate gate) {
  bool gate_value = false;
  if (gate == Gate::kPredicted) {
    gate_value = !sentence.tokens.empty() &&
                 PredictSentenceClass(scorer, sentence.token_texts(),
                                      config.threshold)
                     .label;
  } else {
    gate_value = DeriveSentenceLabel(corpus, sentence, type, GateLabelMode(gate));
  }
  return DetectWithGate(sentence, scorer, type, config, gate, gate_value);
}

std::vector<DetectionResult> DetectCorpus(const Corpus &corpus,
                                          const Scorer &scorer, PicoType type,
                                          const SpanConfig &config, Gate gate,
                                          int threads) {
  config.Validate();
  const std::size_t n = corpus.sentences.size();
  std::vector<DetectionResult> results(n);
  threads = std::max(1, std::min<int>(threads, static_cast<int>(n)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      results[i] = DetectSpans(corpus, corpus.sentences[i], scorer, type, config, gate);
    }
    return results;
  }

  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> workers;
  for (int w = 0; w < threads; ++w) {
    workers.emplace_back([&, w]() {
      try {
        for (std::size_t i = w; i < n; i += threads) {
          results[i] = DetectSpans(corpus, corpus.sentences[i], scorer, type,
                                   config, gate);
        }
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (std::thread &t : workers) t.join();
  for (const std::exception_ptr &e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

void WritePredictions(const std::vector<DetectionResult> &results,
                      const std::string &config_hash, std::ostream &out) {
  for (const DetectionResult &r : results) {
    json row = {{"doc_id", r.doc_id},
                {"sent_index", r.sent_index},
                {"pico", PicoName(r.pico_type)},
                {"spans", SpanListToJson(r.selected)},
                {"gate", GateName(r.gate)},
                {"positive", r.sentence_positive}};
    if (!config_hash.empty()) row["config_hash"] = config_hash;
    out << row.dump() << '\n';
  }
}

std::vector<DetectionResult> ReadPredictions(const std::string &path) {
  std::vector<DetectionResult> results;
  int line = 0;
  for (const json &row : ReadJsonLines(path)) {
    ++line;
    try {
      DetectionResult r;
      r.doc_id = row.at("doc_id").get<std::string>();
      r.sent_index = row.at("sent_index").get<int>();
      r.pico_type = ParsePicoData(row.at("pico").get<std::string>());
      for (const json &span : row.at("spans")) {
        r.selected.push_back(SpanFromJson(span));
      }
      r.gate = ParseGate(row.value("gate", "predicted"));
      r.sentence_positive = row.value("positive", !r.selected.empty());
      results.push_back(std::move(r));
    } catch (const json::exception &e) {
      throw DataError(path + ": row " + std::to_string(line) + ": " + e.what());
    } catch (const ConfigError &e) {
      throw DataError(path + ": row " + std::to_string(line) + ": " + e.what());
    }
  }
  return results;
}

void WriteScoredSpans(const std::vector<DetectionResult> &results,
                      const std::string &config_hash, std::ostream &out) {
  for (const DetectionResult &r : results) {
    if (!r.msp) continue;
    json spans = json::array();
    for (const ScoredSpan &s : r.msp->scored) {
      spans.push_back({{"start", s.span.start},
                       {"end", s.span.end},
                       {"contribution", s.contribution}});
    }
    json row = {{"doc_id", r.doc_id},
                {"sent_index", r.sent_index},
                {"pico", PicoName(r.pico_type)},
                {"base_score", r.msp->base.positive_score},
                {"total_candidates", r.msp->total_candidates},
                {"eliminated", r.msp->elimination.eliminated.size()},
                {"spans", spans}};
    if (!config_hash.empty()) row["config_hash"] = config_hash;
    out << row.dump() << '\n';
  }
}

}  // namespace sent2span
