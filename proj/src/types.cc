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

#include "sent2span/types.h"

#include <algorithm>

namespace sent2span {

int Span::overlap_size(const Span &other) const {
  return std::max(0, std::min(end, other.end) - std::max(start, other.start));
}

std::string_view PicoName(PicoType type) {
  switch (type) {
    case PicoType::kPopulation: return "population";
    case PicoType::kIntervention: return "intervention";
    case PicoType::kOutcome: return "outcome";
  }
  return "unknown";
}

PicoType ParsePico(std::string_view name) {
  for (PicoType type : kAllPicoTypes) {
    if (PicoName(type) == name) return type;
  }
  throw ConfigError("unknown PICO type '" + std::string(name) +
                    "' (expected population, intervention or outcome)");
}

std::string_view SplitName(Split split) {
  switch (split) {
    case Split::kTrain: return "train";
    case Split::kDev: return "dev";
    case Split::kTest: return "test";
  }
  return "unknown";
}

Split ParseSplit(std::string_view name) {
  if (name == "train") return Split::kTrain;
  if (name == "dev") return Split::kDev;
  if (name == "test") return Split::kTest;
  throw ConfigError("unknown split '" + std::string(name) + "'");
}

std::vector<std::string> SentenceRecord::token_texts() const {
  std::vector<std::string> texts;
  texts.reserve(tokens.size());
  for (const Token &t : tokens) texts.push_back(t.text);
  return texts;
}

int SentenceRecord::AnnotatorsMarking(PicoType type) const {
  auto it = crowd.find(type);
  if (it == crowd.end()) return 0;
  int count = 0;
  for (const auto &[annotator, spans] : it->second) {
    if (!spans.empty()) ++count;
  }
  return count;
}

SpanSet SentenceRecord::ExpertSpans(PicoType type) const {
  if (!expert) return {};
  auto it = expert->find(type);
  return it == expert->end() ? SpanSet{} : it->second;
}

std::optional<SpanSet> SentenceRecord::AggregatedSpans(PicoType type) const {
  if (!aggregated) return std::nullopt;
  auto it = aggregated->find(type);
  return it == aggregated->end() ? SpanSet{} : it->second;
}

int Corpus::DocumentAnnotatorCount(const std::string &doc_id,
                                   PicoType type) const {
  auto it = doc_annotators_.find({doc_id, type});
  return it == doc_annotators_.end() ? 0 : static_cast<int>(it->second.size());
}

void Corpus::Reindex() {
  doc_annotators_.clear();
  annotator_roster.clear();
  for (const SentenceRecord &s : sentences) {
    for (const auto &[type, by_annotator] : s.crowd) {
      auto &annotators = doc_annotators_[{s.doc_id, type}];
      for (const auto &[annotator, spans] : by_annotator) {
        annotators.insert(annotator);
        annotator_roster.insert(annotator);
      }
    }
  }
}

namespace {

void CheckSpans(const SentenceRecord &s, const SpanSet &spans,
                const std::string &field) {
  for (const Span &span : spans) {
    if (!span.valid_for(s.num_tokens())) {
      throw DataError("document '" + s.doc_id + "' sentence " +
                      std::to_string(s.sent_index) + ": " + field + " span [" +
                      std::to_string(span.start) + "," +
                      std::to_string(span.end) + ") outside [0," +
                      std::to_string(s.num_tokens()) + "]");
    }
  }
}

}  // namespace

void Corpus::Validate() const {
  std::set<std::pair<std::string, int>> seen;
  for (const SentenceRecord &s : sentences) {
    if (!seen.insert({s.doc_id, s.sent_index}).second) {
      throw DataError("document '" + s.doc_id + "': duplicate sent_index " +
                      std::to_string(s.sent_index));
    }
    int prev_end = -1;
    for (const Token &t : s.tokens) {
      if (t.char_start >= t.char_end || t.char_start < prev_end) {
        throw DataError("document '" + s.doc_id + "' sentence " +
                        std::to_string(s.sent_index) +
                        ": offsets are empty, unordered or overlapping");
      }
      prev_end = t.char_end;
    }
    for (const auto &[type, by_annotator] : s.crowd) {
      for (const auto &[annotator, spans] : by_annotator) {
        CheckSpans(s, spans,
                   "crowd." + std::string(PicoName(type)) + "." + annotator);
      }
    }
    if (s.expert) {
      for (const auto &[type, spans] : *s.expert) {
        CheckSpans(s, spans, "expert." + std::string(PicoName(type)));
      }
    }
    if (s.aggregated) {
      for (const auto &[type, spans] : *s.aggregated) {
        CheckSpans(s, spans, "aggregated." + std::string(PicoName(type)));
      }
    }
  }
}

}  // namespace sent2span
