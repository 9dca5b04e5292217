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

#ifndef SENT2SPAN_TYPES_H_
#define SENT2SPAN_TYPES_H_

#include <array>
#include <compare>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sent2span {

// Error categories. The CLI maps each one to a distinct exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or invariant-violating input data.
class DataError : public Error {
 public:
  using Error::Error;
};

// Inconsistent configuration or missing required inputs.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Violated function precondition (invalid span, empty tokens, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// External scorer unreachable or protocol violation.
class TransportError : public Error {
 public:
  using Error::Error;
};

// Baseline training failure (single class, divergence).
class TrainingError : public Error {
 public:
  using Error::Error;
};

struct Token {
  std::string text;
  int char_start = 0;  // inclusive byte offset
  int char_end = 0;    // exclusive byte offset

  bool operator==(const Token &) const = default;
};

// Half-open token interval [start, end).
struct Span {
  int start = 0;
  int end = 0;

  int length() const { return end - start; }
  bool valid_for(int num_tokens) const {
    return 0 <= start && start < end && end <= num_tokens;
  }
  bool overlaps(const Span &other) const {
    return start < other.end && other.start < end;
  }
  bool contains(const Span &other) const {
    return start <= other.start && other.end <= end;
  }
  int overlap_size(const Span &other) const;

  auto operator<=>(const Span &) const = default;
};

using SpanSet = std::set<Span>;

enum class PicoType { kPopulation = 0, kIntervention = 1, kOutcome = 2 };

inline constexpr std::array<PicoType, 3> kAllPicoTypes = {
    PicoType::kPopulation, PicoType::kIntervention, PicoType::kOutcome};

// "population", "intervention", "outcome".
std::string_view PicoName(PicoType type);
// Throws ConfigError for unknown names.
PicoType ParsePico(std::string_view name);

struct SentenceRecord {
  std::string doc_id;
  int sent_index = 0;
  std::vector<Token> tokens;
  // pico type -> annotator id -> spans.
  std::map<PicoType, std::map<std::string, SpanSet>> crowd;
  // Expert gold spans; absent when the split carries no expert layer.
  std::optional<std::map<PicoType, SpanSet>> expert;
  // Externally aggregated crowd layer (e.g. HMMCrowd output), if shipped.
  std::optional<std::map<PicoType, SpanSet>> aggregated;

  int num_tokens() const { return static_cast<int>(tokens.size()); }
  std::vector<std::string> token_texts() const;

  // Annotators with at least one span of |type| in this sentence.
  int AnnotatorsMarking(PicoType type) const;
  // Expert spans of |type|, empty when there is no expert layer.
  SpanSet ExpertSpans(PicoType type) const;
  std::optional<SpanSet> AggregatedSpans(PicoType type) const;
};

enum class Split { kTrain, kDev, kTest };

std::string_view SplitName(Split split);
Split ParseSplit(std::string_view name);

struct Corpus {
  Split split = Split::kTrain;
  std::vector<SentenceRecord> sentences;
  std::set<std::string> annotator_roster;
  // Raw document text, when the source file carried it.
  std::map<std::string, std::string> document_text;

  int size() const { return static_cast<int>(sentences.size()); }

  // Annotators that labelled document |doc_id| for |type|, across all of its
  // sentences. This is the denominator of the majority vote.
  int DocumentAnnotatorCount(const std::string &doc_id, PicoType type) const;

  // Checks every invariant. Throws DataError naming doc_id and field.
  void Validate() const;

  // Recomputes the per-document annotator index; called by loaders.
  void Reindex();

 private:
  std::map<std::pair<std::string, PicoType>, std::set<std::string>>
      doc_annotators_;
};

}  // namespace sent2span

#endif  // SENT2SPAN_TYPES_H_
