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

#include "sent2span/synthetic.h"

#include <algorithm>
#include <cstdio>
#include <random>

namespace sent2span {
namespace {

const std::vector<std::string> kFiller = {
    "the",       "study",     "was",      "conducted", "in",       "a",
    "randomized", "trial",    "results",  "were",      "analyzed", "using",
    "standard",  "methods",   "data",     "from",      "this",     "cohort",
    "showed",    "that",      "treatment", "group",    "and",      "control",
    "outcomes",  "measured",  "at",       "baseline",  "after",    "twelve",
    "weeks",     "follow-up", "primary",  "endpoint",  "overall",  "during",
    "period",    "per",       "protocol", "analysis",  "of",       "all",
    "centres",   "reported",  "no",       "significant", "differences", "between",
    "arms",      "is",        "an",       "open-label", "design",  "for",
    "visits",    "on",        "it",       "by",        "investigators", "."};

const std::vector<std::vector<std::string>> kPhrases = {
    {"patients", "with", "diabetes"},
    {"adults", "with", "asthma"},
    {"obese", "children"},
    {"postmenopausal", "women", "with", "osteoporosis"},
    {"elderly", "smokers"},
    {"infants", "born", "preterm"},
    {"pregnant", "women"},
    {"patients", "with", "chronic", "hepatitis"},
    {"adolescents", "with", "depression"},
    {"hypertensive", "veterans"},
    {"stroke", "survivors"},
    {"children", "with", "epilepsy"}};

// Portable draws from the raw engine output.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  int Below(int n) { return static_cast<int>(engine_() % static_cast<std::uint64_t>(n)); }
  double Uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool Bernoulli(double p) { return Uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

Span NoisyCopy(const Span &phrase, int num_tokens, Rng &rng) {
  Span span = phrase;
  switch (rng.Below(4)) {
    case 0: span.start = std::max(0, span.start - 1); break;
    case 1: span.end = std::min(num_tokens, span.end + 1); break;
    case 2: if (span.length() > 1) ++span.start; break;
    default: if (span.length() > 1) --span.end; break;
  }
  return span;
}

}  // namespace

const std::vector<std::vector<std::string>> &SyntheticPhrases() {
  return kPhrases;
}

Corpus GenerateSyntheticCorpus(const SyntheticConfig &config) {
  if (config.sentences < 1 || config.sentences_per_doc < 1 ||
      config.annotators_per_doc < 1 || config.min_filler < 1 ||
      config.max_filler < config.min_filler) {
    throw ConfigError("invalid synthetic corpus configuration");
  }
  Rng rng(config.seed);
  Corpus corpus;
  const PicoType type = config.pico_type;
  const int num_docs =
      (config.sentences + config.sentences_per_doc - 1) / config.sentences_per_doc;
  int produced = 0;
  for (int d = 0; d < num_docs; ++d) {
    char doc_id[64];
    std::snprintf(doc_id, sizeof(doc_id), "%s-%04d", config.doc_prefix.c_str(), d);
    std::vector<std::string> annotators;
    for (int a = 0; a < config.annotators_per_doc; ++a) {
      annotators.push_back("w" + std::to_string(rng.Below(40)) + "-" +
                           std::to_string(a));
    }
    const int count = std::min(config.sentences_per_doc, config.sentences - produced);
    std::vector<SentenceRecord> doc;
    for (int s = 0; s < count; ++s) {
      const int filler = config.min_filler +
                         rng.Below(config.max_filler - config.min_filler + 1);
      std::vector<std::string> words;
      for (int w = 0; w < filler; ++w) {
        words.push_back(kFiller[rng.Below(static_cast<int>(kFiller.size()) - 1)]);
      }
      const bool positive = rng.Bernoulli(config.positive_rate);
      std::optional<Span> phrase_span;
      if (positive) {
        const auto &phrase = kPhrases[rng.Below(static_cast<int>(kPhrases.size()))];
        const int at = rng.Below(filler + 1);
        words.insert(words.begin() + at, phrase.begin(), phrase.end());
        phrase_span = Span{at, at + static_cast<int>(phrase.size())};
      }
      words.push_back(".");

      SentenceRecord record;
      record.doc_id = doc_id;
      record.sent_index = s;
      int cursor = 0;
      for (const std::string &w : words) {
        record.tokens.push_back({w, cursor, cursor + static_cast<int>(w.size())});
        cursor += static_cast<int>(w.size()) + 1;
      }
      const int n = record.num_tokens();

      auto &crowd = record.crowd[type];
      std::vector<int> votes(n, 0);
      for (const std::string &annotator : annotators) {
        SpanSet &marked = crowd[annotator];
        if (phrase_span && rng.Bernoulli(config.hit_rate)) {
          marked.insert(rng.Bernoulli(config.boundary_noise)
                            ? NoisyCopy(*phrase_span, n, rng)
                            : *phrase_span);
        } else if (!phrase_span && rng.Bernoulli(config.false_mark_rate)) {
          const int length = 1 + rng.Below(3);
          const int start = rng.Below(std::max(1, n - length));
          marked.insert({start, std::min(n, start + length)});
        }
        for (const Span &span : marked) {
          for (int t = span.start; t < span.end; ++t) ++votes[t];
        }
      }

      SpanSet aggregated;
      for (int t = 0; t < n;) {
        if (2 * votes[t] < config.annotators_per_doc) {
          ++t;
          continue;
        }
        int end = t;
        while (end < n && 2 * votes[end] >= config.annotators_per_doc) ++end;
        aggregated.insert({t, end});
        t = end;
      }
      record.aggregated = std::map<PicoType, SpanSet>{{type, aggregated}};
      record.expert = std::map<PicoType, SpanSet>{
          {type, phrase_span ? SpanSet{*phrase_span} : SpanSet{}}};
      doc.push_back(std::move(record));
    }
    for (SentenceRecord &r : doc) corpus.sentences.push_back(std::move(r));
    produced += count;
  }
  corpus.Validate();
  corpus.Reindex();
  return corpus;
}

std::pair<Corpus, Corpus> SplitByDocument(const Corpus &corpus,
                                          double train_fraction) {
  std::vector<std::string> docs;
  for (const SentenceRecord &s : corpus.sentences) {
    if (docs.empty() || docs.back() != s.doc_id) docs.push_back(s.doc_id);
  }
  const auto cut = static_cast<std::size_t>(train_fraction * docs.size());
  std::set<std::string> train_docs(docs.begin(), docs.begin() + std::min(cut, docs.size()));
  Corpus train, test;
  train.split = Split::kTrain;
  test.split = Split::kTest;
  for (const SentenceRecord &s : corpus.sentences) {
    (train_docs.count(s.doc_id) ? train : test).sentences.push_back(s);
  }
  for (const auto &[doc, text] : corpus.document_text) {
    (train_docs.count(doc) ? train : test).document_text[doc] = text;
  }
  train.Reindex();
  test.Reindex();
  return {std::move(train), std::move(test)};
}

}  // namespace sent2span
