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

#include <random>
#include <sstream>
#include <vector>

#include "gtest/gtest.h"
#include "oracles.h"
#include "sent2span/baseline_scorer.h"
#include "sent2span/inference.h"
#include "sent2span/pipeline.h"
#include "sent2span/synthetic.h"
#include "test_util.h"

namespace sent2span {
namespace {

using testing::MakeSentence;
using testing::Words;

std::vector<ScoredSpan> Scored(
    const std::vector<std::pair<Span, double>> &items) {
  std::vector<ScoredSpan> out;
  for (auto [span, c] : items) out.push_back({span, 0.0, -c, c});
  return out;
}

const std::vector<std::pair<Span, double>> kExample = {
    {{2, 5}, 0.9}, {{0, 2}, 0.7}, {{4, 6}, 0.5}, {{6, 7}, 0.3}};

TEST(TopKSelectTest, Examples) {
  EXPECT_EQ(TopKSelect(Scored(kExample), 2), (std::vector<Span>{{2, 5}, {0, 2}}));
  EXPECT_EQ(TopKSelect(Scored(kExample), 3),
            (std::vector<Span>{{2, 5}, {0, 2}, {6, 7}}));
  EXPECT_TRUE(TopKSelect(Scored({{{0, 1}, 0.0}, {{1, 3}, -2.0}}), 2).empty());
}

TEST(TopKSelectTest, TiesPreferEarlierThenShorter) {
  auto picks = TopKSelect(Scored({{{3, 5}, 1.0}, {{1, 4}, 1.0}, {{1, 2}, 1.0}}), 1);
  EXPECT_EQ(picks, (std::vector<Span>{{1, 2}}));
}

std::vector<oracle::Candidate> RandomCandidates(std::mt19937 &rng, int n,
                                                int count) {
  std::vector<oracle::Candidate> out;
  std::set<Span> seen;
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  while (static_cast<int>(out.size()) < count) {
    int a = rng() % n, b = rng() % n;
    Span s{std::min(a, b), std::max(a, b) + 1};
    if (!seen.insert(s).second) continue;
    // A coarse grid makes ties common.
    double c = (rng() % 4 == 0) ? std::round(u(rng) * 4) / 4 : u(rng);
    out.push_back({s.start, s.end, c});
  }
  return out;
}

std::vector<ScoredSpan> ToScored(const std::vector<oracle::Candidate> &cs,
                                 double scale = 1.0) {
  std::vector<ScoredSpan> out;
  for (const auto &c : cs) {
    out.push_back({{c.start, c.end}, 0.0, 0.0, c.contribution * scale});
  }
  return out;
}

TEST(TopKSelectTest, MatchesGreedyOracle) {
  std::mt19937 rng(31);
  for (int round = 0; round < 1000; ++round) {
    const int n = 3 + rng() % 30;
    const int count = 1 + rng() % std::min<int>(50, n * (n + 1) / 2);
    const int k = 1 + rng() % 5;
    auto cs = RandomCandidates(rng, n, count);
    std::vector<std::pair<int, int>> got;
    for (const Span &s : TopKSelect(ToScored(cs), k)) got.push_back({s.start, s.end});
    ASSERT_EQ(got, oracle::GreedyTopK(cs, k, n)) << "round " << round;
  }
}

TEST(TopKSelectTest, Properties) {
  std::mt19937 rng(77);
  for (int round = 0; round < 500; ++round) {
    const int n = 3 + rng() % 20;
    auto cs = RandomCandidates(rng, n, 1 + rng() % std::min(40, n * (n + 1) / 2));
    auto scored = ToScored(cs);
    std::vector<Span> prev;
    for (int k = 1; k <= 6; ++k) {
      auto picks = TopKSelect(scored, k);
      EXPECT_LE(static_cast<int>(picks.size()), k);
      for (size_t i = 0; i < picks.size(); ++i) {
        for (size_t j = i + 1; j < picks.size(); ++j) {
          EXPECT_FALSE(picks[i].overlaps(picks[j]));
        }
      }
      // Selection for K is a prefix of selection for K + 1.
      ASSERT_GE(picks.size(), prev.size());
      EXPECT_TRUE(std::equal(prev.begin(), prev.end(), picks.begin()));
      prev = picks;
    }
    for (const Span &s : prev) {
      for (const auto &c : cs) {
        if (c.start == s.start && c.end == s.end) EXPECT_GT(c.contribution, 0);
      }
    }
    // Positive rescaling does not change the selection.
    EXPECT_EQ(TopKSelect(ToScored(cs, 3.5), 3), TopKSelect(scored, 3));
  }
}

BaselineScorerModel PhraseModel() {
  BaselineScorerModel model = BaselineScorerModel::Zero(PicoType::kPopulation, 1 << 14);
  for (const char *w : {"alpha", "beta", "gamma"}) {
    for (auto [i, v] : Featurize(Words(w), 1 << 14, 0)) model.weights(0, i) += 1.0;
  }
  return model;
}

TEST(DetectTest, FalseGateSkipsScoring) {
  BaselineScorer scorer(PhraseModel());
  SentenceRecord s = MakeSentence(Words("x alpha y"));
  DetectionResult r = DetectWithGate(s, scorer, PicoType::kPopulation,
                                     SpanConfig{}, Gate::kCrowdMinor, false);
  EXPECT_TRUE(r.selected.empty());
  EXPECT_FALSE(r.sentence_positive);
  EXPECT_EQ(scorer.masked_calls(), 0);
}

TEST(DetectTest, KCapsDisjointPhrases) {
  // Separators pull the score down so no span covering two phrases wins.
  BaselineScorerModel model = PhraseModel();
  for (auto [i, v] : Featurize(Words("sep"), 1 << 14, 0)) model.weights(0, i) -= 2.0;
  BaselineScorer scorer(model);
  SentenceRecord s = MakeSentence(Words("alpha sep beta sep gamma"));
  DetectionResult r = DetectWithGate(s, scorer, PicoType::kPopulation,
                                     SpanConfig{}, Gate::kCrowdMinor, true);
  // Sentence-edge bigrams give the first and last phrase a higher score.
  EXPECT_EQ(r.selected, (std::vector<Span>{{0, 1}, {4, 5}}));
}

TEST(DetectTest, PredictedGateUsesTheScorer) {
  BaselineScorerModel model = PhraseModel();
  model.bias << -0.5, 0.0;
  BaselineScorer scorer(model);
  Corpus corpus;
  corpus.sentences = {MakeSentence(Words("x alpha y"), "d", 0),
                      MakeSentence(Words("x y z"), "d", 1)};
  corpus.Reindex();
  auto results = DetectCorpus(corpus, scorer, PicoType::kPopulation, SpanConfig{},
                              Gate::kPredicted);
  ASSERT_EQ(results.size(), 2u);
  EXPECT_TRUE(results[0].sentence_positive);
  ASSERT_FALSE(results[0].selected.empty());
  EXPECT_TRUE(results[0].selected[0].overlaps({1, 2}));
  EXPECT_FALSE(results[1].sentence_positive);
}

TEST(DetectTest, WrongPicoTypeIsRejected) {
  BaselineScorer scorer(PhraseModel());
  SentenceRecord s = MakeSentence(Words("alpha"));
  EXPECT_THROW(DetectWithGate(s, scorer, PicoType::kOutcome, SpanConfig{},
                              Gate::kCrowdMinor, true),
               PreconditionError);
}

TEST(DetectTest, ThreadCountDoesNotChangeOutput) {
  SyntheticConfig synth;
  synth.sentences = 80;
  Corpus corpus = GenerateSyntheticCorpus(synth);
  TrainConfig train;
  train.feature_dim = 1 << 14;
  BaselineScorer scorer(TrainBaseline(
      BuildTrainingSet(corpus, PicoType::kPopulation, LabelMode::kMinor),
      PicoType::kPopulation, train));
  std::ostringstream one, four;
  WritePredictions(DetectCorpus(corpus, scorer, PicoType::kPopulation, SpanConfig{},
                                Gate::kPredicted, 1), "h", one);
  WritePredictions(DetectCorpus(corpus, scorer, PicoType::kPopulation, SpanConfig{},
                                Gate::kPredicted, 4), "h", four);
  EXPECT_EQ(one.str(), four.str());
}

TEST(PredictionsIoTest, RoundTrip) {
  DetectionResult r;
  r.doc_id = "d9";
  r.sent_index = 4;
  r.pico_type = PicoType::kOutcome;
  r.selected = {{3, 5}, {0, 1}};
  r.sentence_positive = true;
  r.gate = Gate::kCrowdMajor;
  testing::TempDir dir;
  {
    std::ofstream out(dir.File("p.jsonl"));
    WritePredictions({r}, "abc", out);
  }
  auto back = ReadPredictions(dir.File("p.jsonl"));
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].doc_id, "d9");
  EXPECT_EQ(back[0].sent_index, 4);
  EXPECT_EQ(back[0].pico_type, PicoType::kOutcome);
  EXPECT_EQ(back[0].selected, r.selected);
  EXPECT_EQ(back[0].gate, Gate::kCrowdMajor);
  EXPECT_TRUE(back[0].sentence_positive);
}

}  // namespace
}  // namespace sent2span
