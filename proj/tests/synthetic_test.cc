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

// Checks on the keyword corpus and on a model trained from it.

#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "sent2span/baseline_scorer.h"
#include "sent2span/corpus_io.h"
#include "sent2span/inference.h"
#include "sent2span/pipeline.h"
#include "sent2span/synthetic.h"
#include "test_util.h"

namespace sent2span {
namespace {

using testing::MakeSentence;
using testing::Words;

TEST(SyntheticCorpusTest, ShapeAndDeterminism) {
  SyntheticConfig config;
  Corpus a = GenerateSyntheticCorpus(config);
  Corpus b = GenerateSyntheticCorpus(config);
  EXPECT_EQ(a.size(), 500);
  EXPECT_NO_THROW(a.Validate());
  std::ostringstream sa, sb;
  WriteCorpus(a, sa);
  WriteCorpus(b, sb);
  EXPECT_EQ(sa.str(), sb.str());
  config.seed = 8;
  std::ostringstream sc;
  WriteCorpus(GenerateSyntheticCorpus(config), sc);
  EXPECT_NE(sa.str(), sc.str());
}

TEST(SyntheticCorpusTest, ExpertMarksExactlyThePlantedPhrase) {
  std::set<std::vector<std::string>> phrases(SyntheticPhrases().begin(),
                                             SyntheticPhrases().end());
  std::set<std::string> phrase_words;
  for (const auto &p : phrases) phrase_words.insert(p.begin(), p.end());
  Corpus corpus = GenerateSyntheticCorpus(SyntheticConfig{});
  int positives = 0;
  for (const SentenceRecord &s : corpus.sentences) {
    SpanSet gold = s.ExpertSpans(PicoType::kPopulation);
    ASSERT_LE(gold.size(), 1u);
    auto words = s.token_texts();
    EXPECT_EQ(words.back(), ".");
    if (gold.empty()) {
      for (const auto &w : words) EXPECT_FALSE(phrase_words.count(w)) << w;
      continue;
    }
    ++positives;
    const Span g = *gold.begin();
    EXPECT_GE(g.length(), 2);
    EXPECT_LE(g.length(), 4);
    EXPECT_TRUE(phrases.count({words.begin() + g.start, words.begin() + g.end}));
  }
  EXPECT_GT(positives, 200);
  EXPECT_LT(positives, 300);
}

TEST(SyntheticCorpusTest, SplitByDocumentKeepsDocumentsWhole) {
  Corpus all = GenerateSyntheticCorpus(SyntheticConfig{});
  auto [train, test] = SplitByDocument(all, 0.8);
  EXPECT_EQ(train.size() + test.size(), all.size());
  EXPECT_EQ(train.size(), 400);
  std::set<std::string> train_docs;
  for (const auto &s : train.sentences) train_docs.insert(s.doc_id);
  for (const auto &s : test.sentences) EXPECT_FALSE(train_docs.count(s.doc_id));
  EXPECT_EQ(test.split, Split::kTest);
}

class TrainedKeywordModelTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    Corpus corpus = GenerateSyntheticCorpus(SyntheticConfig{});
    auto [train, test] = SplitByDocument(corpus, 0.8);
    test_ = new Corpus(test);
    scorer_ = new BaselineScorer(TrainBaseline(
        BuildTrainingSet(train, PicoType::kPopulation, LabelMode::kMinor),
        PicoType::kPopulation, TrainConfig{}));
  }
  static void TearDownTestSuite() {
    delete scorer_;
    delete test_;
  }

  static BaselineScorer *scorer_;
  static Corpus *test_;
};

BaselineScorer *TrainedKeywordModelTest::scorer_ = nullptr;
Corpus *TrainedKeywordModelTest::test_ = nullptr;

TEST_F(TrainedKeywordModelTest, MaskingThePhraseLowersTheProbability) {
  auto tokens = Words("patients with diabetes were enrolled");
  const double full = scorer_->Score(tokens).probability;
  const double masked = scorer_->Score(tokens, Span{0, 3}).probability;
  EXPECT_LT(masked, full);
  EXPECT_GT(full, 0.5);
}

// Exhaustive scoring with no elimination: the best span over each held-out
// positive sentence overlaps the planted phrase.
TEST_F(TrainedKeywordModelTest, BestSpanCoversThePlantedPhrase) {
  SpanConfig config;
  config.eliminate = false;
  int checked = 0, hits = 0;
  for (const SentenceRecord &s : test_->sentences) {
    SpanSet gold = s.ExpertSpans(PicoType::kPopulation);
    if (gold.empty()) continue;
    auto tokens = s.token_texts();
    MspResult msp = ScoreAllCandidates(*scorer_, tokens, PicoType::kPopulation, config);
    const ScoredSpan *best = &msp.scored.front();
    for (const ScoredSpan &c : msp.scored) {
      if (c.contribution > best->contribution) best = &c;
    }
    ++checked;
    hits += best->span.overlaps(*gold.begin());
  }
  EXPECT_GT(checked, 30);
  EXPECT_EQ(hits, checked);
}

TEST_F(TrainedKeywordModelTest, PredictedGateFindsThePhrase) {
  SentenceRecord s = MakeSentence(
      Words("the study of adults with asthma was conducted at baseline ."));
  DetectionResult r = DetectWithGate(
      s, *scorer_, PicoType::kPopulation, SpanConfig{}, Gate::kPredicted,
      PredictSentenceClass(*scorer_, s.token_texts()).label);
  EXPECT_TRUE(r.sentence_positive);
  ASSERT_FALSE(r.selected.empty());
  EXPECT_TRUE(r.selected[0].overlaps({3, 6}));
}

}  // namespace
}  // namespace sent2span
