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

// Acceptance suite. Each check prints exactly one line:
//
//   PASS <name>: <measurements>
//   FAIL <name>: <measurements>
//
// and the process exits non-zero if any check fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "oracles.h"
#include "sent2span/baseline_scorer.h"
#include "sent2span/corpus_io.h"
#include "sent2span/evaluation.h"
#include "sent2span/inference.h"
#include "sent2span/pipeline.h"
#include "sent2span/span_engine.h"
#include "sent2span/synthetic.h"
#include "test_util.h"

namespace sent2span {
namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

std::string Format(const char *fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), fmt, args...);
  return buf;
}

Outcome CandidateCountIdentity() {
  auto t0 = Clock::now();
  long checked = 0, bad = 0;
  for (int m = 1; m <= 25; ++m) {
    for (int n = 1; n <= 60; ++n) {
      const std::int64_t closed =
          m <= n ? static_cast<std::int64_t>(m) * (2 * n - m + 1) / 2
                 : static_cast<std::int64_t>(n) * (n + 1) / 2;
      const auto enumerated = static_cast<std::int64_t>(EnumerateCandidates(n, m).size());
      bad += enumerated != closed || CandidateCount(n, m) != closed ||
             oracle::CountSpans(n, m) != closed;
      ++checked;
    }
  }
  const double s = Seconds(t0);
  return {bad == 0 && s < 1.0,
          Format("%ld (N,M) pairs, %ld mismatches, %.3fs (limit 1s)", checked, bad, s)};
}

Outcome EliminationOracle() {
  auto t0 = Clock::now();
  std::mt19937_64 rng(1001);
  int bad = 0;
  for (int round = 0; round < 1000; ++round) {
    const int n = 1 + static_cast<int>(rng() % 12);
    std::vector<double> values(n);
    std::map<Span, double> singles;
    for (int t = 0; t < n; ++t) {
      values[t] = (rng() % 2) ? 1.0 : -1.0;
      singles[{t, t + 1}] = values[t];
    }
    SpanSet got = EliminateNested(singles, EnumerateCandidates(n, 1), n).eliminated;
    std::set<std::pair<int, int>> as_pairs;
    for (const Span &s : got) as_pairs.insert({s.start, s.end});
    bad += as_pairs != oracle::EliminationFixedPoint(values, n);
  }
  const double s = Seconds(t0);
  return {bad == 0 && s < 10.0,
          Format("1000 random sign patterns (N<=12, M=N), %d mismatches, %.3fs "
                 "(limit 10s)", bad, s)};
}

Outcome TopKOracle() {
  auto t0 = Clock::now();
  std::mt19937_64 rng(1002);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int bad = 0;
  for (int round = 0; round < 1000; ++round) {
    const int n = 2 + static_cast<int>(rng() % 40);
    const int max_spans = std::min(50, n * (n + 1) / 2);
    const int count = 1 + static_cast<int>(rng() % max_spans);
    const int k = 1 + static_cast<int>(rng() % 6);
    std::set<Span> seen;
    std::vector<oracle::Candidate> cs;
    std::vector<ScoredSpan> scored;
    while (static_cast<int>(cs.size()) < count) {
      int a = rng() % n, b = rng() % n;
      Span s{std::min(a, b), std::max(a, b) + 1};
      if (!seen.insert(s).second) continue;
      const double c = (rng() % 5 == 0) ? std::round(u(rng) * 2) / 2 : u(rng);
      cs.push_back({s.start, s.end, c});
      scored.push_back({s, 0.0, 0.0, c});
    }
    std::vector<std::pair<int, int>> got;
    for (const Span &s : TopKSelect(scored, k)) got.push_back({s.start, s.end});
    bad += got != oracle::GreedyTopK(cs, k, n);
  }
  const double s = Seconds(t0);
  return {bad == 0 && s < 5.0,
          Format("1000 random candidate sets (<=50 spans), %d mismatches, %.3fs "
                 "(limit 5s)", bad, s)};
}

Outcome MetricsOracle() {
  std::mt19937_64 rng(1003);
  double worst = 0.0;
  int count_mismatch = 0;
  for (int round = 0; round < 1000; ++round) {
    const int n = 1 + static_cast<int>(rng() % 30);
    auto random_spans = [&]() {
      SpanSet out;
      const int count = rng() % 5;
      for (int i = 0; i < count; ++i) {
        int a = rng() % n, b = rng() % n;
        out.insert({std::min(a, b), std::max(a, b) + 1});
      }
      return out;
    };
    SpanSet pred = random_spans(), gold = random_spans();
    std::vector<std::pair<int, int>> p, g;
    for (const Span &s : pred) p.push_back({s.start, s.end});
    for (const Span &s : gold) g.push_back({s.start, s.end});
    oracle::TokenCounts c = oracle::TokenSetCounts(p, g);
    TokenMetrics m = TokenPrf(pred, gold, n);
    count_mismatch += m.tp != c.tp || m.fp != c.fp || m.fn != c.fn;
    const double prec = c.tp + c.fp ? double(c.tp) / (c.tp + c.fp) : 0.0;
    const double rec = c.tp + c.fn ? double(c.tp) / (c.tp + c.fn) : 0.0;
    const double f1 = prec + rec > 0 ? 2 * prec * rec / (prec + rec) : 0.0;
    worst = std::max({worst, std::abs(m.precision - prec), std::abs(m.recall - rec),
                      std::abs(m.f1 - f1)});
  }
  return {count_mismatch == 0 && worst <= 1e-12,
          Format("1000 random instances, %d count mismatches, max |diff| %.3g "
                 "(limit 1e-12)", count_mismatch, worst)};
}

Outcome GradientCheck() {
  std::mt19937_64 rng(1004);
  std::normal_distribution<double> normal(0.0, 0.5);
  const double h = 1e-5, l2 = 0.01;
  const int dim = 64;
  const std::vector<std::string> vocab = {"adults", "with", "asthma", "were",
                                          "enrolled", "placebo", "pain", "the"};
  double worst = 0.0;
  int checked = 0;
  for (int instance = 0; instance < 20; ++instance) {
    std::vector<LabeledSentence> set(3 + rng() % 6);
    for (size_t i = 0; i < set.size(); ++i) {
      set[i].tokens.resize(2 + rng() % 8);
      for (auto &t : set[i].tokens) t = vocab[rng() % vocab.size()];
      set[i].label = i % 2;
    }
    BaselineScorerModel model =
        BaselineScorerModel::Zero(PicoType::kPopulation, dim, instance);
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < dim; ++c) model.weights(r, c) = normal(rng);
      model.bias(r) = normal(rng);
    }
    ModelGradient grad = ObjectiveGradient(model, set, l2);
    auto features = Featurize(set[0].tokens, dim, model.hash_seed);
    for (int k = 0; k < 6; ++k) {
      BaselineScorerModel plus = model, minus = model;
      double analytic;
      if (k == 5) {
        plus.bias(0) += h;
        minus.bias(0) -= h;
        analytic = grad.bias(0);
      } else {
        const int row = rng() % 2;
        // Mostly active coordinates; some uniformly random ones too.
        const int col = (k < 3) ? features[rng() % features.size()].first
                                : static_cast<int>(rng() % dim);
        plus.weights(row, col) += h;
        minus.weights(row, col) -= h;
        analytic = grad.weights(row, col);
      }
      const double numeric = (TrainingObjective(plus, set, l2) -
                              TrainingObjective(minus, set, l2)) / (2 * h);
      const double rel = std::abs(analytic - numeric) /
                         std::max({std::abs(analytic), std::abs(numeric), 1e-8});
      worst = std::max(worst, rel);
      ++checked;
    }
  }
  return {worst <= 1e-4,
          Format("%d coordinates over 20 instances, max relative error %.3g "
                 "(limit 1e-4)", checked, worst)};
}

// Shared synthetic setup for the end-to-end and ablation checks.
struct SyntheticRun {
  Corpus train, test;
  std::unique_ptr<BaselineScorer> minor_model, major_model;
};

SyntheticRun &Synthetic() {
  static SyntheticRun *run = [] {
    auto *r = new SyntheticRun;
    SyntheticConfig config;  // 500 sentences, one planted phrase per positive
    Corpus all = GenerateSyntheticCorpus(config);
    std::tie(r->train, r->test) = SplitByDocument(all, 0.8);
    TrainConfig train;
    r->minor_model = std::make_unique<BaselineScorer>(TrainBaseline(
        BuildTrainingSet(r->train, PicoType::kPopulation, LabelMode::kMinor),
        PicoType::kPopulation, train));
    r->major_model = std::make_unique<BaselineScorer>(TrainBaseline(
        BuildTrainingSet(r->train, PicoType::kPopulation, LabelMode::kMajor),
        PicoType::kPopulation, train));
    return r;
  }();
  return *run;
}

EvalReport Run(const Scorer &scorer, const Corpus &corpus, Gate gate,
               const SpanConfig &config = SpanConfig{}) {
  auto results = DetectCorpus(corpus, scorer, PicoType::kPopulation, config, gate);
  EvalReport report = Evaluate(corpus, results, PicoType::kPopulation);
  std::vector<std::pair<std::int64_t, std::int64_t>> rows;
  for (const auto &r : results) {
    if (r.msp) {
      rows.push_back({r.msp->total_candidates,
                      static_cast<std::int64_t>(r.msp->elimination.eliminated.size())});
    }
  }
  report.reduction = ComputeReductionStats(rows);
  return report;
}

Outcome EndToEndSynthetic() {
  auto t0 = Clock::now();
  SyntheticRun &s = Synthetic();
  EvalReport minor_pred = Run(*s.minor_model, s.test, Gate::kPredicted);
  EvalReport major_pred = Run(*s.major_model, s.test, Gate::kPredicted);
  EvalReport minor_gate = Run(*s.minor_model, s.test, Gate::kCrowdMinor);
  EvalReport major_gate = Run(*s.minor_model, s.test, Gate::kCrowdMajor);
  const double secs = Seconds(t0);
  const bool pass = minor_pred.tokens.recall >= 0.80 &&
                    minor_gate.tokens.recall >= major_gate.tokens.recall &&
                    minor_pred.tokens.recall >= major_pred.tokens.recall &&
                    secs < 120.0;
  return {pass,
          Format("held-out %d sentences; K=2 recall %.4f (limit >=0.80); "
                 "crowd gates minor %.4f >= major %.4f; trained on minor %.4f >= "
                 "major %.4f; %.1fs (limit 120s)",
                 minor_pred.sentences, minor_pred.tokens.recall,
                 minor_gate.tokens.recall, major_gate.tokens.recall,
                 minor_pred.tokens.recall, major_pred.tokens.recall, secs)};
}

Outcome EliminationAblation() {
  SyntheticRun &s = Synthetic();
  SpanConfig on, off;
  off.eliminate = false;
  EvalReport a = Run(*s.minor_model, s.test, Gate::kPredicted, on);
  EvalReport b = Run(*s.minor_model, s.test, Gate::kPredicted, off);
  const double dp = std::abs(a.tokens.precision - b.tokens.precision);
  const double dr = std::abs(a.tokens.recall - b.tokens.recall);
  const double df = std::abs(a.tokens.f1 - b.tokens.f1);
  return {dp < 0.002 && dr < 0.002 && df < 0.002,
          Format("|dP| %.4f |dR| %.4f |dF1| %.4f (limit <0.002); eliminated "
                 "%lld of %lld candidates (ratio %.4f)", dp, dr, df,
                 static_cast<long long>(a.reduction->eliminated),
                 static_cast<long long>(a.reduction->total_candidates),
                 a.reduction->ratio)};
}

// Two separate CLI processes from the same config must write identical bytes.
Outcome Determinism() {
  testing::TempDir dir;
  SyntheticConfig config;
  Corpus all = GenerateSyntheticCorpus(config);
  auto [train, test] = SplitByDocument(all, 0.8);
  SaveCorpus(train, dir.File("train.jsonl"));
  SaveCorpus(test, dir.File("test.jsonl"));
  nlohmann::json run = {{"corpus", {{"train", dir.File("train.jsonl")},
                                    {"test", dir.File("test.jsonl")}}},
                        {"pico", "population"},
                        {"gate", "predicted"},
                        {"seed", 29},
                        {"threads", 2}};
  dir.Write("run.json", run.dump(2));
  std::vector<std::string> outputs;
  for (int i = 0; i < 2; ++i) {
    const std::string out = dir.File("pred" + std::to_string(i) + ".jsonl");
    const std::string command = std::string(SENT2SPAN_CLI_PATH) +
                                " detect --config " + dir.File("run.json") +
                                " --output " + out + " --dump " + out +
                                ".dump > /dev/null";
    if (std::system(command.c_str()) != 0) return {false, "detect run failed"};
    outputs.push_back(testing::ReadFile(out) + testing::ReadFile(out + ".dump"));
  }
  const bool same = outputs[0] == outputs[1] && !outputs[0].empty();
  return {same, Format("2 independent runs, %zu bytes each (predictions + dump), "
                       "%s", outputs[0].size(), same ? "identical" : "DIFFERENT")};
}

}  // namespace
}  // namespace sent2span

int main() {
  using sent2span::Outcome;
  const std::vector<std::pair<const char *, std::function<Outcome()>>> checks = {
      {"candidate-count-identity", sent2span::CandidateCountIdentity},
      {"nested-elimination-oracle", sent2span::EliminationOracle},
      {"top-k-selection-oracle", sent2span::TopKOracle},
      {"token-metrics-oracle", sent2span::MetricsOracle},
      {"baseline-gradient-check", sent2span::GradientCheck},
      {"end-to-end-synthetic", sent2span::EndToEndSynthetic},
      {"elimination-ablation", sent2span::EliminationAblation},
      {"determinism", sent2span::Determinism},
  };
  int failed = 0;
  for (const auto &[name, check] : checks) {
    Outcome outcome;
    try {
      outcome = check();
    } catch (const std::exception &e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    failed += !outcome.pass;
    std::printf("%s %s: %s\n", outcome.pass ? "PASS" : "FAIL", name,
                outcome.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu acceptance checks passed\n",
              static_cast<int>(checks.size()) - failed, checks.size());
  return failed == 0 ? 0 : 1;
}
