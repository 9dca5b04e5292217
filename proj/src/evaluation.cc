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

#include "sent2span/evaluation.h"

#include <iomanip>
#include <map>
#include <sstream>

#include "sent2span/json_util.h"

namespace sent2span {
namespace {

using json = nlohmann::json;

double Ratio(std::int64_t num, std::int64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

double Harmonic(double p, double r) {
  return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
}

std::vector<bool> Coverage(const SpanSet &spans, int num_tokens) {
  std::vector<bool> covered(num_tokens, false);
  for (const Span &span : spans) {
    if (!span.valid_for(num_tokens)) {
      throw PreconditionError("span [" + std::to_string(span.start) + "," +
                              std::to_string(span.end) +
                              ") invalid for sentence of " +
                              std::to_string(num_tokens) + " tokens");
    }
    for (int t = span.start; t < span.end; ++t) covered[t] = true;
  }
  return covered;
}

}  // namespace

TokenMetrics TokenMetrics::FromCounts(std::int64_t tp, std::int64_t fp,
                                      std::int64_t fn) {
  TokenMetrics m;
  m.tp = tp;
  m.fp = fp;
  m.fn = fn;
  m.precision = Ratio(tp, tp + fp);
  m.recall = Ratio(tp, tp + fn);
  m.f1 = Harmonic(m.precision, m.recall);
  return m;
}

TokenMetrics &TokenMetrics::operator+=(const TokenMetrics &other) {
  *this = FromCounts(tp + other.tp, fp + other.fp, fn + other.fn);
  return *this;
}

TokenMetrics TokenPrf(const SpanSet &predicted, const SpanSet &gold,
                      int num_tokens) {
  const std::vector<bool> pred = Coverage(predicted, num_tokens);
  const std::vector<bool> ref = Coverage(gold, num_tokens);
  std::int64_t tp = 0, fp = 0, fn = 0;
  for (int t = 0; t < num_tokens; ++t) {
    tp += pred[t] && ref[t];
    fp += pred[t] && !ref[t];
    fn += !pred[t] && ref[t];
  }
  return TokenMetrics::FromCounts(tp, fp, fn);
}

SentenceMetrics ComputeSentenceMetrics(const std::vector<bool> &predicted,
                                       const std::vector<bool> &gold) {
  if (predicted.size() != gold.size()) {
    throw PreconditionError("sentence label vectors differ in length (" +
                            std::to_string(predicted.size()) + " vs " +
                            std::to_string(gold.size()) + ")");
  }
  SentenceMetrics m;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (predicted[i] && gold[i]) ++m.tp;
    else if (predicted[i]) ++m.fp;
    else if (gold[i]) ++m.fn;
    else ++m.tn;
  }
  m.accuracy = Ratio(m.tp + m.tn, static_cast<std::int64_t>(gold.size()));
  m.precision = Ratio(m.tp, m.tp + m.fp);
  m.recall = Ratio(m.tp, m.tp + m.fn);
  m.f1 = Harmonic(m.precision, m.recall);
  return m;
}

ErrorCounts &ErrorCounts::operator+=(const ErrorCounts &other) {
  boundary += other.boundary;
  overlap += other.overlap;
  false_positive += other.false_positive;
  false_negative += other.false_negative;
  return *this;
}

ErrorCounts ClassifyErrors(const SpanSet &predicted, const SpanSet &gold) {
  ErrorCounts counts;
  for (const Span &pred : predicted) {
    // Exact matches win even when an earlier gold span overlaps as much.
    if (gold.count(pred)) continue;
    const Span *best = nullptr;
    int best_overlap = 0;
    for (const Span &g : gold) {  // SpanSet order = earliest first
      const int overlap = pred.overlap_size(g);
      if (overlap > best_overlap) {
        best_overlap = overlap;
        best = &g;
      }
    }
    if (best == nullptr) {
      ++counts.false_positive;
    } else if (pred.contains(*best) || best->contains(pred)) {
      ++counts.boundary;
    } else {
      ++counts.overlap;
    }
  }
  for (const Span &g : gold) {
    bool touched = false;
    for (const Span &pred : predicted) touched = touched || pred.overlaps(g);
    if (!touched) ++counts.false_negative;
  }
  return counts;
}

ReductionStats ComputeReductionStats(
    std::span<const std::pair<std::int64_t, std::int64_t>> per_sentence) {
  ReductionStats stats;
  for (const auto &[total, eliminated] : per_sentence) {
    if (eliminated > total || eliminated < 0) {
      throw PreconditionError("eliminated count exceeds candidate count");
    }
    stats.total_candidates += total;
    stats.eliminated += eliminated;
  }
  stats.ratio = Ratio(stats.eliminated, stats.total_candidates);
  return stats;
}

json EvalReport::ToJson() const {
  json out = {
      {"pico", PicoName(pico_type)},
      {"label", label},
      {"sentences", sentences},
      {"tokens",
       {{"tp", tokens.tp}, {"fp", tokens.fp}, {"fn", tokens.fn},
        {"precision", tokens.precision}, {"recall", tokens.recall},
        {"f1", tokens.f1}}},
      {"sentence",
       {{"tp", sentence.tp}, {"fp", sentence.fp}, {"fn", sentence.fn},
        {"tn", sentence.tn}, {"accuracy", sentence.accuracy},
        {"precision", sentence.precision}, {"recall", sentence.recall},
        {"f1", sentence.f1}}},
      {"errors",
       {{"boundary", errors.boundary}, {"overlap", errors.overlap},
        {"false_positive", errors.false_positive},
        {"false_negative", errors.false_negative}}},
  };
  out["reduction"] =
      reduction ? json{{"total_candidates", reduction->total_candidates},
                       {"eliminated", reduction->eliminated},
                       {"ratio", reduction->ratio}}
                : json(nullptr);
  if (!run_config.is_null()) out["run_config"] = run_config;
  return out;
}

EvalReport EvalReport::FromJson(const json &value) {
  try {
    EvalReport r;
    r.pico_type = ParsePicoData(value.at("pico").get<std::string>());
    r.label = value.value("label", "");
    r.sentences = value.at("sentences").get<int>();
    const json &t = value.at("tokens");
    r.tokens = TokenMetrics::FromCounts(t.at("tp"), t.at("fp"), t.at("fn"));
    const json &s = value.at("sentence");
    r.sentence.tp = s.at("tp");
    r.sentence.fp = s.at("fp");
    r.sentence.fn = s.at("fn");
    r.sentence.tn = s.at("tn");
    r.sentence.accuracy = s.at("accuracy");
    r.sentence.precision = s.at("precision");
    r.sentence.recall = s.at("recall");
    r.sentence.f1 = s.at("f1");
    const json &e = value.at("errors");
    r.errors = {e.at("boundary"), e.at("overlap"), e.at("false_positive"),
                e.at("false_negative")};
    if (value.contains("reduction") && !value["reduction"].is_null()) {
      const json &red = value["reduction"];
      r.reduction = ReductionStats{red.at("total_candidates"),
                                   red.at("eliminated"), red.at("ratio")};
    }
    if (value.contains("run_config")) r.run_config = value["run_config"];
    return r;
  } catch (const json::exception &e) {
    throw DataError(std::string("malformed report: ") + e.what());
  }
}

std::string EvalReport::RenderText() const {
  std::ostringstream out;
  out << std::fixed << std::setprecision(4);
  out << "pico: " << PicoName(pico_type);
  if (!label.empty()) out << "  run: " << label;
  out << "  sentences: " << sentences << "\n\n";
  out << "Span detection (token-wise)\n"
      << "  precision  recall     f1         tp      fp      fn\n"
      << "  " << std::setw(9) << tokens.precision << "  " << std::setw(9)
      << tokens.recall << "  " << std::setw(9) << tokens.f1 << "  "
      << std::setw(6) << tokens.tp << "  " << std::setw(6) << tokens.fp
      << "  " << std::setw(6) << tokens.fn << "\n\n";
  out << "Sentence classification\n"
      << "  accuracy   precision  recall     f1\n"
      << "  " << std::setw(9) << sentence.accuracy << "  " << std::setw(9)
      << sentence.precision << "  " << std::setw(9) << sentence.recall << "  "
      << std::setw(9) << sentence.f1 << "\n\n";
  out << "Errors\n"
      << "  BE      OE      FP      FN\n"
      << "  " << std::setw(6) << errors.boundary << "  " << std::setw(6)
      << errors.overlap << "  " << std::setw(6) << errors.false_positive
      << "  " << std::setw(6) << errors.false_negative << "\n";
  if (reduction) {
    out << "\nCandidate reduction\n"
        << "  total      eliminated  ratio\n"
        << "  " << std::setw(9) << reduction->total_candidates << "  "
        << std::setw(10) << reduction->eliminated << "  " << reduction->ratio
        << "\n";
  }
  return out.str();
}

EvalReport Evaluate(const Corpus &corpus,
                    const std::vector<DetectionResult> &predictions,
                    PicoType type) {
  std::map<std::pair<std::string, int>, const SentenceRecord *> index;
  for (const SentenceRecord &s : corpus.sentences) {
    index[{s.doc_id, s.sent_index}] = &s;
  }
  std::map<std::pair<std::string, int>, const DetectionResult *> by_sentence;
  for (const DetectionResult &p : predictions) {
    if (p.pico_type != type) continue;
    const auto key = std::make_pair(p.doc_id, p.sent_index);
    auto it = index.find(key);
    if (it == index.end()) {
      throw DataError("prediction for unknown sentence '" + p.doc_id + "' #" +
                      std::to_string(p.sent_index));
    }
    for (const Span &span : p.selected) {
      if (!span.valid_for(it->second->num_tokens())) {
        throw DataError("prediction for '" + p.doc_id + "' #" +
                        std::to_string(p.sent_index) +
                        " has a span outside the sentence");
      }
    }
    by_sentence[key] = &p;
  }

  EvalReport report;
  report.pico_type = type;
  std::vector<bool> predicted_labels, gold_labels;
  for (const SentenceRecord &s : corpus.sentences) {
    const SpanSet gold = s.ExpertSpans(type);
    SpanSet predicted;
    bool positive = false;
    auto it = by_sentence.find({s.doc_id, s.sent_index});
    if (it != by_sentence.end()) {
      predicted.insert(it->second->selected.begin(), it->second->selected.end());
      positive = it->second->sentence_positive;
    }
    report.tokens += TokenPrf(predicted, gold, s.num_tokens());
    report.errors += ClassifyErrors(predicted, gold);
    predicted_labels.push_back(positive);
    gold_labels.push_back(!gold.empty());
    ++report.sentences;
  }
  report.sentence = ComputeSentenceMetrics(predicted_labels, gold_labels);
  return report;
}

ReductionStats ReductionFromDump(const std::string &path) {
  std::vector<std::pair<std::int64_t, std::int64_t>> rows;
  for (const json &row : ReadJsonLines(path)) {
    try {
      rows.emplace_back(row.at("total_candidates").get<std::int64_t>(),
                        row.at("eliminated").get<std::int64_t>());
    } catch (const json::exception &e) {
      throw DataError(path + ": " + e.what());
    }
  }
  return ComputeReductionStats(rows);
}

std::string RenderComparison(const std::vector<EvalReport> &reports) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(2);
  out << std::left << std::setw(28) << "run" << std::right
      << "  pico          P     R     F1  | sAcc  sP    sR    sF1  |"
         "    BE    OE    FP    FN | red\n";
  for (const EvalReport &r : reports) {
    out << std::left << std::setw(28) << r.label.substr(0, 28) << std::right
        << "  " << std::left << std::setw(12) << PicoName(r.pico_type)
        << std::right << std::setw(5) << r.tokens.precision << " "
        << std::setw(5) << r.tokens.recall << " " << std::setw(5)
        << r.tokens.f1 << "  | " << std::setw(4) << r.sentence.accuracy << " "
        << std::setw(5) << r.sentence.precision << " " << std::setw(5)
        << r.sentence.recall << " " << std::setw(5) << r.sentence.f1 << " |"
        << std::setw(6) << r.errors.boundary << std::setw(6)
        << r.errors.overlap << std::setw(6) << r.errors.false_positive
        << std::setw(6) << r.errors.false_negative << " | ";
    if (r.reduction) out << r.reduction->ratio;
    else out << "-";
    out << "\n";
  }
  return out.str();
}

}  // namespace sent2span
