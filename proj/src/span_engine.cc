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

#include "sent2span/span_engine.h"

#include <algorithm>
#include <optional>

namespace sent2span {
namespace {

double ModeScore(const ScoreResult &result, ScoreMode mode) {
  return mode == ScoreMode::kLogit ? result.positive_score : result.probability;
}

}  // namespace

std::string_view ScoreModeName(ScoreMode mode) {
  return mode == ScoreMode::kLogit ? "logit" : "probability";
}

ScoreMode ParseScoreMode(std::string_view name) {
  if (name == "logit") return ScoreMode::kLogit;
  if (name == "probability") return ScoreMode::kProbability;
  throw ConfigError("unknown score mode '" + std::string(name) + "'");
}

int SpanConfig::MaxSpanLength(PicoType type) const {
  auto it = max_span_len.find(type);
  if (it == max_span_len.end()) {
    throw ConfigError("no max span length for " + std::string(PicoName(type)));
  }
  return it->second;
}

int SpanConfig::TopK(PicoType type) const {
  auto it = top_k.find(type);
  if (it == top_k.end()) {
    throw ConfigError("no top-k for " + std::string(PicoName(type)));
  }
  return it->second;
}

void SpanConfig::Validate() const {
  for (const auto &[type, m] : max_span_len) {
    if (m < 1) throw ConfigError("max span length must be >= 1");
  }
  for (const auto &[type, k] : top_k) {
    if (k < 1) throw ConfigError("top-k must be >= 1");
  }
  if (batch_size < 1) throw ConfigError("batch size must be >= 1");
}

std::int64_t CandidateCount(int num_tokens, int max_span_len) {
  const std::int64_t n = num_tokens;
  const std::int64_t m = std::min<std::int64_t>(max_span_len, n);
  return m * (2 * n - m + 1) / 2;
}

std::vector<Span> EnumerateCandidates(int num_tokens, int max_span_len) {
  std::vector<Span> spans;
  const int m = std::min(max_span_len, num_tokens);
  for (int length = 1; length <= m; ++length) {
    for (int start = 0; start + length <= num_tokens; ++start) {
      spans.push_back({start, start + length});
    }
  }
  return spans;
}

bool TryEliminate(SpanSet &rm, const Span &span) {
  for (int p = span.start + 1; p < span.end; ++p) {
    if (rm.count({span.start, p}) && rm.count({p, span.end})) {
      rm.insert(span);
      return true;
    }
  }
  return false;
}

EliminationSet EliminateNested(const std::map<Span, double> &contributions,
                               const std::vector<Span> &singletons,
                               int max_span_len) {
  EliminationSet result;
  const int n = static_cast<int>(singletons.size());
  for (int t = 0; t < n; ++t) {
    const Span expected{t, t + 1};
    if (singletons[t] != expected) {
      throw PreconditionError("singletons must be <0,1>, ..., <N-1,N> in order");
    }
    auto it = contributions.find(expected);
    if (it == contributions.end()) {
      throw PreconditionError("missing contribution for singleton <" +
                              std::to_string(t) + "," + std::to_string(t + 1) +
                              ">");
    }
    ++result.singleton_scored;
    if (it->second < 0) result.eliminated.insert(expected);
  }
  const int m = std::min(max_span_len, n);
  for (int length = 2; length <= m; ++length) {
    for (int start = 0; start + length <= n; ++start) {
      TryEliminate(result.eliminated, {start, start + length});
    }
  }
  return result;
}

MspResult ScoreAllCandidates(const Scorer &scorer,
                             std::span<const std::string> tokens,
                             PicoType type, const SpanConfig &config) {
  config.Validate();
  MspResult result;
  result.base = scorer.Score(tokens);
  const int n = std::min<int>(result.base.effective_length,
                              static_cast<int>(tokens.size()));
  result.num_tokens = n;
  if (n <= 0) return result;
  const int m = std::min(config.MaxSpanLength(type), n);
  result.total_candidates = CandidateCount(n, m);
  const double base_score = ModeScore(result.base, config.score_mode);

  std::vector<std::optional<Span>> masks;
  std::vector<Span> batch;
  auto flush = [&]() {
    if (batch.empty()) return;
    masks.assign(batch.begin(), batch.end());
    std::vector<ScoreResult> scores = scorer.ScoreBatch(tokens, masks);
    for (std::size_t k = 0; k < batch.size(); ++k) {
      const double masked = ModeScore(scores[k], config.score_mode);
      result.scored.push_back({batch[k], base_score, masked, base_score - masked});
    }
    batch.clear();
  };

  for (int length = 1; length <= m; ++length) {
    for (int start = 0; start + length <= n; ++start) {
      const Span span{start, start + length};
      if (config.eliminate && length >= 2 &&
          TryEliminate(result.elimination.eliminated, span)) {
        continue;
      }
      batch.push_back(span);
      if (static_cast<int>(batch.size()) >= config.batch_size) flush();
    }
    // Every span of this length must be decided before the next length
    // consults RM.
    flush();
    if (length == 1) {
      result.elimination.singleton_scored = n;
      if (config.eliminate) {
        for (const ScoredSpan &s : result.scored) {
          if (s.contribution < 0) result.elimination.eliminated.insert(s.span);
        }
      }
    }
  }

  // Negative singletons stay out of the candidate set, like every other
  // member of RM.
  if (config.eliminate) {
    std::erase_if(result.scored, [&](const ScoredSpan &s) {
      return result.elimination.contains(s.span);
    });
  }
  return result;
}

}  // namespace sent2span
