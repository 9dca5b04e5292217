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

// Test double for an external scorer. Speaks sent2span-scorer/1 on
// stdin/stdout. Requests that arrive together are answered in reverse order
// so clients cannot rely on ordering.
//
//   --model PATH      score with a saved baseline model
//   (default)         pos_score = number of unmasked tokens starting with 'k'
//   --truncate N      report effective_length = min(len, N), ignore the rest
//   --error-token T   answer requests containing token T with an error line
//   --bad-handshake   reply to the handshake with a wrong protocol name
//   --die-after N     exit after answering N requests

#include <poll.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sent2span/baseline_scorer.h"
#include "sent2span/external_scorer.h"
#include "sent2span/json_util.h"

namespace {

using json = nlohmann::json;
using sent2span::Span;

struct Options {
  std::string model;
  int truncate = 1 << 30;
  std::string error_token;
  bool bad_handshake = false;
  long die_after = -1;
};

bool InputPending() {
  pollfd pfd{STDIN_FILENO, POLLIN, 0};
  return ::poll(&pfd, 1, 1) > 0;
}

json Answer(const json &request, const Options &options,
            const std::optional<sent2span::BaselineScorer> &baseline) {
  if (!request.is_object() || !request.contains("id") ||
      !request.contains("tokens")) {
    return {{"id", request.is_object() ? request.value("id", -1) : -1},
            {"error", "malformed request"}};
  }
  const long id = request["id"].get<long>();
  std::vector<std::string> tokens = request["tokens"].get<std::vector<std::string>>();
  for (const std::string &t : tokens) {
    if (!options.error_token.empty() && t == options.error_token) {
      return {{"id", id}, {"error", "refused token " + t}};
    }
  }
  const int effective = std::min<int>(tokens.size(), options.truncate);
  tokens.resize(effective);
  std::optional<Span> mask;
  const json mask_value = request.value("mask", json(nullptr));
  if (!mask_value.is_null()) mask = sent2span::SpanFromJson(mask_value);
  if (mask && (mask->start < 0 || mask->start >= mask->end ||
               mask->end > effective)) {
    return {{"id", id}, {"error", "mask out of range"}};
  }
  if (baseline) {
    sent2span::ScoreResult r = baseline->Score(tokens, mask);
    return {{"id", id},
            {"pos_score", r.positive_score},
            {"neg_score", r.negative_score},
            {"effective_length", effective}};
  }
  double pos = 0.0;
  for (int i = 0; i < effective; ++i) {
    const bool masked = mask && i >= mask->start && i < mask->end;
    if (!masked && !tokens[i].empty() && tokens[i][0] == 'k') pos += 1.0;
  }
  return {{"id", id}, {"pos_score", pos}, {"neg_score", 0.0},
          {"effective_length", effective}};
}

}  // namespace

int main(int argc, char **argv) {
  Options options;
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    auto next = [&]() { return i + 1 < argc ? std::string(argv[++i]) : std::string(); };
    if (arg == "--model") options.model = next();
    else if (arg == "--truncate") options.truncate = std::stoi(next());
    else if (arg == "--error-token") options.error_token = next();
    else if (arg == "--bad-handshake") options.bad_handshake = true;
    else if (arg == "--die-after") options.die_after = std::stol(next());
  }
  std::optional<sent2span::BaselineScorer> baseline;
  if (!options.model.empty()) {
    baseline.emplace(sent2span::BaselineScorerModel::Load(options.model));
  }

  // Raw fd reads so that poll() sees exactly what is still unread.
  std::string buffer;
  auto read_line = [&](std::string &line) {
    for (;;) {
      auto newline = buffer.find('\n');
      if (newline != std::string::npos) {
        line = buffer.substr(0, newline);
        buffer.erase(0, newline + 1);
        return true;
      }
      char chunk[4096];
      ssize_t n = ::read(STDIN_FILENO, chunk, sizeof(chunk));
      if (n <= 0) return false;
      buffer.append(chunk, static_cast<size_t>(n));
    }
  };
  auto emit = [](const json &value) {
    std::string out = value.dump() + "\n";
    if (::write(STDOUT_FILENO, out.data(), out.size()) < 0) std::exit(3);
  };

  std::string line;
  if (!read_line(line)) return 0;
  json hello = json::parse(line, nullptr, false);
  if (hello.is_discarded() || !hello.is_object() ||
      hello.value("protocol", "") != sent2span::kScorerProtocol) {
    emit(json{{"error", "bad handshake"}});
    return 1;
  }
  emit(json{{"protocol", options.bad_handshake
                             ? "other-protocol/9"
                             : std::string(sent2span::kScorerProtocol)}});

  long answered = 0;
  std::vector<json> pending;
  while (read_line(line)) {
    json request = json::parse(line, nullptr, false);
    pending.push_back(request.is_discarded() ? json(nullptr) : request);
    if (buffer.find('\n') != std::string::npos || InputPending()) continue;
    for (auto it = pending.rbegin(); it != pending.rend(); ++it) {
      if (options.die_after >= 0 && answered >= options.die_after) return 2;
      try {
        emit(Answer(*it, options, baseline));
      } catch (const std::exception &e) {
        emit(json{{"id", it->is_object() ? it->value("id", -1) : -1},
                  {"error", e.what()}});
      }
      ++answered;
    }
    pending.clear();
  }
  return 0;
}
