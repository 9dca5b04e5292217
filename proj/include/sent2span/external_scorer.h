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

// Client for scorers that live in another process and speak the
// newline-delimited JSON protocol "sent2span-scorer/1":
//
//   handshake (both directions): {"protocol": "sent2span-scorer/1"}
//   request:  {"id": int, "pico": str, "tokens": [str], "mask": [s,e] | null}
//   response: {"id": int, "pos_score": float, "neg_score": float,
//              "effective_length": int}
//   error:    {"id": int, "error": str}
//
// A batch is a run of request lines; responses may come back in any order
// and are matched by id.

#ifndef SENT2SPAN_EXTERNAL_SCORER_H_
#define SENT2SPAN_EXTERNAL_SCORER_H_

#include <memory>
#include <mutex>
#include <string>
#include <string_view>

#include "json.hpp"
#include "sent2span/scorer.h"

namespace sent2span {

inline constexpr std::string_view kScorerProtocol = "sent2span-scorer/1";

// "exec:<shell command>" spawns the scorer and talks over its stdin/stdout;
// "tcp:<host>:<port>" connects to a listening scorer.
struct ScorerEndpoint {
  enum class Kind { kExec, kTcp };
  Kind kind = Kind::kExec;
  std::string command;
  std::string host;
  int port = 0;

  static ScorerEndpoint Parse(std::string_view descriptor);
  std::string ToString() const;
};

// Bidirectional line channel over file descriptors. Owns the descriptors and
// any spawned child process.
class LineChannel {
 public:
  static std::unique_ptr<LineChannel> Open(const ScorerEndpoint &endpoint,
                                           int timeout_ms);
  ~LineChannel();

  LineChannel(const LineChannel &) = delete;
  LineChannel &operator=(const LineChannel &) = delete;

  void WriteLine(std::string_view line);
  // Throws TransportError on EOF or timeout.
  std::string ReadLine();

 private:
  LineChannel(int read_fd, int write_fd, int child_pid, int timeout_ms);

  int read_fd_;
  int write_fd_;
  int child_pid_;
  int timeout_ms_;
  std::string buffer_;
};

struct ExternalScorerOptions {
  int batch_size = 64;
  int timeout_ms = 120000;
};

class ExternalScorer : public Scorer {
 public:
  // Connects and performs the protocol handshake; throws TransportError.
  ExternalScorer(const ScorerEndpoint &endpoint, PicoType type,
                 ExternalScorerOptions options = {});

  PicoType pico_type() const override { return type_; }

 protected:
  std::vector<ScoreResult> DoScoreBatch(
      std::span<const std::string> tokens,
      std::span<const std::optional<Span>> masks) const override;

 private:
  PicoType type_;
  ExternalScorerOptions options_;
  mutable std::mutex mutex_;
  mutable long next_id_ = 0;
  std::unique_ptr<LineChannel> channel_;
};

// Builds a request line. Shared with protocol test doubles.
nlohmann::json MakeScoreRequest(long id, PicoType type,
                                std::span<const std::string> tokens,
                                const std::optional<Span> &mask);

}  // namespace sent2span

#endif  // SENT2SPAN_EXTERNAL_SCORER_H_
