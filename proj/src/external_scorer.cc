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

#include "sent2span/external_scorer.h"

#include <netdb.h>
#include <poll.h>
#include <signal.h>
#include <sys/socket.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstring>
#include <map>

#include "sent2span/json_util.h"

namespace sent2span {

using json = nlohmann::json;

ScorerEndpoint ScorerEndpoint::Parse(std::string_view descriptor) {
  ScorerEndpoint endpoint;
  if (descriptor.starts_with("exec:")) {
    endpoint.kind = Kind::kExec;
    endpoint.command = std::string(descriptor.substr(5));
    if (endpoint.command.empty()) throw ConfigError("empty exec: command");
    return endpoint;
  }
  if (descriptor.starts_with("tcp:")) {
    std::string_view rest = descriptor.substr(4);
    auto colon = rest.rfind(':');
    if (colon == std::string_view::npos || colon == 0) {
      throw ConfigError("tcp endpoint must be tcp:<host>:<port>");
    }
    endpoint.kind = Kind::kTcp;
    endpoint.host = std::string(rest.substr(0, colon));
    try {
      endpoint.port = std::stoi(std::string(rest.substr(colon + 1)));
    } catch (const std::exception &) {
      throw ConfigError("invalid port in '" + std::string(descriptor) + "'");
    }
    return endpoint;
  }
  throw ConfigError("scorer endpoint must start with exec: or tcp: (got '" +
                    std::string(descriptor) + "')");
}

std::string ScorerEndpoint::ToString() const {
  if (kind == Kind::kExec) return "exec:" + command;
  return "tcp:" + host + ":" + std::to_string(port);
}

LineChannel::LineChannel(int read_fd, int write_fd, int child_pid,
                         int timeout_ms)
    : read_fd_(read_fd),
      write_fd_(write_fd),
      child_pid_(child_pid),
      timeout_ms_(timeout_ms) {}

LineChannel::~LineChannel() {
  if (write_fd_ >= 0 && write_fd_ != read_fd_) ::close(write_fd_);
  if (read_fd_ >= 0) ::close(read_fd_);
  if (child_pid_ > 0) {
    int status = 0;
    ::waitpid(child_pid_, &status, 0);
  }
}

std::unique_ptr<LineChannel> LineChannel::Open(const ScorerEndpoint &endpoint,
                                               int timeout_ms) {
  // A scorer that dies mid-batch must surface as a TransportError, not kill
  // the engine.
  ::signal(SIGPIPE, SIG_IGN);

  if (endpoint.kind == ScorerEndpoint::Kind::kExec) {
    int to_child[2], from_child[2];
    if (::pipe(to_child) != 0) throw TransportError("pipe() failed");
    if (::pipe(from_child) != 0) {
      ::close(to_child[0]);
      ::close(to_child[1]);
      throw TransportError("pipe() failed");
    }
    pid_t pid = ::fork();
    if (pid < 0) throw TransportError("fork() failed");
    if (pid == 0) {
      ::dup2(to_child[0], STDIN_FILENO);
      ::dup2(from_child[1], STDOUT_FILENO);
      ::close(to_child[0]);
      ::close(to_child[1]);
      ::close(from_child[0]);
      ::close(from_child[1]);
      ::execl("/bin/sh", "sh", "-c", endpoint.command.c_str(),
              static_cast<char *>(nullptr));
      ::_exit(127);
    }
    ::close(to_child[0]);
    ::close(from_child[1]);
    return std::unique_ptr<LineChannel>(
        new LineChannel(from_child[0], to_child[1], pid, timeout_ms));
  }

  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo *result = nullptr;
  const std::string port = std::to_string(endpoint.port);
  if (int rc = ::getaddrinfo(endpoint.host.c_str(), port.c_str(), &hints,
                             &result);
      rc != 0) {
    throw TransportError("cannot resolve " + endpoint.ToString() + ": " +
                         ::gai_strerror(rc));
  }
  int fd = -1;
  for (addrinfo *ai = result; ai != nullptr; ai = ai->ai_next) {
    fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
    if (fd < 0) continue;
    if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) break;
    ::close(fd);
    fd = -1;
  }
  ::freeaddrinfo(result);
  if (fd < 0) throw TransportError("cannot connect to " + endpoint.ToString());
  return std::unique_ptr<LineChannel>(new LineChannel(fd, fd, -1, timeout_ms));
}

void LineChannel::WriteLine(std::string_view line) {
  std::string data(line);
  data.push_back('\n');
  std::size_t written = 0;
  while (written < data.size()) {
    ssize_t n = ::write(write_fd_, data.data() + written, data.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw TransportError(std::string("scorer write failed: ") +
                           std::strerror(errno));
    }
    written += static_cast<std::size_t>(n);
  }
}

std::string LineChannel::ReadLine() {
  for (;;) {
    auto newline = buffer_.find('\n');
    if (newline != std::string::npos) {
      std::string line = buffer_.substr(0, newline);
      buffer_.erase(0, newline + 1);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return line;
    }
    pollfd pfd{read_fd_, POLLIN, 0};
    int ready = ::poll(&pfd, 1, timeout_ms_);
    if (ready == 0) throw TransportError("scorer timed out");
    if (ready < 0) {
      if (errno == EINTR) continue;
      throw TransportError("poll() failed");
    }
    char chunk[4096];
    ssize_t n = ::read(read_fd_, chunk, sizeof(chunk));
    if (n < 0) {
      if (errno == EINTR) continue;
      throw TransportError(std::string("scorer read failed: ") +
                           std::strerror(errno));
    }
    if (n == 0) throw TransportError("scorer closed the connection");
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
}

json MakeScoreRequest(long id, PicoType type,
                      std::span<const std::string> tokens,
                      const std::optional<Span> &mask) {
  json request;
  request["id"] = id;
  request["pico"] = PicoName(type);
  request["tokens"] = json(std::vector<std::string>(tokens.begin(), tokens.end()));
  request["mask"] = mask ? SpanToJson(*mask) : json(nullptr);
  return request;
}

ExternalScorer::ExternalScorer(const ScorerEndpoint &endpoint, PicoType type,
                               ExternalScorerOptions options)
    : type_(type), options_(options) {
  if (options_.batch_size <= 0) throw ConfigError("batch_size must be positive");
  channel_ = LineChannel::Open(endpoint, options_.timeout_ms);
  const json hello = {{"protocol", kScorerProtocol}};
  channel_->WriteLine(hello.dump());
  std::string reply = channel_->ReadLine();
  json parsed = json::parse(reply, nullptr, false);
  if (parsed.is_discarded() || !parsed.is_object() ||
      parsed.value("protocol", "") != kScorerProtocol) {
    throw TransportError("protocol handshake failed: got '" + reply + "'");
  }
}

std::vector<ScoreResult> ExternalScorer::DoScoreBatch(
    std::span<const std::string> tokens,
    std::span<const std::optional<Span>> masks) const {
  std::lock_guard<std::mutex> lock(mutex_);
  std::vector<ScoreResult> results(masks.size());
  const int n = static_cast<int>(tokens.size());
  for (std::size_t begin = 0; begin < masks.size();
       begin += options_.batch_size) {
    const std::size_t end = std::min(
        masks.size(), begin + static_cast<std::size_t>(options_.batch_size));
    std::map<long, std::size_t> pending;
    for (std::size_t k = begin; k < end; ++k) {
      const long id = next_id_++;
      pending[id] = k;
      channel_->WriteLine(MakeScoreRequest(id, type_, tokens, masks[k]).dump());
    }
    while (!pending.empty()) {
      std::string line = channel_->ReadLine();
      json response = json::parse(line, nullptr, false);
      if (response.is_discarded() || !response.is_object() ||
          !response.contains("id") || !response["id"].is_number_integer()) {
        throw TransportError("malformed scorer response: '" + line + "'");
      }
      const long id = response["id"].get<long>();
      auto it = pending.find(id);
      if (it == pending.end()) {
        throw TransportError("scorer response with unexpected id " +
                             std::to_string(id));
      }
      if (response.contains("error")) {
        throw TransportError("scorer error for request " + std::to_string(id) +
                             ": " + response["error"].dump());
      }
      try {
        const double pos = response.at("pos_score").get<double>();
        const double neg = response.at("neg_score").get<double>();
        const int effective = response.at("effective_length").get<int>();
        if (!std::isfinite(pos) || !std::isfinite(neg) || effective < 0 ||
            effective > n) {
          throw TransportError("scorer response out of range: '" + line + "'");
        }
        results[it->second] = MakeScoreResult(pos, neg, effective);
      } catch (const json::exception &e) {
        throw TransportError("malformed scorer response: '" + line +
                             "': " + e.what());
      }
      pending.erase(it);
    }
  }
  return results;
}

}  // namespace sent2span
