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

#include "sent2span/json_util.h"

#include <cstdio>
#include <fstream>

namespace sent2span {

using json = nlohmann::json;

Span SpanFromJson(const json &value) {
  if (!value.is_array() || value.size() != 2) {
    throw DataError("span must be a [start, end] pair, got " + value.dump());
  }
  return {value[0].get<int>(), value[1].get<int>()};
}

json SpanToJson(const Span &span) { return json::array({span.start, span.end}); }

SpanSet SpanSetFromJson(const json &value) {
  if (!value.is_array()) throw DataError("span list must be an array");
  SpanSet spans;
  for (const json &item : value) spans.insert(SpanFromJson(item));
  return spans;
}

json SpanSetToJson(const SpanSet &spans) {
  json out = json::array();
  for (const Span &span : spans) out.push_back(SpanToJson(span));
  return out;
}

json SpanListToJson(const std::vector<Span> &spans) {
  json out = json::array();
  for (const Span &span : spans) out.push_back(SpanToJson(span));
  return out;
}

PicoType ParsePicoData(std::string_view name) {
  try {
    return ParsePico(name);
  } catch (const ConfigError &e) {
    throw DataError(e.what());
  }
}

std::uint64_t Fnv1a64(std::string_view bytes, std::uint64_t basis) {
  std::uint64_t hash = basis;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::string HexDigest(std::uint64_t value) {
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016llx",
                static_cast<unsigned long long>(value));
  return buffer;
}

std::vector<json> ReadJsonLines(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::vector<json> rows;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      rows.push_back(json::parse(line));
    } catch (const json::exception &e) {
      throw DataError(path + ":" + std::to_string(line_number) + ": " +
                      e.what());
    }
  }
  return rows;
}

}  // namespace sent2span
