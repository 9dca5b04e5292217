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

#ifndef SENT2SPAN_JSON_UTIL_H_
#define SENT2SPAN_JSON_UTIL_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "sent2span/types.h"

namespace sent2span {

// [start, end] pair.
Span SpanFromJson(const nlohmann::json &value);
nlohmann::json SpanToJson(const Span &span);

SpanSet SpanSetFromJson(const nlohmann::json &value);
nlohmann::json SpanSetToJson(const SpanSet &spans);
nlohmann::json SpanListToJson(const std::vector<Span> &spans);

// ParsePico for data files: throws DataError rather than ConfigError.
PicoType ParsePicoData(std::string_view name);

// 64-bit FNV-1a, stable across platforms and runs.
std::uint64_t Fnv1a64(std::string_view bytes,
                      std::uint64_t basis = 0xcbf29ce484222325ULL);
std::string HexDigest(std::uint64_t value);

// Reads a JSON-lines file; throws DataError with the line number on parse
// failure.
std::vector<nlohmann::json> ReadJsonLines(const std::string &path);

}  // namespace sent2span

#endif  // SENT2SPAN_JSON_UTIL_H_
