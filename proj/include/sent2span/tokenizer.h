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

// Deterministic rule-based tokenizer and sentence splitter.
//
// Tokenization rules, applied to UTF-8 text:
//   1. Whitespace separates tokens and is never part of one.
//   2. Within a whitespace-delimited chunk, a token is a maximal run of
//      letters or a maximal run of ASCII digits. Every non-ASCII code point
//      counts as a letter.
//   3. Any other character (punctuation, symbols) is a token on its own.
// Offsets are byte offsets into the input string.
//
// Sentence splitting: a boundary follows '.', '?' or '!' (optionally trailed
// by closing quotes or brackets) when the next non-space character is an
// uppercase letter or digit, unless the word ending in '.' is a known
// abbreviation ("e.g.", "et al.", "Fig.", ...). Returned intervals are
// trimmed of surrounding whitespace.

#ifndef SENT2SPAN_TOKENIZER_H_
#define SENT2SPAN_TOKENIZER_H_

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sent2span/types.h"

namespace sent2span {

std::vector<Token> Tokenize(std::string_view text);

// Returns [char_start, char_end) byte intervals, one per sentence.
std::vector<std::pair<int, int>> SplitSentences(std::string_view text);

// Splits |text| into sentences and tokenizes each. Token offsets refer to
// |text|.
std::vector<SentenceRecord> SegmentDocument(const std::string &doc_id,
                                            std::string_view text);

}  // namespace sent2span

#endif  // SENT2SPAN_TOKENIZER_H_
