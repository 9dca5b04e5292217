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

#include "sent2span/tokenizer.h"

#include <algorithm>
#include <array>
#include <cctype>

namespace sent2span {
namespace {

enum class CharClass { kSpace, kLetter, kDigit, kSymbol };

bool IsSpace(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

CharClass Classify(unsigned char c) {
  if (IsSpace(c)) return CharClass::kSpace;
  if (c >= 0x80) return CharClass::kLetter;
  if (std::isalpha(c)) return CharClass::kLetter;
  if (std::isdigit(c)) return CharClass::kDigit;
  return CharClass::kSymbol;
}

// Byte length of the UTF-8 sequence starting with |lead|. Malformed lead
// bytes are consumed one at a time.
int Utf8Length(unsigned char lead) {
  if (lead < 0x80) return 1;
  if ((lead >> 5) == 0x6) return 2;
  if ((lead >> 4) == 0xE) return 3;
  if ((lead >> 3) == 0x1E) return 4;
  return 1;
}

constexpr std::array<std::string_view, 20> kAbbreviations = {
    "e.g", "i.e", "al", "etc", "vs",  "approx", "fig", "figs", "no", "dr",
    "mr",  "mrs", "ms", "prof", "cf", "eq",     "resp", "ca",  "min", "st"};

bool IsAbbreviation(std::string_view text, int period_pos) {
  int begin = period_pos;
  while (begin > 0 && !IsSpace(text[begin - 1]) && text[begin - 1] != '(') {
    --begin;
  }
  std::string word(text.substr(begin, period_pos - begin));
  std::transform(word.begin(), word.end(), word.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return std::find(kAbbreviations.begin(), kAbbreviations.end(), word) !=
         kAbbreviations.end();
}

bool IsCloser(char c) {
  return c == '"' || c == '\'' || c == ')' || c == ']';
}

}  // namespace

std::vector<Token> Tokenize(std::string_view text) {
  std::vector<Token> tokens;
  const int n = static_cast<int>(text.size());
  int i = 0;
  while (i < n) {
    const auto c = static_cast<unsigned char>(text[i]);
    CharClass cls = Classify(c);
    if (cls == CharClass::kSpace) {
      ++i;
      continue;
    }
    int start = i;
    if (cls == CharClass::kSymbol) {
      ++i;
    } else {
      while (i < n && Classify(static_cast<unsigned char>(text[i])) == cls) {
        i += cls == CharClass::kLetter
                 ? Utf8Length(static_cast<unsigned char>(text[i]))
                 : 1;
      }
      i = std::min(i, n);
    }
    tokens.push_back({std::string(text.substr(start, i - start)), start, i});
  }
  return tokens;
}

std::vector<std::pair<int, int>> SplitSentences(std::string_view text) {
  std::vector<std::pair<int, int>> sentences;
  const int n = static_cast<int>(text.size());
  auto emit = [&](int begin, int end) {
    while (begin < end && IsSpace(text[begin])) ++begin;
    while (end > begin && IsSpace(text[end - 1])) --end;
    if (begin < end) sentences.emplace_back(begin, end);
  };

  int sentence_start = 0;
  for (int i = 0; i < n; ++i) {
    char c = text[i];
    if (c != '.' && c != '?' && c != '!') continue;
    int end = i + 1;
    while (end < n && IsCloser(text[end])) ++end;
    if (end >= n || !IsSpace(text[end])) continue;
    int next = end;
    while (next < n && IsSpace(text[next])) ++next;
    if (next >= n) continue;
    const auto following = static_cast<unsigned char>(text[next]);
    if (!std::isupper(following) && !std::isdigit(following)) continue;
    if (c == '.' && IsAbbreviation(text, i)) continue;
    emit(sentence_start, end);
    sentence_start = end;
    i = end - 1;
  }
  emit(sentence_start, n);
  return sentences;
}

std::vector<SentenceRecord> SegmentDocument(const std::string &doc_id,
                                            std::string_view text) {
  std::vector<SentenceRecord> records;
  for (const auto &[begin, end] : SplitSentences(text)) {
    SentenceRecord record;
    record.doc_id = doc_id;
    record.sent_index = static_cast<int>(records.size());
    record.tokens = Tokenize(text.substr(begin, end - begin));
    for (Token &t : record.tokens) {
      t.char_start += begin;
      t.char_end += begin;
    }
    records.push_back(std::move(record));
  }
  return records;
}

}  // namespace sent2span
