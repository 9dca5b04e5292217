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

// JSON-lines corpus format, one document per line:
//
//   {"doc_id": "...", "text": "...",
//    "sentences": [{"tokens": [...], "offsets": [[b,e],...],
//                   "crowd": {"population": {"<annotator>": [[s,e],...]}},
//                   "expert": {"population": [[s,e],...]},
//                   "aggregated": {"population": [[s,e],...]}}]}
//
// "text", "offsets", "expert" and "aggregated" are optional. A document with
// "text" and no "sentences" is segmented with the rule tokenizer. Missing
// offsets are synthesized as if the tokens were joined by single spaces.
// Spans are half-open token indices local to their sentence.

#ifndef SENT2SPAN_CORPUS_IO_H_
#define SENT2SPAN_CORPUS_IO_H_

#include <iosfwd>
#include <string>

#include "sent2span/types.h"

namespace sent2span {

// Throws DataError with the 1-based line number on malformed JSON, and a
// DataError naming doc_id and field on invariant violations.
Corpus ParseCorpus(std::istream &in, Split split = Split::kTrain);
Corpus LoadCorpus(const std::string &path, Split split = Split::kTrain);

// Canonical form: one line per document in first-appearance order, keys
// sorted, offsets always present.
void WriteCorpus(const Corpus &corpus, std::ostream &out);
void SaveCorpus(const Corpus &corpus, const std::string &path);

}  // namespace sent2span

#endif  // SENT2SPAN_CORPUS_IO_H_
