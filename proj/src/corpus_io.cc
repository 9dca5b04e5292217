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

#include "sent2span/corpus_io.h"

#include <fstream>
#include <istream>
#include <ostream>

#include "json.hpp"
#include "sent2span/json_util.h"
#include "sent2span/tokenizer.h"

namespace sent2span {
namespace {

using json = nlohmann::json;

std::map<PicoType, SpanSet> ParseTypedSpans(const json &obj) {
  std::map<PicoType, SpanSet> result;
  for (const auto &[name, spans] : obj.items()) {
    result[ParsePicoData(name)] = SpanSetFromJson(spans);
  }
  return result;
}

json TypedSpansToJson(const std::map<PicoType, SpanSet> &typed) {
  json obj = json::object();
  for (const auto &[type, spans] : typed) {
    obj[std::string(PicoName(type))] = SpanSetToJson(spans);
  }
  return obj;
}

SentenceRecord ParseSentence(const json &obj, const std::string &doc_id,
                             int index) {
  SentenceRecord record;
  record.doc_id = doc_id;
  record.sent_index = index;
  const auto &tokens = obj.at("tokens");
  if (!tokens.is_array()) throw DataError("'tokens' must be an array");
  const json *offsets = obj.contains("offsets") ? &obj["offsets"] : nullptr;
  if (offsets && offsets->size() != tokens.size()) {
    throw DataError("document '" + doc_id + "' sentence " +
                    std::to_string(index) +
                    ": offsets length differs from tokens length");
  }
  int cursor = 0;
  for (std::size_t t = 0; t < tokens.size(); ++t) {
    Token token;
    token.text = tokens[t].get<std::string>();
    if (offsets) {
      token.char_start = (*offsets)[t].at(0).get<int>();
      token.char_end = (*offsets)[t].at(1).get<int>();
    } else {
      token.char_start = cursor;
      token.char_end = cursor + std::max<int>(1, token.text.size());
      cursor = token.char_end + 1;
    }
    record.tokens.push_back(std::move(token));
  }
  if (obj.contains("crowd")) {
    for (const auto &[name, by_annotator] : obj["crowd"].items()) {
      auto &slot = record.crowd[ParsePicoData(name)];
      for (const auto &[annotator, spans] : by_annotator.items()) {
        slot[annotator] = SpanSetFromJson(spans);
      }
    }
  }
  if (obj.contains("expert")) record.expert = ParseTypedSpans(obj["expert"]);
  if (obj.contains("aggregated")) {
    record.aggregated = ParseTypedSpans(obj["aggregated"]);
  }
  return record;
}

}  // namespace

Corpus ParseCorpus(std::istream &in, Split split) {
  Corpus corpus;
  corpus.split = split;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      json doc = json::parse(line);
      std::string doc_id = doc.at("doc_id").get<std::string>();
      if (doc.contains("text")) {
        corpus.document_text[doc_id] = doc["text"].get<std::string>();
      }
      if (doc.contains("sentences") && !doc["sentences"].empty()) {
        int index = 0;
        for (const json &sentence : doc["sentences"]) {
          corpus.sentences.push_back(ParseSentence(sentence, doc_id, index++));
        }
      } else if (doc.contains("text")) {
        for (SentenceRecord &record :
             SegmentDocument(doc_id, corpus.document_text[doc_id])) {
          corpus.sentences.push_back(std::move(record));
        }
      }
    } catch (const json::exception &e) {
      throw DataError("line " + std::to_string(line_number) + ": " + e.what());
    } catch (const DataError &e) {
      throw DataError("line " + std::to_string(line_number) + ": " + e.what());
    } catch (const ConfigError &e) {
      throw DataError("line " + std::to_string(line_number) + ": " + e.what());
    }
  }
  corpus.Validate();
  corpus.Reindex();
  return corpus;
}

Corpus LoadCorpus(const std::string &path, Split split) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open corpus file '" + path + "'");
  return ParseCorpus(in, split);
}

void WriteCorpus(const Corpus &corpus, std::ostream &out) {
  std::vector<std::string> order;
  std::map<std::string, json> docs;
  for (const SentenceRecord &s : corpus.sentences) {
    auto [it, inserted] = docs.try_emplace(s.doc_id, json::object());
    if (inserted) {
      order.push_back(s.doc_id);
      it->second["doc_id"] = s.doc_id;
      it->second["sentences"] = json::array();
      auto text = corpus.document_text.find(s.doc_id);
      if (text != corpus.document_text.end()) it->second["text"] = text->second;
    }
    json sentence;
    sentence["tokens"] = s.token_texts();
    json offsets = json::array();
    for (const Token &t : s.tokens) offsets.push_back({t.char_start, t.char_end});
    sentence["offsets"] = offsets;
    json crowd = json::object();
    for (const auto &[type, by_annotator] : s.crowd) {
      json annotators = json::object();
      for (const auto &[annotator, spans] : by_annotator) {
        annotators[annotator] = SpanSetToJson(spans);
      }
      crowd[std::string(PicoName(type))] = annotators;
    }
    sentence["crowd"] = crowd;
    if (s.expert) sentence["expert"] = TypedSpansToJson(*s.expert);
    if (s.aggregated) sentence["aggregated"] = TypedSpansToJson(*s.aggregated);
    it->second["sentences"].push_back(std::move(sentence));
  }
  for (const std::string &doc_id : order) out << docs[doc_id].dump() << '\n';
}

void SaveCorpus(const Corpus &corpus, const std::string &path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write corpus file '" + path + "'");
  WriteCorpus(corpus, out);
}

}  // namespace sent2span
