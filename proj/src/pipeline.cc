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

#include "sent2span/pipeline.h"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <string_view>

#include "sent2span/corpus_io.h"
#include "sent2span/external_scorer.h"
#include "sent2span/json_util.h"

namespace sent2span {

using json = nlohmann::json;

namespace {

json PerType(const std::map<PicoType, int> &values) {
  json out = json::object();
  for (const auto &[type, v] : values) out[std::string(PicoName(type))] = v;
  return out;
}

void ReadPerType(const json &value, std::map<PicoType, int> &out) {
  for (const auto &[name, v] : value.items()) out[ParsePico(name)] = v.get<int>();
}

}  // namespace

json RunConfig::ToJson() const {
  return {
      {"corpus", {{"train", train_corpus}, {"dev", dev_corpus}, {"test", test_corpus}}},
      {"pico", PicoName(pico_type)},
      {"label_mode", LabelModeName(label_mode)},
      {"gate", GateName(gate)},
      {"span",
       {{"max_span_len", PerType(span.max_span_len)},
        {"top_k", PerType(span.top_k)},
        {"score_mode", ScoreModeName(span.score_mode)},
        {"threshold", span.threshold},
        {"batch_size", span.batch_size},
        {"eliminate", span.eliminate}}},
      {"scorer",
       {{"kind", scorer_kind},
        {"model", model_path},
        {"endpoint", scorer_endpoint},
        {"train",
         {{"epochs", train.epochs},
          {"learning_rate", train.learning_rate},
          {"l2", train.l2},
          {"feature_dim", train.feature_dim},
          {"batch_size", train.batch_size}}}}},
      {"seed", seed},
      {"output_dir", output_dir},
      {"threads", threads}};
}

namespace {

// A misspelled key would otherwise silently fall back to a default.
void CheckKeys(const json &object, std::initializer_list<std::string_view> known,
               std::string_view where) {
  if (!object.is_object()) {
    throw ConfigError("run config: '" + std::string(where) + "' must be an object");
  }
  for (const auto &item : object.items()) {
    if (std::find(known.begin(), known.end(), item.key()) == known.end()) {
      throw ConfigError("run config: unknown key '" + item.key() + "' in " +
                        std::string(where));
    }
  }
}

}  // namespace

RunConfig RunConfig::FromJson(const json &value) {
  RunConfig c;
  CheckKeys(value,
            {"corpus", "pico", "label_mode", "gate", "span", "scorer", "seed",
             "output_dir", "threads", "config_hash"},
            "top level");
  try {
    if (value.contains("corpus")) {
      const json &corpus = value["corpus"];
      CheckKeys(corpus, {"train", "dev", "test"}, "corpus");
      c.train_corpus = corpus.value("train", "");
      c.dev_corpus = corpus.value("dev", "");
      c.test_corpus = corpus.value("test", "");
    }
    if (value.contains("pico")) c.pico_type = ParsePico(value["pico"].get<std::string>());
    if (value.contains("label_mode")) {
      c.label_mode = ParseLabelMode(value["label_mode"].get<std::string>());
    }
    if (value.contains("gate")) c.gate = ParseGate(value["gate"].get<std::string>());
    if (value.contains("span")) {
      const json &span = value["span"];
      CheckKeys(span, {"max_span_len", "top_k", "score_mode", "threshold",
                       "batch_size", "eliminate"}, "span");
      if (span.contains("max_span_len")) ReadPerType(span["max_span_len"], c.span.max_span_len);
      if (span.contains("top_k")) ReadPerType(span["top_k"], c.span.top_k);
      if (span.contains("score_mode")) {
        c.span.score_mode = ParseScoreMode(span["score_mode"].get<std::string>());
      }
      c.span.threshold = span.value("threshold", c.span.threshold);
      c.span.batch_size = span.value("batch_size", c.span.batch_size);
      c.span.eliminate = span.value("eliminate", c.span.eliminate);
    }
    if (value.contains("scorer")) {
      const json &scorer = value["scorer"];
      CheckKeys(scorer, {"kind", "model", "endpoint", "train"}, "scorer");
      c.scorer_kind = scorer.value("kind", c.scorer_kind);
      c.model_path = scorer.value("model", "");
      c.scorer_endpoint = scorer.value("endpoint", "");
      if (scorer.contains("train")) {
        const json &t = scorer["train"];
        CheckKeys(t, {"epochs", "learning_rate", "l2", "feature_dim", "batch_size"},
                  "scorer.train");
        c.train.epochs = t.value("epochs", c.train.epochs);
        c.train.learning_rate = t.value("learning_rate", c.train.learning_rate);
        c.train.l2 = t.value("l2", c.train.l2);
        c.train.feature_dim = t.value("feature_dim", c.train.feature_dim);
        c.train.batch_size = t.value("batch_size", c.train.batch_size);
      }
    }
    c.seed = value.value("seed", c.seed);
    c.output_dir = value.value("output_dir", c.output_dir);
    c.threads = value.value("threads", c.threads);
  } catch (const json::exception &e) {
    throw ConfigError(std::string("invalid run config: ") + e.what());
  }
  if (c.scorer_kind != "baseline" && c.scorer_kind != "external") {
    throw ConfigError("scorer.kind must be 'baseline' or 'external'");
  }
  c.span.Validate();
  c.train.seed = c.seed;
  return c;
}

RunConfig RunConfig::Load(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json value = json::parse(in, nullptr, false);
  if (value.is_discarded() || !value.is_object()) {
    throw ConfigError("config file '" + path + "' is not a JSON object");
  }
  return FromJson(value);
}

std::string RunConfig::Hash() const { return HexDigest(Fnv1a64(ToJson().dump())); }

std::vector<LabeledSentence> BuildTrainingSet(const Corpus &corpus,
                                              PicoType type, LabelMode mode) {
  std::vector<LabeledSentence> examples;
  for (const SentenceRecord &s : corpus.sentences) {
    if (s.tokens.empty()) continue;
    examples.push_back(
        {s.token_texts(), DeriveSentenceLabel(corpus, s, type, mode) ? 1 : 0});
  }
  return examples;
}

std::unique_ptr<Scorer> MakeScorer(const RunConfig &config) {
  if (config.scorer_kind == "external") {
    if (config.scorer_endpoint.empty()) {
      throw ConfigError("external scorer needs an endpoint");
    }
    ExternalScorerOptions options;
    options.batch_size = config.span.batch_size;
    return std::make_unique<ExternalScorer>(
        ScorerEndpoint::Parse(config.scorer_endpoint), config.pico_type, options);
  }
  if (!config.model_path.empty()) {
    BaselineScorerModel model = BaselineScorerModel::Load(config.model_path);
    if (model.pico_type != config.pico_type) {
      throw ConfigError("model '" + config.model_path + "' is for " +
                        std::string(PicoName(model.pico_type)));
    }
    return std::make_unique<BaselineScorer>(std::move(model));
  }
  if (config.train_corpus.empty()) {
    throw ConfigError("baseline scorer needs either scorer.model or "
                      "corpus.train");
  }
  Corpus train = LoadCorpus(config.train_corpus, Split::kTrain);
  std::vector<LabeledSentence> dev;
  if (!config.dev_corpus.empty()) {
    dev = BuildTrainingSet(LoadCorpus(config.dev_corpus, Split::kDev),
                           config.pico_type, config.label_mode);
  }
  return std::make_unique<BaselineScorer>(TrainBaseline(
      BuildTrainingSet(train, config.pico_type, config.label_mode),
      config.pico_type, config.train, dev));
}

}  // namespace sent2span
