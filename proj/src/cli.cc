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

#include "sent2span/cli.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "sent2span/corpus_io.h"
#include "sent2span/evaluation.h"
#include "sent2span/json_util.h"
#include "sent2span/pipeline.h"
#include "sent2span/synthetic.h"

namespace sent2span {
namespace {

using json = nlohmann::json;

// Flags shared by train and detect. Each one overrides the config file only
// when given on the command line.
struct RunFlags {
  std::string config_path;
  std::string pico, label_mode, gate, score_mode;
  std::string train_corpus, dev_corpus, test_corpus;
  std::string model, scorer;
  std::uint64_t seed = 0;
  int threads = 1, top_k = 0, max_span_len = 0, batch_size = 0;
  double threshold = 0.5;
  bool no_eliminate = false;
  int epochs = 0, feature_dim = 0, train_batch = 0;
  double learning_rate = 0, l2 = 0;
  std::map<std::string, CLI::Option *> options;

  void Register(CLI::App *app, bool span_flags) {
    options["config"] = app->add_option("--config", config_path, "Run config JSON");
    options["pico"] = app->add_option("--pico", pico, "population|intervention|outcome");
    options["label-mode"] = app->add_option("--label-mode", label_mode, "agg|major|minor");
    options["train"] = app->add_option("--train", train_corpus, "Training corpus");
    options["dev"] = app->add_option("--dev", dev_corpus, "Development corpus");
    options["seed"] = app->add_option("--seed", seed, "Random seed");
    options["epochs"] = app->add_option("--epochs", epochs, "Training epochs");
    options["learning-rate"] = app->add_option("--learning-rate", learning_rate);
    options["l2"] = app->add_option("--l2", l2, "L2 penalty");
    options["feature-dim"] = app->add_option("--feature-dim", feature_dim);
    options["train-batch"] = app->add_option("--train-batch", train_batch);
    if (!span_flags) return;
    options["gate"] = app->add_option(
        "--gate", gate, "predicted|crowd_agg|crowd_major|crowd_minor");
    options["corpus"] = app->add_option("--corpus", test_corpus, "Corpus to run on");
    options["model"] = app->add_option("--model", model, "Baseline model file");
    options["scorer"] = app->add_option(
        "--scorer", scorer, "External scorer endpoint (exec:CMD or tcp:HOST:PORT)");
    options["threads"] = app->add_option("--threads", threads);
    options["top-k"] = app->add_option("--top-k", top_k, "K for the selected type");
    options["max-span-len"] =
        app->add_option("--max-span-len", max_span_len, "M for the selected type");
    options["score-mode"] = app->add_option("--score-mode", score_mode, "logit|probability");
    options["threshold"] = app->add_option("--threshold", threshold);
    options["batch-size"] = app->add_option("--batch-size", batch_size);
    options["no-eliminate"] =
        app->add_flag("--no-eliminate", no_eliminate, "Disable nested span elimination");
  }

  bool Given(const std::string &name) const {
    auto it = options.find(name);
    return it != options.end() && it->second->count() > 0;
  }

  RunConfig Resolve() const {
    RunConfig c = config_path.empty() ? RunConfig{} : RunConfig::Load(config_path);
    json j = c.ToJson();
    if (Given("pico")) j["pico"] = pico;
    if (Given("label-mode")) j["label_mode"] = label_mode;
    if (Given("gate")) j["gate"] = gate;
    if (Given("train")) j["corpus"]["train"] = train_corpus;
    if (Given("dev")) j["corpus"]["dev"] = dev_corpus;
    if (Given("corpus")) j["corpus"]["test"] = test_corpus;
    if (Given("model")) {
      j["scorer"]["kind"] = "baseline";
      j["scorer"]["model"] = model;
    }
    if (Given("scorer")) {
      j["scorer"]["kind"] = "external";
      j["scorer"]["endpoint"] = scorer;
    }
    if (Given("seed")) j["seed"] = seed;
    if (Given("threads")) j["threads"] = threads;
    if (Given("score-mode")) j["span"]["score_mode"] = score_mode;
    if (Given("threshold")) j["span"]["threshold"] = threshold;
    if (Given("batch-size")) j["span"]["batch_size"] = batch_size;
    if (Given("no-eliminate")) j["span"]["eliminate"] = !no_eliminate;
    if (Given("epochs")) j["scorer"]["train"]["epochs"] = epochs;
    if (Given("learning-rate")) j["scorer"]["train"]["learning_rate"] = learning_rate;
    if (Given("l2")) j["scorer"]["train"]["l2"] = l2;
    if (Given("feature-dim")) j["scorer"]["train"]["feature_dim"] = feature_dim;
    if (Given("train-batch")) j["scorer"]["train"]["batch_size"] = train_batch;
    const std::string type = j["pico"].get<std::string>();
    if (Given("top-k")) j["span"]["top_k"][type] = top_k;
    if (Given("max-span-len")) j["span"]["max_span_len"][type] = max_span_len;
    // The environment wins over both the file and the flags.
    if (const char *endpoint = std::getenv("SENT2SPAN_SCORER");
        endpoint != nullptr && *endpoint != '\0') {
      j["scorer"]["kind"] = "external";
      j["scorer"]["endpoint"] = endpoint;
    }
    return RunConfig::FromJson(j);
  }
};

std::ofstream OpenOutput(const std::string &path) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path + "'");
  return out;
}

void WriteSidecar(const std::string &artifact, const RunConfig &config) {
  std::ofstream out = OpenOutput(artifact + ".config.json");
  json sidecar = {{"config_hash", config.Hash()}, {"run_config", config.ToJson()}};
  out << sidecar.dump(2) << '\n';
}

std::optional<json> ReadSidecar(const std::string &artifact) {
  std::ifstream in(artifact + ".config.json");
  if (!in) return std::nullopt;
  json value = json::parse(in, nullptr, false);
  if (value.is_discarded()) return std::nullopt;
  return value;
}

int Ingest(const std::string &input, const std::string &output,
           const std::string &split, int synthetic, std::uint64_t seed,
           std::ostream &out) {
  Corpus corpus;
  if (synthetic > 0) {
    SyntheticConfig config;
    config.sentences = synthetic;
    config.seed = seed;
    corpus = GenerateSyntheticCorpus(config);
    corpus.split = ParseSplit(split);
  } else {
    if (input.empty()) throw ConfigError("ingest needs --input or --synthetic");
    corpus = LoadCorpus(input, ParseSplit(split));
  }
  std::set<std::string> docs;
  for (const SentenceRecord &s : corpus.sentences) docs.insert(s.doc_id);
  if (output.empty()) {
    WriteCorpus(corpus, out);
  } else {
    std::ofstream file = OpenOutput(output);
    WriteCorpus(corpus, file);
    out << "ingested " << docs.size() << " documents, " << corpus.size()
        << " sentences, " << corpus.annotator_roster.size()
        << " annotators -> " << output << "\n";
  }
  return kExitOk;
}

int WeakLabel(const std::string &corpus_path, const std::string &pico,
              const std::string &mode, const std::string &output,
              std::ostream &out) {
  std::vector<PicoType> types;
  if (pico == "all") {
    types.assign(kAllPicoTypes.begin(), kAllPicoTypes.end());
  } else {
    types.push_back(ParsePico(pico));
  }
  std::vector<LabelMode> modes;
  if (mode == "all") {
    modes = {LabelMode::kAgg, LabelMode::kMajor, LabelMode::kMinor};
  } else {
    modes.push_back(ParseLabelMode(mode));
  }
  const Corpus corpus = LoadCorpus(corpus_path);
  std::ostringstream buffer;
  std::map<std::string, int> positives;
  for (PicoType type : types) {
    for (LabelMode m : modes) {
      for (const LabelRow &row : LabelCorpus(corpus, type, m)) {
        buffer << json{{"doc_id", row.doc_id},
                       {"sent_index", row.sent_index},
                       {"pico", PicoName(row.pico_type)},
                       {"mode", LabelModeName(row.mode)},
                       {"label", row.label}}
                      .dump()
               << '\n';
        positives[std::string(PicoName(type)) + "/" +
                  std::string(LabelModeName(m))] += row.label;
      }
    }
  }
  if (output.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file = OpenOutput(output);
    file << buffer.str();
    for (const auto &[key, count] : positives) {
      out << key << ": " << count << " of " << corpus.size()
          << " sentences positive\n";
    }
  }
  return kExitOk;
}

int Train(const RunFlags &flags, const std::string &output, std::ostream &out) {
  RunConfig config = flags.Resolve();
  if (config.train_corpus.empty()) throw ConfigError("train needs --train or corpus.train");
  if (output.empty()) throw ConfigError("train needs --output");
  const Corpus train = LoadCorpus(config.train_corpus, Split::kTrain);
  std::vector<LabeledSentence> dev;
  if (!config.dev_corpus.empty()) {
    dev = BuildTrainingSet(LoadCorpus(config.dev_corpus, Split::kDev),
                           config.pico_type, config.label_mode);
  }
  TrainingHistory history;
  BaselineScorerModel model = TrainBaseline(
      BuildTrainingSet(train, config.pico_type, config.label_mode),
      config.pico_type, config.train, dev, &history);
  json model_json = model.ToJson();
  model_json["config_hash"] = config.Hash();
  model_json["run_config"] = config.ToJson();
  std::ofstream file = OpenOutput(output);
  file << model_json.dump() << '\n';
  out << "trained " << PicoName(config.pico_type) << " baseline on "
      << train.size() << " sentences (" << LabelModeName(config.label_mode)
      << " labels), selected epoch " << history.selected_epoch;
  if (!history.train_loss.empty()) out << ", final loss " << history.train_loss.back();
  out << " -> " << output << "\n";
  return kExitOk;
}

int Detect(const RunFlags &flags, const std::string &output,
           const std::string &dump, std::ostream &out) {
  const RunConfig config = flags.Resolve();
  if (config.test_corpus.empty()) throw ConfigError("detect needs --corpus or corpus.test");
  const Corpus corpus = LoadCorpus(config.test_corpus, Split::kTest);
  const std::unique_ptr<Scorer> scorer = MakeScorer(config);
  const std::vector<DetectionResult> results =
      DetectCorpus(corpus, *scorer, config.pico_type, config.span, config.gate,
                   config.scorer_kind == "external" ? 1 : config.threads);
  const std::string hash = config.Hash();
  if (output.empty()) {
    WritePredictions(results, hash, out);
  } else {
    std::ofstream file = OpenOutput(output);
    WritePredictions(results, hash, file);
    WriteSidecar(output, config);
    int positive = 0;
    for (const DetectionResult &r : results) positive += r.sentence_positive;
    out << "detected spans in " << positive << " of " << results.size()
        << " sentences (gate " << GateName(config.gate) << ", config "
        << hash << ") -> " << output << "\n";
  }
  if (!dump.empty()) {
    std::ofstream file = OpenOutput(dump);
    WriteScoredSpans(results, hash, file);
  }
  return kExitOk;
}

int EvaluateCommand(const std::string &pred_path, const std::string &corpus_path,
                    const std::string &pico, const std::string &scored,
                    const std::string &label, const std::string &output,
                    std::ostream &out) {
  const Corpus corpus = LoadCorpus(corpus_path, Split::kTest);
  const std::vector<DetectionResult> predictions = ReadPredictions(pred_path);
  PicoType type;
  if (!pico.empty()) {
    type = ParsePico(pico);
  } else if (!predictions.empty()) {
    type = predictions.front().pico_type;
  } else {
    throw ConfigError("empty prediction file; pass --pico");
  }
  EvalReport report = Evaluate(corpus, predictions, type);
  report.label = label.empty() ? std::filesystem::path(pred_path).stem().string() : label;
  if (!scored.empty()) report.reduction = ReductionFromDump(scored);
  if (auto sidecar = ReadSidecar(pred_path)) {
    report.run_config = (*sidecar)["run_config"];
  }
  out << report.RenderText();
  if (!output.empty()) {
    json value = report.ToJson();
    if (!report.run_config.is_null()) {
      value["config_hash"] = HexDigest(Fnv1a64(report.run_config.dump()));
    }
    std::ofstream file = OpenOutput(output);
    file << value.dump(2) << '\n';
    std::ofstream text = OpenOutput(output + ".txt");
    text << report.RenderText();
  }
  return kExitOk;
}

int Report(const std::vector<std::string> &inputs, const std::string &output,
           std::ostream &out) {
  std::vector<EvalReport> reports;
  for (const std::string &path : inputs) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open report '" + path + "'");
    json value = json::parse(in, nullptr, false);
    if (value.is_discarded()) throw DataError("report '" + path + "' is not JSON");
    reports.push_back(EvalReport::FromJson(value));
  }
  const std::string table = RenderComparison(reports);
  out << table;
  if (!output.empty()) {
    std::ofstream file = OpenOutput(output);
    file << table;
  }
  return kExitOk;
}

}  // namespace

int RunCommand(const std::vector<std::string> &args, std::ostream &out,
               std::ostream &err) {
  CLI::App app{"Weakly supervised PICO span detection from sentence labels",
               "sent2span"};
  app.require_subcommand(1);

  std::string input, output, split = "train", pico, mode = "minor", dump,
                     pred, corpus, scored, label;
  int synthetic = 0;
  std::uint64_t synth_seed = 7;
  std::vector<std::string> inputs;

  CLI::App *ingest = app.add_subcommand("ingest", "Validate and canonicalize a corpus");
  ingest->add_option("--input", input, "Corpus JSON-lines file");
  ingest->add_option("--output", output, "Canonical corpus output");
  ingest->add_option("--split", split, "train|dev|test");
  ingest->add_option("--synthetic", synthetic,
                     "Generate a synthetic planted-phrase corpus of N sentences");
  ingest->add_option("--synthetic-seed", synth_seed);

  CLI::App *weaklabel = app.add_subcommand("weaklabel", "Derive sentence labels");
  weaklabel->add_option("--corpus", corpus, "Corpus JSON-lines file")->required();
  weaklabel->add_option("--pico", pico, "PICO type or 'all'")->required();
  weaklabel->add_option("--mode", mode, "agg|major|minor|all");
  weaklabel->add_option("--output", output, "Label JSON-lines output");

  RunFlags train_flags;
  CLI::App *train = app.add_subcommand("train", "Train the baseline sentence scorer");
  train_flags.Register(train, false);
  train->add_option("--output", output, "Model output file");

  RunFlags detect_flags;
  CLI::App *detect = app.add_subcommand("detect", "Detect spans");
  detect_flags.Register(detect, true);
  detect->add_option("--output", output, "Prediction JSON-lines output");
  detect->add_option("--dump", dump, "Scored-span dump output");

  CLI::App *evaluate = app.add_subcommand("evaluate", "Evaluate predictions");
  evaluate->add_option("--pred", pred, "Prediction file")->required();
  evaluate->add_option("--corpus", corpus, "Corpus with expert spans")->required();
  evaluate->add_option("--pico", pico, "PICO type (default: from predictions)");
  evaluate->add_option("--scored", scored, "Scored-span dump for reduction stats");
  evaluate->add_option("--label", label, "Run name shown in tables");
  evaluate->add_option("--output", output, "Report JSON output");

  CLI::App *report = app.add_subcommand("report", "Compare evaluation reports");
  report->add_option("--inputs", inputs, "Report JSON files")->required();
  report->add_option("--output", output, "Table output");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp &e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    err << "sent2span: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*ingest) return Ingest(input, output, split, synthetic, synth_seed, out);
    if (*weaklabel) return WeakLabel(corpus, pico, mode, output, out);
    if (*train) return Train(train_flags, output, out);
    if (*detect) return Detect(detect_flags, output, dump, out);
    if (*evaluate) return EvaluateCommand(pred, corpus, pico, scored, label, output, out);
    if (*report) return Report(inputs, output, out);
  } catch (const ConfigError &e) {
    err << "sent2span: configuration error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const TransportError &e) {
    err << "sent2span: scorer transport error: " << e.what() << "\n";
    return kExitTransport;
  } catch (const Error &e) {
    err << "sent2span: data error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::filesystem::filesystem_error &e) {
    err << "sent2span: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace sent2span
