/*
 * Copyright 2026 The meterkit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Command implementations behind the meterkit executable. Each command
// returns a process exit code and reports to the given streams.

#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "meterkit.hpp"
#include "meterkit/csv.hpp"
#include "meterkit/dataset.hpp"

namespace meterkit::app {

using Json = nlohmann::ordered_json;

inline constexpr double kGradcheckTolerance = 1e-4;

struct Io {
  std::ostream& out;
  std::ostream& err;
};

class CommandError : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Text helpers

// Normalizes a verse, keeping '|' hemistich breaks as " | ".
inline std::string normalize_text(const std::string& verse, Language language, ParsePolicy policy) {
  std::string out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t bar = verse.find('|', start);
    const std::string part = verse.substr(start, bar == std::string::npos ? std::string::npos : bar - start);
    if (start > 0) out += " | ";
    out += language == Language::Arabic ? to_utf8(normalize(part, policy)) : normalize_english(part, policy);
    if (bar == std::string::npos) break;
    start = bar + 1;
  }
  return out;
}

inline rnn::MatrixXd encode_text(const std::string& verse, Language language, const EncodingScheme& scheme) {
  if (language == Language::Arabic) return encode_verse(normalize(verse), scheme).values;
  return encode_verse(normalize_english(verse), scheme).values;
}

inline std::vector<rnn::Example> to_examples(const std::vector<dataset::Record>& records,
                                             const std::vector<std::string>& classes, Language language,
                                             const EncodingScheme& scheme) {
  std::vector<rnn::Example> out;
  out.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    const dataset::Record& r = records[i];
    const auto it = std::find(classes.begin(), classes.end(), r.meter);
    if (it == classes.end())
      throw CommandError("verse " + std::to_string(i) + " (line " + std::to_string(r.line) + "): label '" + r.meter +
                         "' is not a model class");
    try {
      out.push_back({encode_text(r.verse, language, scheme), static_cast<std::size_t>(it - classes.begin())});
    } catch (const Error& e) {
      throw CommandError("verse " + std::to_string(i) + " (line " + std::to_string(r.line) + "): " + e.what());
    }
    if (out.back().input.cols() == 0)
      throw CommandError("verse " + std::to_string(i) + " (line " + std::to_string(r.line) +
                         "): empty after normalization");
  }
  return out;
}

inline std::ofstream open_output(const std::string& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoFailure("cannot open " + path + " for writing");
  return os;
}

// Runs `body` against a file, or against `fallback` when path is "-".
template <typename Body>
void with_output(const std::string& path, std::ostream& fallback, Body&& body) {
  if (path == "-") {
    body(fallback);
    return;
  }
  std::ofstream os = open_output(path);
  body(os);
  if (!os) throw IoFailure("failed to write " + path);
}

// ---------------------------------------------------------------------------
// Configuration

struct ExperimentConfig {
  Language language = Language::Arabic;
  EncodingKind encoding = EncodingKind::OneHot;
  dataset::DiacriticsVariant variant = dataset::DiacriticsVariant::Keep;
  std::size_t trim = 0;
  bool use_weights = false;
  bool stratified = false;
  rnn::CellKind cell = rnn::CellKind::Lstm;
  rnn::Direction direction = rnn::Direction::Uni;
  std::size_t layers = 1;
  std::size_t hidden_size = 32;
  rnn::TrainConfig train;
  std::string input;
  std::string output_dir;
  bool timing = false;

  // Every validity problem, not only the first.
  std::vector<std::string> problems() const {
    std::vector<std::string> p;
    const bool arabic = language == Language::Arabic;
    if (encoding == EncodingKind::TwoHot && !arabic) p.push_back("two-hot encoding requires Arabic");
    if (variant == dataset::DiacriticsVariant::Strip && !arabic) p.push_back("diacritic stripping requires Arabic");
    if (trim > 0 && !arabic) p.push_back("trimming requires Arabic");
    if (use_weights && !arabic) p.push_back("class weighting requires Arabic");
    if (layers == 0) p.push_back("layers must be positive");
    if (hidden_size == 0) p.push_back("hidden size must be positive");
    if (train.batch_size == 0) p.push_back("batch size must be positive");
    if (!(train.dropout >= 0.0 && train.dropout < 1.0)) p.push_back("dropout must be in [0, 1)");
    if (!(train.validation_fraction > 0.0 && train.validation_fraction < 1.0))
      p.push_back("validation fraction must be in (0, 1)");
    if (!(train.test_fraction > 0.0 && train.test_fraction < 1.0)) p.push_back("test fraction must be in (0, 1)");
    if (!(train.validation_fraction + train.test_fraction < 1.0)) p.push_back("fractions must sum below 1");
    if (!(train.adam.learning_rate > 0.0)) p.push_back("learning rate must be positive");
    if (!(train.adam.beta1 >= 0.0 && train.adam.beta1 < 1.0) || !(train.adam.beta2 >= 0.0 && train.adam.beta2 < 1.0))
      p.push_back("Adam betas must be in [0, 1)");
    if (!(train.adam.epsilon > 0.0)) p.push_back("Adam epsilon must be positive");
    if (train.clip_norm < 0.0) p.push_back("clip norm must be non-negative");
    if (input.empty()) p.push_back("no input dataset given");
    if (output_dir.empty()) p.push_back("no output directory given");
    return p;
  }

  void validate() const {
    const auto p = problems();
    if (p.empty()) return;
    std::string msg = "invalid configuration:";
    for (const std::string& s : p) msg += "\n  - " + s;
    throw ConfigError(msg);
  }

  Json echo() const {
    return Json{
        {"language", to_string(language)},
        {"encoding", to_string(encoding)},
        {"diacritics", variant == dataset::DiacriticsVariant::Keep ? "keep" : "strip"},
        {"trim", trim},
        {"weights", use_weights},
        {"stratified", stratified},
        {"cell", rnn::to_string(cell)},
        {"direction", rnn::to_string(direction)},
        {"layers", layers},
        {"hidden_size", hidden_size},
        {"epochs", train.epochs},
        {"batch_size", train.batch_size},
        {"learning_rate", train.adam.learning_rate},
        {"beta1", train.adam.beta1},
        {"beta2", train.adam.beta2},
        {"adam_epsilon", train.adam.epsilon},
        {"dropout", train.dropout},
        {"validation_fraction", train.validation_fraction},
        {"test_fraction", train.test_fraction},
        {"clip_norm", train.clip_norm},
        {"seed", train.seed},
    };
  }
};

inline std::string variant_name(dataset::DiacriticsVariant v) {
  return v == dataset::DiacriticsVariant::Keep ? "keep" : "strip";
}

inline dataset::DiacriticsVariant parse_variant(const std::string& s) {
  if (s == "keep" || s == "1d") return dataset::DiacriticsVariant::Keep;
  if (s == "strip" || s == "0d") return dataset::DiacriticsVariant::Strip;
  throw ConfigError("unknown diacritics variant '" + s + "' (expected keep or strip)");
}

// ---------------------------------------------------------------------------
// Metrics report

inline Json metrics_json(const Evaluation& ev, const std::vector<std::string>& classes, Json config,
                         std::optional<double> seconds) {
  Json per_class = Json::array();
  for (std::size_t c = 0; c < classes.size(); ++c) {
    const double a = ev.per_class_accuracy[c];
    per_class.push_back(Json{{"label", classes[c]},
                             {"count", ev.class_counts[c]},
                             {"accuracy", std::isnan(a) ? Json(nullptr) : Json(a)}});
  }
  Json report{
      {"overall_accuracy", ev.overall_accuracy},
      {"total", ev.total},
      {"correct", ev.correct},
      {"classes", classes},
      {"per_class", per_class},
      {"confusion", ev.confusion},
      {"config", std::move(config)},
      {"wall_clock_seconds", seconds ? Json(*seconds) : Json(nullptr)},
  };
  return report;
}

struct ModelMetadata {
  Language language = Language::Arabic;
  EncodingKind encoding = EncodingKind::OneHot;
  dataset::DiacriticsVariant variant = dataset::DiacriticsVariant::Keep;
  std::vector<std::string> classes;

  std::string dump() const {
    return Json{{"format", "meterkit-model"},
                {"language", to_string(language)},
                {"encoding", to_string(encoding)},
                {"diacritics", variant_name(variant)},
                {"classes", classes}}
        .dump();
  }

  static ModelMetadata parse(const std::string& text) {
    try {
      const Json j = Json::parse(text);
      if (j.value("format", "") != "meterkit-model") throw IncompatibleCheckpoint("checkpoint has no model metadata");
      ModelMetadata m;
      m.language = parse_language(j.at("language").get<std::string>());
      m.encoding = parse_encoding_kind(j.at("encoding").get<std::string>());
      m.variant = parse_variant(j.at("diacritics").get<std::string>());
      m.classes = j.at("classes").get<std::vector<std::string>>();
      return m;
    } catch (const nlohmann::json::exception& e) {
      throw IncompatibleCheckpoint(std::string("unreadable checkpoint metadata: ") + e.what());
    } catch (const IncompatibleCheckpoint&) {
      throw;
    } catch (const Error& e) {
      throw IncompatibleCheckpoint(std::string("unreadable checkpoint metadata: ") + e.what());
    }
  }
};

inline void write_predictions(std::ostream& os, const std::vector<dataset::Record>& records,
                              const std::vector<std::size_t>& predicted, const std::vector<std::string>& classes) {
  csv::write_row(os, {"verse", "meter", "predicted"});
  for (std::size_t i = 0; i < records.size(); ++i)
    csv::write_row(os, {records[i].verse, records[i].meter, classes[predicted[i]]});
}

// ---------------------------------------------------------------------------
// Commands

struct CleanOptions {
  std::string input;
  std::string output = "-";
  Language language = Language::Arabic;
  ParsePolicy policy = ParsePolicy::SkipUnknown;
};

inline int cmd_clean(const CleanOptions& opt, Io io) {
  const dataset::Corpus corpus = dataset::load_csv(opt.input, opt.language, false);
  std::vector<dataset::Record> out;
  std::size_t failures = 0;
  for (const dataset::Record& r : corpus.records) {
    try {
      dataset::Record cleaned = r;
      cleaned.verse = normalize_text(r.verse, opt.language, opt.policy);
      out.push_back(std::move(cleaned));
    } catch (const Error& e) {
      ++failures;
      io.err << opt.input << ":" << r.line << ": " << e.what() << '\n';
    }
  }
  with_output(opt.output, io.out, [&](std::ostream& os) { dataset::write_csv(os, out); });
  return failures == 0 ? 0 : 1;
}

struct ScanOptions {
  std::string input;
  std::string output = "-";
};

struct ScanResult {
  const Meter* meter = nullptr;
  std::size_t distance = 0;
};

// Hemistichs split at '|' are scanned separately; the meter with the least
// summed distance wins, ties to the earlier table row.
inline ScanResult scan_verse(const std::string& verse) {
  std::vector<Pattern> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t bar = verse.find('|', start);
    const Verse v = normalize(verse.substr(start, bar == std::string::npos ? std::string::npos : bar - start));
    if (!v.empty()) parts.push_back(to_pattern(v));
    if (bar == std::string::npos) break;
    start = bar + 1;
  }
  if (parts.empty()) throw EmptySequence();
  ScanResult best;
  for (const Meter& m : kArabicMeters) {
    const std::string target = m.pattern().str();
    std::size_t d = 0;
    for (const Pattern& p : parts) d += edit_distance(p.str(), target);
    if (best.meter == nullptr || d < best.distance) best = {&m, d};
  }
  return best;
}

inline int cmd_scan(const ScanOptions& opt, Io io) {
  const dataset::Corpus corpus = dataset::load_csv(opt.input, Language::Arabic, false);
  std::size_t scanned = 0;
  std::size_t labeled = 0;
  std::size_t correct = 0;
  std::size_t failures = 0;
  with_output(opt.output, io.out, [&](std::ostream& os) {
    if (corpus.records.empty()) return;
    csv::write_row(os, {"verse", "predicted", "distance", "meter"});
    for (const dataset::Record& r : corpus.records) {
      try {
        const ScanResult s = scan_verse(r.verse);
        csv::write_row(os, {r.verse, std::string(s.meter->name), std::to_string(s.distance), r.meter});
        ++scanned;
        if (!r.meter.empty()) {
          ++labeled;
          if (r.meter == s.meter->name) ++correct;
        }
      } catch (const Error& e) {
        ++failures;
        io.err << opt.input << ":" << r.line << ": skipped: " << e.what() << '\n';
      }
    }
  });
  std::ostream& summary = opt.output == "-" ? io.err : io.out;
  summary << "scanned " << scanned << " of " << corpus.records.size() << " verses";
  if (labeled > 0)
    summary << "; accuracy " << std::fixed << std::setprecision(6)
            << static_cast<double>(correct) / static_cast<double>(labeled) << std::defaultfloat << " (" << correct
            << "/" << labeled << ")";
  summary << '\n';
  return !corpus.records.empty() && failures == corpus.records.size() ? 1 : 0;
}

struct GenerateOptions {
  std::string meter = "all";  // a name, a comma-separated list, or "all"
  std::size_t count = 100;
  double drop_probability = 0.0;
  std::uint64_t seed = 42;
  GeneratorOptions generator;
  std::string output = "-";
};

// Each meter draws from its own stream, so a single-meter run reproduces
// that meter's rows of an `all` run.
inline std::vector<dataset::Record> generate_records(const GenerateOptions& opt) {
  if (!(opt.drop_probability >= 0.0 && opt.drop_probability <= 1.0))
    throw ConfigError("noise probability must be in [0, 1]");
  std::vector<const Meter*> meters;
  if (opt.meter == "all") {
    for (const Meter& m : kArabicMeters) meters.push_back(&m);
  } else {
    std::stringstream names(opt.meter);
    std::string name;
    while (std::getline(names, name, ','))
      if (!name.empty()) meters.push_back(&find_meter(name));
    if (meters.empty()) throw UnknownMeter(opt.meter);
  }
  std::vector<dataset::Record> out;
  for (const Meter* m : meters) {
    Rng rng(mix_seed(opt.seed, static_cast<std::uint64_t>(m - kArabicMeters.data())));
    for (std::size_t i = 0; i < opt.count; ++i) {
      dataset::Record r;
      r.verse = to_utf8(generate_synthetic(*m, DiacriticNoise{opt.drop_probability}, rng, opt.generator));
      r.meter = std::string(m->name);
      r.id = out.size();
      out.push_back(std::move(r));
    }
  }
  return out;
}

inline int cmd_generate(const GenerateOptions& opt, Io io) {
  const auto records = generate_records(opt);
  with_output(opt.output, io.out, [&](std::ostream& os) { dataset::write_csv(os, records); });
  return 0;
}

struct EncodeOptions {
  std::string input;
  std::string output;
  Language language = Language::Arabic;
  EncodingKind encoding = EncodingKind::OneHot;
  dataset::DiacriticsVariant variant = dataset::DiacriticsVariant::Keep;
};

inline int cmd_encode(const EncodeOptions& opt, Io io) {
  const EncodingScheme scheme(opt.language, opt.encoding);
  const dataset::Corpus corpus =
      dataset::make_variant(dataset::load_csv(opt.input, opt.language, false), opt.variant);
  std::ofstream os = open_output(opt.output);
  std::size_t failures = 0;
  for (const dataset::Record& r : corpus.records) {
    try {
      write_encoded(os, EncodedMatrix{scheme, encode_text(r.verse, opt.language, scheme)});
    } catch (const Error& e) {
      ++failures;
      io.err << opt.input << ":" << r.line << ": " << e.what() << '\n';
    }
  }
  if (!os) throw IoFailure("failed to write " + opt.output);
  io.out << "encoded " << corpus.records.size() - failures << " verses as " << scheme.name() << " (width "
         << scheme.width() << ")\n";
  return failures == 0 ? 0 : 1;
}

struct TrainOutputs {
  rnn::TrainResult result;
  Evaluation test;
  std::vector<std::string> classes;
};

inline TrainOutputs run_training(const ExperimentConfig& cfg, Io io) {
  cfg.validate();
  const auto started = std::chrono::steady_clock::now();
  dataset::Corpus corpus = dataset::load_csv(cfg.input, cfg.language);
  corpus = dataset::trim_smallest(corpus, cfg.trim);
  corpus = dataset::make_variant(corpus, cfg.variant);
  const std::vector<std::string> classes = dataset::class_labels(corpus);
  if (classes.empty()) throw CommandError("dataset " + cfg.input + " has no labeled verses");
  const dataset::SplitCorpus parts = dataset::split(corpus, cfg.train.validation_fraction, cfg.train.test_fraction,
                                                    cfg.train.seed, cfg.stratified);
  if (parts.test.empty()) throw CommandError("test split is empty; the dataset is too small for the fractions");
  const EncodingScheme scheme(cfg.language, cfg.encoding);
  const auto train_set = to_examples(parts.train, classes, cfg.language, scheme);
  const auto val_set = to_examples(parts.validation, classes, cfg.language, scheme);
  const auto test_set = to_examples(parts.test, classes, cfg.language, scheme);

  rnn::StackConfig stack_cfg{cfg.cell, cfg.direction, cfg.layers, scheme.width(), cfg.hidden_size,
                             classes.size(), cfg.train.dropout};
  rnn::TrainConfig tc = cfg.train;
  tc.use_weights = cfg.use_weights;
  TrainOutputs out{rnn::train(train_set, val_set, stack_cfg, tc), {}, classes};
  const auto predicted = rnn::predict_all(out.result.stack, test_set, tc.threads);
  std::vector<std::size_t> truth;
  for (const rnn::Example& e : test_set) truth.push_back(e.label);
  out.test = evaluate_predictions(truth, predicted, classes.size());

  namespace fs = std::filesystem;
  fs::create_directories(cfg.output_dir);
  const fs::path dir(cfg.output_dir);
  const ModelMetadata meta{cfg.language, cfg.encoding, cfg.variant, classes};
  rnn::save_checkpoint((dir / "checkpoint.bin").string(), out.result.stack, meta.dump());
  {
    std::ofstream os = open_output((dir / "curve.csv").string());
    rnn::write_curve_csv(os, out.result.curve);
  }
  {
    std::ofstream os = open_output((dir / "test.csv").string());
    dataset::write_csv(os, parts.test);
  }
  {
    std::ofstream os = open_output((dir / "predictions.csv").string());
    write_predictions(os, parts.test, predicted, classes);
  }
  std::optional<double> seconds;
  if (cfg.timing)
    seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  {
    std::ofstream os = open_output((dir / "metrics.json").string());
    os << metrics_json(out.test, classes, cfg.echo(), seconds).dump(2) << '\n';
  }
  io.out << "trained " << cfg.train.epochs << " epochs on " << train_set.size() << " verses; test accuracy "
         << std::fixed << std::setprecision(4) << out.test.overall_accuracy << std::defaultfloat << " on "
         << test_set.size() << " verses\n";
  return out;
}

inline int cmd_train(const ExperimentConfig& cfg, Io io) {
  run_training(cfg, io);
  return 0;
}

struct EvaluateOptions {
  std::string checkpoint;
  std::string input;
  std::string output = "-";
  std::size_t threads = 1;
};

inline int cmd_evaluate(const EvaluateOptions& opt, Io io) {
  const rnn::Checkpoint ck = rnn::load_checkpoint(opt.checkpoint);
  const ModelMetadata meta = ModelMetadata::parse(ck.metadata);
  const EncodingScheme scheme(meta.language, meta.encoding);
  if (ck.stack.config.input_size != scheme.width() || ck.stack.config.classes != meta.classes.size())
    throw IncompatibleCheckpoint("checkpoint shapes disagree with its metadata");
  dataset::Corpus corpus = dataset::make_variant(dataset::load_csv(opt.input, meta.language), meta.variant);
  for (const auto& [label, count] : corpus.class_index)
    if (std::find(meta.classes.begin(), meta.classes.end(), label) == meta.classes.end())
      throw IncompatibleCheckpoint("dataset label '" + label + "' is not a class of this model");
  if (corpus.records.empty()) throw EmptySet();
  const auto set = to_examples(corpus.records, meta.classes, meta.language, scheme);
  const Evaluation ev = rnn::evaluate(ck.stack, set, opt.threads);
  const Json config{{"checkpoint", opt.checkpoint},
                    {"dataset", opt.input},
                    {"language", to_string(meta.language)},
                    {"encoding", to_string(meta.encoding)},
                    {"diacritics", variant_name(meta.variant)},
                    {"cell", rnn::to_string(ck.stack.config.cell)},
                    {"direction", rnn::to_string(ck.stack.config.direction)},
                    {"layers", ck.stack.config.layers},
                    {"hidden_size", ck.stack.config.hidden_size}};
  with_output(opt.output, io.out,
              [&](std::ostream& os) { os << metrics_json(ev, meta.classes, config, std::nullopt).dump(2) << '\n'; });
  return 0;
}

struct GradcheckCommandOptions {
  rnn::CellKind cell = rnn::CellKind::Lstm;
  rnn::Direction direction = rnn::Direction::Uni;
  std::size_t layers = 1;
  std::uint64_t seed = 42;
  bool corrupt = false;  // perturbs one analytic entry; the check must fail
};

inline int cmd_gradcheck(const GradcheckCommandOptions& opt, Io io) {
  if (opt.layers == 0) throw ConfigError("layers must be positive");
  const rnn::GradcheckProblem problem = rnn::random_gradcheck_problem(opt.cell, opt.direction, opt.layers, opt.seed);
  std::function<void(rnn::Parameters&)> hook;
  if (opt.corrupt) hook = [](rnn::Parameters& g) { g.head_b[0] += 1e-2; };
  const rnn::GradcheckReport report = rnn::gradcheck(problem.stack, problem.examples, problem.options, hook);
  const rnn::StackConfig& c = problem.stack.config;
  io.out << "config: " << rnn::to_string(c.cell) << ' ' << rnn::to_string(c.direction) << " layers=" << c.layers
         << " input=" << c.input_size << " hidden=" << c.hidden_size << " classes=" << c.classes << '\n';
  bool ok = true;
  for (const rnn::TensorCheck& t : report.tensors) {
    const bool pass = t.max_relative_error < kGradcheckTolerance;
    ok = ok && pass;
    io.out << std::left << std::setw(14) << t.name << std::right << " entries=" << std::setw(4) << t.checked
           << " max_rel_err=" << std::scientific << std::setprecision(3) << t.max_relative_error
           << std::defaultfloat << (pass ? "" : "  FAIL") << '\n';
  }
  io.out << (ok ? "PASS" : "FAIL") << " (tolerance " << kGradcheckTolerance << ")\n";
  return ok ? 0 : 1;
}

struct TablesOptions {
  bool rtl = false;
  bool json = false;
};

inline std::string shown(const Pattern& p, bool rtl) { return rtl ? p.rtl() : p.str(); }

inline Json tables_json(bool rtl) {
  Json feet = Json::array();
  for (std::size_t i = 0; i < kArabicFootTable.size(); ++i) {
    const Foot& f = kArabicFootTable[i];
    feet.push_back({{"name", f.name},
                    {"mnemonic", f.mnemonic},
                    {"pattern", shown(foot_pattern(f), rtl)},
                    {"variant", i >= kArabicFootCount}});
  }
  Json meters = Json::array();
  for (const Meter& m : kArabicMeters) {
    Json names = Json::array();
    for (std::size_t k = 0; k < m.foot_count; ++k) names.push_back(kArabicFootTable[static_cast<std::size_t>(m.feet[k])].name);
    meters.push_back({{"name", m.name}, {"arabic", m.arabic_name}, {"feet", names}, {"pattern", shown(m.pattern(), rtl)}});
  }
  Json english = Json::array();
  for (const Foot& f : kEnglishFootTable) english.push_back({{"name", f.name}, {"pattern", f.symbols}});
  return Json{{"order", rtl ? "rtl" : "pronunciation"}, {"arabic_feet", feet}, {"arabic_meters", meters}, {"english_feet", english}};
}

inline int cmd_tables(const TablesOptions& opt, Io io) {
  if (opt.json) {
    io.out << tables_json(opt.rtl).dump(2) << '\n';
    return 0;
  }
  io.out << "Arabic feet (" << (opt.rtl ? "right to left" : "pronunciation order") << ")\n";
  for (std::size_t i = 0; i < kArabicFootTable.size(); ++i) {
    const Foot& f = kArabicFootTable[i];
    io.out << "  " << std::left << std::setw(12) << f.name << std::right << ' ' << shown(foot_pattern(f), opt.rtl)
           << (i >= kArabicFootCount ? "  (variant)" : "") << '\n';
  }
  io.out << "Arabic meters\n";
  for (const Meter& m : kArabicMeters) {
    io.out << "  " << std::left << std::setw(14) << m.name << std::right << ' ' << shown(m.pattern(), opt.rtl) << "  (";
    for (std::size_t k = 0; k < m.foot_count; ++k)
      io.out << (k ? " " : "") << kArabicFootTable[static_cast<std::size_t>(m.feet[k])].name;
    io.out << ")\n";
  }
  io.out << "English feet\n";
  for (const Foot& f : kEnglishFootTable)
    io.out << "  " << std::left << std::setw(12) << f.name << std::right << ' ' << f.symbols << '\n';
  return 0;
}

struct StatsOptions {
  std::string input;
  Language language = Language::Arabic;
  std::string output = "-";
};

inline Json corpus_stats(const dataset::Corpus& corpus) {
  Json counts = Json::object();
  for (const std::string& label : dataset::class_labels(corpus)) counts[label] = corpus.class_index.at(label);
  return Json{{"language", to_string(corpus.language)}, {"total", corpus.size()}, {"classes", counts}};
}

inline int cmd_stats(const StatsOptions& opt, Io io) {
  const dataset::Corpus corpus = dataset::load_csv(opt.input, opt.language);
  with_output(opt.output, io.out, [&](std::ostream& os) { os << corpus_stats(corpus).dump(2) << '\n'; });
  return 0;
}

}  // namespace meterkit::app
