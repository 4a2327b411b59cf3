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

// Argument parsing for the meterkit executable.

#pragma once

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"

namespace meterkit::app {

// METERKIT_THREADS, or 1 when unset or unparsable.
inline std::size_t default_threads() {
  if (const char* env = std::getenv("METERKIT_THREADS")) {
    try {
      const long n = std::stol(env);
      if (n > 0) return static_cast<std::size_t>(n);
    } catch (const std::exception&) {
    }
  }
  return 1;
}

// Reads a key=value manifest (blank lines and '#' comments ignored, values
// may be quoted) into "--key=value" tokens.
inline std::vector<std::string> config_tokens(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::vector<std::string> tokens;
  std::string line;
  std::size_t number = 0;
  const auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++number;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(path + ":" + std::to_string(number) + ": expected key=value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') && value.back() == value.front())
      value = value.substr(1, value.size() - 2);
    for (char& c : key)
      if (c == '_') c = '-';
    tokens.push_back("--" + key + "=" + value);
  }
  return tokens;
}

// Splices the contents of `--config FILE` right after the subcommand name so
// explicit flags, which come later, take precedence.
inline std::vector<std::string> expand_config(std::vector<std::string> args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string path;
    std::size_t width = 0;
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      width = 2;
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      width = 1;
    } else {
      continue;
    }
    args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i + width));
    const auto tokens = config_tokens(path);
    std::size_t at = 0;
    while (at < args.size() && !args[at].empty() && args[at][0] == '-') ++at;
    at = std::min(at + 1, args.size());
    args.insert(args.begin() + static_cast<std::ptrdiff_t>(at), tokens.begin(), tokens.end());
    break;
  }
  return args;
}

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"meterkit: Arabic and English poem meter classification toolkit"};
  app.name("meterkit");
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  Io io{out, err};
  std::function<int()> action;

  std::string language = "arabic";
  std::string encoding = "onehot";
  std::string variant = "keep";
  const std::string config_help = "key=value file; explicit flags take precedence";
  std::string unused_config;

  // clean
  CleanOptions clean;
  bool strict = false;
  auto* c_clean = app.add_subcommand("clean", "normalize verses: parse, clean, factor shaddah and tanween");
  c_clean->add_option("input", clean.input, "input CSV")->required();
  c_clean->add_option("-o,--output", clean.output, "output CSV, '-' for stdout");
  c_clean->add_option("--language", language, "arabic or english");
  c_clean->add_flag("--strict", strict, "reject unknown codepoints and orphan diacritics");
  c_clean->add_option("--config", unused_config, config_help);
  c_clean->callback([&] {
    clean.language = parse_language(language);
    clean.policy = strict ? ParsePolicy::Strict : ParsePolicy::SkipUnknown;
    action = [&] { return cmd_clean(clean, io); };
  });

  // encode
  EncodeOptions encode;
  auto* c_encode = app.add_subcommand("encode", "encode verses as binary matrix records");
  c_encode->add_option("input", encode.input, "input CSV")->required();
  c_encode->add_option("-o,--output", encode.output, "output file")->required();
  c_encode->add_option("--language", language, "arabic or english");
  c_encode->add_option("--encoding", encoding, "onehot, binary or twohot");
  c_encode->add_option("--diacritics", variant, "keep or strip");
  c_encode->add_option("--config", unused_config, config_help);
  c_encode->callback([&] {
    encode.language = parse_language(language);
    encode.encoding = parse_encoding_kind(encoding);
    encode.variant = parse_variant(variant);
    action = [&] { return cmd_encode(encode, io); };
  });

  // scan
  ScanOptions scan;
  auto* c_scan = app.add_subcommand("scan", "rule-based meter classification of diacritized Arabic verses");
  c_scan->add_option("input", scan.input, "input CSV")->required();
  c_scan->add_option("-o,--output", scan.output, "output CSV, '-' for stdout");
  c_scan->add_option("--config", unused_config, config_help);
  c_scan->callback([&] { action = [&] { return cmd_scan(scan, io); }; });

  // generate
  GenerateOptions gen;
  auto* c_gen = app.add_subcommand("generate", "synthesize labeled verses from meter patterns");
  c_gen->add_option("--meter", gen.meter, "meter name, comma-separated names, or 'all'");
  c_gen->add_option("--count", gen.count, "verses per meter");
  c_gen->add_option("--noise", gen.drop_probability, "probability of dropping each diacritic");
  c_gen->add_option("--seed", gen.seed, "random seed");
  c_gen->add_option("--separator-probability", gen.generator.separator_probability,
                    "probability of a word break after each letter");
  c_gen->add_option("--mad-probability", gen.generator.mad_probability,
                    "probability of realizing a sakin as a bare long vowel");
  c_gen->add_option("-o,--output", gen.output, "output CSV, '-' for stdout");
  c_gen->add_option("--config", unused_config, config_help);
  c_gen->callback([&] { action = [&] { return cmd_generate(gen, io); }; });

  // train
  ExperimentConfig exp;
  exp.train.threads = default_threads();
  std::string cell = "lstm";
  std::string direction = "uni";
  auto* c_train = app.add_subcommand("train", "train a recurrent classifier");
  c_train->add_option("input", exp.input, "labeled CSV")->required();
  c_train->add_option("-o,--output", exp.output_dir, "output directory")->required();
  c_train->add_option("--language", language, "arabic or english");
  c_train->add_option("--encoding", encoding, "onehot, binary or twohot");
  c_train->add_option("--diacritics", variant, "keep or strip");
  c_train->add_option("--trim", exp.trim, "drop the k smallest classes");
  c_train->add_flag("--weights", exp.use_weights, "inverse-frequency class weights");
  c_train->add_flag("--stratified", exp.stratified, "split each class separately");
  c_train->add_option("--cell", cell, "lstm or gru");
  c_train->add_option("--direction", direction, "uni or bi");
  c_train->add_option("--layers", exp.layers, "stacked recurrent layers");
  c_train->add_option("--hidden", exp.hidden_size, "hidden units per direction");
  c_train->add_option("--epochs", exp.train.epochs, "training epochs");
  c_train->add_option("--batch-size", exp.train.batch_size, "mini-batch size");
  c_train->add_option("--learning-rate", exp.train.adam.learning_rate, "Adam learning rate");
  c_train->add_option("--beta1", exp.train.adam.beta1, "Adam beta1");
  c_train->add_option("--beta2", exp.train.adam.beta2, "Adam beta2");
  c_train->add_option("--adam-epsilon", exp.train.adam.epsilon, "Adam epsilon");
  c_train->add_option("--dropout", exp.train.dropout, "dropout between layers");
  c_train->add_option("--validation-fraction", exp.train.validation_fraction, "validation share");
  c_train->add_option("--test-fraction", exp.train.test_fraction, "test share");
  c_train->add_option("--clip-norm", exp.train.clip_norm, "global gradient norm clip, 0 disables");
  c_train->add_option("--seed", exp.train.seed, "random seed");
  c_train->add_option("--threads", exp.train.threads, "worker threads (default METERKIT_THREADS or 1)");
  c_train->add_flag("--timing", exp.timing, "record wall-clock seconds in metrics.json");
  c_train->add_option("--config", unused_config, config_help);
  c_train->callback([&] {
    std::vector<std::string> problems;
    const auto attempt = [&](auto&& f) {
      try {
        f();
      } catch (const Error& e) {
        problems.emplace_back(e.what());
      }
    };
    attempt([&] { exp.language = parse_language(language); });
    attempt([&] { exp.encoding = parse_encoding_kind(encoding); });
    attempt([&] { exp.variant = parse_variant(variant); });
    attempt([&] { exp.cell = rnn::parse_cell_kind(cell); });
    attempt([&] { exp.direction = rnn::parse_direction(direction); });
    for (std::string& p : exp.problems()) problems.push_back(std::move(p));
    if (!problems.empty()) {
      std::string msg = "invalid configuration:";
      for (const std::string& s : problems) msg += "\n  - " + s;
      throw ConfigError(msg);
    }
    action = [&] { return cmd_train(exp, io); };
  });

  // evaluate
  EvaluateOptions eval;
  eval.threads = default_threads();
  auto* c_eval = app.add_subcommand("evaluate", "evaluate a checkpoint on a labeled CSV");
  c_eval->add_option("checkpoint", eval.checkpoint, "checkpoint file")->required();
  c_eval->add_option("input", eval.input, "labeled CSV")->required();
  c_eval->add_option("-o,--output", eval.output, "metrics JSON, '-' for stdout");
  c_eval->add_option("--threads", eval.threads, "worker threads");
  c_eval->add_option("--config", unused_config, config_help);
  c_eval->callback([&] { action = [&] { return cmd_evaluate(eval, io); }; });

  // gradcheck
  GradcheckCommandOptions gc;
  std::string gc_cell = "lstm";
  std::string gc_direction = "uni";
  auto* c_gc = app.add_subcommand("gradcheck", "compare analytic and finite-difference gradients");
  c_gc->add_option("--cell", gc_cell, "lstm or gru");
  c_gc->add_option("--direction", gc_direction, "uni or bi");
  c_gc->add_option("--layers", gc.layers, "stacked layers");
  c_gc->add_option("--seed", gc.seed, "seed for the random problem");
  c_gc->add_flag("--corrupt", gc.corrupt, "perturb the analytic gradient (self-test)");
  c_gc->add_option("--config", unused_config, config_help);
  c_gc->callback([&] {
    gc.cell = rnn::parse_cell_kind(gc_cell);
    gc.direction = rnn::parse_direction(gc_direction);
    action = [&] { return cmd_gradcheck(gc, io); };
  });

  // tables
  TablesOptions tables;
  auto* c_tables = app.add_subcommand("tables", "print foot and meter tables");
  c_tables->add_flag("--rtl", tables.rtl, "show patterns right to left, as written");
  c_tables->add_flag("--json", tables.json, "emit JSON");
  c_tables->add_option("--config", unused_config, config_help);
  c_tables->callback([&] { action = [&] { return cmd_tables(tables, io); }; });

  // stats
  StatsOptions stats;
  auto* c_stats = app.add_subcommand("stats", "per-class counts of a labeled CSV as JSON");
  c_stats->add_option("input", stats.input, "labeled CSV")->required();
  c_stats->add_option("--language", language, "arabic or english");
  c_stats->add_option("-o,--output", stats.output, "output JSON, '-' for stdout");
  c_stats->add_option("--config", unused_config, config_help);
  c_stats->callback([&] {
    stats.language = parse_language(language);
    action = [&] { return cmd_stats(stats, io); };
  });

  try {
    args = expand_config(std::move(args));
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  try {
    return action();
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace meterkit::app
