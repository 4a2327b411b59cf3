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

// Labeled verse corpora: CSV loading, class filtering and seeded splits.
//
// Column mapping (header names are matched case-insensitively):
//
//   verse  verse, text, bayt, البيت
//   halves first_half + second_half, or الشطر الأيمن + الشطر الأيسر;
//          joined as "first | second" when no verse column exists
//   meter  meter, label, class, البحر
//   poet   poet, الشاعر
//   age    age, era, العصر
//
// Other columns are ignored.

#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "meterkit/csv.hpp"
#include "meterkit/encoding.hpp"
#include "meterkit/error.hpp"
#include "meterkit/random.hpp"
#include "meterkit/scansion.hpp"
#include "meterkit/text_norm.hpp"
#include "meterkit/utf8.hpp"

namespace meterkit::dataset {

struct Record {
  std::string verse;
  std::string meter;  // canonical label
  std::optional<std::string> poet;
  std::optional<std::string> age;
  std::size_t id = 0;    // position in the loaded file, stable across transforms
  std::size_t line = 0;  // source line, for diagnostics

  friend bool operator==(const Record&, const Record&) = default;
};

struct Corpus {
  Language language = Language::Arabic;
  std::vector<Record> records;
  std::map<std::string, std::size_t> class_index;  // label -> count

  std::size_t size() const { return records.size(); }

  void recount() {
    class_index.clear();
    for (const Record& r : records)
      if (!r.meter.empty()) ++class_index[r.meter];
  }

  friend bool operator==(const Corpus&, const Corpus&) = default;
};

struct SplitCorpus {
  std::vector<Record> train;
  std::vector<Record> validation;
  std::vector<Record> test;
  std::uint64_t seed = 0;
};

// Canonical label of a free-form meter or family name, if known.
inline std::optional<std::string> canonical_label(std::string_view label, Language language) {
  if (language == Language::Arabic) {
    try {
      return std::string(find_meter(label).name);
    } catch (const UnknownMeter&) {
      return std::nullopt;
    }
  }
  if (auto f = find_english_family(label)) return std::string(to_string(*f));
  return std::nullopt;
}

// Every label of a language in table order.
inline std::vector<std::string> all_labels(Language language) {
  std::vector<std::string> out;
  if (language == Language::Arabic) {
    for (const Meter& m : kArabicMeters) out.emplace_back(m.name);
  } else {
    for (std::string_view f : kEnglishFamilyNames) out.emplace_back(f);
  }
  return out;
}

// Labels present in the corpus, in table order; index = class id.
inline std::vector<std::string> class_labels(const Corpus& corpus) {
  std::vector<std::string> out;
  for (std::string& label : all_labels(corpus.language))
    if (corpus.class_index.contains(label)) out.push_back(std::move(label));
  return out;
}

namespace detail {

inline std::string fold_header(std::string_view s) {
  std::string out;
  for (const char c : s) {
    if (c == ' ' || c == '\t') continue;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

struct Columns {
  std::optional<std::size_t> verse, first, second, meter, poet, age;
};

inline Columns map_columns(const csv::Row& header, bool require_labels) {
  Columns c;
  const auto pick = [](std::optional<std::size_t>& slot, std::size_t k) {
    if (!slot) slot = k;
  };
  for (std::size_t k = 0; k < header.fields.size(); ++k) {
    const std::string h = fold_header(header.fields[k]);
    if (h == "verse" || h == "text" || h == "bayt" || h == "البيت") pick(c.verse, k);
    else if (h == "first_half" || h == "الشطرالأيمن") pick(c.first, k);
    else if (h == "second_half" || h == "الشطرالأيسر") pick(c.second, k);
    else if (h == "meter" || h == "label" || h == "class" || h == "البحر") pick(c.meter, k);
    else if (h == "poet" || h == "الشاعر") pick(c.poet, k);
    else if (h == "age" || h == "era" || h == "العصر") pick(c.age, k);
  }
  if (!c.meter && require_labels) throw MalformedRow(header.line, "header has no meter column");
  if (!c.verse && !(c.first && c.second)) throw MalformedRow(header.line, "header has no verse column");
  return c;
}

inline std::optional<std::string> optional_field(const csv::Row& row, std::optional<std::size_t> col) {
  if (!col || row.fields[*col].empty()) return std::nullopt;
  return row.fields[*col];
}

}  // namespace detail

// With `require_labels` false the meter column may be missing or empty and
// such records carry an empty label.
inline Corpus parse_csv(std::string_view text, Language language, bool require_labels = true) {
  if (!utf8::is_valid(text)) throw IoFailure("input is not valid UTF-8");
  Corpus corpus{language, {}, {}};
  const std::vector<csv::Row> rows = csv::parse(text);
  if (rows.empty()) return corpus;
  const detail::Columns cols = detail::map_columns(rows.front(), require_labels);
  const std::size_t width = rows.front().fields.size();
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const csv::Row& row = rows[r];
    if (row.fields.size() != width)
      throw MalformedRow(row.line, "expected " + std::to_string(width) + " fields, found " +
                                       std::to_string(row.fields.size()));
    Record rec;
    rec.id = r - 1;
    rec.line = row.line;
    rec.verse = cols.verse ? row.fields[*cols.verse]
                           : row.fields[*cols.first] + " | " + row.fields[*cols.second];
    const std::string label = cols.meter ? row.fields[*cols.meter] : std::string();
    if (!label.empty() || require_labels) {
      auto canonical = canonical_label(label, language);
      if (!canonical) throw UnknownMeterLabel(row.line, label);
      rec.meter = std::move(*canonical);
    }
    rec.poet = detail::optional_field(row, cols.poet);
    rec.age = detail::optional_field(row, cols.age);
    corpus.records.push_back(std::move(rec));
  }
  corpus.recount();
  return corpus;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoFailure("failed to read " + path);
  return ss.str();
}

inline Corpus load_csv(const std::string& path, Language language, bool require_labels = true) {
  const std::string text = read_file(path);
  if (!utf8::is_valid(text)) throw IoFailure(path + " is not valid UTF-8");
  return parse_csv(text, language, require_labels);
}

// Writes verse,meter,poet,age.
inline void write_csv(std::ostream& os, const std::vector<Record>& records) {
  csv::write_row(os, {"verse", "meter", "poet", "age"});
  for (const Record& r : records) csv::write_row(os, {r.verse, r.meter, r.poet.value_or(""), r.age.value_or("")});
}

inline Corpus with_records(const Corpus& base, std::vector<Record> records) {
  Corpus c{base.language, std::move(records), {}};
  c.recount();
  return c;
}

// Drops the k smallest classes; ties go to the lexicographically smaller label.
inline Corpus trim_smallest(const Corpus& corpus, std::size_t k) {
  if (k == 0) return corpus;
  if (k >= corpus.class_index.size())
    throw KTooLarge("cannot trim " + std::to_string(k) + " of " + std::to_string(corpus.class_index.size()) +
                    " classes");
  std::vector<std::pair<std::size_t, std::string>> by_size;
  for (const auto& [label, count] : corpus.class_index) by_size.emplace_back(count, label);
  std::sort(by_size.begin(), by_size.end());
  std::vector<std::string> dropped;
  for (std::size_t i = 0; i < k; ++i) dropped.push_back(by_size[i].second);
  std::vector<Record> kept;
  for (const Record& r : corpus.records)
    if (std::find(dropped.begin(), dropped.end(), r.meter) == dropped.end()) kept.push_back(r);
  return with_records(corpus, std::move(kept));
}

// Keeps a seeded uniform sample of n records of one label, in original order.
inline Corpus downsample(const Corpus& corpus, std::string_view label, std::size_t n, std::uint64_t seed) {
  const auto canonical = canonical_label(label, corpus.language).value_or(std::string(label));
  const auto it = corpus.class_index.find(canonical);
  const std::size_t have = it == corpus.class_index.end() ? 0 : it->second;
  if (n > have)
    throw NotEnoughRecords("cannot keep " + std::to_string(n) + " of " + std::to_string(have) + " '" + canonical +
                           "' records");
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < corpus.records.size(); ++i)
    if (corpus.records[i].meter == canonical) members.push_back(i);
  Rng rng(seed);
  rng.shuffle(members);
  members.resize(n);
  std::vector<bool> keep(corpus.records.size(), true);
  for (std::size_t i = 0; i < corpus.records.size(); ++i)
    if (corpus.records[i].meter == canonical) keep[i] = false;
  for (std::size_t i : members) keep[i] = true;
  std::vector<Record> out;
  for (std::size_t i = 0; i < corpus.records.size(); ++i)
    if (keep[i]) out.push_back(corpus.records[i]);
  return with_records(corpus, std::move(out));
}

enum class DiacriticsVariant { Keep, Strip };

inline Corpus make_variant(const Corpus& corpus, DiacriticsVariant variant) {
  if (variant == DiacriticsVariant::Keep) return corpus;
  if (corpus.language != Language::Arabic) throw ConfigError("diacritic stripping applies to Arabic corpora only");
  Corpus out = corpus;
  for (Record& r : out.records) r.verse = to_utf8(strip_diacritics(normalize(r.verse)));
  return out;
}

// Seeded shuffle then contiguous slices: test first, then validation, the
// remainder trains. Sizes are floor(fraction * n). With `stratified` the
// same is done per class and the slices are concatenated in label order.
inline SplitCorpus split(const Corpus& corpus, double validation_fraction, double test_fraction,
                         std::uint64_t seed, bool stratified = false) {
  if (!(validation_fraction > 0.0) || !(test_fraction > 0.0) || !(validation_fraction + test_fraction < 1.0))
    throw FractionError("validation and test fractions must be positive and sum below 1");
  SplitCorpus out;
  out.seed = seed;
  const auto slice = [&](std::vector<std::size_t> idx, std::uint64_t stream) {
    Rng rng(mix_seed(seed, stream));
    rng.shuffle(idx);
    const auto n = static_cast<double>(idx.size());
    const auto n_test = static_cast<std::size_t>(test_fraction * n);
    const auto n_val = static_cast<std::size_t>(validation_fraction * n);
    if (n_test + n_val > idx.size()) throw FractionError("split sizes exceed the corpus");
    for (std::size_t i = 0; i < idx.size(); ++i) {
      const Record& r = corpus.records[idx[i]];
      if (i < n_test) out.test.push_back(r);
      else if (i < n_test + n_val) out.validation.push_back(r);
      else out.train.push_back(r);
    }
  };
  if (!stratified) {
    std::vector<std::size_t> idx(corpus.records.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    slice(std::move(idx), 0);
    return out;
  }
  std::uint64_t stream = 0;
  for (const auto& [label, count] : corpus.class_index) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < corpus.records.size(); ++i)
      if (corpus.records[i].meter == label) idx.push_back(i);
    slice(std::move(idx), ++stream);
  }
  return out;
}

}  // namespace meterkit::dataset
