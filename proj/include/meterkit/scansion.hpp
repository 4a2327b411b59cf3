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

// Prosody tables and the deterministic scansion engine.
//
// Patterns are stored in pronunciation order ('/' = vowel-bearing letter,
// '0' = consonant), i.e. the published right-to-left scansions reversed.

#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "meterkit/edit_distance.hpp"
#include "meterkit/encoding.hpp"
#include "meterkit/error.hpp"
#include "meterkit/random.hpp"
#include "meterkit/text_norm.hpp"

namespace meterkit {

class Pattern {
 public:
  static constexpr char kVowel = '/';
  static constexpr char kConsonant = '0';

  Pattern() = default;

  // Pronunciation-order text of '/' and '0'. Spaces are ignored.
  static Pattern parse(std::string_view text) {
    Pattern p;
    for (char c : text) {
      if (c == ' ') continue;
      if (c != kVowel && c != kConsonant)
        throw InvalidPattern(std::string("invalid pattern symbol '") + c + "'");
      p.symbols_.push_back(c);
    }
    return p;
  }

  // Right-to-left display form, as printed in prosody tables.
  static Pattern from_rtl(std::string_view text) {
    Pattern p = parse(text);
    std::reverse(p.symbols_.begin(), p.symbols_.end());
    return p;
  }

  const std::string& str() const { return symbols_; }
  std::string rtl() const { return {symbols_.rbegin(), symbols_.rend()}; }
  std::size_t size() const { return symbols_.size(); }
  bool empty() const { return symbols_.empty(); }
  auto begin() const { return symbols_.begin(); }
  auto end() const { return symbols_.end(); }

  void push_vowel() { symbols_.push_back(kVowel); }
  void push_consonant() { symbols_.push_back(kConsonant); }

  Pattern& operator+=(const Pattern& other) {
    symbols_ += other.symbols_;
    return *this;
  }
  friend Pattern operator+(Pattern a, const Pattern& b) { return a += b; }
  friend bool operator==(const Pattern&, const Pattern&) = default;

 private:
  std::string symbols_;
};

// English stress string: '/' stressed, 'x' unstressed ('×' accepted on input
// and used for display).
class StressPattern {
 public:
  static constexpr char kStressed = '/';
  static constexpr char kUnstressed = 'x';

  StressPattern() = default;

  static StressPattern parse(std::string_view text) {
    StressPattern p;
    for (std::size_t i = 0; i < text.size(); ++i) {
      const char c = text[i];
      if (c == ' ') continue;
      if (c == kStressed || c == kUnstressed || c == 'X') {
        p.symbols_.push_back(c == kStressed ? kStressed : kUnstressed);
      } else if (text.substr(i, 2) == "\xC3\x97") {  // U+00D7
        p.symbols_.push_back(kUnstressed);
        ++i;
      } else {
        throw InvalidPattern(std::string("invalid stress symbol '") + c + "'");
      }
    }
    return p;
  }

  const std::string& str() const { return symbols_; }
  std::string display() const {
    std::string out;
    for (char c : symbols_) out += c == kStressed ? "/" : "\xC3\x97";
    return out;
  }
  std::size_t size() const { return symbols_.size(); }
  bool empty() const { return symbols_.empty(); }
  auto begin() const { return symbols_.begin(); }
  auto end() const { return symbols_.end(); }

  StressPattern repeated(std::size_t k) const {
    StressPattern p;
    for (std::size_t i = 0; i < k; ++i) p.symbols_ += symbols_;
    return p;
  }

  friend bool operator==(const StressPattern&, const StressPattern&) = default;

 private:
  std::string symbols_;
};

struct Foot {
  std::string_view name;      // transliterated
  std::string_view mnemonic;  // fully diacritized Arabic, empty for English
  std::string_view symbols;   // pronunciation order
  Language language;
};

// The eight feet, then mafa'ilun: the clipped mafa'eelun that closes
// al-Taweel in its standard form. It is not one of the eight.
inline constexpr std::array<Foot, 9> kArabicFootTable = {{
    {"fa'ulun", "فَعُوْلُنْ", "//0/0", Language::Arabic},
    {"fa'ilun", "فَاْعِلُنْ", "/0//0", Language::Arabic},
    {"mustaf'ilun", "مُسْتَفْعِلُنْ", "/0/0//0", Language::Arabic},
    {"mafa'eelun", "مَفَاْعِيْلُنْ", "//0/0/0", Language::Arabic},
    {"maf'ulatu", "مَفْعُوْلَاْتُ", "/0/0/0/", Language::Arabic},
    {"fa'ilatun", "فَاْعِلَاْتُنْ", "/0//0/0", Language::Arabic},
    {"mufa'alatun", "مُفَاْعَلَتُنْ", "//0///0", Language::Arabic},
    {"mutafa'ilun", "مُتَفَاْعِلُنْ", "///0//0", Language::Arabic},
    {"mafa'ilun", "مَفَاْعِلُنْ", "//0//0", Language::Arabic},
}};
inline constexpr std::size_t kArabicFootCount = 8;

inline constexpr std::array<Foot, 7> kEnglishFootTable = {{
    {"Iamb", "", "x/", Language::English},
    {"Trochee", "", "/x", Language::English},
    {"Dactyl", "", "/xx", Language::English},
    {"Anapest", "", "xx/", Language::English},
    {"Pyrrhic", "", "xx", Language::English},
    {"Amphibrach", "", "x/x", Language::English},
    {"Spondee", "", "//", Language::English},
}};

enum class FootId : std::uint8_t {
  FaUlun,
  FaIlun,
  MustafIlun,
  MafaEelun,
  MafUlatu,
  FaIlatun,
  MufaAlatun,
  MutafaIlun,
  MafaIlun,
};

struct Meter {
  std::string_view name;         // transliterated, e.g. "al-Wafeer"
  std::string_view arabic_name;  // e.g. "الوافر"
  std::array<FootId, 4> feet;
  std::size_t foot_count;

  Pattern pattern() const {
    Pattern p;
    for (std::size_t i = 0; i < foot_count; ++i)
      p += Pattern::parse(kArabicFootTable[static_cast<std::size_t>(feet[i])].symbols);
    return p;
  }

  friend bool operator==(const Meter& a, const Meter& b) { return a.name == b.name; }
};

namespace detail {
using F = FootId;
}

// Table order is the tie-break order for nearest-meter classification.
inline constexpr std::array<Meter, 16> kArabicMeters = {{
    {"al-Taweel", "الطويل", {detail::F::FaUlun, detail::F::MafaEelun, detail::F::FaUlun, detail::F::MafaIlun}, 4},
    {"al-Kamel", "الكامل", {detail::F::MutafaIlun, detail::F::MutafaIlun, detail::F::MutafaIlun}, 3},
    {"al-Baseet", "البسيط", {detail::F::MustafIlun, detail::F::FaIlun, detail::F::MustafIlun, detail::F::FaIlun}, 4},
    {"al-Khafeef", "الخفيف", {detail::F::FaIlatun, detail::F::MustafIlun, detail::F::FaIlatun}, 3},
    {"al-Wafeer", "الوافر", {detail::F::MufaAlatun, detail::F::MufaAlatun, detail::F::FaUlun}, 3},
    {"al-Rigz", "الرجز", {detail::F::MustafIlun, detail::F::MustafIlun, detail::F::MustafIlun}, 3},
    {"al-Raml", "الرمل", {detail::F::FaIlatun, detail::F::FaIlatun, detail::F::FaIlatun}, 3},
    {"al-Motakarib", "المتقارب", {detail::F::FaUlun, detail::F::FaUlun, detail::F::FaUlun, detail::F::FaUlun}, 4},
    {"al-Sar'e", "السريع", {detail::F::MustafIlun, detail::F::MustafIlun, detail::F::MafUlatu}, 3},
    {"al-Monsareh", "المنسرح", {detail::F::MustafIlun, detail::F::MafUlatu, detail::F::MustafIlun}, 3},
    {"al-Mogtath", "المجتث", {detail::F::MustafIlun, detail::F::FaIlatun, detail::F::FaIlatun}, 3},
    {"al-Madeed", "المديد", {detail::F::FaIlatun, detail::F::FaIlun, detail::F::FaIlatun}, 3},
    {"al-Hazg", "الهزج", {detail::F::MafaEelun, detail::F::MafaEelun}, 2},
    {"al-Motadarik", "المتدارك", {detail::F::FaIlun, detail::F::FaIlun, detail::F::FaIlun, detail::F::FaIlun}, 4},
    {"al-Moktadib", "المقتضب", {detail::F::MafUlatu, detail::F::MustafIlun, detail::F::MustafIlun}, 3},
    {"al-Modar'e", "المضارع", {detail::F::MafaEelun, detail::F::FaIlatun, detail::F::FaIlatun}, 3},
}};

namespace detail {

// Lowercase ASCII, drop "al-" and anything that is not a letter, so
// "al-Sar'e", "Sare" and "sar'e" all compare equal.
inline std::string name_key(std::string_view name) {
  std::string out;
  for (char c : name) {
    const auto u = static_cast<unsigned char>(c);
    if (u >= 0x80) {
      out.push_back(c);
    } else if (std::isalpha(u)) {
      out.push_back(static_cast<char>(std::tolower(u)));
    }
  }
  if (out.rfind("al", 0) == 0 && name.size() > 3 && (name[2] == '-' || name[2] == ' '))
    out.erase(0, 2);
  return out;
}

// Arabic text compared by letters only.
inline std::string arabic_key(std::string_view text) {
  try {
    const Verse v = strip_diacritics(clean(parse(text, ParsePolicy::SkipUnknown)));
    return to_utf8(v);
  } catch (const Error&) {
    return {};
  }
}

}  // namespace detail

inline const Foot& find_foot(std::string_view name) {
  const std::string key = detail::name_key(name);
  for (const Foot& f : kArabicFootTable)
    if (detail::name_key(f.name) == key) return f;
  for (const Foot& f : kEnglishFootTable)
    if (detail::name_key(f.name) == key) return f;
  const std::string arabic = detail::arabic_key(name);
  if (!arabic.empty()) {
    for (const Foot& f : kArabicFootTable)
      if (detail::arabic_key(f.mnemonic) == arabic) return f;
  }
  throw UnknownFoot(std::string(name));
}

inline Pattern foot_pattern(const Foot& foot) {
  if (foot.language != Language::Arabic) throw UnknownFoot(std::string(foot.name) + " is not an Arabic foot");
  return Pattern::parse(foot.symbols);
}

inline StressPattern stress_pattern(const Foot& foot) {
  if (foot.language != Language::English) throw UnknownFoot(std::string(foot.name) + " is not an English foot");
  return StressPattern::parse(foot.symbols);
}

// Table value as text: '/'/'0' for Arabic feet, '/'/'x' for English feet.
inline std::string foot_pattern_text(std::string_view name) {
  return std::string(find_foot(name).symbols);
}

inline Pattern foot_pattern(std::string_view name) { return foot_pattern(find_foot(name)); }

inline const Meter& find_meter(std::string_view name) {
  const std::string key = detail::name_key(name);
  for (const Meter& m : kArabicMeters)
    if (detail::name_key(m.name) == key || m.arabic_name == name) return m;
  const std::string arabic = detail::arabic_key(name);
  if (!arabic.empty()) {
    for (const Meter& m : kArabicMeters)
      if (detail::arabic_key(m.arabic_name) == arabic) return m;
  }
  throw UnknownMeter(std::string(name));
}

inline std::optional<std::size_t> meter_index(std::string_view name) {
  try {
    const Meter& m = find_meter(name);
    return static_cast<std::size_t>(&m - kArabicMeters.data());
  } catch (const UnknownMeter&) {
    return std::nullopt;
  }
}

inline Pattern meter_pattern(const Meter& meter) { return meter.pattern(); }
inline Pattern meter_pattern(std::string_view name) { return find_meter(name).pattern(); }

// harakah -> '/', sukun -> '0', bare mad letter -> '0', separator -> nothing.
// Unfactored composites scan as their factored forms: shaddah "0/",
// tanween "/0", both "0/0".
inline Pattern to_pattern(const Verse& verse) {
  Pattern p;
  for (std::size_t i = 0; i < verse.chars.size(); ++i) {
    const DiacritizedChar& c = verse.chars[i];
    if (c.is_separator()) continue;
    if (c.mark == Mark::None) {
      if (!c.letter.is_mad()) throw MissingDiacritic(i);
      p.push_consonant();
      continue;
    }
    if (auto d = c.diacritic()) {
      if (is_harakah(*d)) {
        p.push_vowel();
      } else {
        p.push_consonant();
      }
      continue;
    }
    if (marks::has_shaddah(c.mark)) p.push_consonant();
    p.push_vowel();
    if (marks::has_tanween(c.mark)) p.push_consonant();
  }
  return p;
}

struct MeterMatch {
  const Meter* meter = nullptr;
  std::size_t distance = 0;
};

// Nearest meter by edit distance; the earliest table row wins ties.
inline MeterMatch classify_pattern(const Pattern& pattern) {
  MeterMatch best;
  for (const Meter& m : kArabicMeters) {
    const std::size_t d = edit_distance(pattern.str(), m.pattern().str());
    if (best.meter == nullptr || d < best.distance) best = {&m, d};
  }
  return best;
}

inline MeterMatch classify_rule_based(const Verse& verse) {
  return classify_pattern(to_pattern(verse));
}

// ---------------------------------------------------------------------------
// English

enum class EnglishFamily : std::uint8_t { Iambic, Trochee, Dactyl, Anapaestic };

inline constexpr std::array<std::string_view, 4> kEnglishFamilyNames = {"Iambic", "Trochee", "Dactyl",
                                                                        "Anapaestic"};

inline std::string_view to_string(EnglishFamily f) {
  return kEnglishFamilyNames[static_cast<std::size_t>(f)];
}

inline std::optional<EnglishFamily> find_english_family(std::string_view label) {
  const std::string key = detail::name_key(label);
  static constexpr std::array<std::array<std::string_view, 4>, 4> aliases = {{
      {"iambic", "iamb", "iambus", ""},
      {"trochee", "trochaic", "trochees", ""},
      {"dactyl", "dactylic", "dactyls", ""},
      {"anapaestic", "anapestic", "anapest", "anapaest"},
  }};
  for (std::size_t f = 0; f < aliases.size(); ++f)
    for (std::string_view a : aliases[f])
      if (!a.empty() && a == key) return static_cast<EnglishFamily>(f);
  return std::nullopt;
}

// Foot table rows that name a meter family.
inline constexpr std::array<std::size_t, 4> kFamilyFootRows = {0, 1, 2, 3};

inline constexpr std::size_t kMaxRepetitions = 8;

inline std::string_view repetition_name(std::size_t k) {
  static constexpr std::array<std::string_view, 9> names = {
      "", "monometer", "dimeter", "trimeter", "tetrameter", "pentameter", "hexameter", "heptameter",
      "octameter"};
  return k < names.size() ? names[k] : std::string_view{};
}

struct EnglishMeter {
  const Foot* foot = nullptr;
  std::size_t repetitions = 1;
  std::size_t distance = 0;

  StressPattern pattern() const { return stress_pattern(*foot).repeated(repetitions); }
};

struct StressMatch {
  EnglishFamily family = EnglishFamily::Iambic;
  std::size_t repetitions = 1;
  std::size_t distance = 0;
};

namespace detail {

template <typename Rows>
EnglishMeter nearest_repetition(const StressPattern& stress, const Rows& rows) {
  EnglishMeter best;
  for (std::size_t row : rows) {
    const Foot& foot = kEnglishFootTable[row];
    const StressPattern unit = stress_pattern(foot);
    for (std::size_t k = 1; k <= kMaxRepetitions; ++k) {
      const std::size_t d = edit_distance(stress.str(), unit.repeated(k).str());
      if (best.foot == nullptr || d < best.distance) best = {&foot, k, d};
    }
  }
  return best;
}

}  // namespace detail

// Nearest (foot, k) over all seven feet, k in [1, 8].
inline EnglishMeter nearest_english_meter(const StressPattern& stress) {
  static constexpr std::array<std::size_t, 7> all = {0, 1, 2, 3, 4, 5, 6};
  return detail::nearest_repetition(stress, all);
}

// Nearest (foot, k) restricted to the four feet that label meter families;
// ties go to the earlier foot, then the smaller k.
inline StressMatch classify_stress(const StressPattern& stress) {
  const EnglishMeter m = detail::nearest_repetition(stress, kFamilyFootRows);
  const auto row = static_cast<std::size_t>(m.foot - kEnglishFootTable.data());
  return {static_cast<EnglishFamily>(row), m.repetitions, m.distance};
}

// ---------------------------------------------------------------------------
// Synthetic verses

struct DiacriticNoise {
  double drop_probability = 0.0;  // each diacritic removed independently
};

struct GeneratorOptions {
  double separator_probability = 0.2;  // after each letter but the last
  double mad_probability = 0.3;        // '0' realized as a bare mad letter
};

namespace detail {

inline const std::vector<ArabicLetter>& non_mad_letters() {
  static const std::vector<ArabicLetter> letters = [] {
    std::vector<ArabicLetter> out;
    for (std::size_t i = 0; i < ArabicLetter::kCount; ++i) {
      const ArabicLetter l = ArabicLetter::at(i);
      if (!l.is_mad()) out.push_back(l);
    }
    return out;
  }();
  return letters;
}

inline const std::array<ArabicLetter, 3>& mad_letters() {
  static const std::array<ArabicLetter, 3> letters = {
      ArabicLetter::of(cp::kAlef), ArabicLetter::of(cp::kWaw), ArabicLetter::of(cp::kAlefMaqsura)};
  return letters;
}

}  // namespace detail

// Inverts the scansion rules: each '/' becomes a non-mad letter with a random
// harakah, each '0' a non-mad letter with sukun or a bare mad letter.
inline Verse generate_synthetic(const Meter& meter, DiacriticNoise noise, Rng& rng,
                                const GeneratorOptions& options = {}) {
  const auto& consonants = detail::non_mad_letters();
  const auto& mads = detail::mad_letters();
  const Pattern pattern = meter.pattern();
  Verse v;
  v.label = std::string(meter.name);
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    DiacritizedChar c;
    if (pattern.str()[i] == Pattern::kVowel) {
      c.letter = consonants[rng.below(consonants.size())];
      c.mark = marks::of(static_cast<Diacritic>(rng.below(3)));
    } else if (rng.bernoulli(options.mad_probability)) {
      c.letter = mads[rng.below(mads.size())];
    } else {
      c.letter = consonants[rng.below(consonants.size())];
      c.mark = Mark::Sukun;
    }
    if (c.mark != Mark::None && noise.drop_probability > 0.0 && rng.bernoulli(noise.drop_probability))
      c.mark = Mark::None;
    v.chars.push_back(c);
    if (i + 1 < pattern.size() && rng.bernoulli(options.separator_probability))
      v.chars.push_back(separator_char());
  }
  return v;
}

inline Verse generate_synthetic(const Meter& meter, DiacriticNoise noise, std::uint64_t seed,
                                const GeneratorOptions& options = {}) {
  Rng rng(seed);
  return generate_synthetic(meter, noise, rng, options);
}

}  // namespace meterkit
