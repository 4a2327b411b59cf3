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

// Arabic text model: the 36-letter roster, the four primitive diacritics,
// the shaddah/tanween composites, and the parse -> clean -> factor pipeline
// that turns raw UTF-8 into canonical diacritized characters.

#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "meterkit/error.hpp"
#include "meterkit/utf8.hpp"

namespace meterkit {

// The letter roster. 28 primary letters plus 8 derived forms (hamza on its
// own and on its three seats, alef with madda, alef with hamza below,
// ta marbuta, alef maqsura). Ordered by codepoint; every index-based table
// downstream (one-hot, binary, two-hot) follows this order.
//
//   0 ء U+0621   9 ت U+062A  18 س U+0633  27 ق U+0642
//   1 آ U+0622  10 ث U+062B  19 ش U+0634  28 ك U+0643
//   2 أ U+0623  11 ج U+062C  20 ص U+0635  29 ل U+0644
//   3 ؤ U+0624  12 ح U+062D  21 ض U+0636  30 م U+0645
//   4 إ U+0625  13 خ U+062E  22 ط U+0637  31 ن U+0646
//   5 ئ U+0626  14 د U+062F  23 ظ U+0638  32 ه U+0647
//   6 ا U+0627  15 ذ U+0630  24 ع U+0639  33 و U+0648
//   7 ب U+0628  16 ر U+0631  25 غ U+063A  34 ى U+0649
//   8 ة U+0629  17 ز U+0632  26 ف U+0641  35 ي U+064A
inline constexpr std::array<char32_t, 36> kArabicLetterCodepoints = {
    0x0621, 0x0622, 0x0623, 0x0624, 0x0625, 0x0626, 0x0627, 0x0628, 0x0629,
    0x062A, 0x062B, 0x062C, 0x062D, 0x062E, 0x062F, 0x0630, 0x0631, 0x0632,
    0x0633, 0x0634, 0x0635, 0x0636, 0x0637, 0x0638, 0x0639, 0x063A, 0x0641,
    0x0642, 0x0643, 0x0644, 0x0645, 0x0646, 0x0647, 0x0648, 0x0649, 0x064A,
};

namespace cp {
inline constexpr char32_t kAlef = 0x0627;
inline constexpr char32_t kWaw = 0x0648;
inline constexpr char32_t kAlefMaqsura = 0x0649;
inline constexpr char32_t kYeh = 0x064A;
inline constexpr char32_t kNoon = 0x0646;
inline constexpr char32_t kDal = 0x062F;
inline constexpr char32_t kFathatan = 0x064B;
inline constexpr char32_t kDammatan = 0x064C;
inline constexpr char32_t kKasratan = 0x064D;
inline constexpr char32_t kFatha = 0x064E;
inline constexpr char32_t kDamma = 0x064F;
inline constexpr char32_t kKasra = 0x0650;
inline constexpr char32_t kShaddah = 0x0651;
inline constexpr char32_t kSukun = 0x0652;
inline constexpr char32_t kMaddahAbove = 0x0653;
inline constexpr char32_t kHamzaAbove = 0x0654;
inline constexpr char32_t kHamzaBelow = 0x0655;
inline constexpr char32_t kTatweel = 0x0640;
}  // namespace cp

// One of the 36 letters, or the word separator (index 36).
class ArabicLetter {
 public:
  static constexpr std::size_t kCount = 36;
  static constexpr std::size_t kSeparatorIndex = kCount;

  constexpr ArabicLetter() = default;

  static constexpr ArabicLetter separator() { return ArabicLetter(kSeparatorIndex); }

  static ArabicLetter at(std::size_t index) {
    if (index > kSeparatorIndex) throw UnknownSymbol("letter index out of range");
    return ArabicLetter(index);
  }

  static constexpr std::optional<ArabicLetter> from_codepoint(char32_t c) {
    for (std::size_t i = 0; i < kCount; ++i)
      if (kArabicLetterCodepoints[i] == c) return ArabicLetter(i);
    return std::nullopt;
  }

  static ArabicLetter of(char32_t c) {
    if (auto l = from_codepoint(c)) return *l;
    throw UnknownSymbol("not an Arabic letter: U+" + UnknownCodepoint::hex(c));
  }

  constexpr std::size_t index() const { return index_; }
  constexpr bool is_separator() const { return index_ == kSeparatorIndex; }
  constexpr char32_t codepoint() const {
    return is_separator() ? U' ' : kArabicLetterCodepoints[index_];
  }

  // ا و ى: scan as a consonant ('0') when they carry no diacritic.
  constexpr bool is_mad() const {
    const char32_t c = codepoint();
    return c == cp::kAlef || c == cp::kWaw || c == cp::kAlefMaqsura;
  }

  friend constexpr bool operator==(ArabicLetter, ArabicLetter) = default;
  friend constexpr auto operator<=>(ArabicLetter, ArabicLetter) = default;

 private:
  constexpr explicit ArabicLetter(std::size_t index)
      : index_(static_cast<std::uint8_t>(index)) {}

  std::uint8_t index_ = kSeparatorIndex;
};

enum class Diacritic : std::uint8_t { Fatha, Damma, Kasra, Sukun };

inline constexpr std::array<Diacritic, 4> kDiacritics = {
    Diacritic::Fatha, Diacritic::Damma, Diacritic::Kasra, Diacritic::Sukun};

constexpr bool is_harakah(Diacritic d) { return d != Diacritic::Sukun; }

constexpr char32_t codepoint_of(Diacritic d) {
  switch (d) {
    case Diacritic::Fatha: return cp::kFatha;
    case Diacritic::Damma: return cp::kDamma;
    case Diacritic::Kasra: return cp::kKasra;
    case Diacritic::Sukun: return cp::kSukun;
  }
  return 0;
}

// The mark carried by one letter of a cleaned verse. The first five values
// are the canonical states; the rest are the shaddah/tanween composites that
// exist only until factoring. Shaddah and tanween can stack on one
// word-final letter, hence the ShaddahTanween forms.
enum class Mark : std::uint8_t {
  None,
  Fatha,
  Damma,
  Kasra,
  Sukun,
  ShaddahFatha,
  ShaddahDamma,
  ShaddahKasra,
  TanweenFatha,
  TanweenDamma,
  TanweenKasra,
  ShaddahTanweenFatha,
  ShaddahTanweenDamma,
  ShaddahTanweenKasra,
};

namespace marks {

constexpr Mark of(Diacritic d) { return static_cast<Mark>(static_cast<int>(d) + 1); }

constexpr bool is_canonical(Mark m) { return m <= Mark::Sukun; }

constexpr std::optional<Diacritic> primitive(Mark m) {
  if (m == Mark::None || !is_canonical(m)) return std::nullopt;
  return static_cast<Diacritic>(static_cast<int>(m) - 1);
}

constexpr bool has_shaddah(Mark m) {
  return (m >= Mark::ShaddahFatha && m <= Mark::ShaddahKasra) ||
         m >= Mark::ShaddahTanweenFatha;
}

constexpr bool has_tanween(Mark m) { return m >= Mark::TanweenFatha; }

// The harakah underlying a composite mark (Fatha/Damma/Kasra).
constexpr Diacritic vowel(Mark m) {
  const int v = static_cast<int>(m);
  if (m >= Mark::ShaddahTanweenFatha) return static_cast<Diacritic>(v - 11);
  if (m >= Mark::TanweenFatha) return static_cast<Diacritic>(v - 8);
  if (m >= Mark::ShaddahFatha) return static_cast<Diacritic>(v - 5);
  return static_cast<Diacritic>(v - 1);
}

constexpr Mark shaddah(Diacritic h) {
  return static_cast<Mark>(static_cast<int>(Mark::ShaddahFatha) + static_cast<int>(h));
}
constexpr Mark tanween(Diacritic h) {
  return static_cast<Mark>(static_cast<int>(Mark::TanweenFatha) + static_cast<int>(h));
}
constexpr Mark shaddah_tanween(Diacritic h) {
  return static_cast<Mark>(static_cast<int>(Mark::ShaddahTanweenFatha) + static_cast<int>(h));
}

}  // namespace marks

struct DiacritizedChar {
  ArabicLetter letter;
  Mark mark = Mark::None;

  constexpr std::optional<Diacritic> diacritic() const { return marks::primitive(mark); }
  constexpr bool is_separator() const { return letter.is_separator(); }

  friend constexpr bool operator==(const DiacritizedChar&, const DiacritizedChar&) = default;
};

constexpr DiacritizedChar separator_char() { return {ArabicLetter::separator(), Mark::None}; }

struct Verse {
  std::vector<DiacritizedChar> chars;
  std::optional<std::string> label;
  std::optional<std::string> poet;
  std::optional<std::string> age;

  std::size_t size() const { return chars.size(); }
  bool empty() const { return chars.empty(); }

  bool is_canonical() const {
    return std::all_of(chars.begin(), chars.end(),
                       [](const DiacritizedChar& c) { return marks::is_canonical(c.mark); });
  }

  friend bool operator==(const Verse&, const Verse&) = default;
};

// ---------------------------------------------------------------------------
// Surface (pre-clean) form

enum class ParsePolicy { Strict, SkipUnknown };

enum class SurfaceMark : std::uint8_t {
  Fatha,
  Damma,
  Kasra,
  Sukun,
  Shaddah,
  TanweenFatha,
  TanweenDamma,
  TanweenKasra,
  Other,  // Quranic annotation marks, superscript alef, stray madda/hamza
};

struct SurfaceUnit {
  enum class Kind : std::uint8_t { Letter, Separator, Glyph };

  Kind kind = Kind::Separator;
  ArabicLetter letter;       // Kind::Letter only
  char32_t codepoint = U' ';  // source codepoint (after letter folding)
  std::size_t position = 0;  // codepoint offset in the input
  std::vector<SurfaceMark> marks;

  friend bool operator==(const SurfaceUnit&, const SurfaceUnit&) = default;
};

using SurfaceText = std::vector<SurfaceUnit>;

namespace detail {

inline bool is_whitespace(char32_t c) {
  return (c >= 0x09 && c <= 0x0D) || c == 0x20 || c == 0x85 || c == 0xA0 || c == 0x1680 ||
         (c >= 0x2000 && c <= 0x200A) || c == 0x2028 || c == 0x2029 || c == 0x202F ||
         c == 0x205F || c == 0x3000;
}

// Non-alphabetic glyphs that are recognized (so Strict parsing accepts them)
// and later removed by clean: tatweel, punctuation, digits, joiners.
inline bool is_known_glyph(char32_t c) {
  if (c >= 0x21 && c <= 0x7E) {
    const bool ascii_letter = (c >= U'A' && c <= U'Z') || (c >= U'a' && c <= U'z');
    return !ascii_letter;
  }
  return c == cp::kTatweel || c == 0x060C || c == 0x061B || c == 0x061F ||
         (c >= 0x066A && c <= 0x066D) || c == 0x06D4 || (c >= 0x0660 && c <= 0x0669) ||
         (c >= 0x06F0 && c <= 0x06F9) || c == 0x00AB || c == 0x00BB ||
         (c >= 0x200B && c <= 0x200F) || (c >= 0x2010 && c <= 0x2027) ||
         (c >= 0x2030 && c <= 0x205E) || c == 0xFEFF || c == 0xFD3E || c == 0xFD3F;
}

inline std::optional<SurfaceMark> mark_of(char32_t c) {
  switch (c) {
    case cp::kFatha: return SurfaceMark::Fatha;
    case cp::kDamma: return SurfaceMark::Damma;
    case cp::kKasra: return SurfaceMark::Kasra;
    case cp::kSukun: return SurfaceMark::Sukun;
    case cp::kShaddah: return SurfaceMark::Shaddah;
    case cp::kFathatan: return SurfaceMark::TanweenFatha;
    case cp::kDammatan: return SurfaceMark::TanweenDamma;
    case cp::kKasratan: return SurfaceMark::TanweenKasra;
    default: break;
  }
  if ((c >= 0x0610 && c <= 0x061A) || (c >= 0x0653 && c <= 0x065F) || c == 0x0670 ||
      (c >= 0x06D6 && c <= 0x06DC) || (c >= 0x06DF && c <= 0x06E4) || c == 0x06E7 ||
      c == 0x06E8 || (c >= 0x06EA && c <= 0x06ED))
    return SurfaceMark::Other;
  return std::nullopt;
}

// Variant codepoints folded onto roster letters.
inline char32_t fold_letter(char32_t c) {
  switch (c) {
    case 0x0671: return cp::kAlef;  // alef wasla
    case 0x06A9: return 0x0643;     // keheh -> kaf
    case 0x06CC: return cp::kYeh;   // farsi yeh -> yeh
    default: return c;
  }
}

// Decomposed hamza/madda sequences (NFD input) onto precomposed letters.
inline std::optional<char32_t> compose(char32_t base, char32_t modifier) {
  if (base == cp::kAlef && modifier == cp::kMaddahAbove) return 0x0622;
  if (base == cp::kAlef && modifier == cp::kHamzaAbove) return 0x0623;
  if (base == cp::kAlef && modifier == cp::kHamzaBelow) return 0x0625;
  if (base == cp::kWaw && modifier == cp::kHamzaAbove) return 0x0624;
  if (base == cp::kYeh && modifier == cp::kHamzaAbove) return 0x0626;
  return std::nullopt;
}

}  // namespace detail

// Tokenizes raw text into letters (with every mark that follows them),
// word separators and non-alphabetic glyphs. Whitespace runs collapse to one
// separator. A mark that follows no letter or glyph is an orphan: Strict
// raises OrphanDiacritic, SkipUnknown drops it.
inline SurfaceText parse(std::u32string_view text, ParsePolicy policy) {
  SurfaceText units;
  bool attachable = false;
  for (std::size_t pos = 0; pos < text.size(); ++pos) {
    const char32_t raw = text[pos];
    if (detail::is_whitespace(raw)) {
      if (units.empty() || units.back().kind != SurfaceUnit::Kind::Separator)
        units.push_back({SurfaceUnit::Kind::Separator, ArabicLetter::separator(), U' ', pos, {}});
      attachable = false;
      continue;
    }
    const char32_t folded = detail::fold_letter(raw);
    if (auto letter = ArabicLetter::from_codepoint(folded)) {
      units.push_back({SurfaceUnit::Kind::Letter, *letter, folded, pos, {}});
      attachable = true;
      continue;
    }
    if (attachable && units.back().kind == SurfaceUnit::Kind::Letter) {
      if (auto composed = detail::compose(units.back().codepoint, raw)) {
        units.back().codepoint = *composed;
        units.back().letter = ArabicLetter::of(*composed);
        continue;
      }
    }
    if (auto mark = detail::mark_of(raw)) {
      if (attachable) {
        units.back().marks.push_back(*mark);
      } else if (policy == ParsePolicy::Strict) {
        throw OrphanDiacritic(pos);
      }
      continue;
    }
    if (detail::is_known_glyph(raw)) {
      units.push_back({SurfaceUnit::Kind::Glyph, ArabicLetter::separator(), raw, pos, {}});
      attachable = true;
      continue;
    }
    if (policy == ParsePolicy::Strict) throw UnknownCodepoint(pos, raw);
    attachable = false;
  }
  return units;
}

inline SurfaceText parse(std::string_view utf8_text, ParsePolicy policy) {
  return parse(std::u32string_view(utf8::decode(utf8_text)), policy);
}

namespace detail {

// First vowel-bearing mark wins; a shaddah anywhere in the run combines
// with it. Shaddah with sukun or with no vowel at all is dropped.
inline Mark reduce_marks(const std::vector<SurfaceMark>& run) {
  bool shaddah = false;
  std::optional<SurfaceMark> first;
  for (SurfaceMark m : run) {
    if (m == SurfaceMark::Other) continue;
    if (m == SurfaceMark::Shaddah) {
      shaddah = true;
    } else if (!first) {
      first = m;
    }
  }
  if (!first) return Mark::None;
  switch (*first) {
    case SurfaceMark::Fatha:
    case SurfaceMark::Damma:
    case SurfaceMark::Kasra: {
      const auto h = static_cast<Diacritic>(static_cast<int>(*first));
      return shaddah ? marks::shaddah(h) : marks::of(h);
    }
    case SurfaceMark::Sukun:
      return Mark::Sukun;
    case SurfaceMark::TanweenFatha:
    case SurfaceMark::TanweenDamma:
    case SurfaceMark::TanweenKasra: {
      const auto h = static_cast<Diacritic>(static_cast<int>(*first) -
                                            static_cast<int>(SurfaceMark::TanweenFatha));
      return shaddah ? marks::shaddah_tanween(h) : marks::tanween(h);
    }
    default:
      return Mark::None;
  }
}

inline void push_separator(std::vector<DiacritizedChar>& out) {
  if (!out.empty() && !out.back().is_separator()) out.push_back(separator_char());
}

}  // namespace detail

// Drops glyphs (with any marks they carried), reduces each letter's mark run
// to one mark, collapses separators and trims them from both ends.
inline Verse clean(const SurfaceText& text) {
  Verse verse;
  for (const SurfaceUnit& unit : text) {
    switch (unit.kind) {
      case SurfaceUnit::Kind::Glyph:
        break;
      case SurfaceUnit::Kind::Separator:
        detail::push_separator(verse.chars);
        break;
      case SurfaceUnit::Kind::Letter:
        verse.chars.push_back({unit.letter, detail::reduce_marks(unit.marks)});
        break;
    }
  }
  if (!verse.chars.empty() && verse.chars.back().is_separator()) verse.chars.pop_back();
  return verse;
}

// Separator normalization only; every other clean rule already holds for a
// Verse value.
inline Verse clean(const Verse& verse) {
  Verse out = verse;
  out.chars.clear();
  for (const DiacritizedChar& c : verse.chars) {
    if (c.is_separator()) {
      detail::push_separator(out.chars);
    } else {
      out.chars.push_back({c.letter, c.mark});
    }
  }
  if (!out.chars.empty() && out.chars.back().is_separator()) out.chars.pop_back();
  return out;
}

// (L, shaddah+H) -> (L, sukun)(L, H)
inline Verse factor_shaddah(const Verse& verse) {
  Verse out = verse;
  out.chars.clear();
  out.chars.reserve(verse.chars.size() + 4);
  for (const DiacritizedChar& c : verse.chars) {
    if (!marks::has_shaddah(c.mark)) {
      out.chars.push_back(c);
      continue;
    }
    const Diacritic h = marks::vowel(c.mark);
    out.chars.push_back({c.letter, Mark::Sukun});
    out.chars.push_back({c.letter, marks::has_tanween(c.mark) ? marks::tanween(h) : marks::of(h)});
  }
  return out;
}

// (L, tanween-H) -> (L, H)(ن, sukun)
inline Verse factor_tanween(const Verse& verse) {
  static const ArabicLetter noon = ArabicLetter::of(cp::kNoon);
  Verse out = verse;
  out.chars.clear();
  out.chars.reserve(verse.chars.size() + 4);
  for (const DiacritizedChar& c : verse.chars) {
    if (!marks::has_tanween(c.mark)) {
      out.chars.push_back(c);
      continue;
    }
    const Diacritic h = marks::vowel(c.mark);
    out.chars.push_back({c.letter, marks::has_shaddah(c.mark) ? marks::shaddah(h) : marks::of(h)});
    out.chars.push_back({noon, Mark::Sukun});
  }
  return out;
}

inline Verse strip_diacritics(const Verse& verse) {
  Verse out = verse;
  for (DiacritizedChar& c : out.chars) c.mark = Mark::None;
  return out;
}

// parse -> clean -> factor_shaddah -> factor_tanween
inline Verse normalize(std::string_view utf8_text, ParsePolicy policy = ParsePolicy::SkipUnknown) {
  return factor_tanween(factor_shaddah(clean(parse(utf8_text, policy))));
}

// Emits NFC: one precomposed letter, then its marks in canonical combining
// order (tanween 27-29 and harakat 30-32 before shaddah 33).
inline std::string to_utf8(const Verse& verse) {
  std::u32string out;
  out.reserve(verse.chars.size() * 2);
  for (const DiacritizedChar& c : verse.chars) {
    out.push_back(c.letter.codepoint());
    if (c.mark == Mark::None) continue;
    if (auto d = c.diacritic()) {
      out.push_back(codepoint_of(*d));
      continue;
    }
    const Diacritic h = marks::vowel(c.mark);
    if (marks::has_tanween(c.mark)) {
      out.push_back(cp::kFathatan + static_cast<char32_t>(h));
    } else {
      out.push_back(codepoint_of(h));
    }
    if (marks::has_shaddah(c.mark)) out.push_back(cp::kShaddah);
  }
  return utf8::encode(out);
}

inline std::size_t count_marks(const Verse& verse) {
  return static_cast<std::size_t>(std::count_if(
      verse.chars.begin(), verse.chars.end(),
      [](const DiacritizedChar& c) { return c.mark != Mark::None; }));
}

// ---------------------------------------------------------------------------
// English

// Lowercase a-z, apostrophe and single spaces. Digits and punctuation are
// dropped; anything else is unknown (raised under Strict).
inline std::string normalize_english(std::string_view utf8_text,
                                     ParsePolicy policy = ParsePolicy::SkipUnknown) {
  const std::u32string text = utf8::decode(utf8_text);
  std::string out;
  out.reserve(text.size());
  for (std::size_t pos = 0; pos < text.size(); ++pos) {
    char32_t c = text[pos];
    if (detail::is_whitespace(c)) {
      if (!out.empty() && out.back() != ' ') out.push_back(' ');
      continue;
    }
    if (c == 0x2019 || c == 0x2018) c = U'\'';
    if (c >= U'A' && c <= U'Z') c = c - U'A' + U'a';
    if ((c >= U'a' && c <= U'z') || c == U'\'') {
      out.push_back(static_cast<char>(c));
      continue;
    }
    if (detail::is_known_glyph(c)) continue;
    if (policy == ParsePolicy::Strict) throw UnknownCodepoint(pos, c);
  }
  if (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

}  // namespace meterkit
