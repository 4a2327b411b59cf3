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

// Character encodings: one-hot, binary and two-hot for Arabic; one-hot and
// binary for English.
//
// Symbol order. Arabic symbol index = 5 * letter + state, where letter is
// the roster index (codepoint order, see text_norm.hpp) and state is
// none=0 < fatha=1 < damma=2 < kasra=3 < sukun=4; the word separator is the
// last symbol, 180. English: apostrophe=0, a..z=1..26, space=27.
//
// Binary codes write the symbol index big-endian: row 0 is the most
// significant bit.

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "meterkit/error.hpp"
#include "meterkit/text_norm.hpp"

namespace meterkit {

enum class Language : std::uint8_t { Arabic, English };
enum class EncodingKind : std::uint8_t { OneHot, Binary, TwoHot };

inline std::string to_string(Language l) { return l == Language::Arabic ? "arabic" : "english"; }

inline std::string to_string(EncodingKind k) {
  switch (k) {
    case EncodingKind::OneHot: return "onehot";
    case EncodingKind::Binary: return "binary";
    case EncodingKind::TwoHot: return "twohot";
  }
  return "?";
}

inline Language parse_language(std::string_view s) {
  if (s == "arabic" || s == "ar") return Language::Arabic;
  if (s == "english" || s == "en") return Language::English;
  throw ConfigError("unknown language '" + std::string(s) + "'");
}

inline EncodingKind parse_encoding_kind(std::string_view s) {
  if (s == "onehot" || s == "one-hot") return EncodingKind::OneHot;
  if (s == "binary") return EncodingKind::Binary;
  if (s == "twohot" || s == "two-hot") return EncodingKind::TwoHot;
  throw ConfigError("unknown encoding '" + std::string(s) + "'");
}

inline constexpr std::size_t kArabicSymbolCount = ArabicLetter::kCount * (4 + 1) + 1;  // 181
inline constexpr std::size_t kEnglishSymbolCount = 26 + 2;                              // 28
inline constexpr std::size_t kTwoHotLetterBlock = ArabicLetter::kCount + 1;             // 37
inline constexpr std::size_t kTwoHotWidth = kTwoHotLetterBlock + 4;                     // 41

constexpr std::size_t bits_for(std::size_t count) {
  std::size_t bits = 0;
  while ((std::size_t{1} << bits) < count) ++bits;
  return bits;
}

// A character of normalized English text: a-z, apostrophe or space.
struct EnglishChar {
  char value = ' ';
  friend constexpr bool operator==(EnglishChar, EnglishChar) = default;
};

class Alphabet {
 public:
  static Alphabet arabic() { return Alphabet(Language::Arabic); }
  static Alphabet english() { return Alphabet(Language::English); }
  static Alphabet of(Language l) { return Alphabet(l); }

  Language language() const { return language_; }

  std::size_t symbol_count() const {
    return language_ == Language::Arabic ? kArabicSymbolCount : kEnglishSymbolCount;
  }

  // Letters plus the separator: 37 Arabic, 28 English.
  std::size_t letter_count() const {
    return language_ == Language::Arabic ? kTwoHotLetterBlock : kEnglishSymbolCount;
  }

  static std::size_t index_of(const DiacritizedChar& c) {
    if (!marks::is_canonical(c.mark))
      throw UnknownSymbol("composite mark must be factored before encoding");
    if (c.is_separator()) {
      if (c.mark != Mark::None) throw UnknownSymbol("separator cannot carry a diacritic");
      return kArabicSymbolCount - 1;
    }
    return c.letter.index() * 5 + static_cast<std::size_t>(c.mark);
  }

  static std::size_t index_of(EnglishChar c) {
    if (c.value == '\'') return 0;
    if (c.value >= 'a' && c.value <= 'z') return static_cast<std::size_t>(c.value - 'a') + 1;
    if (c.value == ' ') return kEnglishSymbolCount - 1;
    throw UnknownSymbol(std::string("not an English symbol: '") + c.value + "'");
  }

  static DiacritizedChar arabic_symbol(std::size_t index) {
    if (index >= kArabicSymbolCount) throw UnknownSymbol("Arabic symbol index out of range");
    if (index == kArabicSymbolCount - 1) return separator_char();
    return {ArabicLetter::at(index / 5), static_cast<Mark>(index % 5)};
  }

  static EnglishChar english_symbol(std::size_t index) {
    if (index >= kEnglishSymbolCount) throw UnknownSymbol("English symbol index out of range");
    if (index == 0) return {'\''};
    if (index == kEnglishSymbolCount - 1) return {' '};
    return {static_cast<char>('a' + index - 1)};
  }

 private:
  explicit Alphabet(Language l) : language_(l) {}
  Language language_;
};

class EncodingScheme {
 public:
  EncodingScheme(Language language, EncodingKind kind) : language_(language), kind_(kind) {
    if (language == Language::English && kind == EncodingKind::TwoHot)
      throw SchemeUnsupported("two-hot encoding is defined for Arabic only");
  }

  Language language() const { return language_; }
  EncodingKind kind() const { return kind_; }
  Alphabet alphabet() const { return Alphabet::of(language_); }

  std::size_t width() const {
    const std::size_t count = alphabet().symbol_count();
    switch (kind_) {
      case EncodingKind::OneHot: return count;
      case EncodingKind::Binary: return bits_for(count);
      case EncodingKind::TwoHot: return kTwoHotWidth;
    }
    return 0;
  }

  // File id: low byte = kind, bit 4 = English.
  std::uint32_t id() const {
    return static_cast<std::uint32_t>(kind_) | (language_ == Language::English ? 0x10u : 0u);
  }

  static EncodingScheme from_id(std::uint32_t id) {
    if ((id & ~0x13u) != 0 || (id & 0x3u) > 2) throw InvalidCodeword("bad scheme id");
    return EncodingScheme((id & 0x10u) ? Language::English : Language::Arabic,
                          static_cast<EncodingKind>(id & 0x3u));
  }

  std::string name() const { return to_string(language_) + "-" + to_string(kind_); }

  friend bool operator==(const EncodingScheme&, const EncodingScheme&) = default;

 private:
  Language language_;
  EncodingKind kind_;
};

namespace detail {

inline void require_language(const EncodingScheme& scheme, Language l) {
  if (scheme.language() != l)
    throw SchemeUnsupported("scheme " + scheme.name() + " does not apply to " + to_string(l) +
                            " symbols");
}

inline void write_binary(Eigen::Ref<Eigen::VectorXd> out, std::size_t index) {
  const auto n = out.size();
  for (Eigen::Index bit = 0; bit < n; ++bit)
    out[bit] = static_cast<double>((index >> (n - 1 - bit)) & 1u);
}

inline void write_symbol(Eigen::Ref<Eigen::VectorXd> out, std::size_t index,
                         const EncodingScheme& scheme) {
  out.setZero();
  if (scheme.kind() == EncodingKind::OneHot) {
    out[static_cast<Eigen::Index>(index)] = 1.0;
  } else {
    write_binary(out, index);
  }
}

inline void write_twohot(Eigen::Ref<Eigen::VectorXd> out, const DiacritizedChar& c) {
  out.setZero();
  Alphabet::index_of(c);  // validates
  out[static_cast<Eigen::Index>(c.letter.index())] = 1.0;
  if (auto d = c.diacritic())
    out[static_cast<Eigen::Index>(kTwoHotLetterBlock + static_cast<std::size_t>(*d))] = 1.0;
}

// Position of the single 1 in v[begin, end); nullopt when the block is all
// zero; throws on a non-binary entry or a second 1.
inline std::optional<std::size_t> hot_index(const Eigen::Ref<const Eigen::VectorXd>& v,
                                            std::size_t begin, std::size_t end) {
  std::optional<std::size_t> hot;
  for (std::size_t i = begin; i < end; ++i) {
    const double x = v[static_cast<Eigen::Index>(i)];
    if (x == 0.0) continue;
    if (x != 1.0) throw InvalidCodeword("entry is neither 0 nor 1");
    if (hot) throw InvalidCodeword("more than one hot entry in block");
    hot = i - begin;
  }
  return hot;
}

inline std::size_t decode_index(const Eigen::Ref<const Eigen::VectorXd>& v,
                                const EncodingScheme& scheme) {
  const std::size_t n = scheme.width();
  if (static_cast<std::size_t>(v.size()) != n)
    throw InvalidCodeword("codeword length " + std::to_string(v.size()) + ", expected " +
                          std::to_string(n));
  const std::size_t count = scheme.alphabet().symbol_count();
  if (scheme.kind() == EncodingKind::OneHot) {
    auto hot = hot_index(v, 0, n);
    if (!hot) throw InvalidCodeword("one-hot codeword is all zero");
    return *hot;
  }
  std::size_t index = 0;
  for (std::size_t bit = 0; bit < n; ++bit) {
    const double x = v[static_cast<Eigen::Index>(bit)];
    if (x != 0.0 && x != 1.0) throw InvalidCodeword("entry is neither 0 nor 1");
    index = (index << 1) | (x == 1.0 ? 1u : 0u);
  }
  if (index >= count)
    throw InvalidCodeword("binary index " + std::to_string(index) + " >= symbol count " +
                          std::to_string(count));
  return index;
}

}  // namespace detail

inline Eigen::VectorXd encode_char(const DiacritizedChar& c, const EncodingScheme& scheme) {
  detail::require_language(scheme, Language::Arabic);
  Eigen::VectorXd v(static_cast<Eigen::Index>(scheme.width()));
  if (scheme.kind() == EncodingKind::TwoHot) {
    detail::write_twohot(v, c);
  } else {
    detail::write_symbol(v, Alphabet::index_of(c), scheme);
  }
  return v;
}

inline Eigen::VectorXd encode_char(EnglishChar c, const EncodingScheme& scheme) {
  detail::require_language(scheme, Language::English);
  Eigen::VectorXd v(static_cast<Eigen::Index>(scheme.width()));
  detail::write_symbol(v, Alphabet::index_of(c), scheme);
  return v;
}

inline DiacritizedChar decode_arabic_char(const Eigen::Ref<const Eigen::VectorXd>& v,
                                          const EncodingScheme& scheme) {
  detail::require_language(scheme, Language::Arabic);
  if (scheme.kind() != EncodingKind::TwoHot)
    return Alphabet::arabic_symbol(detail::decode_index(v, scheme));
  if (static_cast<std::size_t>(v.size()) != kTwoHotWidth)
    throw InvalidCodeword("two-hot codeword must have length 41");
  const auto letter = detail::hot_index(v, 0, kTwoHotLetterBlock);
  if (!letter) throw InvalidCodeword("two-hot letter block is all zero");
  const auto diacritic = detail::hot_index(v, kTwoHotLetterBlock, kTwoHotWidth);
  const ArabicLetter l = ArabicLetter::at(*letter);
  if (l.is_separator() && diacritic) throw InvalidCodeword("separator cannot carry a diacritic");
  return {l, diacritic ? marks::of(static_cast<Diacritic>(*diacritic)) : Mark::None};
}

inline EnglishChar decode_english_char(const Eigen::Ref<const Eigen::VectorXd>& v,
                                       const EncodingScheme& scheme) {
  detail::require_language(scheme, Language::English);
  return Alphabet::english_symbol(detail::decode_index(v, scheme));
}

// n x p: column j encodes character j.
struct EncodedMatrix {
  EncodingScheme scheme;
  Eigen::MatrixXd values;

  std::size_t width() const { return static_cast<std::size_t>(values.rows()); }
  std::size_t length() const { return static_cast<std::size_t>(values.cols()); }

  friend bool operator==(const EncodedMatrix& a, const EncodedMatrix& b) {
    return a.scheme == b.scheme && a.values.rows() == b.values.rows() &&
           a.values.cols() == b.values.cols() && a.values == b.values;
  }
};

inline EncodedMatrix encode_verse(const Verse& verse, const EncodingScheme& scheme) {
  detail::require_language(scheme, Language::Arabic);
  const auto n = static_cast<Eigen::Index>(scheme.width());
  EncodedMatrix m{scheme, Eigen::MatrixXd::Zero(n, static_cast<Eigen::Index>(verse.size()))};
  for (std::size_t j = 0; j < verse.size(); ++j) {
    try {
      m.values.col(static_cast<Eigen::Index>(j)) = encode_char(verse.chars[j], scheme);
    } catch (const UnknownSymbol& e) {
      throw UnknownSymbol(std::string(e.what()) + " (character " + std::to_string(j) + ")", j);
    }
  }
  return m;
}

inline EncodedMatrix encode_verse(std::string_view english, const EncodingScheme& scheme) {
  detail::require_language(scheme, Language::English);
  const auto n = static_cast<Eigen::Index>(scheme.width());
  EncodedMatrix m{scheme, Eigen::MatrixXd::Zero(n, static_cast<Eigen::Index>(english.size()))};
  for (std::size_t j = 0; j < english.size(); ++j) {
    try {
      m.values.col(static_cast<Eigen::Index>(j)) = encode_char(EnglishChar{english[j]}, scheme);
    } catch (const UnknownSymbol& e) {
      throw UnknownSymbol(std::string(e.what()) + " (character " + std::to_string(j) + ")", j);
    }
  }
  return m;
}

inline Verse decode_verse(const EncodedMatrix& m) {
  Verse v;
  v.chars.reserve(m.length());
  for (Eigen::Index j = 0; j < m.values.cols(); ++j)
    v.chars.push_back(decode_arabic_char(m.values.col(j), m.scheme));
  return v;
}

// ---------------------------------------------------------------------------
// Dense binary file: "MKEM", u32 scheme id, u32 n, u32 p, then n*p float32
// row-major. All integers and floats little-endian.

namespace detail {

inline void put_u32(std::ostream& os, std::uint32_t x) {
  const char b[4] = {static_cast<char>(x & 0xFF), static_cast<char>((x >> 8) & 0xFF),
                     static_cast<char>((x >> 16) & 0xFF), static_cast<char>((x >> 24) & 0xFF)};
  os.write(b, 4);
}

inline std::optional<std::uint32_t> get_u32(std::istream& is) {
  unsigned char b[4];
  if (!is.read(reinterpret_cast<char*>(b), 4)) return std::nullopt;
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

}  // namespace detail

inline constexpr char kEncodedMagic[4] = {'M', 'K', 'E', 'M'};

inline void write_encoded(std::ostream& os, const EncodedMatrix& m) {
  os.write(kEncodedMagic, 4);
  detail::put_u32(os, m.scheme.id());
  detail::put_u32(os, static_cast<std::uint32_t>(m.values.rows()));
  detail::put_u32(os, static_cast<std::uint32_t>(m.values.cols()));
  for (Eigen::Index r = 0; r < m.values.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.values.cols(); ++c) {
      const float f = static_cast<float>(m.values(r, c));
      std::uint32_t bits;
      static_assert(sizeof(bits) == sizeof(f));
      std::memcpy(&bits, &f, sizeof(f));
      detail::put_u32(os, bits);
    }
  }
}

// nullopt at clean end of stream; throws IoFailure on a truncated or
// malformed record.
inline std::optional<EncodedMatrix> read_encoded(std::istream& is) {
  char magic[4];
  if (!is.read(magic, 4)) {
    if (is.gcount() == 0) return std::nullopt;
    throw IoFailure("truncated encoded-matrix header");
  }
  if (std::string_view(magic, 4) != std::string_view(kEncodedMagic, 4))
    throw IoFailure("bad encoded-matrix magic");
  auto id = detail::get_u32(is);
  auto n = detail::get_u32(is);
  auto p = detail::get_u32(is);
  if (!id || !n || !p) throw IoFailure("truncated encoded-matrix header");
  EncodedMatrix m{EncodingScheme::from_id(*id), Eigen::MatrixXd(*n, *p)};
  if (m.scheme.width() != *n) throw IoFailure("encoded-matrix width does not match its scheme");
  for (Eigen::Index r = 0; r < m.values.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.values.cols(); ++c) {
      auto bits = detail::get_u32(is);
      if (!bits) throw IoFailure("truncated encoded-matrix body");
      float f;
      std::memcpy(&f, &*bits, sizeof(f));
      m.values(r, c) = f;
    }
  }
  return m;
}

}  // namespace meterkit
