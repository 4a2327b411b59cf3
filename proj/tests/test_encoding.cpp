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

#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <sstream>
#include <vector>

#include "meterkit/encoding.hpp"

namespace mk = meterkit;
using mk::EncodingKind;
using mk::EncodingScheme;
using mk::Language;

namespace {

const EncodingScheme kArOne(Language::Arabic, EncodingKind::OneHot);
const EncodingScheme kArBin(Language::Arabic, EncodingKind::Binary);
const EncodingScheme kArTwo(Language::Arabic, EncodingKind::TwoHot);
const EncodingScheme kEnOne(Language::English, EncodingKind::OneHot);
const EncodingScheme kEnBin(Language::English, EncodingKind::Binary);

// Every Arabic (letter, state) pair plus the separator, built from the
// roster directly rather than from the alphabet's index arithmetic.
std::vector<mk::DiacritizedChar> all_arabic_symbols() {
  std::vector<mk::DiacritizedChar> out;
  for (char32_t cp : mk::kArabicLetterCodepoints)
    for (mk::Mark m : {mk::Mark::None, mk::Mark::Fatha, mk::Mark::Damma, mk::Mark::Kasra, mk::Mark::Sukun})
      out.push_back({mk::ArabicLetter::of(cp), m});
  out.push_back(mk::separator_char());
  return out;
}

std::vector<mk::EnglishChar> all_english_symbols() {
  std::vector<mk::EnglishChar> out{{'\''}, {' '}};
  for (char c = 'a'; c <= 'z'; ++c) out.push_back({c});
  return out;
}

}  // namespace

TEST(Widths, MatchCountingArithmetic) {
  // 36 letters x (4 diacritics + none) + separator; 26 letters + space + apostrophe.
  const std::size_t arabic = 36 * (4 + 1) + 1;
  const std::size_t english = 26 + 1 + 1;
  EXPECT_EQ(arabic, 181u);
  EXPECT_EQ(english, 28u);
  EXPECT_EQ(kArOne.width(), arabic);
  EXPECT_EQ(kArBin.width(), static_cast<std::size_t>(std::ceil(std::log2(double(arabic)))));
  EXPECT_EQ(kArBin.width(), 8u);
  EXPECT_EQ(kArTwo.width(), 37u + 4u);
  EXPECT_EQ(kEnOne.width(), english);
  EXPECT_EQ(kEnBin.width(), static_cast<std::size_t>(std::ceil(std::log2(double(english)))));
  EXPECT_EQ(kEnBin.width(), 5u);
  EXPECT_EQ(mk::Alphabet::arabic().letter_count(), 37u);
  EXPECT_EQ(mk::Alphabet::english().letter_count(), 28u);
}

TEST(Scheme, TwoHotEnglishIsUnsupported) {
  EXPECT_THROW(EncodingScheme(Language::English, EncodingKind::TwoHot), mk::SchemeUnsupported);
}

TEST(Scheme, IdRoundTrip) {
  for (const auto& s : {kArOne, kArBin, kArTwo, kEnOne, kEnBin}) EXPECT_EQ(EncodingScheme::from_id(s.id()), s);
  EXPECT_THROW(EncodingScheme::from_id(0x13), mk::Error);
}

TEST(Symbols, ArabicOrderingIsCodepointThenState) {
  const auto symbols = all_arabic_symbols();
  ASSERT_EQ(symbols.size(), 181u);
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    EXPECT_EQ(mk::Alphabet::index_of(symbols[i]), i);
    EXPECT_EQ(mk::Alphabet::arabic_symbol(i), symbols[i]);
  }
  for (std::size_t i = 1; i < mk::kArabicLetterCodepoints.size(); ++i)
    EXPECT_LT(mk::kArabicLetterCodepoints[i - 1], mk::kArabicLetterCodepoints[i]);
}

TEST(EncodeChar, OneHotHasSingleOne) {
  const mk::DiacritizedChar ba{mk::ArabicLetter::of(U'ب'), mk::Mark::Fatha};
  const auto v = mk::encode_char(ba, kArOne);
  EXPECT_EQ(v.size(), 181);
  EXPECT_EQ(v.sum(), 1.0);
  EXPECT_EQ((v.array() == 0.0).count(), 180);
}

TEST(EncodeChar, TwoHotBareLetterHasEmptyDiacriticBlock) {
  const auto v = mk::encode_char(mk::DiacritizedChar{mk::ArabicLetter::of(U'ب')}, kArTwo);
  EXPECT_EQ(v.size(), 41);
  EXPECT_EQ(v.head(37).sum(), 1.0);
  EXPECT_EQ(v.tail(4).sum(), 0.0);
}

TEST(EncodeChar, BinaryIsBigEndianIndex) {
  // (ب, Kasra): ب is roster entry 7 (U+0628), so index 7*5 + 3 = 38 = 00100110.
  const auto v = mk::encode_char(mk::DiacritizedChar{mk::ArabicLetter::of(U'ب'), mk::Mark::Kasra}, kArBin);
  const std::vector<double> expected{0, 0, 1, 0, 0, 1, 1, 0};
  ASSERT_EQ(v.size(), 8);
  for (int i = 0; i < 8; ++i) EXPECT_EQ(v[i], expected[static_cast<std::size_t>(i)]) << i;
}

TEST(EncodeChar, RejectsCompositesAndDiacritizedSeparator) {
  EXPECT_THROW(mk::encode_char(mk::DiacritizedChar{mk::ArabicLetter::of(U'د'), mk::Mark::ShaddahFatha}, kArOne),
               mk::UnknownSymbol);
  EXPECT_THROW(mk::encode_char(mk::DiacritizedChar{mk::ArabicLetter::separator(), mk::Mark::Fatha}, kArTwo),
               mk::UnknownSymbol);
  EXPECT_THROW(mk::encode_char(mk::EnglishChar{'1'}, kEnOne), mk::UnknownSymbol);
  EXPECT_THROW(mk::encode_char(mk::EnglishChar{'a'}, kArOne), mk::SchemeUnsupported);
}

TEST(Bijectivity, ExhaustiveArabic) {
  std::size_t failures = 0;
  for (const auto& scheme : {kArOne, kArBin, kArTwo}) {
    std::set<std::vector<double>> columns;
    for (const auto& c : all_arabic_symbols()) {
      const auto v = mk::encode_char(c, scheme);
      if (mk::decode_arabic_char(v, scheme) != c) ++failures;
      columns.insert(std::vector<double>(v.data(), v.data() + v.size()));
      const double sum = v.sum();
      if (scheme.kind() == EncodingKind::OneHot) {
        EXPECT_EQ(sum, 1.0);
      }
      if (scheme.kind() == EncodingKind::TwoHot) {
        EXPECT_TRUE(sum == 1.0 || sum == 2.0);
        EXPECT_EQ(v.head(37).sum(), 1.0);
      }
    }
    EXPECT_EQ(columns.size(), 181u) << scheme.name();
  }
  EXPECT_EQ(failures, 0u);
}

TEST(Bijectivity, ExhaustiveEnglish) {
  std::size_t failures = 0;
  for (const auto& scheme : {kEnOne, kEnBin}) {
    std::set<std::vector<double>> columns;
    for (const auto& c : all_english_symbols()) {
      const auto v = mk::encode_char(c, scheme);
      if (mk::decode_english_char(v, scheme) != c) ++failures;
      columns.insert(std::vector<double>(v.data(), v.data() + v.size()));
    }
    EXPECT_EQ(columns.size(), 28u) << scheme.name();
  }
  EXPECT_EQ(failures, 0u);
}

TEST(Decode, InvalidCodewords) {
  EXPECT_THROW(mk::decode_arabic_char(Eigen::VectorXd::Zero(181), kArOne), mk::InvalidCodeword);
  Eigen::VectorXd two = Eigen::VectorXd::Zero(181);
  two[3] = two[9] = 1.0;
  EXPECT_THROW(mk::decode_arabic_char(two, kArOne), mk::InvalidCodeword);
  // 200 = 0b11001000, beyond the 181 symbols.
  Eigen::VectorXd b200(8);
  b200 << 1, 1, 0, 0, 1, 0, 0, 0;
  EXPECT_THROW(mk::decode_arabic_char(b200, kArBin), mk::InvalidCodeword);
  Eigen::VectorXd half = Eigen::VectorXd::Zero(8);
  half[7] = 0.5;
  EXPECT_THROW(mk::decode_arabic_char(half, kArBin), mk::InvalidCodeword);
  Eigen::VectorXd twohot = Eigen::VectorXd::Zero(41);
  twohot[2] = 1.0;
  twohot[37] = twohot[38] = 1.0;
  EXPECT_THROW(mk::decode_arabic_char(twohot, kArTwo), mk::InvalidCodeword);
  Eigen::VectorXd sep = Eigen::VectorXd::Zero(41);
  sep[36] = sep[37] = 1.0;
  EXPECT_THROW(mk::decode_arabic_char(sep, kArTwo), mk::InvalidCodeword);
  EXPECT_THROW(mk::decode_arabic_char(Eigen::VectorXd::Zero(7), kArBin), mk::InvalidCodeword);
  Eigen::VectorXd e31 = Eigen::VectorXd::Ones(5);
  EXPECT_THROW(mk::decode_english_char(e31, kEnBin), mk::InvalidCodeword);
}

TEST(EncodeVerse, MarhabaShapes) {
  const mk::Verse v = mk::normalize("مَرْحَبَا");
  ASSERT_EQ(v.size(), 5u);
  const auto one = mk::encode_verse(v, kArOne);
  const auto bin = mk::encode_verse(v, kArBin);
  EXPECT_EQ(one.values.rows(), 181);
  EXPECT_EQ(one.values.cols(), 5);
  EXPECT_EQ(bin.values.rows(), 8);
  EXPECT_EQ(bin.values.cols(), 5);
  for (Eigen::Index j = 0; j < 5; ++j)
    EXPECT_EQ(one.values.col(j), mk::encode_char(v.chars[static_cast<std::size_t>(j)], kArOne));
  EXPECT_EQ(mk::decode_verse(one).chars, v.chars);
  EXPECT_EQ(mk::decode_verse(bin).chars, v.chars);
}

TEST(EncodeVerse, EmptyVerse) {
  const auto m = mk::encode_verse(mk::Verse{}, kArTwo);
  EXPECT_EQ(m.values.rows(), 41);
  EXPECT_EQ(m.values.cols(), 0);
  EXPECT_EQ(mk::encode_verse(std::string_view(""), kEnBin).values.cols(), 0);
}

TEST(EncodeVerse, UnknownSymbolCarriesPosition) {
  mk::Verse v = mk::clean(mk::parse("دَ دَّ", mk::ParsePolicy::Strict));
  try {
    mk::encode_verse(v, kArOne);
    FAIL() << "expected UnknownSymbol";
  } catch (const mk::UnknownSymbol& e) {
    EXPECT_EQ(e.position(), 2u);
  }
  try {
    mk::encode_verse(std::string_view("ab1"), kEnOne);
    FAIL() << "expected UnknownSymbol";
  } catch (const mk::UnknownSymbol& e) {
    EXPECT_EQ(e.position(), 2u);
  }
}

TEST(EncodeVerse, English) {
  const auto m = mk::encode_verse(std::string_view("it's a"), kEnOne);
  EXPECT_EQ(m.values.rows(), 28);
  EXPECT_EQ(m.values.cols(), 6);
  EXPECT_EQ(m.values(0, 2), 1.0);   // apostrophe
  EXPECT_EQ(m.values(27, 4), 1.0);  // space
  EXPECT_EQ(m.values(1, 5), 1.0);   // a
}

TEST(Serialization, RoundTripAndCleanEof) {
  std::stringstream ss;
  const auto a = mk::encode_verse(mk::normalize("مَرْحَبَا"), kArTwo);
  const auto b = mk::encode_verse(std::string_view("hello there"), kEnBin);
  mk::write_encoded(ss, a);
  mk::write_encoded(ss, b);
  const std::string bytes = ss.str();
  EXPECT_EQ(bytes.substr(0, 4), "MKEM");
  EXPECT_EQ(bytes.size(), 2 * 16 + 4 * (41 * 5 + 5 * 11));
  auto ra = mk::read_encoded(ss);
  auto rb = mk::read_encoded(ss);
  ASSERT_TRUE(ra && rb);
  EXPECT_EQ(*ra, a);
  EXPECT_EQ(*rb, b);
  EXPECT_FALSE(mk::read_encoded(ss).has_value());
}

TEST(Serialization, TruncatedInput) {
  std::stringstream ss;
  mk::write_encoded(ss, mk::encode_verse(mk::normalize("مَرْحَبَا"), kArOne));
  std::stringstream cut(ss.str().substr(0, 30));
  EXPECT_THROW(mk::read_encoded(cut), mk::IoFailure);
  std::stringstream bad("XXXX0000");
  EXPECT_THROW(mk::read_encoded(bad), mk::IoFailure);
}
