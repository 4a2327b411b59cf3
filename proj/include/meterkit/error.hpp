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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace meterkit {

// Base of every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// text_norm

class UnknownCodepoint : public Error {
 public:
  UnknownCodepoint(std::size_t position, char32_t codepoint)
      : Error("unknown codepoint U+" + hex(codepoint) + " at position " +
              std::to_string(position)),
        position_(position),
        codepoint_(codepoint) {}
  std::size_t position() const { return position_; }
  char32_t codepoint() const { return codepoint_; }

  static std::string hex(char32_t cp) {
    static const char* digits = "0123456789ABCDEF";
    std::string out;
    for (int shift = 12; shift >= 0; shift -= 4)
      out.push_back(digits[(cp >> shift) & 0xF]);
    if (cp > 0xFFFF) out.insert(0, 1, digits[(cp >> 16) & 0xF]);
    return out;
  }

 private:
  std::size_t position_;
  char32_t codepoint_;
};

class OrphanDiacritic : public Error {
 public:
  explicit OrphanDiacritic(std::size_t position)
      : Error("diacritic at position " + std::to_string(position) +
              " is not attached to a letter"),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class InvalidUtf8 : public Error {
 public:
  explicit InvalidUtf8(std::size_t offset)
      : Error("invalid UTF-8 at byte " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// encoding

class UnknownSymbol : public Error {
 public:
  explicit UnknownSymbol(const std::string& what, std::size_t position = 0)
      : Error(what), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class SchemeUnsupported : public Error {
 public:
  using Error::Error;
};

class InvalidCodeword : public Error {
 public:
  using Error::Error;
};

// scansion

class UnknownFoot : public Error {
 public:
  explicit UnknownFoot(const std::string& name) : Error("unknown foot: " + name) {}
};

class UnknownMeter : public Error {
 public:
  explicit UnknownMeter(const std::string& name) : Error("unknown meter: " + name) {}
};

class MissingDiacritic : public Error {
 public:
  explicit MissingDiacritic(std::size_t position)
      : Error("letter at position " + std::to_string(position) +
              " has no diacritic and is not a bare mad letter"),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class InvalidPattern : public Error {
 public:
  using Error::Error;
};

// rnn

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class EmptySequence : public Error {
 public:
  EmptySequence() : Error("sequence has no time steps") {}
};

class EmptyClass : public Error {
 public:
  explicit EmptyClass(std::size_t cls)
      : Error("class " + std::to_string(cls) + " has zero examples"), cls_(cls) {}
  std::size_t class_index() const { return cls_; }

 private:
  std::size_t cls_;
};

class NoClasses : public Error {
 public:
  NoClasses() : Error("no classes given") {}
};

class LabelOutOfRange : public Error {
 public:
  LabelOutOfRange(std::size_t label, std::size_t classes)
      : Error("label " + std::to_string(label) + " out of range for " +
              std::to_string(classes) + " classes") {}
};

class StaleCache : public Error {
 public:
  StaleCache() : Error("forward cache does not belong to the current parameters") {}
};

class EmptySet : public Error {
 public:
  EmptySet() : Error("evaluation set is empty") {}
};

class IncompatibleCheckpoint : public Error {
 public:
  using Error::Error;
};

// dataset

class IoFailure : public Error {
 public:
  using Error::Error;
};

class MalformedRow : public Error {
 public:
  MalformedRow(std::size_t line, const std::string& why)
      : Error("line " + std::to_string(line) + ": " + why), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class UnknownMeterLabel : public Error {
 public:
  UnknownMeterLabel(std::size_t line, const std::string& label)
      : Error("line " + std::to_string(line) + ": unknown meter label '" + label + "'"),
        line_(line),
        label_(label) {}
  std::size_t line() const { return line_; }
  const std::string& label() const { return label_; }

 private:
  std::size_t line_;
  std::string label_;
};

class KTooLarge : public Error {
 public:
  using Error::Error;
};

class NotEnoughRecords : public Error {
 public:
  using Error::Error;
};

class FractionError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace meterkit
