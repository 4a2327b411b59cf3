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

// Binary checkpoint format, all integers little-endian:
//
//   "MKCKPT01"            8 bytes
//   version               u32 (1)
//   cell, direction       u32, u32
//   layers, input_size    u32, u32
//   hidden_size, classes  u32, u32
//   dropout               f64
//   metadata              u32 length + bytes (free-form, usually JSON)
//   tensor count          u32
//   per tensor            u32 name length + name, u32 rows, u32 cols,
//                         rows*cols f64 in row-major order

#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "meterkit/error.hpp"
#include "meterkit/rnn/stack.hpp"

namespace meterkit::rnn {

inline constexpr std::array<char, 8> kCheckpointMagic{'M', 'K', 'C', 'K', 'P', 'T', '0', '1'};
inline constexpr std::uint32_t kCheckpointVersion = 1;

struct Checkpoint {
  RecurrentStack stack;
  std::string metadata;
};

namespace detail {

inline void put_u32(std::ostream& os, std::uint32_t v) {
  const unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                              static_cast<unsigned char>(v >> 16), static_cast<unsigned char>(v >> 24)};
  os.write(reinterpret_cast<const char*>(b), 4);
}

inline void put_u64(std::ostream& os, std::uint64_t v) {
  put_u32(os, static_cast<std::uint32_t>(v));
  put_u32(os, static_cast<std::uint32_t>(v >> 32));
}

inline void put_f64(std::ostream& os, double d) { put_u64(os, std::bit_cast<std::uint64_t>(d)); }

inline std::uint32_t checked_u32(std::size_t v, const char* what) {
  if (v > 0xFFFFFFFFu) throw IncompatibleCheckpoint(std::string(what) + " does not fit in 32 bits");
  return static_cast<std::uint32_t>(v);
}

class Reader {
 public:
  explicit Reader(std::istream& is) : is_(is) {}

  void bytes(char* out, std::size_t n) {
    is_.read(out, static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(is_.gcount()) != n) throw IncompatibleCheckpoint("checkpoint is truncated");
  }

  std::uint32_t u32() {
    unsigned char b[4];
    bytes(reinterpret_cast<char*>(b), 4);
    return static_cast<std::uint32_t>(b[0]) | static_cast<std::uint32_t>(b[1]) << 8 |
           static_cast<std::uint32_t>(b[2]) << 16 | static_cast<std::uint32_t>(b[3]) << 24;
  }

  double f64() {
    const std::uint64_t lo = u32();
    const std::uint64_t hi = u32();
    return std::bit_cast<double>(lo | hi << 32);
  }

  std::string string(std::size_t limit) {
    const std::uint32_t n = u32();
    if (n > limit) throw IncompatibleCheckpoint("checkpoint string length is implausible");
    std::string s(n, '\0');
    if (n > 0) bytes(s.data(), n);
    return s;
  }

 private:
  std::istream& is_;
};

}  // namespace detail

inline void save_checkpoint(std::ostream& os, const RecurrentStack& stack, const std::string& metadata = {}) {
  const StackConfig& c = stack.config;
  os.write(kCheckpointMagic.data(), kCheckpointMagic.size());
  detail::put_u32(os, kCheckpointVersion);
  detail::put_u32(os, static_cast<std::uint32_t>(c.cell));
  detail::put_u32(os, static_cast<std::uint32_t>(c.direction));
  detail::put_u32(os, detail::checked_u32(c.layers, "layers"));
  detail::put_u32(os, detail::checked_u32(c.input_size, "input size"));
  detail::put_u32(os, detail::checked_u32(c.hidden_size, "hidden size"));
  detail::put_u32(os, detail::checked_u32(c.classes, "classes"));
  detail::put_f64(os, c.dropout);
  detail::put_u32(os, detail::checked_u32(metadata.size(), "metadata"));
  os.write(metadata.data(), static_cast<std::streamsize>(metadata.size()));
  const auto views = tensors(stack.params);
  detail::put_u32(os, detail::checked_u32(views.size(), "tensor count"));
  for (const ConstTensorView& t : views) {
    detail::put_u32(os, detail::checked_u32(t.name.size(), "tensor name"));
    os.write(t.name.data(), static_cast<std::streamsize>(t.name.size()));
    detail::put_u32(os, static_cast<std::uint32_t>(t.rows));
    detail::put_u32(os, static_cast<std::uint32_t>(t.cols));
    for (Index r = 0; r < t.rows; ++r)
      for (Index k = 0; k < t.cols; ++k) detail::put_f64(os, t.data[k * t.rows + r]);
  }
  if (!os) throw IoFailure("failed to write checkpoint");
}

inline void save_checkpoint(const std::string& path, const RecurrentStack& stack, const std::string& metadata = {}) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoFailure("cannot open " + path + " for writing");
  save_checkpoint(os, stack, metadata);
}

inline Checkpoint load_checkpoint(std::istream& is) {
  detail::Reader in(is);
  std::array<char, 8> magic{};
  try {
    in.bytes(magic.data(), magic.size());
  } catch (const IncompatibleCheckpoint&) {
    throw IncompatibleCheckpoint("not a meterkit checkpoint");
  }
  if (magic != kCheckpointMagic) throw IncompatibleCheckpoint("not a meterkit checkpoint");
  const std::uint32_t version = in.u32();
  if (version != kCheckpointVersion)
    throw IncompatibleCheckpoint("unsupported checkpoint version " + std::to_string(version));
  StackConfig c;
  const std::uint32_t cell = in.u32();
  const std::uint32_t dir = in.u32();
  if (cell > 1 || dir > 1) throw IncompatibleCheckpoint("unknown cell kind or direction");
  c.cell = static_cast<CellKind>(cell);
  c.direction = static_cast<Direction>(dir);
  c.layers = in.u32();
  c.input_size = in.u32();
  c.hidden_size = in.u32();
  c.classes = in.u32();
  c.dropout = in.f64();
  try {
    c.validate();
  } catch (const Error& e) {
    throw IncompatibleCheckpoint(std::string("invalid stack configuration: ") + e.what());
  }
  Checkpoint ck{RecurrentStack{c, Parameters::zeros(c)}, in.string(1u << 26)};
  auto views = tensors(ck.stack.params);
  const std::uint32_t count = in.u32();
  if (count != views.size()) throw IncompatibleCheckpoint("tensor count does not match configuration");
  for (TensorView& t : views) {
    const std::string name = in.string(256);
    const std::uint32_t rows = in.u32();
    const std::uint32_t cols = in.u32();
    if (name != t.name || rows != static_cast<std::uint32_t>(t.rows) || cols != static_cast<std::uint32_t>(t.cols))
      throw IncompatibleCheckpoint("tensor " + name + " does not match expected " + t.name + " shape");
    for (Index r = 0; r < t.rows; ++r)
      for (Index k = 0; k < t.cols; ++k) t.data[k * t.rows + r] = in.f64();
  }
  ck.stack.touch();
  return ck;
}

inline Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoFailure("cannot open " + path);
  return load_checkpoint(is);
}

}  // namespace meterkit::rnn
