// Copyright 2026 The LatentSteg Authors
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
//
///////////////////////////////////////////////////////////////////////////////

#include "lsteg/types.h"

#include <algorithm>
#include <stdexcept>

#include "lsteg/errors.h"

namespace lsteg {

BitString BytesToBits(std::span<const std::uint8_t> bytes) {
  BitString bits;
  bits.reserve(bytes.size() * 8);
  for (std::uint8_t b : bytes) {
    for (int j = 7; j >= 0; --j) bits.push_back((b >> j) & 1);
  }
  return bits;
}

Bytes BitsToBytes(std::span<const std::uint8_t> bits) {
  if (bits.size() % 8 != 0) {
    throw std::invalid_argument("bit string length is not a multiple of 8");
  }
  Bytes bytes(bits.size() / 8, 0);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] & 1) bytes[i / 8] |= static_cast<std::uint8_t>(0x80 >> (i % 8));
  }
  return bytes;
}

std::string HexEncode(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

namespace {

int HexValue(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

Bytes HexDecode(std::string_view hex) {
  if (hex.size() % 2 != 0) throw ParseError("hex string has odd length");
  Bytes out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    int hi = HexValue(hex[2 * i]);
    int lo = HexValue(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) throw ParseError("invalid hex character");
    out[i] = static_cast<std::uint8_t>(hi << 4 | lo);
  }
  return out;
}

Key256 KeyFromHex(std::string_view hex) {
  if (hex.size() != 64) {
    throw ParseError("key must be exactly 64 hex characters");
  }
  Bytes raw = HexDecode(hex);
  Key256 key{};
  std::copy(raw.begin(), raw.end(), key.begin());
  return key;
}

}  // namespace lsteg
