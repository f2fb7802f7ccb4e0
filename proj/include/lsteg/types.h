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

#ifndef LSTEG_TYPES_H_
#define LSTEG_TYPES_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lsteg {

using Bytes = std::vector<std::uint8_t>;

// One bit per element, each element 0 or 1. Bit 0 of a byte string is the
// most significant bit of byte 0.
using BitString = std::vector<std::uint8_t>;

using Key256 = std::array<std::uint8_t, 32>;

BitString BytesToBits(std::span<const std::uint8_t> bytes);

// bits.size() must be a multiple of 8.
Bytes BitsToBytes(std::span<const std::uint8_t> bits);

std::string HexEncode(std::span<const std::uint8_t> bytes);

// Throws ParseError on odd length or non-hex characters.
Bytes HexDecode(std::string_view hex);

// Decodes exactly 64 hex characters into a 256-bit key; ParseError otherwise.
Key256 KeyFromHex(std::string_view hex);

inline Bytes ToBytes(std::string_view s) { return Bytes(s.begin(), s.end()); }

}  // namespace lsteg

#endif  // LSTEG_TYPES_H_
