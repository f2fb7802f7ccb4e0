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

#ifndef LSTEG_CRYPTO_H_
#define LSTEG_CRYPTO_H_

#include <array>
#include <cstdint>
#include <span>

#include "lsteg/types.h"

// Thin RAII wrappers over the OpenSSL primitives the record layer and the
// DRBG are built on. Nothing in here knows about steganography.
namespace lsteg::crypto {

inline constexpr std::size_t kBlockSize = 16;
inline constexpr std::size_t kHmacSha512Size = 64;

using CounterBlock = std::array<std::uint8_t, kBlockSize>;

// XORs `data` in place with the AES-256-CTR keystream starting at `counter`.
// The whole 128-bit block is incremented as a big-endian integer.
void Aes256CtrXor(const Key256& key, const CounterBlock& counter,
                  std::span<std::uint8_t> data);

// Streaming AES-256-CTR keystream generator.
class Aes256CtrStream {
 public:
  Aes256CtrStream(const Key256& key, const CounterBlock& counter);
  ~Aes256CtrStream();
  Aes256CtrStream(const Aes256CtrStream&) = delete;
  Aes256CtrStream& operator=(const Aes256CtrStream&) = delete;
  Aes256CtrStream(Aes256CtrStream&& other) noexcept;
  Aes256CtrStream& operator=(Aes256CtrStream&& other) noexcept;

  // Overwrites `out` with the next out.size() keystream bytes.
  void Generate(std::span<std::uint8_t> out);

 private:
  void* ctx_ = nullptr;  // EVP_CIPHER_CTX
};

std::array<std::uint8_t, kHmacSha512Size> HmacSha512(
    std::span<const std::uint8_t> key, std::span<const std::uint8_t> data);

// Constant-time equality; false when lengths differ.
bool ConstantTimeEqual(std::span<const std::uint8_t> a,
                       std::span<const std::uint8_t> b);

// Fills `out` from the OS entropy source. Throws EntropyUnavailable.
void RandomBytes(std::span<std::uint8_t> out);

}  // namespace lsteg::crypto

#endif  // LSTEG_CRYPTO_H_
