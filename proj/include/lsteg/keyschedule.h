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

#ifndef LSTEG_KEYSCHEDULE_H_
#define LSTEG_KEYSCHEDULE_H_

#include <cstdint>
#include <span>
#include <vector>

#include "lsteg/crypto.h"
#include "lsteg/latent.h"
#include "lsteg/params.h"
#include "lsteg/types.h"

namespace lsteg {

// 256-bit pre-shared secret.
struct SecretKey {
  Key256 bytes{};

  static SecretKey FromHex(std::string_view hex) { return {KeyFromHex(hex)}; }
  bool operator==(const SecretKey&) const = default;
};

// Per-message key material; every field is a pure function of (key, ctr).
struct KeyBundle {
  Key256 k_enc{};
  Key256 k_mac{};
  Key256 seed_latent{};
  Key256 seed_perm{};
  std::uint64_t row_selector = 0;

  bool operator==(const KeyBundle&) const = default;
};

// Each field is HMAC-SHA512(key, label || ctr_be64) truncated, with labels
// "enc", "mac", "lat", "perm" and "row".
KeyBundle Derive(const SecretKey& key, std::uint64_t ctr);

// General-purpose labelled derivation used for experiment seeds.
Key256 DeriveSeed(std::span<const std::uint8_t> key, std::string_view label,
                  std::uint64_t index);

// Deterministic byte stream: AES-256 keyed by the seed, encrypting a
// big-endian 128-bit block counter starting at zero. 64-bit words are read
// little-endian from consecutive output bytes.
class Drbg {
 public:
  explicit Drbg(const Key256& seed);

  void Fill(std::span<std::uint8_t> out);
  std::uint64_t NextU64();

  // Uniform in [0, n) by rejection sampling; n >= 1.
  std::uint64_t Uniform(std::uint64_t n);

  // Fills `out` with standard normals: Box-Muller over consecutive word
  // pairs, cos branch for even slots and sin branch for odd slots. Each call
  // starts a fresh pair, so an odd-length fill discards one sin value.
  void FillGaussian(std::span<double> out);

 private:
  void Refill();

  crypto::Aes256CtrStream stream_;
  std::vector<std::uint8_t> buffer_;
  std::size_t pos_;
};

// k i.i.d. N(0, 1) latents from the seed, shaped `shape` when its product is
// k (otherwise flat).
LatentTensor SampleLatents(const Key256& seed, std::size_t k,
                           std::vector<std::size_t> shape = {});

// Double-precision variant of SampleLatents (same stream, before rounding to
// float).
std::vector<double> SampleGaussians(const Key256& seed, std::size_t k);

// Bijection on [0, L): map()[j] is the image of j.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<std::uint32_t> map);

  std::size_t size() const { return map_.size(); }
  std::uint32_t operator[](std::size_t j) const { return map_[j]; }
  const std::vector<std::uint32_t>& map() const { return map_; }

  static Permutation Identity(std::size_t n);

  bool operator==(const Permutation&) const = default;

 private:
  std::vector<std::uint32_t> map_;
};

// Fisher-Yates over [0, L) driven by the seed's DRBG.
Permutation SamplePermutation(const Key256& seed, std::size_t length);

const ParamTableRow& SelectRow(const KeyBundle& bundle, const ParamTable& table);

}  // namespace lsteg

#endif  // LSTEG_KEYSCHEDULE_H_
