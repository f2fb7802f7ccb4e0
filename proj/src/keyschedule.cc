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

#include "lsteg/keyschedule.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lsteg {

namespace {

constexpr std::size_t kDrbgBufferSize = 4096;

void PutBe64(std::uint64_t v, std::uint8_t* out) {
  for (int i = 7; i >= 0; --i) {
    out[i] = static_cast<std::uint8_t>(v & 0xff);
    v >>= 8;
  }
}

// (w + 1) / (2^64 + 1), strictly positive.
double WordToOpenUnit(std::uint64_t w) {
  constexpr double kDenominator = 18446744073709551616.0 + 1.0;
  return (static_cast<double>(w) + 1.0) / kDenominator;
}

}  // namespace

Key256 DeriveSeed(std::span<const std::uint8_t> key, std::string_view label,
                  std::uint64_t index) {
  Bytes msg(label.begin(), label.end());
  std::uint8_t be[8];
  PutBe64(index, be);
  msg.insert(msg.end(), be, be + 8);
  auto digest = crypto::HmacSha512(key, msg);
  Key256 out{};
  std::copy_n(digest.begin(), out.size(), out.begin());
  return out;
}

KeyBundle Derive(const SecretKey& key, std::uint64_t ctr) {
  KeyBundle b;
  b.k_enc = DeriveSeed(key.bytes, "enc", ctr);
  b.k_mac = DeriveSeed(key.bytes, "mac", ctr);
  b.seed_latent = DeriveSeed(key.bytes, "lat", ctr);
  b.seed_perm = DeriveSeed(key.bytes, "perm", ctr);
  Key256 row = DeriveSeed(key.bytes, "row", ctr);
  for (int i = 0; i < 8; ++i) b.row_selector = b.row_selector << 8 | row[i];
  return b;
}

Drbg::Drbg(const Key256& seed)
    : stream_(seed, crypto::CounterBlock{}),
      buffer_(kDrbgBufferSize),
      pos_(kDrbgBufferSize) {}

void Drbg::Refill() {
  stream_.Generate(buffer_);
  pos_ = 0;
}

void Drbg::Fill(std::span<std::uint8_t> out) {
  std::size_t done = 0;
  while (done < out.size()) {
    if (pos_ == buffer_.size()) Refill();
    std::size_t n = std::min(out.size() - done, buffer_.size() - pos_);
    std::copy_n(buffer_.begin() + pos_, n, out.begin() + done);
    pos_ += n;
    done += n;
  }
}

std::uint64_t Drbg::NextU64() {
  std::uint8_t b[8];
  Fill(b);
  std::uint64_t w = 0;
  for (int i = 7; i >= 0; --i) w = w << 8 | b[i];
  return w;
}

std::uint64_t Drbg::Uniform(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("Uniform bound must be >= 1");
  // Largest multiple of n representable in 64 bits is 2^64 - (2^64 mod n).
  const std::uint64_t rem = (0 - n) % n;  // 2^64 mod n
  for (;;) {
    std::uint64_t w = NextU64();
    if (rem == 0 || w < 0 - rem) return w % n;
  }
}

void Drbg::FillGaussian(std::span<double> out) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  for (std::size_t i = 0; i < out.size(); i += 2) {
    double u1 = WordToOpenUnit(NextU64());
    double u2 = WordToOpenUnit(NextU64());
    double r = std::sqrt(-2.0 * std::log(u1));
    out[i] = r * std::cos(kTwoPi * u2);
    if (i + 1 < out.size()) out[i + 1] = r * std::sin(kTwoPi * u2);
  }
}

std::vector<double> SampleGaussians(const Key256& seed, std::size_t k) {
  std::vector<double> z(k);
  Drbg drbg(seed);
  drbg.FillGaussian(z);
  return z;
}

LatentTensor SampleLatents(const Key256& seed, std::size_t k,
                           std::vector<std::size_t> shape) {
  std::vector<double> z = SampleGaussians(seed, k);
  std::vector<float> values(z.begin(), z.end());
  std::size_t product = 1;
  for (std::size_t d : shape) product *= d;
  if (shape.empty() || product != k) shape = {k};
  return LatentTensor(std::move(values), std::move(shape));
}

Permutation::Permutation(std::vector<std::uint32_t> map)
    : map_(std::move(map)) {
  std::vector<bool> seen(map_.size(), false);
  for (std::uint32_t v : map_) {
    if (v >= map_.size() || seen[v]) {
      throw std::invalid_argument("not a permutation");
    }
    seen[v] = true;
  }
}

Permutation Permutation::Identity(std::size_t n) {
  std::vector<std::uint32_t> map(n);
  for (std::size_t i = 0; i < n; ++i) map[i] = static_cast<std::uint32_t>(i);
  return Permutation(std::move(map));
}

Permutation SamplePermutation(const Key256& seed, std::size_t length) {
  if (length == 0) throw std::invalid_argument("permutation length must be >= 1");
  std::vector<std::uint32_t> map(length);
  for (std::size_t i = 0; i < length; ++i) map[i] = static_cast<std::uint32_t>(i);
  Drbg drbg(seed);
  for (std::size_t i = length - 1; i > 0; --i) {
    std::size_t j = drbg.Uniform(i + 1);
    std::swap(map[i], map[j]);
  }
  return Permutation(std::move(map));
}

const ParamTableRow& SelectRow(const KeyBundle& bundle, const ParamTable& table) {
  if (table.rows.empty()) throw std::invalid_argument("empty parameter table");
  return table.rows[bundle.row_selector % table.rows.size()];
}

}  // namespace lsteg
