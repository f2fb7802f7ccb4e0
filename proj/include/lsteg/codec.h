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

#ifndef LSTEG_CODEC_H_
#define LSTEG_CODEC_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "lsteg/keyschedule.h"
#include "lsteg/latent.h"
#include "lsteg/params.h"
#include "lsteg/types.h"

namespace lsteg {

// Symbols in {-1, +1}; -1 encodes bit 0 (sign flip), +1 encodes bit 1.
using ExpandedCiphertext = std::vector<std::int8_t>;

// Strictly increasing indices of latent slots with |x_T[i]| >= tau.
using Mask = std::vector<std::uint32_t>;

// n_bits groups of rho latent values, group i carrying every copy of bit i.
class ValueGroups {
 public:
  ValueGroups(std::vector<float> values, std::size_t rho);

  std::size_t size() const { return values_.size() / rho_; }
  std::size_t rho() const { return rho_; }
  std::span<const float> group(std::size_t i) const {
    return std::span<const float>(values_).subspan(i * rho_, rho_);
  }

 private:
  std::vector<float> values_;
  std::size_t rho_;
};

ExpandedCiphertext AddRedundancy(std::span<const std::uint8_t> bits, int rho);

Mask ComputeMask(const LatentTensor& x, double tau);

// Sign-flip embedding. The j-th mask slot receives permuted symbol j, where
// permuted[perm[j]] = expanded[j]. Slots past the expanded length and all
// sub-threshold components are left untouched, so |x'[i]| == |x[i]|.
// Throws CapacityExceeded when the mask is smaller than bits * rho.
LatentTensor Embed(std::span<const std::uint8_t> bits, const Permutation& perm,
                   const LatentTensor& x, const EmbedParams& params);

// Values of `x` at the first n_bits * rho mask slots, un-permuted
// (recovered[j] = taken[perm[j]]) and cut into groups of rho.
// Throws MaskTooSmall.
ValueGroups ExtractGroups(const LatentTensor& x, const Mask& mask,
                          const Permutation& perm, const EmbedParams& params,
                          std::size_t n_bits);

// Likelihood-ratio decision under i.i.d. Gaussian inversion error. The log of
// the ratio is 2 * sum(orig[j] * recov[j]); a zero sum decodes as 1.
std::uint8_t DecodeBit(std::span<const float> orig, std::span<const float> recov);

// Mask is computed from x_T; the noisy observation never influences it.
BitString Recover(const LatentTensor& x_t, const LatentTensor& x_tilde,
                  const Permutation& perm, const EmbedParams& params,
                  std::size_t n_bits);

using TagCheck = std::function<bool(std::span<const std::uint8_t> bits)>;

// Tries c1, then c2, then every assignment of the positions where they
// differ (base c1, assignments in increasing bitmask order with the first
// differing position as the most significant bit). nullopt when nothing
// verifies or the diff set is larger than max_errs.
std::optional<BitString> CorrectErrors(std::span<const std::uint8_t> c1,
                                       std::span<const std::uint8_t> c2,
                                       const TagCheck& verify,
                                       std::size_t max_errs);

// Everything sender and receiver re-derive from (key, ctr, table).
struct MessageContext {
  KeyBundle bundle;
  ParamTableRow row;
  LatentTensor x_t;
  Permutation perm;
};

MessageContext DeriveMessageContext(const SecretKey& key, std::uint64_t ctr,
                                    const ParamTable& table);

struct SendResult {
  Latents latents;
  BitString ciphertext_bits;
};

// Seals the message and embeds the ciphertext bits. In dual mode the result
// holds two identical copies. Throws MessageTooLong, CapacityExceeded.
SendResult SendDetailed(std::span<const std::uint8_t> message,
                        const SecretKey& key, std::uint64_t ctr,
                        const ParamTable& table);

Latents Send(std::span<const std::uint8_t> message, const SecretKey& key,
             std::uint64_t ctr, const ParamTable& table);

struct ReceiveReport {
  std::optional<Bytes> message;  // nullopt = Fail
  BitString first_bits;
  std::optional<BitString> second_bits;
  std::size_t diff_count = 0;
};

// Throws FormatError if the observation does not match the selected row's
// mode or latent count, FrameError if an authenticated frame is malformed.
ReceiveReport ReceiveDetailed(const Latents& observed, const SecretKey& key,
                              std::uint64_t ctr, const ParamTable& table);

std::optional<Bytes> Receive(const Latents& observed, const SecretKey& key,
                             std::uint64_t ctr, const ParamTable& table);

}  // namespace lsteg

#endif  // LSTEG_CODEC_H_
