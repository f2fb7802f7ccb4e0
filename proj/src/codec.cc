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

#include "lsteg/codec.h"

#include <cmath>
#include <stdexcept>
#include <string>

#include "lsteg/errors.h"
#include "lsteg/record.h"

namespace lsteg {

ValueGroups::ValueGroups(std::vector<float> values, std::size_t rho)
    : values_(std::move(values)), rho_(rho) {
  if (rho_ == 0 || values_.size() % rho_ != 0) {
    throw std::invalid_argument("group values must split evenly by rho");
  }
}

ExpandedCiphertext AddRedundancy(std::span<const std::uint8_t> bits, int rho) {
  if (rho < 1) throw std::invalid_argument("rho must be >= 1");
  ExpandedCiphertext out;
  out.reserve(bits.size() * static_cast<std::size_t>(rho));
  for (std::uint8_t b : bits) {
    out.insert(out.end(), static_cast<std::size_t>(rho),
               static_cast<std::int8_t>(b ? 1 : -1));
  }
  return out;
}

Mask ComputeMask(const LatentTensor& x, double tau) {
  Mask mask;
  mask.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::abs(static_cast<double>(x[i])) >= tau) {
      mask.push_back(static_cast<std::uint32_t>(i));
    }
  }
  return mask;
}

LatentTensor Embed(std::span<const std::uint8_t> bits, const Permutation& perm,
                   const LatentTensor& x, const EmbedParams& params) {
  ExpandedCiphertext expanded = AddRedundancy(bits, params.rho);
  if (perm.size() != expanded.size()) {
    throw std::invalid_argument("permutation length must equal bits * rho");
  }
  Mask mask = ComputeMask(x, params.tau);
  if (mask.size() < expanded.size()) {
    throw CapacityExceeded("mask has " + std::to_string(mask.size()) +
                           " slots, ciphertext needs " +
                           std::to_string(expanded.size()));
  }
  ExpandedCiphertext permuted(expanded.size());
  for (std::size_t j = 0; j < expanded.size(); ++j) permuted[perm[j]] = expanded[j];

  LatentTensor out = x;
  for (std::size_t j = 0; j < permuted.size(); ++j) {
    if (permuted[j] < 0) out[mask[j]] = -out[mask[j]];
  }
  return out;
}

ValueGroups ExtractGroups(const LatentTensor& x, const Mask& mask,
                          const Permutation& perm, const EmbedParams& params,
                          std::size_t n_bits) {
  const std::size_t length = n_bits * static_cast<std::size_t>(params.rho);
  if (mask.size() < length) {
    throw MaskTooSmall("mask has " + std::to_string(mask.size()) +
                       " slots, need " + std::to_string(length));
  }
  if (perm.size() != length) {
    throw std::invalid_argument("permutation length must equal bits * rho");
  }
  std::vector<float> recovered(length);
  for (std::size_t j = 0; j < length; ++j) recovered[j] = x[mask[perm[j]]];
  return ValueGroups(std::move(recovered), static_cast<std::size_t>(params.rho));
}

std::uint8_t DecodeBit(std::span<const float> orig, std::span<const float> recov) {
  if (orig.size() != recov.size() || orig.empty()) {
    throw std::invalid_argument("DecodeBit needs equal, non-empty groups");
  }
  double corr = 0;
  for (std::size_t j = 0; j < orig.size(); ++j) {
    corr += static_cast<double>(orig[j]) * static_cast<double>(recov[j]);
  }
  return corr >= 0 ? 1 : 0;
}

BitString Recover(const LatentTensor& x_t, const LatentTensor& x_tilde,
                  const Permutation& perm, const EmbedParams& params,
                  std::size_t n_bits) {
  if (x_tilde.size() != x_t.size()) {
    throw std::invalid_argument("observed latents have the wrong length");
  }
  Mask mask = ComputeMask(x_t, params.tau);
  ValueGroups orig = ExtractGroups(x_t, mask, perm, params, n_bits);
  ValueGroups recov = ExtractGroups(x_tilde, mask, perm, params, n_bits);
  BitString bits(n_bits);
  for (std::size_t i = 0; i < n_bits; ++i) {
    bits[i] = DecodeBit(orig.group(i), recov.group(i));
  }
  return bits;
}

std::optional<BitString> CorrectErrors(std::span<const std::uint8_t> c1,
                                       std::span<const std::uint8_t> c2,
                                       const TagCheck& verify,
                                       std::size_t max_errs) {
  if (c1.size() != c2.size()) {
    throw std::invalid_argument("CorrectErrors needs equal-length inputs");
  }
  if (verify(c1)) return BitString(c1.begin(), c1.end());
  if (verify(c2)) return BitString(c2.begin(), c2.end());

  std::vector<std::size_t> diff;
  for (std::size_t i = 0; i < c1.size(); ++i) {
    if (c1[i] != c2[i]) diff.push_back(i);
  }
  if (diff.size() > max_errs || diff.size() >= 64) return std::nullopt;

  const std::size_t n = diff.size();
  BitString candidate(c1.begin(), c1.end());
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    for (std::size_t t = 0; t < n; ++t) {
      std::uint8_t flip = (m >> (n - 1 - t)) & 1;
      candidate[diff[t]] = c1[diff[t]] ^ flip;
    }
    if (verify(candidate)) return candidate;
  }
  return std::nullopt;
}

MessageContext DeriveMessageContext(const SecretKey& key, std::uint64_t ctr,
                                    const ParamTable& table) {
  MessageContext ctx;
  ctx.bundle = Derive(key, ctr);
  ctx.row = SelectRow(ctx.bundle, table);
  const EmbedParams& p = ctx.row.params;
  ctx.x_t = SampleLatents(ctx.bundle.seed_latent, p.latent_count, p.latent_shape);
  ctx.perm = SamplePermutation(ctx.bundle.seed_perm,
                               CiphertextBitLen(p) * static_cast<std::size_t>(p.rho));
  return ctx;
}

SendResult SendDetailed(std::span<const std::uint8_t> message,
                        const SecretKey& key, std::uint64_t ctr,
                        const ParamTable& table) {
  MessageContext ctx = DeriveMessageContext(key, ctr, table);
  const EmbedParams& p = ctx.row.params;
  CipherRecord record = Seal(ctx.bundle.k_enc, ctx.bundle.k_mac, ctr, message, p);
  SendResult result;
  result.ciphertext_bits = BytesToBits(record.Serialize());
  LatentTensor embedded = Embed(result.ciphertext_bits, ctx.perm, ctx.x_t, p);
  result.latents.first = embedded;
  if (p.scheduler == Scheduler::kDual) result.latents.second = std::move(embedded);
  return result;
}

Latents Send(std::span<const std::uint8_t> message, const SecretKey& key,
             std::uint64_t ctr, const ParamTable& table) {
  return SendDetailed(message, key, ctr, table).latents;
}

namespace {

bool TagMatches(const KeyBundle& bundle, const EmbedParams& p,
                std::span<const std::uint8_t> bits) {
  Bytes bytes = BitsToBytes(bits);
  std::span<const std::uint8_t> all(bytes);
  std::size_t body_len = FrameLenBytes(p);
  return VerifyTag(bundle.k_mac, all.first(body_len), all.subspan(body_len));
}

}  // namespace

ReceiveReport ReceiveDetailed(const Latents& observed, const SecretKey& key,
                              std::uint64_t ctr, const ParamTable& table) {
  MessageContext ctx = DeriveMessageContext(key, ctr, table);
  const EmbedParams& p = ctx.row.params;
  const bool want_dual = p.scheduler == Scheduler::kDual;
  if (observed.dual() != want_dual) {
    throw FormatError(std::string("row expects ") +
                      (want_dual ? "two latent tensors" : "one latent tensor"));
  }
  if (observed.first.size() != p.latent_count ||
      (observed.dual() && observed.second->size() != p.latent_count)) {
    throw FormatError("observed latent count does not match the row");
  }

  const std::size_t n_bits = CiphertextBitLen(p);
  ReceiveReport report;
  report.first_bits = Recover(ctx.x_t, observed.first, ctx.perm, p, n_bits);

  std::optional<BitString> accepted;
  if (!want_dual) {
    if (TagMatches(ctx.bundle, p, report.first_bits)) accepted = report.first_bits;
  } else {
    report.second_bits = Recover(ctx.x_t, *observed.second, ctx.perm, p, n_bits);
    for (std::size_t i = 0; i < n_bits; ++i) {
      report.diff_count += report.first_bits[i] != (*report.second_bits)[i];
    }
    accepted = CorrectErrors(
        report.first_bits, *report.second_bits,
        [&](std::span<const std::uint8_t> bits) {
          return TagMatches(ctx.bundle, p, bits);
        },
        p.max_errs);
  }
  if (!accepted) return report;

  CipherRecord record = CipherRecord::Parse(BitsToBytes(*accepted), p);
  report.message = Open(ctx.bundle.k_enc, ctx.bundle.k_mac, ctr, record, p);
  return report;
}

std::optional<Bytes> Receive(const Latents& observed, const SecretKey& key,
                             std::uint64_t ctr, const ParamTable& table) {
  return ReceiveDetailed(observed, key, ctr, table).message;
}

}  // namespace lsteg
