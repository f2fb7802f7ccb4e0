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

#ifndef LSTEG_CHANNEL_H_
#define LSTEG_CHANNEL_H_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include "lsteg/keyschedule.h"
#include "lsteg/latent.h"

namespace lsteg {

// Generate-then-invert channel modeled as additive Gaussian error on every
// latent component. In dual mode the two copies get noise with correlation
// `corr`.
struct ChannelModel {
  double sigma = 0;
  bool dual = false;
  double corr = 0;
  Key256 rng_seed{};

  // Throws std::invalid_argument.
  void Validate() const;

  // Same model with an independent seed for trial `index`.
  ChannelModel ForTrial(std::uint64_t index) const;
};

struct SeverityPreset {
  std::string_view name;
  double avg_latent_diff;  // mean |x_tilde - x| per component
};

// Mean latent differences measured for common image formats and a radius-1
// box blur after real generate-and-invert round trips.
inline constexpr std::array<SeverityPreset, 5> kSeverityPresets = {{
    {"png", 0.386},
    {"tiff", 0.313},
    {"bmp", 0.449},
    {"jpg", 1.107},
    {"blur", 0.432},
}};

// Throws std::invalid_argument for an unknown name.
const SeverityPreset& FindPreset(std::string_view name);

// Inverts E|z| = sigma * sqrt(2 / pi).
double SigmaForPreset(const SeverityPreset& preset);

// Stateful channel owning its DRBG; successive calls draw fresh noise.
class Channel {
 public:
  explicit Channel(const ChannelModel& model);

  // Dual models return two observations; the second is derived from
  // in.second when present, otherwise from in.first.
  Latents Transmit(const Latents& in);
  Latents Transmit(const LatentTensor& x) { return Transmit(Latents{x, {}}); }

  const ChannelModel& model() const { return model_; }

 private:
  ChannelModel model_;
  Drbg drbg_;
};

// One-shot transmit with a fresh DRBG seeded from model.rng_seed.
Latents Transmit(const Latents& in, const ChannelModel& model);
Latents Transmit(const LatentTensor& x, const ChannelModel& model);

// LSTG latent files: "LSTG", u16 version = 1, u8 dtype = 0 (f32), u8 ndim,
// ndim x u32 dims, then the payload; all little-endian. A dual pair is two
// back-to-back records.
void WriteLatents(const Latents& latents, std::ostream& out);
Latents ReadLatents(std::istream& in);

void WriteLatentsFile(const Latents& latents, const std::string& path);
Latents ReadLatentsFile(const std::string& path);

}  // namespace lsteg

#endif  // LSTEG_CHANNEL_H_
