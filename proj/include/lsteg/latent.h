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

#ifndef LSTEG_LATENT_H_
#define LSTEG_LATENT_H_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace lsteg {

// Flat latent vector with a logical shape (default 4x64x64). Values are
// stored as 32-bit floats, the precision diffusion pipelines use.
class LatentTensor {
 public:
  LatentTensor() = default;
  LatentTensor(std::vector<float> values, std::vector<std::size_t> shape);
  // Shape defaults to [values.size()].
  explicit LatentTensor(std::vector<float> values);

  std::size_t size() const { return values_.size(); }
  float operator[](std::size_t i) const { return values_[i]; }
  float& operator[](std::size_t i) { return values_[i]; }

  std::span<const float> values() const { return values_; }
  std::span<float> values() { return values_; }
  const std::vector<std::size_t>& shape() const { return shape_; }

  bool operator==(const LatentTensor&) const = default;

 private:
  std::vector<float> values_;
  std::vector<std::size_t> shape_;
};

// What travels through the channel: one tensor in single mode, two in dual
// mode.
struct Latents {
  LatentTensor first;
  std::optional<LatentTensor> second;

  bool dual() const { return second.has_value(); }
  bool operator==(const Latents&) const = default;
};

}  // namespace lsteg

#endif  // LSTEG_LATENT_H_
