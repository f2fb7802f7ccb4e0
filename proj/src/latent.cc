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

#include "lsteg/latent.h"

#include <stdexcept>
#include <utility>

namespace lsteg {

LatentTensor::LatentTensor(std::vector<float> values,
                           std::vector<std::size_t> shape)
    : values_(std::move(values)), shape_(std::move(shape)) {
  std::size_t product = 1;
  for (std::size_t d : shape_) product *= d;
  if (shape_.empty() || product != values_.size()) {
    throw std::invalid_argument("latent shape does not match value count");
  }
}

LatentTensor::LatentTensor(std::vector<float> values)
    : values_(std::move(values)), shape_{values_.size()} {}

}  // namespace lsteg
