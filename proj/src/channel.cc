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

#include "lsteg/channel.h"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <iterator>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "lsteg/errors.h"

namespace lsteg {

void ChannelModel::Validate() const {
  if (!std::isfinite(sigma) || sigma < 0) {
    throw std::invalid_argument("sigma must be finite and >= 0");
  }
  if (!(corr >= 0 && corr <= 1)) {
    throw std::invalid_argument("corr must lie in [0, 1]");
  }
}

ChannelModel ChannelModel::ForTrial(std::uint64_t index) const {
  ChannelModel m = *this;
  m.rng_seed = DeriveSeed(rng_seed, "channel-trial", index);
  return m;
}

const SeverityPreset& FindPreset(std::string_view name) {
  for (const auto& p : kSeverityPresets) {
    if (p.name == name) return p;
  }
  throw std::invalid_argument("unknown severity preset '" + std::string(name) + "'");
}

double SigmaForPreset(const SeverityPreset& preset) {
  if (preset.avg_latent_diff < 0) {
    throw std::invalid_argument("avg_latent_diff must be >= 0");
  }
  return preset.avg_latent_diff / std::sqrt(2.0 / std::numbers::pi);
}

Channel::Channel(const ChannelModel& model) : model_(model), drbg_(model.rng_seed) {
  model_.Validate();
}

namespace {

LatentTensor AddNoise(const LatentTensor& x, std::span<const double> z,
                      double sigma) {
  std::vector<float> v(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    v[i] = static_cast<float>(static_cast<double>(x[i]) + sigma * z[i]);
  }
  return LatentTensor(std::move(v), x.shape());
}

}  // namespace

Latents Channel::Transmit(const Latents& in) {
  const std::size_t k = in.first.size();
  std::vector<double> z1(k);
  drbg_.FillGaussian(z1);
  Latents out{AddNoise(in.first, z1, model_.sigma), std::nullopt};
  if (!model_.dual) return out;

  const LatentTensor& base = in.second ? *in.second : in.first;
  if (base.size() != k) throw std::invalid_argument("dual copies differ in size");
  std::vector<double> z2(k);
  drbg_.FillGaussian(z2);
  const double a = model_.corr;
  const double b = std::sqrt(1.0 - a * a);
  for (std::size_t i = 0; i < k; ++i) z2[i] = a * z1[i] + b * z2[i];
  out.second = AddNoise(base, z2, model_.sigma);
  return out;
}

Latents Transmit(const Latents& in, const ChannelModel& model) {
  Channel channel(model);
  return channel.Transmit(in);
}

Latents Transmit(const LatentTensor& x, const ChannelModel& model) {
  Channel channel(model);
  return channel.Transmit(x);
}

namespace {

constexpr char kMagic[4] = {'L', 'S', 'T', 'G'};
constexpr std::uint16_t kVersion = 1;
constexpr std::uint8_t kDtypeF32 = 0;
constexpr std::size_t kMaxElements = std::size_t{1} << 30;

static_assert(std::endian::native == std::endian::little,
              "latent file I/O assumes a little-endian host");

void WriteTensor(const LatentTensor& t, std::ostream& out) {
  const auto& shape = t.shape();
  if (shape.size() > 255) throw FormatError("too many dimensions");
  std::vector<char> buf(kMagic, kMagic + 4);
  buf.push_back(static_cast<char>(kVersion & 0xff));
  buf.push_back(static_cast<char>(kVersion >> 8));
  buf.push_back(static_cast<char>(kDtypeF32));
  buf.push_back(static_cast<char>(shape.size()));
  for (std::size_t d : shape) {
    if (d > 0xffffffffu) throw FormatError("dimension exceeds 32 bits");
    auto v = static_cast<std::uint32_t>(d);
    for (int i = 0; i < 4; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  auto values = t.values();
  out.write(reinterpret_cast<const char*>(values.data()),
            static_cast<std::streamsize>(values.size() * sizeof(float)));
}

class Reader {
 public:
  explicit Reader(std::vector<char> data) : data_(std::move(data)) {}

  bool done() const { return pos_ == data_.size(); }

  const char* Take(std::size_t n) {
    if (data_.size() - pos_ < n) throw FormatError("latent file is truncated");
    const char* p = data_.data() + pos_;
    pos_ += n;
    return p;
  }

  std::uint32_t U32() {
    const auto* p = reinterpret_cast<const unsigned char*>(Take(4));
    return std::uint32_t{p[0]} | std::uint32_t{p[1]} << 8 |
           std::uint32_t{p[2]} << 16 | std::uint32_t{p[3]} << 24;
  }

 private:
  std::vector<char> data_;
  std::size_t pos_ = 0;
};

LatentTensor ReadTensor(Reader& r) {
  if (std::memcmp(r.Take(4), kMagic, 4) != 0) throw FormatError("bad magic");
  const auto* v = reinterpret_cast<const unsigned char*>(r.Take(2));
  if ((v[0] | v[1] << 8) != kVersion) throw FormatError("unsupported version");
  const auto* head = reinterpret_cast<const unsigned char*>(r.Take(2));
  if (head[0] != kDtypeF32) throw FormatError("unsupported dtype");
  const std::size_t ndim = head[1];
  if (ndim == 0) throw FormatError("tensor has no dimensions");
  std::vector<std::size_t> shape(ndim);
  std::size_t count = 1;
  for (auto& d : shape) {
    d = r.U32();
    if (d == 0) throw FormatError("zero-sized dimension");
    count *= d;
    if (count > kMaxElements) throw FormatError("tensor too large");
  }
  const char* payload = r.Take(count * sizeof(float));
  std::vector<float> values(count);
  std::memcpy(values.data(), payload, count * sizeof(float));
  return LatentTensor(std::move(values), std::move(shape));
}

}  // namespace

void WriteLatents(const Latents& latents, std::ostream& out) {
  WriteTensor(latents.first, out);
  if (latents.second) WriteTensor(*latents.second, out);
  if (!out) throw IoError("failed writing latent file");
}

Latents ReadLatents(std::istream& in) {
  std::vector<char> data{std::istreambuf_iterator<char>(in),
                         std::istreambuf_iterator<char>()};
  if (in.bad()) throw IoError("failed reading latent file");
  Reader r(std::move(data));
  Latents out{ReadTensor(r), std::nullopt};
  if (!r.done()) out.second = ReadTensor(r);
  if (!r.done()) throw FormatError("trailing data after latent records");
  return out;
}

void WriteLatentsFile(const Latents& latents, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  WriteLatents(latents, out);
}

Latents ReadLatentsFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  return ReadLatents(in);
}

}  // namespace lsteg
