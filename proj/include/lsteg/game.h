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

#ifndef LSTEG_GAME_H_
#define LSTEG_GAME_H_

#include <cstdint>
#include <functional>
#include <vector>

#include "lsteg/analysis.h"
#include "lsteg/channel.h"
#include "lsteg/keyschedule.h"
#include "lsteg/latent.h"
#include "lsteg/params.h"

// Security experiments: the latent-space distinguisher, pooled KS tests, and
// the indistinguishability game, all observing post-channel latents.
namespace lsteg {

enum class Scheme {
  kOurs,        // sign-flip embedding
  kProjection,  // message projection onto {0, +-sqrt(2)}
};

// Cover latents for message `ctr` under `key`. With embed = false the result
// is the key-derived x_T untouched. Projection embeds the same permuted,
// redundancy-expanded ciphertext our scheme would carry, written over the
// leading components. Dual rows yield two identical copies.
Latents MakeCover(Scheme scheme, bool embed, std::span<const std::uint8_t> message,
                  const SecretKey& key, std::uint64_t ctr, const ParamTable& table);

struct ExperimentConfig {
  Scheme scheme = Scheme::kOurs;
  std::size_t n = 500;  // latent sets per class
  ChannelModel channel;
  ParamTable table;
  Key256 seed{};
};

// Sample i of class `embedded` through the channel (first copy only).
LatentTensor ObservedSample(const ExperimentConfig& config, bool embedded,
                            std::uint64_t index);

struct AttackResult {
  double auc = 0;
  std::vector<RocPoint> roc;
  std::size_t train_per_class = 0;
  std::size_t test_per_class = 0;
};

// Histogram distinguisher: n natural and n embedded observations, the first
// 80% of each class for training, the rest for testing.
AttackResult RunAttack(const ExperimentConfig& config);

// KS2 between the pooled components of n natural and n embedded observations.
KsResult RunKsExperiment(const ExperimentConfig& config);

// What the adversary sees in one game round. `key` is null unless the game is
// configured to reveal it (used only for the key-holding sanity adversary).
struct GameView {
  const EmbedParams& params;
  const Latents& observation;
  const SecretKey* key;
  std::uint64_t ctr;
  const ParamTable& table;
  std::uint64_t trial;
};

using Adversary = std::function<int(const GameView&)>;
using MessageSource = std::function<Bytes(std::uint64_t trial)>;

struct GameConfig {
  std::size_t trials = 1000;
  Scheme scheme = Scheme::kOurs;
  ChannelModel channel;
  ParamTable table;
  MessageSource messages;
  Key256 seed{};
  bool reveal_key = false;
};

struct GameResult {
  std::size_t trials = 0;
  std::size_t wins = 0;
  double advantage() const {
    return trials == 0 ? 0.0 : 2.0 * static_cast<double>(wins) / trials - 1.0;
  }
};

// Per trial: fresh key, adversary-chosen message, fair coin b; b = 1 embeds,
// b = 0 leaves x_T untouched; the adversary sees the channel output.
GameResult RunGame(const Adversary& adversary, const GameConfig& config);

// Guesses from its own DRBG, ignoring the observation.
Adversary CoinFlipAdversary(const Key256& seed);

// Runs the receiver with the revealed key; guesses 1 iff a message decodes.
Adversary KeyHoldingAdversary();

// Guesses 1 iff the classifier scores the first copy's histogram >= 0.5.
Adversary HistogramAdversary(LinearClassifier classifier);

// Keyless adversary training: the adversary knows the scheme and generates
// its own labelled samples under its own keys.
LinearClassifier TrainHistogramClassifier(const ExperimentConfig& config);

// Random messages filling the selected row's capacity.
MessageSource RandomMessages(const Key256& seed, std::size_t length);

}  // namespace lsteg

#endif  // LSTEG_GAME_H_
