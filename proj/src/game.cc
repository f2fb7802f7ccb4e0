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

#include "lsteg/game.h"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "lsteg/codec.h"
#include "lsteg/record.h"

namespace lsteg {

Latents MakeCover(Scheme scheme, bool embed, std::span<const std::uint8_t> message,
                  const SecretKey& key, std::uint64_t ctr, const ParamTable& table) {
  if (embed && scheme == Scheme::kOurs) return Send(message, key, ctr, table);

  MessageContext ctx = DeriveMessageContext(key, ctr, table);
  const EmbedParams& p = ctx.row.params;
  Latents out;
  if (!embed) {
    out.first = std::move(ctx.x_t);
  } else {
    CipherRecord record = Seal(ctx.bundle.k_enc, ctx.bundle.k_mac, ctr, message, p);
    ExpandedCiphertext expanded =
        AddRedundancy(BytesToBits(record.Serialize()), p.rho);
    BitString permuted(expanded.size());
    for (std::size_t j = 0; j < expanded.size(); ++j) {
      permuted[ctx.perm[j]] = expanded[j] > 0 ? 1 : 0;
    }
    Drbg rng(DeriveSeed(ctx.bundle.seed_latent, "projection", 0));
    LatentTensor flat = ProjectionEmbed(permuted, p.latent_count, rng);
    out.first = LatentTensor(std::vector<float>(flat.values().begin(), flat.values().end()),
                             ctx.x_t.shape());
  }
  if (p.scheduler == Scheduler::kDual) out.second = out.first;
  return out;
}

LatentTensor ObservedSample(const ExperimentConfig& config, bool embedded,
                            std::uint64_t index) {
  const SecretKey key{
      DeriveSeed(config.seed, embedded ? "sample-stego-key" : "sample-cover-key", index)};
  const std::uint64_t ctr = index;
  const auto& row = SelectRow(Derive(key, ctr), config.table);
  Bytes message(row.params.msg_len_bytes);
  Drbg(DeriveSeed(config.seed, "sample-message", index)).Fill(message);

  Latents cover = MakeCover(config.scheme, embedded, message, key, ctr, config.table);
  ChannelModel model = config.channel.ForTrial(2 * index + (embedded ? 1 : 0));
  model.dual = false;
  return Transmit(cover.first, model).first;
}

namespace {

void CheckSampleCount(std::size_t n) {
  if (n < 2) throw std::invalid_argument("need at least 2 latent sets per class");
}

}  // namespace

AttackResult RunAttack(const ExperimentConfig& config) {
  CheckSampleCount(config.n);
  AttackResult result;
  result.train_per_class = std::max<std::size_t>(1, config.n * 4 / 5);
  result.test_per_class = config.n - result.train_per_class;
  if (result.test_per_class == 0) {
    result.train_per_class -= 1;
    result.test_per_class = 1;
  }

  std::vector<HistogramFeatures> pos_train, neg_train;
  std::vector<double> scores;
  std::vector<std::uint8_t> labels;
  std::vector<HistogramFeatures> pos_test, neg_test;
  for (std::size_t i = 0; i < config.n; ++i) {
    auto pos = Histogram(ObservedSample(config, true, i).values());
    auto neg = Histogram(ObservedSample(config, false, i).values());
    if (i < result.train_per_class) {
      pos_train.push_back(std::move(pos));
      neg_train.push_back(std::move(neg));
    } else {
      pos_test.push_back(std::move(pos));
      neg_test.push_back(std::move(neg));
    }
  }
  LinearClassifier clf = LinearClassifier::Train(pos_train, neg_train);
  for (const auto& h : pos_test) {
    scores.push_back(clf.Score(h));
    labels.push_back(1);
  }
  for (const auto& h : neg_test) {
    scores.push_back(clf.Score(h));
    labels.push_back(0);
  }
  result.auc = Auc(scores, labels);
  result.roc = RocCurve(scores, labels);
  return result;
}

KsResult RunKsExperiment(const ExperimentConfig& config) {
  if (config.n < 1) throw std::invalid_argument("need at least 1 latent set");
  std::vector<double> natural, embedded;
  for (std::size_t i = 0; i < config.n; ++i) {
    auto e = ObservedSample(config, true, i);
    auto c = ObservedSample(config, false, i);
    embedded.insert(embedded.end(), e.values().begin(), e.values().end());
    natural.insert(natural.end(), c.values().begin(), c.values().end());
  }
  return Ks2(embedded, natural);
}

GameResult RunGame(const Adversary& adversary, const GameConfig& config) {
  if (!config.messages) throw std::invalid_argument("game needs a message source");
  GameResult result;
  result.trials = config.trials;
  for (std::size_t t = 0; t < config.trials; ++t) {
    const SecretKey key{DeriveSeed(config.seed, "game-key", t)};
    const int b = static_cast<int>(Drbg(DeriveSeed(config.seed, "game-coin", t)).NextU64() & 1);
    const std::uint64_t ctr = t;
    Bytes message = config.messages(t);

    Latents cover = MakeCover(config.scheme, b == 1, message, key, ctr, config.table);
    ChannelModel model = config.channel.ForTrial(t);
    model.dual = cover.dual();
    Latents observation = Transmit(cover, model);

    const auto& row = SelectRow(Derive(key, ctr), config.table);
    GameView view{row.params, observation, config.reveal_key ? &key : nullptr,
                  ctr,        config.table, t};
    if (adversary(view) == b) ++result.wins;
  }
  return result;
}

Adversary CoinFlipAdversary(const Key256& seed) {
  return [seed](const GameView& view) {
    return static_cast<int>(Drbg(DeriveSeed(seed, "coin-flip", view.trial)).NextU64() & 1);
  };
}

Adversary KeyHoldingAdversary() {
  return [](const GameView& view) {
    if (view.key == nullptr) {
      throw std::invalid_argument("key-holding adversary needs the revealed key");
    }
    return Receive(view.observation, *view.key, view.ctr, view.table) ? 1 : 0;
  };
}

Adversary HistogramAdversary(LinearClassifier classifier) {
  return [clf = std::move(classifier)](const GameView& view) {
    return clf.Score(Histogram(view.observation.first.values())) >= 0.5 ? 1 : 0;
  };
}

LinearClassifier TrainHistogramClassifier(const ExperimentConfig& config) {
  CheckSampleCount(config.n);
  std::vector<HistogramFeatures> pos, neg;
  for (std::size_t i = 0; i < config.n; ++i) {
    pos.push_back(Histogram(ObservedSample(config, true, i).values()));
    neg.push_back(Histogram(ObservedSample(config, false, i).values()));
  }
  return LinearClassifier::Train(pos, neg);
}

MessageSource RandomMessages(const Key256& seed, std::size_t length) {
  return [seed, length](std::uint64_t trial) {
    Bytes m(length);
    Drbg(DeriveSeed(seed, "game-message", trial)).Fill(m);
    return m;
  };
}

}  // namespace lsteg
