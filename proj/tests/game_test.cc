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

#include <gtest/gtest.h>

#include <cmath>

#include "lsteg/codec.h"

namespace lsteg {
namespace {

ParamTable SmallTable(Scheduler s = Scheduler::kSingle) {
  ParamTableRow row{0, "sd", "a cat", MakeEmbedParams(0.3, 6, s, 48, 5, 10, 4096)};
  row.params.latent_shape = {4, 32, 32};
  return ParamTable{{row}};
}

ExperimentConfig Experiment(Scheme scheme, std::size_t n, double sigma) {
  ExperimentConfig c;
  c.scheme = scheme;
  c.n = n;
  c.channel.sigma = sigma;
  c.channel.rng_seed = DeriveSeed(Key256{}, "game-test-channel", 0);
  c.table = SmallTable();
  c.seed = DeriveSeed(Key256{}, "game-test", static_cast<int>(scheme));
  return c;
}

TEST(MakeCoverTest, NaturalCoverIsKeyDerivedLatent) {
  ParamTable t = SmallTable(Scheduler::kDual);
  SecretKey key = SecretKey::FromHex(std::string(64, '1'));
  Bytes m = ToBytes("x");
  Latents natural = MakeCover(Scheme::kOurs, false, m, key, 3, t);
  EXPECT_EQ(natural.first, DeriveMessageContext(key, 3, t).x_t);
  ASSERT_TRUE(natural.dual());
  EXPECT_EQ(MakeCover(Scheme::kOurs, true, m, key, 3, t).first, Send(m, key, 3, t).first);
}

TEST(MakeCoverTest, ProjectionWritesSupportValues) {
  ParamTable t = SmallTable();
  SecretKey key = SecretKey::FromHex(std::string(64, '2'));
  Latents cover = MakeCover(Scheme::kProjection, true, ToBytes("hi"), key, 0, t);
  const std::size_t length = CiphertextBitLen(t.rows[0].params) * 6;
  for (std::size_t i = 0; i < length; ++i) {
    const float a = std::abs(cover.first[i]);
    ASSERT_TRUE(a == 0.0f || std::abs(a - 1.41421356f) < 1e-6f) << i;
  }
  // Deterministic for a fixed key and counter.
  EXPECT_EQ(cover.first, MakeCover(Scheme::kProjection, true, ToBytes("hi"), key, 0, t).first);
}

TEST(ObservedSampleTest, DeterministicAndClassDependent) {
  ExperimentConfig c = Experiment(Scheme::kOurs, 10, 0.3);
  EXPECT_EQ(ObservedSample(c, true, 4), ObservedSample(c, true, 4));
  EXPECT_NE(ObservedSample(c, true, 4), ObservedSample(c, false, 4));
  EXPECT_NE(ObservedSample(c, true, 4), ObservedSample(c, true, 5));
}

TEST(AttackTest, ProjectionIsBrokenOursIsNot) {
  const double png_sigma = SigmaForPreset(FindPreset("png"));
  AttackResult proj = RunAttack(Experiment(Scheme::kProjection, 500, png_sigma));
  EXPECT_EQ(proj.train_per_class, 400u);
  EXPECT_EQ(proj.test_per_class, 100u);
  EXPECT_GE(proj.auc, 0.99);
  AttackResult ours = RunAttack(Experiment(Scheme::kOurs, 500, png_sigma));
  EXPECT_GE(ours.auc, 0.40);
  EXPECT_LE(ours.auc, 0.60);
  EXPECT_EQ(ours.roc.front().fpr, 0);
  EXPECT_EQ(ours.roc.back().tpr, 1);
  EXPECT_THROW(RunAttack(Experiment(Scheme::kOurs, 1, png_sigma)), std::invalid_argument);
}

TEST(KsExperimentTest, ProjectionRejectedOursAccepted) {
  const double png_sigma = SigmaForPreset(FindPreset("png"));
  KsResult proj = RunKsExperiment(Experiment(Scheme::kProjection, 100, png_sigma));
  EXPECT_LT(proj.p, 1e-20);
  KsResult ours = RunKsExperiment(Experiment(Scheme::kOurs, 100, png_sigma));
  EXPECT_GT(ours.p, 0.01);
  EXPECT_EQ(ours.n1, 100u * 4096);
}

GameConfig Game(Scheme scheme, std::size_t trials, double sigma) {
  GameConfig g;
  g.trials = trials;
  g.scheme = scheme;
  g.channel.sigma = sigma;
  g.table = SmallTable();
  g.messages = RandomMessages(DeriveSeed(Key256{}, "game-test-msg", 0), 48);
  g.seed = DeriveSeed(Key256{}, "game-test-seed", static_cast<int>(scheme));
  return g;
}

TEST(GameTest, CoinFlipHasNoAdvantage) {
  GameResult r = RunGame(CoinFlipAdversary(Key256{}), Game(Scheme::kOurs, 1000, 0.5));
  EXPECT_EQ(r.trials, 1000u);
  EXPECT_NEAR(r.advantage(), 0.0, 0.07);
}

TEST(GameTest, KeyHolderWinsNoiseless) {
  GameConfig g = Game(Scheme::kOurs, 300, 0.0);
  g.reveal_key = true;
  EXPECT_GE(RunGame(KeyHoldingAdversary(), g).advantage(), 0.99);
}

TEST(GameTest, KeyIsHiddenUnlessRevealed) {
  GameConfig g = Game(Scheme::kOurs, 5, 0.0);
  bool saw_key = false;
  RunGame([&](const GameView& v) { saw_key |= v.key != nullptr; return 0; }, g);
  EXPECT_FALSE(saw_key);
}

TEST(GameTest, HistogramAdversary) {
  const double png_sigma = SigmaForPreset(FindPreset("png"));
  for (Scheme s : {Scheme::kOurs, Scheme::kProjection}) {
    ExperimentConfig train = Experiment(s, 200, png_sigma);
    Adversary adv = HistogramAdversary(TrainHistogramClassifier(train));
    const double adv_value = RunGame(adv, Game(s, 400, png_sigma)).advantage();
    if (s == Scheme::kOurs) {
      EXPECT_NEAR(adv_value, 0.0, 0.1);
    } else {
      EXPECT_GE(adv_value, 0.9);
    }
  }
}

TEST(RandomMessagesTest, LengthAndDeterminism) {
  MessageSource a = RandomMessages(Key256{}, 17), b = RandomMessages(Key256{}, 17);
  EXPECT_EQ(a(3).size(), 17u);
  EXPECT_EQ(a(3), b(3));
  EXPECT_NE(a(3), a(4));
}

}  // namespace
}  // namespace lsteg
