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

#include "lsteg/analysis.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "lsteg/codec.h"
#include "lsteg/errors.h"

namespace lsteg {
namespace {

std::vector<double> Gaussians(int seed, std::size_t n) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

TEST(NormalCdfTest, Values) {
  EXPECT_EQ(NormalCdf(0), 0.5);
  EXPECT_NEAR(NormalCdf(0.3), 0.6179114221889527, 1e-7);
  EXPECT_NEAR(NormalCdf(-1.96), 0.024997895148220435, 1e-7);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-8, 8);
  for (int i = 0; i < 1000; ++i) {
    double x = u(rng);
    ASSERT_NEAR(NormalCdf(-x), 1 - NormalCdf(x), 1e-12);
  }
}

TEST(CapacityTest, PublishedCapacityEntries) {
  EXPECT_DOUBLE_EQ(ExpectedCapacityBpp(0, 1), 4.0);
  struct Entry {
    double tau;
    int rho;
    double bpp;
  };
  const Entry table[] = {
      {0.0, 6, 0.666},  {0.1, 6, 0.613},  {0.5, 6, 0.411},  {1.0, 6, 0.211},
      {1.5, 6, 0.089},  // threshold row
      {0.3, 1, 3.056},  {0.3, 2, 1.529},  {0.3, 4, 0.7639}, {0.3, 8, 0.3820},
      {0.3, 16, 0.1910},  // redundancy row
  };
  for (const auto& e : table) {
    EXPECT_NEAR(ExpectedCapacityBpp(e.tau, e.rho), e.bpp, 0.005 * e.bpp)
        << e.tau << " " << e.rho;
  }
}

TEST(CapacityTest, MonteCarloSlotCounts) {
  const std::size_t n = 1000000;
  LatentTensor x = SampleLatents(DeriveSeed(Key256{}, "slots", 0), n);
  for (double tau : {0.0, 0.3, 0.5, 1.0, 1.5}) {
    const double q = SlotSurvival(tau);
    const double count = ComputeMask(x, tau).size();
    EXPECT_NEAR(count, n * q, 3 * std::sqrt(n * q * (1 - q)) + 1e-9) << tau;
  }
}

TEST(Ks2Test, Examples) {
  std::vector<double> a{1, 2, 3}, b{1.5, 2.5, 3.5};
  KsResult r = Ks2(a, b);
  EXPECT_NEAR(r.d, 1.0 / 3, 1e-15);
  EXPECT_EQ(r.n1, 3u);
  EXPECT_EQ(r.n2, 3u);
  KsResult same = Ks2(a, a);
  EXPECT_EQ(same.d, 0);
  EXPECT_EQ(same.p, 1);
  std::vector<double> empty;
  EXPECT_THROW(Ks2(a, empty), EmptySample);
  EXPECT_THROW(Ks2(empty, a), EmptySample);
}

TEST(Ks2Test, KolmogorovTail) {
  EXPECT_EQ(KolmogorovQ(0), 1.0);
  // Reference values of the Kolmogorov survival function.
  EXPECT_NEAR(KolmogorovQ(1.0), 0.26999967167735456, 1e-10);
  EXPECT_NEAR(KolmogorovQ(1.36), 0.049485876755377876, 1e-10);
  EXPECT_LT(KolmogorovQ(5.0), 1e-20);
}

TEST(Ks2Test, InvariantUnderMonotoneTransform) {
  std::vector<double> a = Gaussians(2, 3000), b = Gaussians(3, 2000);
  for (auto& x : b) x += 0.1;
  KsResult base = Ks2(a, b);
  auto f = [](double x) { return std::exp(x) * 3 - 7; };
  std::vector<double> fa(a), fb(b);
  std::transform(a.begin(), a.end(), fa.begin(), f);
  std::transform(b.begin(), b.end(), fb.begin(), f);
  EXPECT_DOUBLE_EQ(Ks2(fa, fb).d, base.d);
}

TEST(Ks2Test, DetectsShiftAndAcceptsNull) {
  std::vector<double> a = Gaussians(4, 20000), b = Gaussians(5, 20000);
  EXPECT_GT(Ks2(a, b).p, 0.01);
  for (auto& x : b) x += 0.2;
  EXPECT_LT(Ks2(a, b).p, 1e-20);
}

// Sign flips keyed by a ciphertext leave the latent distribution unchanged.
TEST(DistributionPreservationTest, EmbeddedLatentsPassKs) {
  const EmbedParams p = MakeEmbedParams(0.3, 6, Scheduler::kSingle, 240);
  const std::size_t n_bits = CiphertextBitLen(p);
  std::mt19937_64 bit_rng(7);
  int passes = 0;
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<double> embedded, fresh;
    for (int j = 0; embedded.size() < 100000; ++j) {
      LatentTensor x = SampleLatents(DeriveSeed(Key256{}, "dist-x", rep * 100 + j), 16384);
      BitString c(n_bits);
      for (auto& b : c) b = bit_rng() & 1;
      Permutation perm =
          SamplePermutation(DeriveSeed(Key256{}, "dist-p", rep * 100 + j), n_bits * 6);
      LatentTensor y = Embed(c, perm, x, p);
      for (std::size_t i = 0; i < y.size(); ++i) {
        ASSERT_EQ(std::abs(y[i]), std::abs(x[i]));
        if (embedded.size() < 100000) embedded.push_back(y[i]);
      }
    }
    LatentTensor f = SampleLatents(DeriveSeed(Key256{}, "dist-fresh", rep), 100000);
    fresh.assign(f.values().begin(), f.values().end());
    passes += Ks2(embedded, fresh).p > 0.01;
  }
  EXPECT_GE(passes, 95);
}

TEST(ProjectionEmbedTest, SupportAndMoments) {
  Drbg rng(Key256{});
  BitString zeros(100, 0);
  LatentTensor z = ProjectionEmbed(zeros, 200, rng);
  for (std::size_t i = 0; i < 100; ++i) ASSERT_EQ(z[i], 0.0f);
  EXPECT_THROW(ProjectionEmbed(zeros, 50, rng), std::invalid_argument);

  std::mt19937_64 bits_rng(9);
  BitString bits(100000);
  for (auto& b : bits) b = bits_rng() & 1;
  LatentTensor y = ProjectionEmbed(bits, 100000, rng);
  double sum = 0, sq = 0;
  std::size_t pos = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const float v = y[i];
    if (bits[i]) {
      ASSERT_NEAR(std::abs(v), 1.41421356, 1e-6);
      pos += v > 0;
    } else {
      ASSERT_EQ(v, 0.0f);
    }
    sum += v;
    sq += static_cast<double>(v) * v;
  }
  EXPECT_NEAR(sum / y.size(), 0.0, 0.01);
  EXPECT_NEAR(sq / y.size(), 1.0, 0.01);
  const double ones = std::count(bits.begin(), bits.end(), 1);
  EXPECT_NEAR(pos / ones, 0.5, 0.01);
}

TEST(HistogramTest, Examples) {
  std::vector<float> v{-10.0f, 0.0f, 10.0f};
  HistogramFeatures h = Histogram(v);
  EXPECT_EQ(h.counts, (std::vector<std::uint64_t>{1, 0, 0, 0, 0, 1, 0, 0, 0, 1}));
  EXPECT_EQ(h.total(), 3u);
  std::vector<float> edges{-3.0f, 3.0f, 2.9999f};
  EXPECT_EQ(Histogram(edges, 2, -3, 3).counts, (std::vector<std::uint64_t>{1, 2}));
  EXPECT_THROW(Histogram(v, 0), std::invalid_argument);
  EXPECT_THROW(Histogram(v, 10, 1, 1), std::invalid_argument);
}

TEST(HistogramTest, GaussianCenterMass) {
  LatentTensor x = SampleLatents(Key256{}, 100000);
  HistogramFeatures h = Histogram(x.values());
  EXPECT_EQ(h.total(), 100000u);
  const double center = static_cast<double>(h.counts[4] + h.counts[5]) / 100000;
  EXPECT_NEAR(center, 2 * (NormalCdf(0.6) - 0.5), 0.01);
  EXPECT_NEAR(2 * (NormalCdf(0.6) - 0.5), 0.4515, 1e-4);
}

HistogramFeatures PointMass(std::size_t bin, std::uint64_t n) {
  HistogramFeatures h;
  h.counts.assign(10, 1);
  h.counts[bin] += n;
  return h;
}

TEST(LinearClassifierTest, SeparableToy) {
  std::vector<HistogramFeatures> pos, neg;
  for (int i = 0; i < 20; ++i) {
    pos.push_back(PointMass(0, 50 + i));
    neg.push_back(PointMass(9, 50 + i));
  }
  LinearClassifier clf = LinearClassifier::Train(pos, neg);
  for (const auto& h : pos) EXPECT_GT(clf.Score(h), 0.5);
  for (const auto& h : neg) EXPECT_LT(clf.Score(h), 0.5);
  EXPECT_EQ(clf.weights().size(), 10u);
  // Deterministic.
  LinearClassifier again = LinearClassifier::Train(pos, neg);
  EXPECT_EQ(again.weights(), clf.weights());
  EXPECT_EQ(again.bias(), clf.bias());
}

TEST(LinearClassifierTest, NullExperiment) {
  auto sample = [](const char* label, int i) {
    return Histogram(SampleLatents(DeriveSeed(Key256{}, label, i), 4096).values());
  };
  std::vector<HistogramFeatures> pos, neg;
  for (int i = 0; i < 400; ++i) {
    pos.push_back(sample("null-a", i));
    neg.push_back(sample("null-b", i));
  }
  LinearClassifier clf = LinearClassifier::Train(pos, neg);
  std::vector<double> scores;
  std::vector<std::uint8_t> labels;
  for (int i = 400; i < 500; ++i) {
    scores.push_back(clf.Score(sample("null-a", i)));
    labels.push_back(1);
    scores.push_back(clf.Score(sample("null-b", i)));
    labels.push_back(0);
  }
  const double auc = Auc(scores, labels);
  EXPECT_GE(auc, 0.4);
  EXPECT_LE(auc, 0.6);
}

TEST(AucTest, Examples) {
  std::vector<double> s{0.1, 0.4, 0.35, 0.8};
  std::vector<std::uint8_t> l{0, 0, 1, 1};
  EXPECT_DOUBLE_EQ(Auc(s, l), 0.75);
  EXPECT_DOUBLE_EQ(Auc(std::vector<double>{1, 2, 3, 4}, l), 1.0);
  EXPECT_DOUBLE_EQ(Auc(std::vector<double>(4, 0.3), l), 0.5);
  EXPECT_THROW(Auc(s, std::vector<std::uint8_t>(4, 1)), DegenerateLabels);
  EXPECT_THROW(Auc(s, std::vector<std::uint8_t>{0, 1}), std::invalid_argument);
}

TEST(AucTest, InvariantUnderIncreasingTransform) {
  std::mt19937_64 rng(21);
  std::vector<double> s(500);
  std::vector<std::uint8_t> l(500);
  for (std::size_t i = 0; i < s.size(); ++i) {
    l[i] = rng() & 1;
    s[i] = std::round(Gaussians(static_cast<int>(i), 1)[0] * 10 + l[i] * 3) / 10;
  }
  std::vector<double> t(s);
  for (auto& x : t) x = std::atan(x) * 5 + 1;
  EXPECT_DOUBLE_EQ(Auc(s, l), Auc(t, l));
}

TEST(RocCurveTest, EndpointsAndMonotone) {
  std::vector<double> s{0.1, 0.4, 0.35, 0.8};
  std::vector<std::uint8_t> l{0, 0, 1, 1};
  auto roc = RocCurve(s, l);
  ASSERT_GE(roc.size(), 2u);
  EXPECT_EQ(roc.front().fpr, 0);
  EXPECT_EQ(roc.front().tpr, 0);
  EXPECT_EQ(roc.back().fpr, 1);
  EXPECT_EQ(roc.back().tpr, 1);
  double area = 0;
  for (std::size_t i = 1; i < roc.size(); ++i) {
    ASSERT_GE(roc[i].fpr, roc[i - 1].fpr);
    ASSERT_GE(roc[i].tpr, roc[i - 1].tpr);
    area += (roc[i].fpr - roc[i - 1].fpr) * (roc[i].tpr + roc[i - 1].tpr) / 2;
  }
  EXPECT_DOUBLE_EQ(area, Auc(s, l));
}

TEST(QqDataTest, DiagonalAndMass) {
  std::vector<double> a = Gaussians(30, 10000);
  auto qq = QqData(a, a);
  ASSERT_EQ(qq.size(), 100u);
  double sx = 0, sy = 0;
  for (auto [x, y] : qq) {
    EXPECT_EQ(x, y);
    sx += x;
    sy += y;
  }
  EXPECT_NEAR(sx, 1.0, 1e-12);
  EXPECT_NEAR(sy, 1.0, 1e-12);
}

TEST(QqDataTest, ProjectionSpikes) {
  Drbg rng(Key256{});
  BitString bits(20000);
  for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = i % 2;
  LatentTensor y = ProjectionEmbed(bits, 20000, rng);
  std::vector<double> sample(y.values().begin(), y.values().end());
  std::vector<double> ref = Gaussians(31, 20000);
  auto qq = QqData(sample, ref);
  // Bin width 0.06: 0 -> bin 50, +sqrt2 -> bin 73, -sqrt2 -> bin 26.
  for (int bin : {26, 50, 73}) EXPECT_GT(qq[bin].second, 0.2) << bin;
  EXPECT_LT(qq[50].first, 0.05);
}

TEST(PlanCapacityTest, ThreeSigmaMargin) {
  EmbedParams base = MakeEmbedParams(0.3, 6, Scheduler::kDual, 256);
  // Independent recomputation of the sizing rule.
  const double q = 2 * (1 - 0.6179114221889527);
  const double slots = 16384 * q - 3 * std::sqrt(16384 * q * (1 - q));
  const std::size_t record_bytes = static_cast<std::size_t>(slots / 6) / 8;
  CapacityPlan plan = PlanCapacity(0.3, 6, base);
  EXPECT_EQ(plan.capacity_bits, record_bytes * 8);
  EXPECT_EQ(plan.msg_len_bytes, record_bytes - 2 - 5);
  EXPECT_EQ(plan.capacity_bits, 2056u);
  EXPECT_EQ(PlanCapacity(3.0, 16, base).msg_len_bytes, 0u);
}

TEST(GridSearchTest, NoiselessChannelIsFullyReliable) {
  GridConfig cfg;
  cfg.taus = {0.0, 0.3, 1.0};
  cfg.rhos = {2, 6, 16};
  cfg.trials = 3;
  cfg.base = MakeEmbedParams(0.3, 6, Scheduler::kDual, 256);
  cfg.channel.dual = true;
  auto rows = GridSearch(cfg);
  ASSERT_EQ(rows.size(), 9u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    EXPECT_EQ(r.tau, cfg.taus[i / 3]);
    EXPECT_EQ(r.rho, cfg.rhos[i % 3]);
    EXPECT_EQ(r.capacity_bits, PlanCapacity(r.tau, r.rho, cfg.base).capacity_bits);
    if (r.capacity_bits > 0) {
      EXPECT_EQ(r.reliability, 1.0);
      EXPECT_EQ(r.expected_bits, static_cast<double>(r.capacity_bits));
    }
    if (i % 3 > 0) EXPECT_LE(r.expected_bits, rows[i - 1].expected_bits);
  }
}

TEST(GridSearchTest, ReliabilityFallsWithNoise) {
  GridConfig cfg;
  cfg.trials = 20;
  cfg.base = MakeEmbedParams(0.3, 6, Scheduler::kDual, 256);
  cfg.channel.dual = true;
  double prev = 1.1;
  for (double sigma : {0.0, 0.8, 1.2, 3.0}) {
    cfg.channel.sigma = sigma;
    double rel = EvaluateCell(0.3, 8, cfg, 0).reliability();
    EXPECT_LE(rel, prev);
    prev = rel;
  }
  EXPECT_EQ(prev, 0.0);
}

TEST(CalibrateSigmaTest, HitsTarget) {
  GridConfig cfg;
  cfg.trials = 50;
  cfg.base = MakeEmbedParams(0.3, 6, Scheduler::kDual, 256);
  cfg.channel.dual = true;
  const double sigma = CalibrateSigma(0.5, 0.3, 8, cfg, 0, 3, 12);
  cfg.channel.sigma = sigma;
  EXPECT_NEAR(EvaluateCell(0.3, 8, cfg, 0).reliability(), 0.5, 0.1);
}

TEST(SimulateTest, NoiselessAndFixedMessage) {
  ParamTableRow row{0, "m", "p", MakeEmbedParams(0.3, 4, Scheduler::kSingle, 16, 5, 10, 4096)};
  row.params.latent_shape = {4096};
  ParamTable table{{row}};
  SimulationConfig cfg;
  cfg.trials = 20;
  cfg.message = ToBytes("fixed");
  SimulationResult r = Simulate(table, cfg);
  EXPECT_EQ(r.trials, 20u);
  EXPECT_EQ(r.successes, 20u);
  EXPECT_EQ(r.false_accepts, 0u);
  EXPECT_EQ(r.bit_accuracy, 1.0);
  cfg.channel.sigma = 50.0;
  r = Simulate(table, cfg);
  EXPECT_EQ(r.successes, 0u);
  EXPECT_EQ(r.false_accepts, 0u);
  EXPECT_NEAR(r.bit_accuracy, 0.5, 0.05);
}

TEST(CsvTest, Headers) {
  std::ostringstream g, roc, qq, ks;
  std::vector<GridResult> rows{{0.3, 6, 2056, 0.5, 1028}};
  WriteGridCsv(rows, g);
  EXPECT_EQ(g.str(), "tau,rho,capacity_bits,reliability,expected_bits\n0.3,6,2056,0.5,1028\n");
  std::vector<RocPoint> pts{{0, 0}, {1, 1}};
  WriteRocCsv(pts, roc);
  EXPECT_EQ(roc.str(), "fpr,tpr\n0,0\n1,1\n");
  std::vector<std::pair<double, double>> q{{0.25, 0.5}};
  WriteQqCsv(q, qq);
  EXPECT_EQ(qq.str(), "ref_prop,sample_prop\n0.25,0.5\n");
  WriteKsCsv(KsResult{0.125, 1, 3, 4}, ks);
  EXPECT_EQ(ks.str(), "d,p,n1,n2\n0.125,1,3,4\n");
}

}  // namespace
}  // namespace lsteg
