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

#ifndef LSTEG_ANALYSIS_H_
#define LSTEG_ANALYSIS_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "lsteg/channel.h"
#include "lsteg/keyschedule.h"
#include "lsteg/latent.h"
#include "lsteg/params.h"
#include "lsteg/types.h"

namespace lsteg {

double NormalCdf(double x);

// Probability that a N(0, 1) component clears the threshold: 2 (1 - Phi(tau)).
double SlotSurvival(double tau);

// Expected capacity in bits per pixel of a 64x64 image with four latent
// channels per pixel.
double ExpectedCapacityBpp(double tau, int rho);

// ---------------------------------------------------------------------------
// Two-sample Kolmogorov-Smirnov.

struct KsResult {
  double d = 0;
  double p = 1;
  std::size_t n1 = 0;
  std::size_t n2 = 0;
};

// Asymptotic Kolmogorov tail Q(lambda) = 2 sum (-1)^(k-1) exp(-2 k^2 lambda^2).
double KolmogorovQ(double lambda);

// Throws EmptySample.
KsResult Ks2(std::span<const double> a, std::span<const double> b);

// ---------------------------------------------------------------------------
// Message-projection baseline: bit 0 -> 0, bit 1 -> +-sqrt(2) with a random
// sign. Components beyond bits.size() are fresh N(0, 1).
LatentTensor ProjectionEmbed(std::span<const std::uint8_t> bits, std::size_t k,
                             Drbg& rng);

// ---------------------------------------------------------------------------
// Histogram features and the linear distinguisher.

struct HistogramFeatures {
  std::vector<std::uint64_t> counts;
  double lo = -3;
  double hi = 3;

  std::uint64_t total() const;
};

// Equal-width, right-open bins; out-of-range values land in the edge bins.
HistogramFeatures Histogram(std::span<const float> values, std::size_t bins = 10,
                            double lo = -3, double hi = 3);

// Logistic regression over bin proportions, standardized with statistics of
// the training set.
class LinearClassifier {
 public:
  // Full-batch gradient descent from zero weights. Deterministic.
  static LinearClassifier Train(std::span<const HistogramFeatures> pos,
                                std::span<const HistogramFeatures> neg,
                                int epochs = 2000, double lr = 0.5);

  // P(positive class) in (0, 1).
  double Score(const HistogramFeatures& x) const;

  const std::vector<double>& weights() const { return weights_; }
  double bias() const { return bias_; }

 private:
  std::vector<double> Normalize(const HistogramFeatures& x) const;

  std::vector<double> mean_;
  std::vector<double> scale_;
  std::vector<double> weights_;
  double bias_ = 0;
};

// Mann-Whitney AUC, ties count one half. Throws DegenerateLabels when a class
// is missing.
double Auc(std::span<const double> scores, std::span<const std::uint8_t> labels);

struct RocPoint {
  double fpr;
  double tpr;
};

// Thresholds at every distinct score, from (0, 0) to (1, 1).
std::vector<RocPoint> RocCurve(std::span<const double> scores,
                               std::span<const std::uint8_t> labels);

// Per-bin (reference proportion, sample proportion) pairs.
std::vector<std::pair<double, double>> QqData(std::span<const double> sample,
                                              std::span<const double> reference,
                                              std::size_t bins = 100,
                                              double lo = -3, double hi = 3);

// ---------------------------------------------------------------------------
// Reliability experiments.

struct SimulationResult {
  std::size_t trials = 0;
  std::size_t successes = 0;
  std::size_t false_accepts = 0;
  double bit_accuracy = 0;  // first-copy ciphertext bits, averaged

  double reliability() const {
    return trials == 0 ? 0.0 : static_cast<double>(successes) / trials;
  }
};

struct SimulationConfig {
  SecretKey key;
  std::uint64_t first_ctr = 0;
  std::size_t trials = 100;
  ChannelModel channel;
  // Empty: each trial sends random bytes filling the row's capacity.
  std::optional<Bytes> message;
  // Seed for random messages.
  Key256 message_seed{};
};

// Trial t sends with counter first_ctr + t through channel.ForTrial(t), in
// dual mode iff the selected row is. Trials that hit CapacityExceeded count as
// failures.
SimulationResult Simulate(const ParamTable& table, const SimulationConfig& config);

// Record sizing for a grid cell: the expected slot count minus three
// binomial standard deviations, divided by rho, rounded down to whole bytes.
struct CapacityPlan {
  std::size_t msg_len_bytes = 0;  // 0 = no usable record fits
  std::size_t capacity_bits = 0;  // record bits (frame + tag)
};

CapacityPlan PlanCapacity(double tau, int rho, const EmbedParams& base);

struct GridResult {
  double tau = 0;
  int rho = 1;
  std::size_t capacity_bits = 0;
  double reliability = 0;
  double expected_bits = 0;
};

struct GridConfig {
  std::vector<double> taus;
  std::vector<int> rhos;
  std::size_t trials = 10;
  ChannelModel channel;
  // Scheduler, tag length, max_errs and latent count come from here.
  EmbedParams base;
  Key256 seed{};
};

// Results ordered by tau, then rho.
std::vector<GridResult> GridSearch(const GridConfig& config);

// Reliability of one (tau, rho) cell as used by GridSearch.
SimulationResult EvaluateCell(double tau, int rho, const GridConfig& config,
                              std::uint64_t cell_index);

// Bisection on sigma so the cell's reliability is close to `target`.
// Every evaluation reuses the same seeds.
double CalibrateSigma(double target, double tau, int rho, GridConfig config,
                      double lo = 0.0, double hi = 3.0, int iterations = 20);

// ---------------------------------------------------------------------------
// CSV output.

void WriteGridCsv(std::span<const GridResult> rows, std::ostream& out);
void WriteRocCsv(std::span<const RocPoint> points, std::ostream& out);
void WriteQqCsv(std::span<const std::pair<double, double>> points,
                std::ostream& out);
void WriteKsCsv(const KsResult& result, std::ostream& out);

}  // namespace lsteg

#endif  // LSTEG_ANALYSIS_H_
