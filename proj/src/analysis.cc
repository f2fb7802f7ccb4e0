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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

#include "lsteg/codec.h"
#include "lsteg/errors.h"

namespace lsteg {

double NormalCdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double SlotSurvival(double tau) { return 2.0 * (1.0 - NormalCdf(tau)); }

double ExpectedCapacityBpp(double tau, int rho) {
  if (rho < 1) throw std::invalid_argument("rho must be >= 1");
  return 4.0 * SlotSurvival(tau) / rho;
}

double KolmogorovQ(double lambda) {
  if (lambda <= 0) return 1.0;
  double sum = 0;
  double sign = 2.0;
  for (int j = 1; j <= 100; ++j) {
    double term = sign * std::exp(-2.0 * j * j * lambda * lambda);
    sum += term;
    if (std::abs(term) < 1e-12) return std::clamp(sum, 0.0, 1.0);
    sign = -sign;
  }
  // The series has not converged; this only happens for tiny lambda.
  return 1.0;
}

KsResult Ks2(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw EmptySample("KS2 needs two non-empty samples");
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double n1 = static_cast<double>(x.size());
  const double n2 = static_cast<double>(y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0;
  while (i < x.size() && j < y.size()) {
    double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(i / n1 - j / n2));
  }
  KsResult r;
  r.d = d;
  r.n1 = x.size();
  r.n2 = y.size();
  const double ne = n1 * n2 / (n1 + n2);
  const double sq = std::sqrt(ne);
  r.p = KolmogorovQ((sq + 0.12 + 0.11 / sq) * d);
  return r;
}

LatentTensor ProjectionEmbed(std::span<const std::uint8_t> bits, std::size_t k,
                             Drbg& rng) {
  if (bits.size() > k) throw std::invalid_argument("more bits than components");
  std::vector<float> values(k);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == 0) {
      values[i] = 0.0f;
    } else {
      float v = static_cast<float>(std::numbers::sqrt2);
      values[i] = (rng.NextU64() & 1) ? v : -v;
    }
  }
  std::vector<double> rest(k - bits.size());
  rng.FillGaussian(rest);
  std::copy(rest.begin(), rest.end(), values.begin() + bits.size());
  return LatentTensor(std::move(values));
}

std::uint64_t HistogramFeatures::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

HistogramFeatures Histogram(std::span<const float> values, std::size_t bins,
                            double lo, double hi) {
  if (bins < 1 || !(lo < hi)) throw std::invalid_argument("bad histogram range");
  HistogramFeatures h;
  h.counts.assign(bins, 0);
  h.lo = lo;
  h.hi = hi;
  const double scale = static_cast<double>(bins) / (hi - lo);
  const auto last = static_cast<std::int64_t>(bins) - 1;
  for (float v : values) {
    double pos = std::floor((static_cast<double>(v) - lo) * scale);
    std::int64_t b = pos < 0 ? 0 : pos > static_cast<double>(last)
                                       ? last
                                       : static_cast<std::int64_t>(pos);
    ++h.counts[static_cast<std::size_t>(b)];
  }
  return h;
}

namespace {

std::vector<double> Proportions(const HistogramFeatures& x) {
  const double total = static_cast<double>(std::max<std::uint64_t>(x.total(), 1));
  std::vector<double> out(x.counts.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = x.counts[i] / total;
  return out;
}

double Sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

}  // namespace

std::vector<double> LinearClassifier::Normalize(const HistogramFeatures& x) const {
  std::vector<double> f = Proportions(x);
  if (f.size() != mean_.size()) {
    throw std::invalid_argument("feature dimension does not match classifier");
  }
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = (f[i] - mean_[i]) / scale_[i];
  return f;
}

LinearClassifier LinearClassifier::Train(std::span<const HistogramFeatures> pos,
                                         std::span<const HistogramFeatures> neg,
                                         int epochs, double lr) {
  if (pos.empty() || neg.empty()) {
    throw std::invalid_argument("both classes need training samples");
  }
  const std::size_t dim = pos.front().counts.size();
  std::vector<std::vector<double>> xs;
  std::vector<double> ys;
  for (const auto& h : pos) {
    xs.push_back(Proportions(h));
    ys.push_back(1.0);
  }
  for (const auto& h : neg) {
    xs.push_back(Proportions(h));
    ys.push_back(0.0);
  }
  for (const auto& x : xs) {
    if (x.size() != dim) throw std::invalid_argument("inconsistent feature sizes");
  }
  const double n = static_cast<double>(xs.size());

  LinearClassifier c;
  c.mean_.assign(dim, 0.0);
  c.scale_.assign(dim, 0.0);
  for (const auto& x : xs) {
    for (std::size_t i = 0; i < dim; ++i) c.mean_[i] += x[i] / n;
  }
  for (const auto& x : xs) {
    for (std::size_t i = 0; i < dim; ++i) {
      c.scale_[i] += (x[i] - c.mean_[i]) * (x[i] - c.mean_[i]) / n;
    }
  }
  for (auto& s : c.scale_) s = s > 0 ? std::sqrt(s) : 1.0;
  for (auto& x : xs) {
    for (std::size_t i = 0; i < dim; ++i) x[i] = (x[i] - c.mean_[i]) / c.scale_[i];
  }

  c.weights_.assign(dim, 0.0);
  c.bias_ = 0;
  std::vector<double> grad(dim);
  for (int epoch = 0; epoch < epochs; ++epoch) {
    std::fill(grad.begin(), grad.end(), 0.0);
    double grad_b = 0;
    for (std::size_t s = 0; s < xs.size(); ++s) {
      double z = c.bias_;
      for (std::size_t i = 0; i < dim; ++i) z += c.weights_[i] * xs[s][i];
      double err = Sigmoid(z) - ys[s];
      for (std::size_t i = 0; i < dim; ++i) grad[i] += err * xs[s][i];
      grad_b += err;
    }
    for (std::size_t i = 0; i < dim; ++i) c.weights_[i] -= lr * grad[i] / n;
    c.bias_ -= lr * grad_b / n;
  }
  return c;
}

double LinearClassifier::Score(const HistogramFeatures& x) const {
  std::vector<double> f = Normalize(x);
  double z = bias_;
  for (std::size_t i = 0; i < f.size(); ++i) z += weights_[i] * f[i];
  return Sigmoid(z);
}

double Auc(std::span<const double> scores, std::span<const std::uint8_t> labels) {
  if (scores.size() != labels.size()) {
    throw std::invalid_argument("scores and labels differ in length");
  }
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  double rank_sum = 0;
  double n_pos = 0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
    const double mid_rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t t = i; t < j; ++t) {
      if (labels[order[t]]) {
        rank_sum += mid_rank;
        n_pos += 1;
      }
    }
    i = j;
  }
  const double n_neg = static_cast<double>(scores.size()) - n_pos;
  if (n_pos == 0 || n_neg == 0) {
    throw DegenerateLabels("AUC needs both positive and negative labels");
  }
  return (rank_sum - n_pos * (n_pos + 1) / 2.0) / (n_pos * n_neg);
}

std::vector<RocPoint> RocCurve(std::span<const double> scores,
                               std::span<const std::uint8_t> labels) {
  if (scores.size() != labels.size()) {
    throw std::invalid_argument("scores and labels differ in length");
  }
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  double n_pos = 0;
  for (auto l : labels) n_pos += l ? 1 : 0;
  const double n_neg = static_cast<double>(labels.size()) - n_pos;
  if (n_pos == 0 || n_neg == 0) {
    throw DegenerateLabels("ROC needs both positive and negative labels");
  }
  std::vector<RocPoint> points{{0.0, 0.0}};
  double tp = 0;
  double fp = 0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) {
      (labels[order[j]] ? tp : fp) += 1;
      ++j;
    }
    points.push_back({fp / n_neg, tp / n_pos});
    i = j;
  }
  return points;
}

std::vector<std::pair<double, double>> QqData(std::span<const double> sample,
                                              std::span<const double> reference,
                                              std::size_t bins, double lo,
                                              double hi) {
  if (sample.empty() || reference.empty()) throw EmptySample("QQ data needs samples");
  auto to_float = [](std::span<const double> v) {
    return std::vector<float>(v.begin(), v.end());
  };
  auto hs = Proportions(Histogram(to_float(sample), bins, lo, hi));
  auto hr = Proportions(Histogram(to_float(reference), bins, lo, hi));
  std::vector<std::pair<double, double>> out(bins);
  for (std::size_t i = 0; i < bins; ++i) out[i] = {hr[i], hs[i]};
  return out;
}

SimulationResult Simulate(const ParamTable& table, const SimulationConfig& config) {
  SimulationResult result;
  result.trials = config.trials;
  double bit_acc_sum = 0;
  std::size_t transmitted = 0;
  for (std::size_t t = 0; t < config.trials; ++t) {
    const std::uint64_t ctr = config.first_ctr + t;
    Bytes message;
    if (config.message) {
      message = *config.message;
    } else {
      const auto& row = SelectRow(Derive(config.key, ctr), table);
      message.resize(row.params.msg_len_bytes);
      Drbg rng(DeriveSeed(config.message_seed, "message", ctr));
      rng.Fill(message);
    }
    SendResult sent;
    try {
      sent = SendDetailed(message, config.key, ctr, table);
    } catch (const CapacityExceeded&) {
      continue;
    }
    ChannelModel model = config.channel.ForTrial(t);
    model.dual = sent.latents.dual();
    Latents observed = Transmit(sent.latents, model);
    ReceiveReport report = ReceiveDetailed(observed, config.key, ctr, table);
    ++transmitted;
    std::size_t correct = 0;
    for (std::size_t i = 0; i < sent.ciphertext_bits.size(); ++i) {
      correct += report.first_bits[i] == sent.ciphertext_bits[i];
    }
    bit_acc_sum += static_cast<double>(correct) / sent.ciphertext_bits.size();
    if (report.message) {
      if (*report.message == message) {
        ++result.successes;
      } else {
        ++result.false_accepts;
      }
    }
  }
  result.bit_accuracy = transmitted == 0 ? 0.0 : bit_acc_sum / transmitted;
  return result;
}

CapacityPlan PlanCapacity(double tau, int rho, const EmbedParams& base) {
  if (rho < 1) throw std::invalid_argument("rho must be >= 1");
  const double k = static_cast<double>(base.latent_count);
  const double q = SlotSurvival(tau);
  const double usable = k * q - 3.0 * std::sqrt(k * q * (1.0 - q));
  if (usable <= 0) return {};
  const auto max_bits = static_cast<std::size_t>(std::floor(usable / rho));
  const std::size_t record_bytes = max_bits / 8;
  const std::size_t overhead = 2 + base.tag_len_bytes;
  if (record_bytes <= overhead) return {};
  CapacityPlan plan;
  plan.msg_len_bytes = std::min<std::size_t>(record_bytes - overhead, 0xffff);
  plan.capacity_bits = 8 * (plan.msg_len_bytes + overhead);
  return plan;
}

SimulationResult EvaluateCell(double tau, int rho, const GridConfig& config,
                              std::uint64_t cell_index) {
  CapacityPlan plan = PlanCapacity(tau, rho, config.base);
  if (plan.msg_len_bytes == 0) {
    SimulationResult empty;
    empty.trials = config.trials;
    return empty;
  }
  ParamTableRow row;
  row.row_id = 0;
  row.model_id = "simulated";
  row.params = MakeEmbedParams(tau, rho, config.base.scheduler, plan.msg_len_bytes,
                               config.base.tag_len_bytes, config.base.max_errs,
                               config.base.latent_count);
  ParamTable table{{row}};

  SimulationConfig sim;
  sim.key = SecretKey{DeriveSeed(config.seed, "grid-key", cell_index)};
  sim.first_ctr = 0;
  sim.trials = config.trials;
  sim.channel = config.channel.ForTrial(cell_index);
  sim.message_seed = DeriveSeed(config.seed, "grid-message", cell_index);
  return Simulate(table, sim);
}

std::vector<GridResult> GridSearch(const GridConfig& config) {
  std::vector<GridResult> out;
  std::uint64_t cell = 0;
  for (double tau : config.taus) {
    for (int rho : config.rhos) {
      GridResult r;
      r.tau = tau;
      r.rho = rho;
      r.capacity_bits = PlanCapacity(tau, rho, config.base).capacity_bits;
      r.reliability = EvaluateCell(tau, rho, config, cell++).reliability();
      r.expected_bits = static_cast<double>(r.capacity_bits) * r.reliability;
      out.push_back(r);
    }
  }
  return out;
}

double CalibrateSigma(double target, double tau, int rho, GridConfig config,
                      double lo, double hi, int iterations) {
  for (int i = 0; i < iterations; ++i) {
    const double mid = 0.5 * (lo + hi);
    config.channel.sigma = mid;
    if (EvaluateCell(tau, rho, config, 0).reliability() > target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

namespace {

std::string Num(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

void WriteGridCsv(std::span<const GridResult> rows, std::ostream& out) {
  out << "tau,rho,capacity_bits,reliability,expected_bits\n";
  for (const auto& r : rows) {
    out << Num(r.tau) << ',' << r.rho << ',' << r.capacity_bits << ','
        << Num(r.reliability) << ',' << Num(r.expected_bits) << '\n';
  }
}

void WriteRocCsv(std::span<const RocPoint> points, std::ostream& out) {
  out << "fpr,tpr\n";
  for (const auto& p : points) out << Num(p.fpr) << ',' << Num(p.tpr) << '\n';
}

void WriteQqCsv(std::span<const std::pair<double, double>> points,
                std::ostream& out) {
  out << "ref_prop,sample_prop\n";
  for (const auto& [r, s] : points) out << Num(r) << ',' << Num(s) << '\n';
}

void WriteKsCsv(const KsResult& result, std::ostream& out) {
  out << "d,p,n1,n2\n"
      << Num(result.d) << ',' << Num(result.p) << ',' << result.n1 << ','
      << result.n2 << '\n';
}

}  // namespace lsteg
