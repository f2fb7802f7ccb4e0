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

// lsteg: command-line front end for embedding, recovery and the experiment
// harness. Exit codes: 0 success, 1 recovery failure, 2 input or format error.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lsteg/analysis.h"
#include "lsteg/channel.h"
#include "lsteg/codec.h"
#include "lsteg/crypto.h"
#include "lsteg/errors.h"
#include "lsteg/game.h"
#include "lsteg/params.h"

namespace {

using namespace lsteg;

constexpr int kExitOk = 0;
constexpr int kExitRecoveryFailed = 1;
constexpr int kExitInput = 2;

// Used whenever --seed is omitted so experiment runs reproduce by default.
constexpr char kDefaultSeedHex[] =
    "0000000000000000000000000000000000000000000000000000000000000000";

std::string Fmt(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

bool IsUtf8(const Bytes& b) {
  std::size_t i = 0;
  while (i < b.size()) {
    const std::uint8_t c = b[i];
    std::size_t n;
    std::uint32_t cp;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xe0) == 0xc0) {
      n = 1, cp = c & 0x1f;
    } else if ((c & 0xf0) == 0xe0) {
      n = 2, cp = c & 0x0f;
    } else if ((c & 0xf8) == 0xf0) {
      n = 3, cp = c & 0x07;
    } else {
      return false;
    }
    if (i + n >= b.size()) return false;
    for (std::size_t j = 1; j <= n; ++j) {
      if ((b[i + j] & 0xc0) != 0x80) return false;
      cp = (cp << 6) | (b[i + j] & 0x3f);
    }
    static constexpr std::uint32_t kMin[] = {0, 0x80, 0x800, 0x10000};
    if (cp < kMin[n] || cp > 0x10ffff || (cp >= 0xd800 && cp <= 0xdfff)) return false;
    i += n + 1;
  }
  return true;
}

Bytes ReadFileBytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

// "a,b,c" or "start:stop:step" (inclusive).
std::vector<double> ParseRealList(const std::string& text) {
  auto number = [](std::string_view s) {
    double v;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) {
      throw ParseError("bad number '" + std::string(s) + "'");
    }
    return v;
  };
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    std::vector<double> parts;
    std::stringstream ss(text);
    for (std::string tok; std::getline(ss, tok, ':');) parts.push_back(number(tok));
    if (parts.size() != 3 || parts[2] <= 0 || parts[1] < parts[0]) {
      throw ParseError("range must be start:stop:step");
    }
    const auto steps = static_cast<long>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9));
    for (long i = 0; i <= steps; ++i) {
      out.push_back(std::round((parts[0] + i * parts[2]) * 1e9) / 1e9);
    }
  } else {
    std::stringstream ss(text);
    for (std::string tok; std::getline(ss, tok, ',');) out.push_back(number(tok));
  }
  if (out.empty()) throw ParseError("empty list");
  return out;
}

std::vector<int> ParseIntList(const std::string& text) {
  std::vector<int> out;
  for (double v : ParseRealList(text)) {
    if (v != std::floor(v) || v < 1) throw ParseError("rho values must be integers >= 1");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

struct ChannelFlags {
  double sigma = 0;
  std::string preset;
  double corr = 0;
  std::string seed_hex = kDefaultSeedHex;

  void Add(CLI::App* cmd) {
    cmd->add_option("--sigma", sigma, "Per-component inversion noise std dev");
    cmd->add_option("--preset", preset, "Noise preset: png, tiff, bmp, jpg, blur")
        ->excludes("--sigma");
    cmd->add_option("--corr", corr, "Noise correlation between dual copies");
    cmd->add_option("--seed", seed_hex, "Channel seed, 64 hex chars");
  }

  ChannelModel Model() const {
    ChannelModel m;
    m.sigma = preset.empty() ? sigma : SigmaForPreset(FindPreset(preset));
    m.corr = corr;
    m.rng_seed = KeyFromHex(seed_hex);
    m.Validate();
    return m;
  }
};

// Single-row table for experiments that do not take --table: tau 0.3,
// rho 6, largest message the k-component latent reliably carries.
ParamTable ExperimentTable(std::size_t k, Scheduler scheduler) {
  EmbedParams base = MakeEmbedParams(0.3, 6, scheduler, 1, 5, 10, k);
  CapacityPlan plan = PlanCapacity(0.3, 6, base);
  if (plan.msg_len_bytes == 0) throw InvalidParams("latent count too small");
  base.msg_len_bytes = plan.msg_len_bytes;
  return ParamTable{{ParamTableRow{0, "simulated", "", base}}};
}

Scheme ParseScheme(const std::string& s) {
  if (s == "ours") return Scheme::kOurs;
  if (s == "projection") return Scheme::kProjection;
  throw ParseError("scheme must be ours or projection");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Covert messages in diffusion initial latents"};
  app.require_subcommand(1);

  std::string key_hex, table_path, msg, msg_file, out_path, in_path;
  std::uint64_t ctr = 0;
  std::size_t trials = 100, n = 500, k = 4096;
  std::string scheme_name = "ours", taus = "0:1.5:0.1", rhos = "1:16:1";
  std::optional<double> calibrate;
  double anchor_tau = 0.3;
  int anchor_rho = 8;
  bool single = false;
  ChannelFlags chan;

  auto* keygen = app.add_subcommand("keygen", "Print a fresh 256-bit key as hex");

  auto* embed = app.add_subcommand("embed", "Encrypt and embed a message into latents");
  embed->add_option("--key", key_hex, "Secret key, 64 hex chars")->required();
  embed->add_option("--ctr", ctr, "Message counter")->required();
  embed->add_option("--table", table_path, "Parameter table CSV")->required()->check(CLI::ExistingFile);
  auto* msg_opt = embed->add_option("--msg", msg, "Message as UTF-8 text");
  embed->add_option("--msg-file", msg_file, "Message as raw bytes from a file")->excludes(msg_opt);
  embed->add_option("--out", out_path, "Output LSTG file")->required();

  auto* recover = app.add_subcommand("recover", "Recover a message from latents");
  recover->add_option("--key", key_hex, "Secret key, 64 hex chars")->required();
  recover->add_option("--ctr", ctr, "Message counter")->required();
  recover->add_option("--table", table_path, "Parameter table CSV")->required()->check(CLI::ExistingFile);
  recover->add_option("--in", in_path, "Input LSTG file")->required();

  auto* simulate = app.add_subcommand("simulate", "Reliability through the simulated channel");
  simulate->add_option("--key", key_hex, "Secret key, 64 hex chars")->required();
  simulate->add_option("--ctr", ctr, "First message counter");
  simulate->add_option("--table", table_path, "Parameter table CSV")->required()->check(CLI::ExistingFile);
  simulate->add_option("--msg", msg, "Fixed message; random full-length messages if omitted");
  simulate->add_option("--trials", trials, "Number of round trips")->check(CLI::PositiveNumber);
  chan.Add(simulate);

  auto* grid = app.add_subcommand("gridsearch", "Expected bits received over tau x rho");
  grid->add_option("--taus", taus, "Thresholds: list a,b,c or range start:stop:step");
  grid->add_option("--rhos", rhos, "Redundancies: list or range");
  grid->add_option("--trials", trials, "Round trips per cell")->check(CLI::PositiveNumber);
  grid->add_option("--table", table_path, "Take scheduler and sizes from row 0 of this table")
      ->check(CLI::ExistingFile);
  grid->add_flag("--single", single, "Single-latent scheduler (default dual)");
  grid->add_option("--calibrate", calibrate,
                   "Bisect sigma so the anchor cell reaches this reliability");
  grid->add_option("--anchor-tau", anchor_tau, "Calibration anchor threshold");
  grid->add_option("--anchor-rho", anchor_rho, "Calibration anchor redundancy");
  grid->add_option("--out", out_path, "Write CSV here instead of stdout");
  chan.Add(grid);

  auto* attack = app.add_subcommand("attack", "Histogram distinguisher, AUC and ROC");
  auto* kstest = app.add_subcommand("kstest", "Two-sample KS, natural vs embedded latents");
  for (auto* cmd : {attack, kstest}) {
    cmd->add_option("--scheme", scheme_name, "ours or projection");
    cmd->add_option("--n", n, "Latent sets per class");
    cmd->add_option("--k", k, "Latent components per set");
    chan.Add(cmd);
  }
  attack->add_option("--out", out_path, "Write ROC CSV here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*keygen) {
      Key256 key;
      crypto::RandomBytes(key);
      std::cout << HexEncode(key) << "\n";
      return kExitOk;
    }

    if (*embed) {
      const SecretKey key = SecretKey::FromHex(key_hex);
      const ParamTable table = LoadTableFile(table_path);
      const Bytes message = msg_file.empty() ? ToBytes(msg) : ReadFileBytes(msg_file);
      WriteLatentsFile(Send(message, key, ctr, table), out_path);
      return kExitOk;
    }

    if (*recover) {
      const SecretKey key = SecretKey::FromHex(key_hex);
      const ParamTable table = LoadTableFile(table_path);
      const std::optional<Bytes> message = Receive(ReadLatentsFile(in_path), key, ctr, table);
      if (!message) {
        std::cout << "FAIL\n";
        return kExitRecoveryFailed;
      }
      if (IsUtf8(*message)) {
        std::cout.write(reinterpret_cast<const char*>(message->data()),
                        static_cast<std::streamsize>(message->size()));
        std::cout << "\n";
      } else {
        std::cout << HexEncode(*message) << "\n";
      }
      return kExitOk;
    }

    if (*simulate) {
      SimulationConfig cfg;
      cfg.key = SecretKey::FromHex(key_hex);
      cfg.first_ctr = ctr;
      cfg.trials = trials;
      cfg.channel = chan.Model();
      if (simulate->count("--msg")) cfg.message = ToBytes(msg);
      cfg.message_seed = cfg.channel.rng_seed;
      const SimulationResult r = Simulate(LoadTableFile(table_path), cfg);
      std::cout << "sigma,corr,trials,reliability,bit_accuracy\n"
                << Fmt(cfg.channel.sigma) << "," << Fmt(cfg.channel.corr) << ","
                << r.trials << "," << Fmt(r.reliability()) << "," << Fmt(r.bit_accuracy)
                << "\n";
      if (r.false_accepts > 0) std::cerr << "false accepts: " << r.false_accepts << "\n";
      return kExitOk;
    }

    if (*grid) {
      GridConfig cfg;
      cfg.taus = ParseRealList(taus);
      cfg.rhos = ParseIntList(rhos);
      cfg.trials = trials;
      cfg.channel = chan.Model();
      cfg.seed = cfg.channel.rng_seed;
      if (!table_path.empty()) {
        cfg.base = LoadTableFile(table_path).rows.at(0).params;
      } else {
        cfg.base = MakeEmbedParams(0.3, 6, single ? Scheduler::kSingle : Scheduler::kDual, 256);
      }
      cfg.channel.dual = cfg.base.scheduler == Scheduler::kDual;
      if (calibrate) {
        cfg.channel.sigma = CalibrateSigma(*calibrate, anchor_tau, anchor_rho, cfg);
        std::cerr << "calibrated sigma " << Fmt(cfg.channel.sigma) << "\n";
      }
      const std::vector<GridResult> rows = GridSearch(cfg);
      if (out_path.empty()) {
        WriteGridCsv(rows, std::cout);
      } else {
        std::ofstream out(out_path);
        WriteGridCsv(rows, out);
        if (!out) throw IoError("cannot write " + out_path);
      }
      return kExitOk;
    }

    if (*attack || *kstest) {
      if (n < 2) throw InvalidParams("--n must be at least 2");
      ExperimentConfig cfg;
      cfg.scheme = ParseScheme(scheme_name);
      cfg.n = n;
      cfg.channel = chan.Model();
      cfg.table = ExperimentTable(k, Scheduler::kSingle);
      cfg.seed = cfg.channel.rng_seed;
      if (*kstest) {
        WriteKsCsv(RunKsExperiment(cfg), std::cout);
        return kExitOk;
      }
      const AttackResult r = RunAttack(cfg);
      std::cerr << "auc " << Fmt(r.auc) << " (" << r.train_per_class << " train / "
                << r.test_per_class << " test per class)\n";
      std::cout << "auc," << Fmt(r.auc) << "\n";
      if (out_path.empty()) {
        WriteRocCsv(r.roc, std::cout);
      } else {
        std::ofstream out(out_path);
        WriteRocCsv(r.roc, out);
        if (!out) throw IoError("cannot write " + out_path);
      }
      return kExitOk;
    }
  } catch (const MessageTooLong& e) {
    std::cerr << "error: MessageTooLong: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
