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

#ifndef LSTEG_PARAMS_H_
#define LSTEG_PARAMS_H_

#include <cstddef>
#include <cstdint>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace lsteg {

// Single: one latent copy (DDIM-style). Dual: the embedded latents are
// duplicated and decoded twice, enabling diff-set error correction.
enum class Scheduler { kSingle, kDual };

std::string_view SchedulerName(Scheduler s);

// Embedding parameters agreed on by sender and receiver through the table.
struct EmbedParams {
  double tau = 0.3;
  int rho = 6;
  Scheduler scheduler = Scheduler::kDual;
  std::size_t msg_len_bytes = 256;
  std::size_t tag_len_bytes = 5;
  std::size_t max_errs = 10;
  std::size_t latent_count = 16384;
  std::vector<std::size_t> latent_shape = {4, 64, 64};

  // Throws InvalidParams when an invariant does not hold.
  void Validate() const;

  bool operator==(const EmbedParams&) const = default;
};

// [4, s, s] when latent_count / 4 is a perfect square, else [latent_count].
std::vector<std::size_t> DefaultLatentShape(std::size_t latent_count);

// Convenience constructor: fills latent_shape from latent_count and
// validates.
EmbedParams MakeEmbedParams(double tau, int rho, Scheduler scheduler,
                            std::size_t msg_len_bytes,
                            std::size_t tag_len_bytes = 5,
                            std::size_t max_errs = 10,
                            std::size_t latent_count = 16384);

// Length-prefixed plaintext frame size: 2-byte length plus the padded body.
inline std::size_t FrameLenBytes(const EmbedParams& p) {
  return p.msg_len_bytes + 2;
}

inline std::size_t RecordLenBytes(const EmbedParams& p) {
  return FrameLenBytes(p) + p.tag_len_bytes;
}

// Number of ciphertext bits carried by one cover.
inline std::size_t CiphertextBitLen(const EmbedParams& p) {
  return 8 * RecordLenBytes(p);
}

struct ParamTableRow {
  std::int64_t row_id = 0;
  std::string model_id;
  std::string prompt;
  EmbedParams params;

  bool operator==(const ParamTableRow&) const = default;
};

struct ParamTable {
  std::vector<ParamTableRow> rows;

  bool operator==(const ParamTable&) const = default;
};

inline constexpr std::string_view kParamTableHeader =
    "row_id,model_id,prompt,tau,rho,scheduler,msg_len_bytes,tag_len_bytes,"
    "max_errs,latent_count";

// Parses the CSV table format. Throws ParseError on malformed lines,
// duplicate row ids, invalid parameters, or an empty table.
ParamTable LoadTable(std::string_view text);
ParamTable LoadTable(std::istream& in);
ParamTable LoadTableFile(const std::string& path);

// Inverse of LoadTable; fields containing commas or quotes are quoted.
std::string SerializeTable(const ParamTable& table);

}  // namespace lsteg

#endif  // LSTEG_PARAMS_H_
