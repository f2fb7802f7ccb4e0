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

#include "lsteg/params.h"

#include <gtest/gtest.h>

#include <random>

#include "lsteg/errors.h"

namespace lsteg {
namespace {

constexpr char kOneRow[] =
    "row_id,model_id,prompt,tau,rho,scheduler,msg_len_bytes,tag_len_bytes,"
    "max_errs,latent_count\n"
    "0,sd-v1-4,golden retriever,0.3,6,dual,256,5,10,16384\n";

TEST(ParamsTest, LoadsOneRow) {
  ParamTable t = LoadTable(kOneRow);
  ASSERT_EQ(t.rows.size(), 1u);
  const auto& row = t.rows[0];
  EXPECT_EQ(row.row_id, 0);
  EXPECT_EQ(row.model_id, "sd-v1-4");
  EXPECT_EQ(row.prompt, "golden retriever");
  EXPECT_DOUBLE_EQ(row.params.tau, 0.3);
  EXPECT_EQ(row.params.rho, 6);
  EXPECT_EQ(row.params.scheduler, Scheduler::kDual);
  EXPECT_EQ(row.params.msg_len_bytes, 256u);
  EXPECT_EQ(row.params.tag_len_bytes, 5u);
  EXPECT_EQ(row.params.max_errs, 10u);
  EXPECT_EQ(row.params.latent_count, 16384u);
  EXPECT_EQ(row.params.latent_shape, (std::vector<std::size_t>{4, 64, 64}));
}

TEST(ParamsTest, EmptyInputIsRejected) {
  EXPECT_THROW(LoadTable(""), ParseError);
  EXPECT_THROW(LoadTable(std::string(kParamTableHeader) + "\n"), ParseError);
}

TEST(ParamsTest, InvalidRowsAreRejected) {
  const std::string h = std::string(kParamTableHeader) + "\n";
  EXPECT_THROW(LoadTable(h + "0,m,p,0.3,0,dual,256,5,10,16384\n"), ParseError);
  EXPECT_THROW(LoadTable(h + "0,m,p,-0.1,6,dual,256,5,10,16384\n"), ParseError);
  EXPECT_THROW(LoadTable(h + "0,m,p,0.3,6,edict,256,5,10,16384\n"), ParseError);
  EXPECT_THROW(LoadTable(h + "0,m,p,0.3,6,dual,0,5,10,16384\n"), ParseError);
  EXPECT_THROW(LoadTable(h + "0,m,p,0.3,6,dual,256,5,10\n"), ParseError);
  EXPECT_THROW(LoadTable(h + "0,m,p,abc,6,dual,256,5,10,16384\n"), ParseError);
  EXPECT_THROW(LoadTable(h + "0,m,\"p,6,dual,256,5,10,16384\n"), ParseError);
  EXPECT_THROW(LoadTable("wrong,header\n0,m,p,0.3,6,dual,256,5,10,16384\n"),
               ParseError);
}

TEST(ParamsTest, DuplicateRowIdIsRejected) {
  const std::string h = std::string(kParamTableHeader) + "\n";
  EXPECT_THROW(LoadTable(h + "1,m,p,0.3,6,dual,256,5,10,16384\n"
                             "1,m,q,0.3,6,dual,256,5,10,16384\n"),
               ParseError);
}

TEST(ParamsTest, QuotedPromptWithComma) {
  const std::string h = std::string(kParamTableHeader) + "\r\n";
  ParamTable t = LoadTable(h + "3,m,\"a dog, \"\"sitting\"\"\",0.5,2,single,8,5,10,64\r\n");
  EXPECT_EQ(t.rows[0].prompt, "a dog, \"sitting\"");
  EXPECT_EQ(t.rows[0].params.latent_shape, (std::vector<std::size_t>{4, 4, 4}));
  EXPECT_EQ(LoadTable(SerializeTable(t)), t);
}

TEST(ParamsTest, NonSquareLatentCountIsFlat) {
  EXPECT_EQ(DefaultLatentShape(8), (std::vector<std::size_t>{8}));
  EXPECT_EQ(DefaultLatentShape(4096), (std::vector<std::size_t>{4, 32, 32}));
  EXPECT_EQ(DefaultLatentShape(1), (std::vector<std::size_t>{1}));
}

TEST(ParamsTest, CiphertextBitLength) {
  EXPECT_EQ(CiphertextBitLen(MakeEmbedParams(0.3, 6, Scheduler::kDual, 256, 5)), 2104u);
  EXPECT_EQ(CiphertextBitLen(MakeEmbedParams(0.3, 6, Scheduler::kDual, 1, 5)), 64u);
  EXPECT_EQ(CiphertextBitLen(MakeEmbedParams(0.3, 6, Scheduler::kDual, 1, 0)), 24u);
}

TEST(ParamsTest, ValidationIsTotal) {
  EmbedParams p;
  p.latent_shape = {4, 64, 63};
  EXPECT_THROW(p.Validate(), InvalidParams);
  EXPECT_THROW(MakeEmbedParams(0.3, 6, Scheduler::kDual, 8, 65), InvalidParams);
  EXPECT_NO_THROW(MakeEmbedParams(0.0, 1, Scheduler::kSingle, 1, 0, 0, 1));
}

// Random valid tables survive a serialize/parse round trip.
TEST(ParamsTest, RoundTripProperty) {
  std::mt19937_64 rng(42);
  const std::string alphabet = "abc ,\"xyz-_";
  for (int iter = 0; iter < 200; ++iter) {
    ParamTable t;
    int rows = 1 + static_cast<int>(rng() % 5);
    for (int r = 0; r < rows; ++r) {
      ParamTableRow row;
      row.row_id = r * 7 - 3;
      for (int c = 0; c < 6; ++c) row.prompt.push_back(alphabet[rng() % alphabet.size()]);
      row.model_id = "model" + std::to_string(rng() % 100);
      std::uniform_real_distribution<double> tau(0.0, 2.0);
      row.params = MakeEmbedParams(tau(rng), 1 + static_cast<int>(rng() % 16),
                                   rng() % 2 ? Scheduler::kDual : Scheduler::kSingle,
                                   1 + rng() % 300, rng() % 9, rng() % 12,
                                   rng() % 2 ? 16384 : 8 + rng() % 100);
      t.rows.push_back(row);
    }
    ASSERT_EQ(LoadTable(SerializeTable(t)), t);
  }
}

}  // namespace
}  // namespace lsteg
