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

#ifndef LSTEG_RECORD_H_
#define LSTEG_RECORD_H_

#include <cstdint>
#include <span>

#include "lsteg/crypto.h"
#include "lsteg/params.h"
#include "lsteg/types.h"

namespace lsteg {

// Encrypt-then-MAC record: AES-256-CTR body followed by a truncated
// HMAC-SHA512 tag over the body.
struct CipherRecord {
  Bytes body;  // FrameLenBytes(params)
  Bytes tag;   // params.tag_len_bytes

  // Body bytes followed by tag bytes, no framing.
  Bytes Serialize() const;
  static CipherRecord Parse(std::span<const std::uint8_t> bytes,
                            const EmbedParams& params);

  bool operator==(const CipherRecord&) const = default;
};

// Counter block for block `index` of message `ctr`: ctr in the high 64 bits,
// block index in the low 64 bits, both big-endian.
crypto::CounterBlock RecordCounterBlock(std::uint64_t ctr, std::uint64_t index);

// [len_be16 | message | zero padding to msg_len_bytes].
Bytes EncodeFrame(std::span<const std::uint8_t> message,
                  const EmbedParams& params);

// Throws FrameError on a bad length field or non-zero padding.
Bytes DecodeFrame(std::span<const std::uint8_t> frame, const EmbedParams& params);

Bytes ComputeTag(const Key256& k_mac, std::span<const std::uint8_t> body,
                 std::size_t tag_len);

// Throws MessageTooLong.
CipherRecord Seal(const Key256& k_enc, const Key256& k_mac, std::uint64_t ctr,
                  std::span<const std::uint8_t> message,
                  const EmbedParams& params);

// Throws AuthError on tag mismatch, FrameError when the authenticated frame
// is malformed.
Bytes Open(const Key256& k_enc, const Key256& k_mac, std::uint64_t ctr,
           const CipherRecord& record, const EmbedParams& params);

bool VerifyTag(const Key256& k_mac, std::span<const std::uint8_t> body,
               std::span<const std::uint8_t> tag);

}  // namespace lsteg

#endif  // LSTEG_RECORD_H_
