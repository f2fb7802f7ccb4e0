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

#include "lsteg/record.h"

#include <algorithm>

#include "lsteg/crypto.h"
#include "lsteg/errors.h"

namespace lsteg {

crypto::CounterBlock RecordCounterBlock(std::uint64_t ctr, std::uint64_t index) {
  crypto::CounterBlock block{};
  for (int i = 7; i >= 0; --i) {
    block[i] = static_cast<std::uint8_t>(ctr & 0xff);
    block[8 + i] = static_cast<std::uint8_t>(index & 0xff);
    ctr >>= 8;
    index >>= 8;
  }
  return block;
}

Bytes CipherRecord::Serialize() const {
  Bytes out = body;
  out.insert(out.end(), tag.begin(), tag.end());
  return out;
}

CipherRecord CipherRecord::Parse(std::span<const std::uint8_t> bytes,
                                 const EmbedParams& params) {
  if (bytes.size() != RecordLenBytes(params)) {
    throw FormatError("record length does not match parameters");
  }
  std::size_t body_len = FrameLenBytes(params);
  return {Bytes(bytes.begin(), bytes.begin() + body_len),
          Bytes(bytes.begin() + body_len, bytes.end())};
}

Bytes EncodeFrame(std::span<const std::uint8_t> message,
                  const EmbedParams& params) {
  if (message.size() > params.msg_len_bytes) {
    throw MessageTooLong("message is " + std::to_string(message.size()) +
                         " bytes, row capacity is " +
                         std::to_string(params.msg_len_bytes));
  }
  Bytes frame(FrameLenBytes(params), 0);
  frame[0] = static_cast<std::uint8_t>(message.size() >> 8);
  frame[1] = static_cast<std::uint8_t>(message.size() & 0xff);
  std::copy(message.begin(), message.end(), frame.begin() + 2);
  return frame;
}

Bytes DecodeFrame(std::span<const std::uint8_t> frame,
                  const EmbedParams& params) {
  if (frame.size() != FrameLenBytes(params)) {
    throw FrameError("frame has wrong length");
  }
  std::size_t len = std::size_t{frame[0]} << 8 | frame[1];
  if (len > params.msg_len_bytes) {
    throw FrameError("frame length field exceeds capacity");
  }
  auto body = frame.subspan(2);
  if (std::any_of(body.begin() + len, body.end(),
                  [](std::uint8_t b) { return b != 0; })) {
    throw FrameError("frame padding is not zero");
  }
  return Bytes(body.begin(), body.begin() + len);
}

Bytes ComputeTag(const Key256& k_mac, std::span<const std::uint8_t> body,
                 std::size_t tag_len) {
  auto mac = crypto::HmacSha512(k_mac, body);
  tag_len = std::min(tag_len, mac.size());
  return Bytes(mac.begin(), mac.begin() + tag_len);
}

CipherRecord Seal(const Key256& k_enc, const Key256& k_mac, std::uint64_t ctr,
                  std::span<const std::uint8_t> message,
                  const EmbedParams& params) {
  CipherRecord record;
  record.body = EncodeFrame(message, params);
  crypto::Aes256CtrXor(k_enc, RecordCounterBlock(ctr, 0), record.body);
  record.tag = ComputeTag(k_mac, record.body, params.tag_len_bytes);
  return record;
}

bool VerifyTag(const Key256& k_mac, std::span<const std::uint8_t> body,
               std::span<const std::uint8_t> tag) {
  Bytes expected = ComputeTag(k_mac, body, tag.size());
  return crypto::ConstantTimeEqual(expected, tag);
}

Bytes Open(const Key256& k_enc, const Key256& k_mac, std::uint64_t ctr,
           const CipherRecord& record, const EmbedParams& params) {
  if (record.body.size() != FrameLenBytes(params) ||
      record.tag.size() != params.tag_len_bytes) {
    throw FormatError("record length does not match parameters");
  }
  if (!VerifyTag(k_mac, record.body, record.tag)) {
    throw AuthError("record tag mismatch");
  }
  Bytes frame = record.body;
  crypto::Aes256CtrXor(k_enc, RecordCounterBlock(ctr, 0), frame);
  return DecodeFrame(frame, params);
}

}  // namespace lsteg
