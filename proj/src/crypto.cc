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

#include "lsteg/crypto.h"

#include <openssl/crypto.h>
#include <openssl/evp.h>
#include <openssl/hmac.h>
#include <openssl/rand.h>

#include <algorithm>
#include <utility>

#include "lsteg/errors.h"

namespace lsteg::crypto {

namespace {

EVP_CIPHER_CTX* AsCtx(void* p) { return static_cast<EVP_CIPHER_CTX*>(p); }

}  // namespace

Aes256CtrStream::Aes256CtrStream(const Key256& key,
                                 const CounterBlock& counter) {
  EVP_CIPHER_CTX* ctx = EVP_CIPHER_CTX_new();
  if (ctx == nullptr) throw CryptoError("EVP_CIPHER_CTX_new failed");
  if (EVP_EncryptInit_ex(ctx, EVP_aes_256_ctr(), nullptr, key.data(),
                         counter.data()) != 1) {
    EVP_CIPHER_CTX_free(ctx);
    throw CryptoError("AES-256-CTR init failed");
  }
  ctx_ = ctx;
}

Aes256CtrStream::~Aes256CtrStream() {
  if (ctx_ != nullptr) EVP_CIPHER_CTX_free(AsCtx(ctx_));
}

Aes256CtrStream::Aes256CtrStream(Aes256CtrStream&& other) noexcept
    : ctx_(std::exchange(other.ctx_, nullptr)) {}

Aes256CtrStream& Aes256CtrStream::operator=(Aes256CtrStream&& other) noexcept {
  if (this != &other) {
    if (ctx_ != nullptr) EVP_CIPHER_CTX_free(AsCtx(ctx_));
    ctx_ = std::exchange(other.ctx_, nullptr);
  }
  return *this;
}

void Aes256CtrStream::Generate(std::span<std::uint8_t> out) {
  if (out.empty()) return;
  // CTR keystream = encryption of zeros.
  std::fill(out.begin(), out.end(), 0);
  int len = 0;
  if (EVP_EncryptUpdate(AsCtx(ctx_), out.data(), &len, out.data(),
                        static_cast<int>(out.size())) != 1 ||
      static_cast<std::size_t>(len) != out.size()) {
    throw CryptoError("AES-256-CTR update failed");
  }
}

void Aes256CtrXor(const Key256& key, const CounterBlock& counter,
                  std::span<std::uint8_t> data) {
  if (data.empty()) return;
  Aes256CtrStream stream(key, counter);
  Bytes keystream(data.size());
  stream.Generate(keystream);
  for (std::size_t i = 0; i < data.size(); ++i) data[i] ^= keystream[i];
}

std::array<std::uint8_t, kHmacSha512Size> HmacSha512(
    std::span<const std::uint8_t> key, std::span<const std::uint8_t> data) {
  std::array<std::uint8_t, kHmacSha512Size> out{};
  unsigned int out_len = 0;
  // HMAC() rejects a null data pointer on some OpenSSL builds.
  static const std::uint8_t kEmpty = 0;
  const std::uint8_t* p = data.empty() ? &kEmpty : data.data();
  if (HMAC(EVP_sha512(), key.data(), static_cast<int>(key.size()), p,
           data.size(), out.data(), &out_len) == nullptr ||
      out_len != kHmacSha512Size) {
    throw CryptoError("HMAC-SHA512 failed");
  }
  return out;
}

bool ConstantTimeEqual(std::span<const std::uint8_t> a,
                       std::span<const std::uint8_t> b) {
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  return CRYPTO_memcmp(a.data(), b.data(), a.size()) == 0;
}

void RandomBytes(std::span<std::uint8_t> out) {
  if (out.empty()) return;
  if (RAND_bytes(out.data(), static_cast<int>(out.size())) != 1) {
    throw EntropyUnavailable("OS entropy source unavailable");
  }
}

}  // namespace lsteg::crypto
