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

#ifndef LSTEG_ERRORS_H_
#define LSTEG_ERRORS_H_

#include <stdexcept>
#include <string>

namespace lsteg {

// Base class for every error raised by the library. Each subclass names one
// failure mode so callers (and the CLI exit-code mapping) can dispatch on it.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parameter table could not be parsed, or a row failed validation.
class ParseError : public Error {
 public:
  using Error::Error;
};

// An EmbedParams value violates one of its invariants.
class InvalidParams : public Error {
 public:
  using Error::Error;
};

class MessageTooLong : public Error {
 public:
  using Error::Error;
};

// The realized mask has fewer slots than the expanded ciphertext needs.
class CapacityExceeded : public Error {
 public:
  using Error::Error;
};

class MaskTooSmall : public Error {
 public:
  using Error::Error;
};

// Tag mismatch: bits were lost in the channel, or the record was tampered.
class AuthError : public Error {
 public:
  using Error::Error;
};

// Tag verified but the decrypted frame is malformed. This indicates a bug on
// one side of the channel, never channel noise.
class FrameError : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class EmptySample : public Error {
 public:
  using Error::Error;
};

class DegenerateLabels : public Error {
 public:
  using Error::Error;
};

class EntropyUnavailable : public Error {
 public:
  using Error::Error;
};

// Underlying cryptographic library failure.
class CryptoError : public Error {
 public:
  using Error::Error;
};

}  // namespace lsteg

#endif  // LSTEG_ERRORS_H_
