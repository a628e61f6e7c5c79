/*
 * Copyright 2026 The bpmatch Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace bpmatch {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad constructor/function arguments that violate a documented precondition.
class InvalidParams : public Error {
 public:
  using Error::Error;
};

class InversionOfZero : public Error {
 public:
  using Error::Error;
  InversionOfZero() : Error("field inversion of zero") {}
};

class PointNotOnCurve : public Error {
 public:
  using Error::Error;
  PointNotOnCurve() : Error("operand point is not on the curve") {}
};

class UnsupportedCurveForSampling : public Error {
 public:
  using Error::Error;
  UnsupportedCurveForSampling()
      : Error("point sampling needs a = 0, b = 1 and p = 2 (mod 3)") {}
};

class KeyGenExhausted : public Error {
 public:
  using Error::Error;
  KeyGenExhausted() : Error("key generation retries exhausted") {}
};

class BadRandomizer : public Error {
 public:
  using Error::Error;
};

class PlaintextOutOfWindow : public Error {
 public:
  using Error::Error;
  PlaintextOutOfWindow() : Error("no plaintext found in the decode window") {}
};

class MalformedCiphertext : public Error {
 public:
  using Error::Error;
};

class ShareOutOfRange : public Error {
 public:
  using Error::Error;
};

class NoCandidates : public Error {
 public:
  NoCandidates() : Error("a matching session needs at least one candidate") {}
};

// Malformed wire message or unparsable serialized value.
class CodecError : public Error {
 public:
  using Error::Error;
};

class ProtocolAbort : public Error {
 public:
  enum class Reason { PlaintextOutOfWindow, Codec };

  ProtocolAbort(Reason reason, const std::string& what)
      : Error("protocol abort: " + what), reason_(reason) {}

  Reason reason() const { return reason_; }

 private:
  Reason reason_;
};

}  // namespace bpmatch
