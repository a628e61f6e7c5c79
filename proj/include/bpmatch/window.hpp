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

#include <cstdint>

#include "bpmatch/bigint.hpp"
#include "bpmatch/errors.hpp"

namespace bpmatch {

// Closed interval of plaintexts the decryptor is willing to search. Both
// backends decrypt "small" messages only: the discrete-log backend because
// recovery is a baby-step/giant-step search, the modular backend because a
// signed value must be told apart from its huge modular alias.
class PlaintextWindow {
 public:
  static PlaintextWindow closed(const BigInt& lo, const BigInt& hi) {
    if (lo > hi) throw InvalidParams("PlaintextWindow: lo > hi");
    BigInt width = hi - lo + 1;
    if (width > BigInt(1) << 32) {
      throw InvalidParams("PlaintextWindow: wider than 2^32");
    }
    return PlaintextWindow(lo, hi);
  }

  // [-2^20, 2^20]; comfortably covers blinded shares used by the protocol.
  static PlaintextWindow default_signed() {
    const BigInt m = BigInt(1) << 20;
    return PlaintextWindow(-m, m);
  }

  const BigInt& lo() const { return lo_; }
  const BigInt& hi() const { return hi_; }
  BigInt width() const { return hi_ - lo_ + 1; }

  bool contains(const BigInt& v) const { return lo_ <= v && v <= hi_; }

 private:
  PlaintextWindow(BigInt lo, BigInt hi) : lo_(std::move(lo)), hi_(std::move(hi)) {}

  BigInt lo_;
  BigInt hi_;
};

// All in-window representatives of `residue` mod `modulus` are
// residue + k*modulus; pick the one nearest zero (ties -> nonnegative).
// Returns nullopt when no representative lands in the window.
inline std::optional<BigInt> lift_residue_into_window(
    const BigInt& residue, const BigInt& modulus, const PlaintextWindow& w) {
  if (modulus <= 0) throw InvalidParams("lift_residue_into_window: modulus");
  const BigInt r = mod(residue, modulus);
  // Smallest k with r + k*modulus >= lo:  k = ceil((lo - r) / modulus).
  BigInt k;
  {
    BigInt num = w.lo() - r;
    mpz_cdiv_q(k.get_mpz_t(), num.get_mpz_t(), modulus.get_mpz_t());
  }
  std::optional<BigInt> best;
  for (BigInt cand = r + k * modulus; cand <= w.hi(); cand += modulus) {
    if (cand < w.lo()) continue;
    if (!best) {
      best = cand;
      continue;
    }
    const BigInt best_abs = abs(*best);
    const BigInt cand_abs = abs(cand);
    if (cand_abs < best_abs || (cand_abs == best_abs && cand > *best)) {
      best = cand;
    }
  }
  return best;
}

}  // namespace bpmatch
