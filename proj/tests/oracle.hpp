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

// Small-field reference implementations, written against plain machine
// integers and brute-force search so they share no code path with the
// library under test.

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace oracle {

struct Pt {
  bool inf = true;
  long x = 0;
  long y = 0;

  bool operator==(const Pt& o) const {
    if (inf || o.inf) return inf == o.inf;
    return x == o.x && y == o.y;
  }
};

inline long mod(long v, long p) { return ((v % p) + p) % p; }

// Brute-force modular inverse.
inline long inv(long a, long p) {
  a = mod(a, p);
  for (long c = 1; c < p; ++c) {
    if (mod(a * c, p) == 1) return c;
  }
  throw std::runtime_error("oracle: no inverse");
}

inline Pt add(const Pt& P, const Pt& Q, long a, long p) {
  if (P.inf) return Q;
  if (Q.inf) return P;
  if (P.x == Q.x && mod(P.y + Q.y, p) == 0) return Pt{};
  long lambda;
  if (P.x == Q.x) {
    lambda = mod((3 * P.x * P.x + a) * inv(mod(2 * P.y, p), p), p);
  } else {
    lambda = mod((Q.y - P.y) * inv(mod(Q.x - P.x, p), p), p);
  }
  const long x3 = mod(lambda * lambda - P.x - Q.x, p);
  const long y3 = mod(lambda * (P.x - x3) - P.y, p);
  return Pt{false, x3, y3};
}

// Repeated addition, deliberately not double-and-add.
inline Pt mul(long k, const Pt& P, long a, long p) {
  Pt neg = P.inf ? P : Pt{false, P.x, mod(-P.y, p)};
  const Pt& base = k < 0 ? neg : P;
  if (k < 0) k = -k;
  Pt acc{};
  for (long i = 0; i < k; ++i) acc = add(acc, base, a, p);
  return acc;
}

// All points of y^2 = x^3 + ax + b over F_p by exhaustive trial, infinity
// first.
inline std::vector<Pt> enumerate_points(long a, long b, long p) {
  std::vector<Pt> pts{Pt{}};
  for (long x = 0; x < p; ++x) {
    for (long y = 0; y < p; ++y) {
      if (mod(y * y, p) == mod(x * x * x + a * x + b, p)) {
        pts.push_back(Pt{false, x, y});
      }
    }
  }
  return pts;
}

// Reference encryption on the six-point demonstration key:
// C = m*(2,2) + r*(4,0) over F_5.
inline Pt toy_encrypt(long m, long r) {
  const Pt g{false, 2, 2};
  const Pt h{false, 4, 0};
  return add(mul(m, g, 0, 5), mul(r, h, 0, 5), 0, 5);
}

// Small modular exponentiation for the modular-backend oracle.
inline long powmod(long base, long exp, long m) {
  long result = 1;
  base = mod(base, m);
  for (long i = 0; i < exp; ++i) result = mod(result * base, m);
  return result;
}

}  // namespace oracle
