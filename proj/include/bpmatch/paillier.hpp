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

#include <string>
#include <utility>

#include "json.hpp"

#include "bpmatch/bigint.hpp"
#include "bpmatch/errors.hpp"
#include "bpmatch/window.hpp"

// Classic modular additively homomorphic encryption: c = G^m * r^N mod N^2
// with G = N+1. Serves as the second backend and the comparison baseline for
// the curve-based scheme. Exponentiations go through the counted powmod so
// benchmark op tallies reflect actual modular multiplications.
namespace bpmatch::paillier {

struct PublicKey {
  unsigned t = 0;   // bit length of each secret prime
  BigInt n;         // modulus N (product of two t-bit primes)
  BigInt n_squared;

  BigInt generator() const { return n + 1; }
};

struct PrivateKey {
  BigInt lambda;  // lcm(p'-1, q'-1)
  BigInt mu;      // (L(G^lambda mod N^2))^-1 mod N
};

struct KeyPair {
  PublicKey pub;
  PrivateKey priv;
};

struct Ciphertext {
  BigInt value;  // in [0, N^2)

  bool operator==(const Ciphertext& o) const { return value == o.value; }
};

namespace detail {

// L(x) = (x - 1) / N, defined on x = 1 mod N.
inline BigInt ell(const BigInt& x, const BigInt& n) { return (x - 1) / n; }

inline KeyPair from_primes(unsigned t, const BigInt& p, const BigInt& q) {
  const BigInt n = p * q;
  const BigInt lambda = lcm(p - 1, q - 1);
  const BigInt n2 = n * n;
  // G = N+1, so G^lambda = 1 + lambda*N mod N^2 and L(G^lambda) = lambda.
  const auto mu = invmod(mod(lambda, n), n);
  if (!mu) throw InvalidParams("paillier: lambda not invertible mod N");
  return KeyPair{PublicKey{t, n, n2}, PrivateKey{lambda, *mu}};
}

}  // namespace detail

inline KeyPair generate_keys(unsigned t, Rng& rng) {
  if (t < 8) throw InvalidParams("generate_keys: security parameter t < 8");
  for (;;) {
    const BigInt p = generate_prime(t, rng);
    const BigInt q = generate_prime(t, rng);
    if (p == q) continue;
    // Needs gcd(N, lambda) = 1 for mu to exist; guaranteed when neither
    // prime divides the other minus one, so just retry on failure.
    const BigInt n = p * q;
    if (gcd(n, lcm(p - 1, q - 1)) != 1) continue;
    return detail::from_primes(t, p, q);
  }
}

// N = 15 demonstration key (primes 3 and 5): lambda = lcm(2,4) = 4,
// mu = 4^-1 mod 15 = 4. Small enough for exhaustive checks.
inline KeyPair toy_fixture() { return detail::from_primes(2, 3, 5); }

// Randomizers must be units mod N; uniform over [1, N) intersected with the
// units (retry on gcd > 1, which at real sizes never triggers).
inline BigInt draw_randomizer(const PublicKey& pk, Rng& rng) {
  for (;;) {
    const BigInt r = 1 + rng.below_big(pk.n - 1);
    if (gcd(r, pk.n) == 1) return r;
  }
}

inline Ciphertext encrypt(const PublicKey& pk, const BigInt& m,
                          const BigInt& r) {
  if (r <= 0 || r >= pk.n || gcd(r, pk.n) != 1) {
    throw BadRandomizer("encrypt: randomizer not a unit in [1, N-1]");
  }
  const BigInt mr = mod(m, pk.n);
  // G^m = (1 + N)^m = 1 + m*N mod N^2; the shortcut skips one counted
  // exponentiation but r^N stays an honest square-and-multiply.
  const BigInt gm = mod(1 + mr * pk.n, pk.n_squared);
  const BigInt rn = counted_powmod(r, pk.n, pk.n_squared);
  return Ciphertext{counted_mulmod(gm, rn, pk.n_squared)};
}

inline BigInt decrypt(const PrivateKey& sk, const PublicKey& pk,
                      const Ciphertext& c) {
  if (c.value <= 0 || c.value >= pk.n_squared ||
      gcd(c.value, pk.n) != 1) {
    throw MalformedCiphertext("decrypt: ciphertext not a unit mod N^2");
  }
  const BigInt x = counted_powmod(c.value, sk.lambda, pk.n_squared);
  return counted_mulmod(detail::ell(x, pk.n), sk.mu, pk.n);
}

// Signed decode shared with the curve backend: the residue's in-window
// representative nearest zero.
inline BigInt decrypt_in_window(const PrivateKey& sk, const PublicKey& pk,
                                const Ciphertext& c,
                                const PlaintextWindow& window) {
  const BigInt residue = decrypt(sk, pk, c);
  const auto lifted = lift_residue_into_window(residue, pk.n, window);
  if (!lifted) throw PlaintextOutOfWindow();
  return *lifted;
}

// Plaintext addition is ciphertext multiplication; the extra unit r^N term
// re-randomizes (it is an encryption of zero).
inline Ciphertext hom_add(const PublicKey& pk, const Ciphertext& c1,
                          const Ciphertext& c2, const BigInt& r) {
  if (r <= 0 || r >= pk.n || gcd(r, pk.n) != 1) {
    throw BadRandomizer("hom_add: randomizer not a unit in [1, N-1]");
  }
  const BigInt prod = counted_mulmod(c1.value, c2.value, pk.n_squared);
  const BigInt rn = counted_powmod(r, pk.n, pk.n_squared);
  return Ciphertext{counted_mulmod(prod, rn, pk.n_squared)};
}

// Plaintext negation is modular inversion of the ciphertext.
inline Ciphertext hom_neg(const PublicKey& pk, const Ciphertext& c) {
  const auto inv = invmod(c.value, pk.n_squared);
  if (!inv) throw MalformedCiphertext("hom_neg: ciphertext not invertible");
  return Ciphertext{*inv};
}

inline nlohmann::json key_to_json(const KeyPair& kp) {
  return nlohmann::json{{"t", std::to_string(kp.pub.t)},
                        {"n", to_decimal(kp.pub.n)},
                        {"lambda", to_decimal(kp.priv.lambda)},
                        {"mu", to_decimal(kp.priv.mu)}};
}

inline nlohmann::json public_key_to_json(const PublicKey& pk) {
  return nlohmann::json{{"t", std::to_string(pk.t)},
                        {"n", to_decimal(pk.n)}};
}

namespace detail {

inline BigInt json_field(const nlohmann::json& j, const char* name) {
  if (!j.contains(name) || !j[name].is_string()) {
    throw CodecError(std::string("key JSON: missing field ") + name);
  }
  return parse_decimal(j[name].get<std::string>());
}

}  // namespace detail

inline PublicKey public_key_from_json(const nlohmann::json& j) {
  const BigInt t = detail::json_field(j, "t");
  const BigInt n = detail::json_field(j, "n");
  if (n < 4) throw InvalidParams("key JSON: modulus too small");
  return PublicKey{static_cast<unsigned>(t.get_ui()), n, n * n};
}

inline KeyPair key_from_json(const nlohmann::json& j) {
  PublicKey pk = public_key_from_json(j);
  PrivateKey sk{detail::json_field(j, "lambda"), detail::json_field(j, "mu")};
  if (mod(sk.lambda * sk.mu, pk.n) != 1) {
    throw InvalidParams("key JSON: lambda*mu != 1 mod N");
  }
  return KeyPair{pk, sk};
}

}  // namespace bpmatch::paillier
