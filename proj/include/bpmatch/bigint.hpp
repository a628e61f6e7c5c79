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

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "bpmatch/errors.hpp"
#include "bpmatch/opcount.hpp"

namespace bpmatch {

using BigInt = mpz_class;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Deterministic randomness source. Every cryptographic operation that needs
// randomness takes one of these explicitly, so a run is reproducible from its
// seed. Not a CSPRNG; this is a research artifact.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), gen_(splitmix64(seed)) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return gen_(); }

  // Uniform in [0, bound), bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw InvalidParams("Rng::below: zero bound");
    const std::uint64_t limit = bound * ((~std::uint64_t{0}) / bound);
    for (;;) {
      const std::uint64_t v = next_u64();
      if (v < limit || limit == 0) return v % bound;
    }
  }

  // Uniform in [0, 2^nbits).
  BigInt bits(unsigned nbits) {
    BigInt v = 0;
    for (unsigned got = 0; got < nbits; got += 64) {
      v <<= 64;
      v += BigInt(next_u64());
    }
    // Drop the excess high bits.
    mpz_tdiv_r_2exp(v.get_mpz_t(), v.get_mpz_t(), nbits);
    return v;
  }

  // Uniform in [0, bound) by rejection.
  BigInt below_big(const BigInt& bound) {
    if (bound <= 0) throw InvalidParams("Rng::below_big: nonpositive bound");
    const auto nbits = static_cast<unsigned>(
        mpz_sizeinbase(bound.get_mpz_t(), 2));
    for (;;) {
      BigInt v = bits(nbits);
      if (v < bound) return v;
    }
  }

  // Independent child stream; a pure function of (seed, tag), not of how many
  // draws the parent has made.
  Rng child(std::uint64_t tag) const {
    return Rng(splitmix64(seed_ ^ (0x9e3779b97f4a7c15ULL * (tag + 1))));
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 gen_;
};

inline std::size_t bit_length(const BigInt& v) {
  if (v == 0) return 0;
  return mpz_sizeinbase(v.get_mpz_t(), 2);
}

// Mathematical mod: result in [0, m).
inline BigInt mod(const BigInt& a, const BigInt& m) {
  BigInt r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline BigInt powmod(const BigInt& base, const BigInt& exp, const BigInt& m) {
  BigInt r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline std::optional<BigInt> invmod(const BigInt& a, const BigInt& m) {
  BigInt r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
    return std::nullopt;
  }
  return r;
}

inline BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline BigInt lcm(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

// Instrumented modular multiplication; feeds the bench op counters.
inline BigInt counted_mulmod(const BigInt& a, const BigInt& b,
                             const BigInt& m) {
  opcount::count_modular_mult();
  return mod(a * b, m);
}

// Square-and-multiply with counted multiplications. exp >= 0.
inline BigInt counted_powmod(const BigInt& base, const BigInt& exp,
                             const BigInt& m) {
  if (exp < 0) throw InvalidParams("counted_powmod: negative exponent");
  BigInt result = 1;
  const std::size_t nbits = bit_length(exp);
  for (std::size_t i = nbits; i-- > 0;) {
    result = counted_mulmod(result, result, m);
    if (mpz_tstbit(exp.get_mpz_t(), i)) {
      result = counted_mulmod(result, mod(base, m), m);
    }
  }
  return result;
}

namespace detail {

inline const std::vector<unsigned long>& small_primes() {
  static const std::vector<unsigned long> primes = [] {
    std::vector<unsigned long> out;
    std::vector<bool> sieve(1000, true);
    for (unsigned long i = 2; i < sieve.size(); ++i) {
      if (!sieve[i]) continue;
      out.push_back(i);
      for (unsigned long j = i * i; j < sieve.size(); j += i) sieve[j] = false;
    }
    return out;
  }();
  return primes;
}

}  // namespace detail

// Miller-Rabin with `rounds` random witnesses (error < 4^-rounds). Witnesses
// are drawn from a stream derived from n, so the verdict is deterministic.
inline bool is_probable_prime(const BigInt& n, int rounds = 40) {
  if (n < 2) return false;
  for (unsigned long q : detail::small_primes()) {
    if (n == q) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), q)) return false;
  }
  // n - 1 = 2^s * d with d odd
  BigInt d = n - 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  d >>= s;

  Rng witness_rng(splitmix64(mpz_get_ui(n.get_mpz_t()) ^ 0x6d696c6c6572ULL));
  const BigInt n_minus_1 = n - 1;
  for (int round = 0; round < rounds; ++round) {
    const BigInt a = 2 + witness_rng.below_big(n - 3);
    BigInt x = powmod(a, d, n);
    if (x == 1 || x == n_minus_1) continue;
    bool witness = true;
    for (unsigned long i = 0; i + 1 < s; ++i) {
      x = mod(x * x, n);
      if (x == n_minus_1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

// Uniform random prime with exactly `bits` bits (top bit set).
inline BigInt generate_prime(unsigned bits, Rng& rng, int mr_rounds = 40) {
  if (bits < 2) throw InvalidParams("generate_prime: need bits >= 2");
  for (;;) {
    BigInt candidate = rng.bits(bits);
    mpz_setbit(candidate.get_mpz_t(), bits - 1);
    mpz_setbit(candidate.get_mpz_t(), 0);
    if (is_probable_prime(candidate, mr_rounds)) return candidate;
  }
}

// Strict base-10 parse ("-"? digits). Leading zeros are accepted; anything
// else is a codec error.
inline BigInt parse_decimal(const std::string& text) {
  if (text.empty()) throw CodecError("empty decimal string");
  std::size_t start = text[0] == '-' ? 1 : 0;
  if (start == text.size()) throw CodecError("bare sign in decimal string");
  for (std::size_t i = start; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') {
      throw CodecError("bad character in decimal string: " + text);
    }
  }
  BigInt v;
  if (mpz_set_str(v.get_mpz_t(), text.c_str(), 10) != 0) {
    throw CodecError("unparsable decimal string: " + text);
  }
  return v;
}

inline std::string to_decimal(const BigInt& v) { return v.get_str(10); }

// Zero-padded nonnegative decimal of fixed width (wire encoding for
// ciphertext coordinates, so equal-length payloads stay equal-length).
inline std::string to_decimal_padded(const BigInt& v, std::size_t width) {
  if (v < 0) throw InvalidParams("to_decimal_padded: negative value");
  std::string s = v.get_str(10);
  if (s.size() > width) {
    throw InvalidParams("to_decimal_padded: value wider than field");
  }
  return std::string(width - s.size(), '0') + s;
}

}  // namespace bpmatch
