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

#include <optional>
#include <string>
#include <unordered_map>
#include <utility>

#include "json.hpp"

#include "bpmatch/bigint.hpp"
#include "bpmatch/errors.hpp"
#include "bpmatch/field_curve.hpp"
#include "bpmatch/window.hpp"

// Additively homomorphic encryption in the order-n subgroup of the
// supersingular curve y^2 = x^3 + 1 over F_p, p = l*n - 1, n = q1*q2.
// Ciphertexts are curve points C = m*g + r*h; h has order q1, so multiplying
// a ciphertext by q1 strips the randomizer and decryption reduces to a
// bounded discrete log in <q1*g>.
//
// Because q1*g has order q2, decryption determines m only modulo q2; the
// window decode below picks the in-window representative nearest zero. Keys
// must therefore be large enough that q2 exceeds the plaintext window span
// (t >= 22 for the default window); smaller keys remain usable with windows
// narrower than q2.
namespace bpmatch::bgn {

struct PublicKey {
  unsigned t = 0;  // bit length of each secret prime
  BigInt n;
  ec::CurveParams curve;
  ec::CurvePoint g;
  ec::CurvePoint h;
};

struct PrivateKey {
  BigInt q1;  // the decryption key
  BigInt q2;  // bounds the plaintext window; q1*q2 = n
  BigInt l;   // curve cofactor: p = l*n - 1
  ec::CurvePoint u;  // the point h was derived from (h = q2*u); kept for key files
};

struct KeyPair {
  PublicKey pub;
  PrivateKey priv;
};

struct Ciphertext {
  ec::CurvePoint point;

  bool operator==(const Ciphertext& o) const { return point == o.point; }
};

// Smallest l in [1, max_l] with p = l*n - 1 prime and p = 2 mod 3. The mod-3
// condition makes the curve supersingular with exactly p+1 = l*n points.
inline std::optional<BigInt> find_curve_cofactor(
    const BigInt& n, const BigInt& max_l = BigInt(1) << 20) {
  if (n < 2) throw InvalidParams("find_curve_cofactor: n too small");
  for (BigInt l = 1; l <= max_l; ++l) {
    const BigInt p = l * n - 1;
    if (p < 5) continue;
    if (mod(p, 3) != 2) continue;
    if (is_probable_prime(p)) return l;
  }
  return std::nullopt;
}

struct KeyGenOptions {
  BigInt max_l = BigInt(1) << 20;
  unsigned max_attempts = 64;  // fresh prime pairs tried before giving up
};

inline KeyPair generate_keys(unsigned t, Rng& rng,
                             const KeyGenOptions& opts = {}) {
  if (t < 8) throw InvalidParams("generate_keys: security parameter t < 8");
  for (unsigned attempt = 0; attempt < opts.max_attempts; ++attempt) {
    const BigInt q1 = generate_prime(t, rng);
    const BigInt q2 = generate_prime(t, rng);
    if (q1 == q2) continue;
    const BigInt n = q1 * q2;
    const auto l = find_curve_cofactor(n, opts.max_l);
    if (!l) continue;
    const BigInt p = *l * n - 1;
    const auto curve = ec::CurveParams::create(p, 0, 1);
    // A sampled point lands in the order-n subgroup after multiplication by
    // l; retry until the result has order exactly n (neither q1 nor q2
    // annihilates it).
    const auto draw_generator = [&]() -> ec::CurvePoint {
      for (;;) {
        const auto cand = ec::scalar_mul(*l, ec::sample_point(curve, rng), curve);
        if (cand.is_infinity()) continue;
        if (ec::scalar_mul(q1, cand, curve).is_infinity()) continue;
        if (ec::scalar_mul(q2, cand, curve).is_infinity()) continue;
        return cand;
      }
    };
    const ec::CurvePoint g = draw_generator();
    const ec::CurvePoint u = draw_generator();
    const ec::CurvePoint h = ec::scalar_mul(q2, u, curve);
    return KeyPair{PublicKey{t, n, curve, g, h}, PrivateKey{q1, q2, *l, u}};
  }
  throw KeyGenExhausted();
}

// The six-point demonstration key: q1=2, q2=3, n=6, l=1, p=5. Small enough
// to enumerate everything by hand; far below the t >= 8 floor generate_keys
// enforces, hence a fixture rather than a generator output.
inline KeyPair toy_fixture() {
  const auto curve = ec::CurveParams::create(5, 0, 1);
  const auto g = ec::CurvePoint::affine(2, 2);   // order 6
  const auto u = ec::CurvePoint::affine(2, 2);
  const auto h = ec::CurvePoint::affine(4, 0);   // 3*u, order 2
  return KeyPair{PublicKey{2, 6, curve, g, h}, PrivateKey{2, 3, 1, u}};
}

inline BigInt draw_randomizer(const PublicKey& pk, Rng& rng) {
  return rng.below_big(pk.n);
}

inline Ciphertext encrypt(const PublicKey& pk, const BigInt& m,
                          const BigInt& r) {
  if (r < 0 || r >= pk.n) {
    throw BadRandomizer("encrypt: randomizer outside [0, n-1]");
  }
  const BigInt mr = mod(m, pk.n);
  const auto mg = ec::scalar_mul(mr, pk.g, pk.curve);
  const auto rh = ec::scalar_mul(r, pk.h, pk.curve);
  return Ciphertext{ec::detail::add_unchecked(mg, rh, pk.curve)};
}

// C1 + C2 + r*h: sums the plaintexts and re-randomizes.
inline Ciphertext hom_add(const PublicKey& pk, const Ciphertext& c1,
                          const Ciphertext& c2, const BigInt& r) {
  if (r < 0 || r >= pk.n) {
    throw BadRandomizer("hom_add: randomizer outside [0, n-1]");
  }
  if (!ec::is_on_curve(c1.point, pk.curve) ||
      !ec::is_on_curve(c2.point, pk.curve)) {
    throw MalformedCiphertext("hom_add: operand off curve");
  }
  const auto sum = ec::detail::add_unchecked(c1.point, c2.point, pk.curve);
  const auto rh = ec::scalar_mul(r, pk.h, pk.curve);
  return Ciphertext{ec::detail::add_unchecked(sum, rh, pk.curve)};
}

// -C = (-m)*g + (-r)*h: plaintext negation is point negation.
inline Ciphertext hom_neg(const PublicKey& pk, const Ciphertext& c) {
  return Ciphertext{ec::point_neg(c.point, pk.curve)};
}

// Baby-step table for bounded discrete logs: j*base for j in [0, m). Reused
// across decryptions of the same key, where building it dominates the cost.
class BsgsTable {
 public:
  BsgsTable(const ec::CurvePoint& base, const ec::CurveParams& curve,
            unsigned long m)
      : base_(base), curve_(curve), m_(m) {
    if (m == 0) throw InvalidParams("BsgsTable: zero table size");
    baby_.reserve(m);
    auto walk = ec::CurvePoint::infinity();
    for (unsigned long j = 0; j < m; ++j) {
      baby_.emplace(key_of(walk), j);  // first occurrence wins
      walk = ec::detail::add_unchecked(walk, base_, curve_);
    }
    giant_ = ec::point_neg(walk, curve_);  // -m*base
  }

  unsigned long table_size() const { return m_; }

  // Smallest k in [lo, hi] with k*base = target, scanning giant strides in
  // ascending order; nullopt when the window holds no solution.
  std::optional<BigInt> search(const ec::CurvePoint& target, const BigInt& lo,
                               const BigInt& hi) const {
    if (lo > hi) return std::nullopt;
    if (base_.is_infinity()) {
      return target.is_infinity() ? std::optional<BigInt>(lo) : std::nullopt;
    }
    // k = lo + i*m + j; gamma_i = target - (lo + i*m)*base must hit j*base.
    auto gamma = ec::detail::add_unchecked(
        target, ec::scalar_mul(-lo, base_, curve_), curve_);
    const BigInt width = hi - lo + 1;
    for (BigInt stride = 0; stride * m_ < width; ++stride) {
      const auto it = baby_.find(key_of(gamma));
      if (it != baby_.end()) {
        const BigInt k = lo + stride * m_ + it->second;
        if (k <= hi) return k;
      }
      gamma = ec::detail::add_unchecked(gamma, giant_, curve_);
    }
    return std::nullopt;
  }

 private:
  static std::string key_of(const ec::CurvePoint& P) {
    if (P.is_infinity()) return "inf";
    return P.x().get_str(16) + ":" + P.y().get_str(16);
  }

  ec::CurvePoint base_;
  ec::CurveParams curve_;
  unsigned long m_;
  ec::CurvePoint giant_;
  std::unordered_map<std::string, unsigned long> baby_;
};

// k in [window.lo, window.hi] with k*base = target, or nullopt. O(sqrt(W))
// group operations and table entries.
inline std::optional<BigInt> bsgs_dlog(const ec::CurvePoint& base,
                                       const ec::CurvePoint& target,
                                       const PlaintextWindow& window,
                                       const ec::CurveParams& curve) {
  if (!ec::is_on_curve(base, curve) || !ec::is_on_curve(target, curve)) {
    throw PointNotOnCurve("bsgs_dlog operand");
  }
  BigInt m_big = sqrt(window.width());
  if (m_big * m_big < window.width()) ++m_big;
  const auto m = static_cast<unsigned long>(m_big.get_ui());
  return BsgsTable(base, curve, m).search(target, window.lo(), window.hi());
}

// Holds the private key plus cached baby-step tables so repeated decryptions
// pay table construction once.
class Decryptor {
 public:
  Decryptor(const PrivateKey& sk, const PublicKey& pk) : sk_(sk), pk_(pk) {
    base_ = ec::scalar_mul(sk_.q1, pk_.g, pk_.curve);  // order q2
  }

  // m with q1*C = m*(q1*g), decoded into `window`. When the window is wider
  // than q2 every residue has several in-window representatives; the one
  // nearest zero (ties to the nonnegative) is returned.
  BigInt decrypt(const Ciphertext& c, const PlaintextWindow& window) {
    if (!ec::is_on_curve(c.point, pk_.curve)) {
      throw MalformedCiphertext("decrypt: ciphertext off curve");
    }
    const auto target = ec::scalar_mul(sk_.q1, c.point, pk_.curve);
    if (window.width() <= sk_.q2) {
      const auto k = search(target, window.lo(), window.hi());
      if (!k) throw PlaintextOutOfWindow();
      return *k;
    }
    // Wide window: recover the residue mod q2 (q2 < window width <= 2^32,
    // so the full residue range is searchable), then lift.
    const auto residue = search(target, 0, sk_.q2 - 1);
    if (!residue) throw PlaintextOutOfWindow();
    const auto lifted = lift_residue_into_window(*residue, sk_.q2, window);
    if (!lifted) throw PlaintextOutOfWindow();
    return *lifted;
  }

 private:
  std::optional<BigInt> search(const ec::CurvePoint& target, const BigInt& lo,
                               const BigInt& hi) {
    BigInt m_big = sqrt(hi - lo + 1);
    if (m_big * m_big < hi - lo + 1) ++m_big;
    const auto m = static_cast<unsigned long>(m_big.get_ui());
    auto it = tables_.find(m);
    if (it == tables_.end()) {
      it = tables_.emplace(m, BsgsTable(base_, pk_.curve, m)).first;
    }
    return it->second.search(target, lo, hi);
  }

  PrivateKey sk_;
  PublicKey pk_;
  ec::CurvePoint base_;
  std::unordered_map<unsigned long, BsgsTable> tables_;
};

// One-shot convenience; protocol code keeps a Decryptor instead.
inline BigInt decrypt(const PrivateKey& sk, const PublicKey& pk,
                      const Ciphertext& c, const PlaintextWindow& window) {
  return Decryptor(sk, pk).decrypt(c, window);
}

inline nlohmann::json key_to_json(const KeyPair& kp) {
  return nlohmann::json{{"t", std::to_string(kp.pub.t)},
                        {"q1", to_decimal(kp.priv.q1)},
                        {"q2", to_decimal(kp.priv.q2)},
                        {"n", to_decimal(kp.pub.n)},
                        {"l", to_decimal(kp.priv.l)},
                        {"p", to_decimal(kp.pub.curve.p())},
                        {"g", ec::point_to_json(kp.pub.g)},
                        {"u", ec::point_to_json(kp.priv.u)},
                        {"h", ec::point_to_json(kp.pub.h)}};
}

inline nlohmann::json public_key_to_json(const PublicKey& pk) {
  return nlohmann::json{{"t", std::to_string(pk.t)},
                        {"n", to_decimal(pk.n)},
                        {"p", to_decimal(pk.curve.p())},
                        {"g", ec::point_to_json(pk.g)},
                        {"h", ec::point_to_json(pk.h)}};
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
  const BigInt p = detail::json_field(j, "p");
  const auto curve = ec::CurveParams::create(p, 0, 1);
  PublicKey pk{static_cast<unsigned>(t.get_ui()), n, curve,
               ec::point_from_json(j.at("g"), curve),
               ec::point_from_json(j.at("h"), curve)};
  if (!ec::scalar_mul(n, pk.g, curve).is_infinity() ||
      !ec::scalar_mul(n, pk.h, curve).is_infinity()) {
    throw InvalidParams("key JSON: g or h not in the order-n subgroup");
  }
  return pk;
}

inline KeyPair key_from_json(const nlohmann::json& j) {
  PublicKey pk = public_key_from_json(j);
  PrivateKey sk{detail::json_field(j, "q1"), detail::json_field(j, "q2"),
                detail::json_field(j, "l"),
                ec::point_from_json(j.at("u"), pk.curve)};
  if (sk.q1 * sk.q2 != pk.n || sk.l * pk.n - 1 != pk.curve.p()) {
    throw InvalidParams("key JSON: inconsistent q1*q2 or l*n-1");
  }
  return KeyPair{pk, sk};
}

}  // namespace bpmatch::bgn
