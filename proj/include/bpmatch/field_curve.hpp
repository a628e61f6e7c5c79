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
#include "bpmatch/opcount.hpp"

// Short-Weierstrass curves y^2 = x^3 + ax + b over a prime field, in affine
// coordinates. Correctness-first: no projective tricks, no constant-time
// guarantees. The homomorphic layer only ever uses a=0, b=1 with p = 2 mod 3
// (a supersingular curve with exactly p+1 points), but the group law here is
// generic.
namespace bpmatch::ec {

namespace detail {

// Primality of a modulus is checked once per distinct value, not per element.
inline bool modulus_checked_prime(const BigInt& p) {
  thread_local BigInt cached = 0;
  if (p == cached) return true;
  if (!is_probable_prime(p)) return false;
  cached = p;
  return true;
}

}  // namespace detail

class FieldElement {
 public:
  // Reduces v mod p. p must be a prime > 3.
  static FieldElement create(const BigInt& v, const BigInt& p) {
    if (p <= 3) throw InvalidParams("FieldElement: modulus must exceed 3");
    if (!detail::modulus_checked_prime(p)) {
      throw InvalidParams("FieldElement: modulus is composite");
    }
    return FieldElement(mod(v, p), p);
  }

  const BigInt& value() const { return value_; }
  const BigInt& modulus() const { return p_; }

  bool operator==(const FieldElement& o) const {
    return value_ == o.value_ && p_ == o.p_;
  }

 private:
  FieldElement(BigInt v, BigInt p) : value_(std::move(v)), p_(std::move(p)) {}

  BigInt value_;
  BigInt p_;
};

inline FieldElement field_inverse(const FieldElement& e) {
  if (e.value() == 0) throw InversionOfZero("field_inverse of zero");
  auto inv = invmod(e.value(), e.modulus());
  // A nonzero residue mod a prime is always invertible.
  return FieldElement::create(*inv, e.modulus());
}

class CurveParams {
 public:
  static CurveParams create(const BigInt& p, const BigInt& a, const BigInt& b) {
    if (p <= 3) throw InvalidParams("CurveParams: p must exceed 3");
    if (!detail::modulus_checked_prime(p)) {
      throw InvalidParams("CurveParams: p is composite");
    }
    const BigInt ar = mod(a, p);
    const BigInt br = mod(b, p);
    // Nonsingularity: 4a^3 + 27b^2 != 0.
    if (mod(4 * ar * ar * ar + 27 * br * br, p) == 0) {
      throw InvalidParams("CurveParams: singular curve (4a^3 + 27b^2 = 0)");
    }
    return CurveParams(p, ar, br);
  }

  const BigInt& p() const { return p_; }
  const BigInt& a() const { return a_; }
  const BigInt& b() const { return b_; }

  // The point-sampling shortcut needs y^2 = x^3 + 1 with p = 2 mod 3, where
  // cubing is a bijection on F_p.
  bool supports_sampling() const {
    return a_ == 0 && b_ == 1 && mod(p_, 3) == 2;
  }

  bool operator==(const CurveParams& o) const {
    return p_ == o.p_ && a_ == o.a_ && b_ == o.b_;
  }

 private:
  CurveParams(BigInt p, BigInt a, BigInt b)
      : p_(std::move(p)), a_(std::move(a)), b_(std::move(b)) {}

  BigInt p_;
  BigInt a_;
  BigInt b_;
};

class CurvePoint {
 public:
  CurvePoint() = default;  // the infinity point

  static CurvePoint infinity() { return CurvePoint(); }

  static CurvePoint affine(BigInt x, BigInt y) {
    CurvePoint p;
    p.infinity_ = false;
    p.x_ = std::move(x);
    p.y_ = std::move(y);
    return p;
  }

  bool is_infinity() const { return infinity_; }
  const BigInt& x() const { return x_; }
  const BigInt& y() const { return y_; }

  bool operator==(const CurvePoint& o) const {
    if (infinity_ || o.infinity_) return infinity_ == o.infinity_;
    return x_ == o.x_ && y_ == o.y_;
  }

 private:
  bool infinity_ = true;
  BigInt x_ = 0;
  BigInt y_ = 0;
};

inline bool is_on_curve(const CurvePoint& P, const CurveParams& curve) {
  if (P.is_infinity()) return true;
  const BigInt& p = curve.p();
  if (P.x() < 0 || P.x() >= p || P.y() < 0 || P.y() >= p) return false;
  const BigInt lhs = mod(P.y() * P.y(), p);
  const BigInt rhs =
      mod(P.x() * P.x() * P.x() + curve.a() * P.x() + curve.b(), p);
  return lhs == rhs;
}

inline CurvePoint point_neg(const CurvePoint& P, const CurveParams& curve) {
  if (P.is_infinity()) return P;
  if (!is_on_curve(P, curve)) throw PointNotOnCurve("point_neg operand");
  if (P.y() == 0) return P;
  return CurvePoint::affine(P.x(), curve.p() - P.y());
}

namespace detail {

inline BigInt field_inv(const BigInt& v, const BigInt& p) {
  const BigInt r = mod(v, p);
  if (r == 0) throw InversionOfZero("field inversion of zero");
  return *invmod(r, p);
}

// Group law without on-curve validation; callers guarantee operands are valid
// (closure keeps them valid through chains of additions).
inline CurvePoint add_unchecked(const CurvePoint& P, const CurvePoint& Q,
                                const CurveParams& curve) {
  if (P.is_infinity()) return Q;
  if (Q.is_infinity()) return P;
  const BigInt& p = curve.p();
  BigInt lambda;
  if (P.x() == Q.x()) {
    if (mod(P.y() + Q.y(), p) == 0) {
      // Inverse pair; covers doubling a 2-torsion point (y = 0).
      return CurvePoint::infinity();
    }
    // Tangent: lambda = (3x^2 + a) / (2y).
    lambda = mod((3 * P.x() * P.x() + curve.a()) * field_inv(2 * P.y(), p), p);
  } else {
    // Chord: lambda = (y2 - y1) / (x2 - x1).
    lambda = mod((Q.y() - P.y()) * field_inv(Q.x() - P.x(), p), p);
  }
  // Only chord/tangent evaluations are tallied; infinity shortcuts and
  // inverse-pair early-outs do no field arithmetic.
  opcount::count_group_add();
  const BigInt x3 = mod(lambda * lambda - P.x() - Q.x(), p);
  const BigInt y3 = mod(lambda * (P.x() - x3) - P.y(), p);
  return CurvePoint::affine(x3, y3);
}

}  // namespace detail

inline CurvePoint point_add(const CurvePoint& P, const CurvePoint& Q,
                            const CurveParams& curve) {
  if (!is_on_curve(P, curve)) throw PointNotOnCurve("point_add left operand");
  if (!is_on_curve(Q, curve)) throw PointNotOnCurve("point_add right operand");
  return detail::add_unchecked(P, Q, curve);
}

// Double-and-add; handles any integer k (negative k acts on -P). O(log k)
// group operations, so 4096-bit scalars are fine.
inline CurvePoint scalar_mul(const BigInt& k, const CurvePoint& P,
                             const CurveParams& curve) {
  if (!is_on_curve(P, curve)) throw PointNotOnCurve("scalar_mul operand");
  if (P.is_infinity() || k == 0) return CurvePoint::infinity();
  BigInt n = k;
  CurvePoint base = P;
  if (n < 0) {
    n = -n;
    base = point_neg(base, curve);
  }
  CurvePoint acc = CurvePoint::infinity();
  for (std::size_t i = bit_length(n); i-- > 0;) {
    acc = detail::add_unchecked(acc, acc, curve);
    if (mpz_tstbit(n.get_mpz_t(), i)) {
      acc = detail::add_unchecked(acc, base, curve);
    }
  }
  return acc;
}

// Deterministic companion of sample_point: the unique curve point with the
// given y when cubing is a bijection (a=0, b=1, p = 2 mod 3). The cube root
// of z is z^((2p-1)/3) since 3 * (2p-1)/3 = 1 mod (p-1).
inline CurvePoint point_from_y(const CurveParams& curve, const BigInt& y) {
  if (!curve.supports_sampling()) {
    throw UnsupportedCurveForSampling(
        "point_from_y requires a=0, b=1, p = 2 mod 3");
  }
  const BigInt& p = curve.p();
  const BigInt yr = mod(y, p);
  const BigInt e = (2 * p - 1) / 3;
  const BigInt x = powmod(mod(yr * yr - 1, p), e, p);
  return CurvePoint::affine(x, yr);
}

// Uniformly random finite point: y uniform in [0, p), x the unique cube root
// of y^2 - 1. Uniform over the p finite points of this curve (the group has
// p+1 points including infinity, one per y value plus infinity).
inline CurvePoint sample_point(const CurveParams& curve, Rng& rng) {
  if (!curve.supports_sampling()) {
    throw UnsupportedCurveForSampling(
        "sample_point requires a=0, b=1, p = 2 mod 3");
  }
  return point_from_y(curve, rng.below_big(curve.p()));
}

inline nlohmann::json point_to_json(const CurvePoint& P) {
  if (P.is_infinity()) return nlohmann::json{{"infinity", true}};
  return nlohmann::json{{"x", to_decimal(P.x())}, {"y", to_decimal(P.y())}};
}

// Same shape, but coordinates zero-padded to a fixed width so every finite
// point of a given curve serializes to the same byte count (wire framing).
inline nlohmann::json point_to_json_padded(const CurvePoint& P,
                                           std::size_t width) {
  if (P.is_infinity()) return nlohmann::json{{"infinity", true}};
  return nlohmann::json{{"x", to_decimal_padded(P.x(), width)},
                        {"y", to_decimal_padded(P.y(), width)}};
}

inline CurvePoint point_from_json(const nlohmann::json& j,
                                  const CurveParams& curve) {
  if (!j.is_object()) throw CodecError("point JSON: expected object");
  if (j.contains("infinity")) {
    if (j["infinity"] != true) throw CodecError("point JSON: bad infinity");
    return CurvePoint::infinity();
  }
  if (!j.contains("x") || !j.contains("y") || !j["x"].is_string() ||
      !j["y"].is_string()) {
    throw CodecError("point JSON: expected decimal-string x and y");
  }
  CurvePoint P = CurvePoint::affine(parse_decimal(j["x"].get<std::string>()),
                                    parse_decimal(j["y"].get<std::string>()));
  if (!is_on_curve(P, curve)) throw PointNotOnCurve("point JSON: off curve");
  return P;
}

}  // namespace bpmatch::ec
