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
#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <string>
#include <vector>

#include "bpmatch/bigint.hpp"
#include "bpmatch/errors.hpp"
#include "bpmatch/field_curve.hpp"
#include "json.hpp"
#include "oracle.hpp"

using bpmatch::BigInt;
using bpmatch::Rng;
using namespace bpmatch::ec;

namespace {

CurveParams demo_curve() { return CurveParams::create(5, 0, 1); }

CurvePoint from_oracle(const oracle::Pt& p) {
  if (p.inf) return CurvePoint::infinity();
  return CurvePoint::affine(p.x, p.y);
}

// Smallest prime >= start with p % 3 == 2, for curves that support
// cube-root sampling.
BigInt next_sampling_prime(BigInt start) {
  BigInt p = start;
  while (!(bpmatch::is_probable_prime(p) && bpmatch::mod(p, 3) == 2)) {
    p += 1;
  }
  return p;
}

}  // namespace

TEST_CASE("field element inversion over F_5") {
  const BigInt p = 5;
  CHECK(field_inverse(FieldElement::create(2, p)).value() == 3);
  CHECK(field_inverse(FieldElement::create(4, p)).value() == 4);
  CHECK(field_inverse(FieldElement::create(1, p)).value() == 1);
  for (int e = 1; e < 5; ++e) {
    const auto inv = field_inverse(FieldElement::create(e, p));
    CHECK(bpmatch::mod(inv.value() * e, p) == 1);
  }
  CHECK_THROWS_AS(field_inverse(FieldElement::create(0, p)),
                  bpmatch::InversionOfZero);
}

TEST_CASE("field element validation") {
  CHECK_THROWS_AS(FieldElement::create(1, 4), bpmatch::InvalidParams);
  CHECK_THROWS_AS(FieldElement::create(1, 2), bpmatch::InvalidParams);
  // Values are reduced into canonical range.
  CHECK(FieldElement::create(-1, 5).value() == 4);
  CHECK(FieldElement::create(7, 5).value() == 2);
}

TEST_CASE("field inversion at 256-bit scale") {
  Rng rng(0x5eedf1e1dULL);
  const BigInt p = bpmatch::generate_prime(256, rng);
  for (int i = 0; i < 10000; ++i) {
    BigInt e = rng.below_big(p - 1) + 1;
    const auto inv = field_inverse(FieldElement::create(e, p));
    REQUIRE(bpmatch::mod(inv.value() * e, p) == 1);
  }
}

TEST_CASE("curve parameter validation") {
  CHECK_NOTHROW(demo_curve());
  // Singular: discriminant zero.
  CHECK_THROWS_AS(CurveParams::create(5, 0, 0), bpmatch::InvalidParams);
  CHECK_THROWS_AS(CurveParams::create(7, -3, 2), bpmatch::InvalidParams);
  // Composite or tiny modulus.
  CHECK_THROWS_AS(CurveParams::create(15, 0, 1), bpmatch::InvalidParams);
  CHECK_THROWS_AS(CurveParams::create(3, 0, 1), bpmatch::InvalidParams);

  CHECK(demo_curve().supports_sampling());
  CHECK_FALSE(CurveParams::create(7, 0, 1).supports_sampling());   // 7 % 3 == 1
  CHECK_FALSE(CurveParams::create(11, 3, 1).supports_sampling());  // a != 0
}

TEST_CASE("demo curve has exactly the six expected points") {
  const auto curve = demo_curve();
  const auto pts = oracle::enumerate_points(0, 1, 5);
  REQUIRE(pts.size() == 6);  // p + 1 for this curve shape
  for (const auto& pt : pts) {
    CHECK(is_on_curve(from_oracle(pt), curve));
  }
  CHECK_FALSE(is_on_curve(CurvePoint::affine(1, 1), curve));
  CHECK_FALSE(is_on_curve(CurvePoint::affine(3, 2), curve));
}

TEST_CASE("point addition matches an independent reference on all pairs") {
  const auto curve = demo_curve();
  const auto pts = oracle::enumerate_points(0, 1, 5);
  for (const auto& a : pts) {
    for (const auto& b : pts) {
      const auto expected = oracle::add(a, b, 0, 5);
      const auto got = point_add(from_oracle(a), from_oracle(b), curve);
      INFO("a=(" << a.x << "," << a.y << ") b=(" << b.x << "," << b.y << ")");
      CHECK(got == from_oracle(expected));
    }
  }
}

TEST_CASE("point addition worked examples") {
  const auto curve = demo_curve();
  const auto O = CurvePoint::infinity();
  // Inverse pair.
  CHECK(point_add(CurvePoint::affine(0, 1), CurvePoint::affine(0, 4), curve) ==
        O);
  // Doubling.
  CHECK(point_add(CurvePoint::affine(0, 1), CurvePoint::affine(0, 1), curve) ==
        CurvePoint::affine(0, 4));
  // Chord between distinct points.
  CHECK(point_add(CurvePoint::affine(2, 2), CurvePoint::affine(4, 0), curve) ==
        CurvePoint::affine(0, 1));
  // Identity element.
  CHECK(point_add(CurvePoint::affine(2, 2), O, curve) ==
        CurvePoint::affine(2, 2));
  CHECK(point_add(O, O, curve) == O);
  // Order-2 point doubles to infinity.
  CHECK(point_add(CurvePoint::affine(4, 0), CurvePoint::affine(4, 0), curve) ==
        O);
}

TEST_CASE("group laws hold on the demo curve") {
  const auto curve = demo_curve();
  const auto pts = oracle::enumerate_points(0, 1, 5);
  std::vector<CurvePoint> group;
  for (const auto& pt : pts) group.push_back(from_oracle(pt));

  for (const auto& a : group) {
    // Identity and inverse.
    CHECK(point_add(a, CurvePoint::infinity(), curve) == a);
    CHECK(point_add(a, point_neg(a, curve), curve) == CurvePoint::infinity());
    for (const auto& b : group) {
      // Closure and commutativity.
      const auto ab = point_add(a, b, curve);
      CHECK(is_on_curve(ab, curve));
      CHECK(ab == point_add(b, a, curve));
      for (const auto& c : group) {
        CHECK(point_add(ab, c, curve) ==
              point_add(a, point_add(b, c, curve), curve));
      }
    }
  }
}

TEST_CASE("point addition rejects off-curve operands") {
  const auto curve = demo_curve();
  const auto bad = CurvePoint::affine(1, 1);
  const auto good = CurvePoint::affine(2, 2);
  CHECK_THROWS_AS(point_add(bad, good, curve), bpmatch::PointNotOnCurve);
  CHECK_THROWS_AS(point_add(good, bad, curve), bpmatch::PointNotOnCurve);
  CHECK_THROWS_AS(point_neg(bad, curve), bpmatch::PointNotOnCurve);
  CHECK_THROWS_AS(scalar_mul(2, bad, curve), bpmatch::PointNotOnCurve);
}

TEST_CASE("scalar multiplication worked examples") {
  const auto curve = demo_curve();
  const auto g = CurvePoint::affine(2, 2);
  CHECK(scalar_mul(0, g, curve) == CurvePoint::infinity());
  CHECK(scalar_mul(1, g, curve) == g);
  CHECK(scalar_mul(2, g, curve) == CurvePoint::affine(0, 4));
  CHECK(scalar_mul(3, g, curve) == CurvePoint::affine(4, 0));
  CHECK(scalar_mul(4, g, curve) == CurvePoint::affine(0, 1));
  CHECK(scalar_mul(5, g, curve) == CurvePoint::affine(2, 3));
  CHECK(scalar_mul(6, g, curve) == CurvePoint::infinity());
  // Negative scalars multiply the negated point.
  CHECK(scalar_mul(-1, g, curve) == CurvePoint::affine(2, 3));
  CHECK(scalar_mul(-2, g, curve) == point_neg(scalar_mul(2, g, curve), curve));
}

TEST_CASE("scalar multiplication agrees with repeated addition") {
  const auto curve = demo_curve();
  const auto pts = oracle::enumerate_points(0, 1, 5);
  for (const auto& pt : pts) {
    for (long k = 0; k <= 50; ++k) {
      CHECK(scalar_mul(k, from_oracle(pt), curve) ==
            from_oracle(oracle::mul(k, pt, 0, 5)));
    }
  }
}

TEST_CASE("scalar multiplication at cryptographic scale") {
  Rng rng(0xabcdefULL);
  const BigInt p = next_sampling_prime((BigInt(1) << 64) + 1);
  const auto curve = CurveParams::create(p, 0, 1);
  const auto P = sample_point(curve, rng);
  REQUIRE(is_on_curve(P, curve));
  // This curve shape over p = 2 (mod 3) has exactly p + 1 points.
  CHECK(scalar_mul(p + 1, P, curve) == CurvePoint::infinity());
  CHECK(scalar_mul(p + 2, P, curve) == P);
  // (a + b)P == aP + bP on random splits.
  for (int i = 0; i < 20; ++i) {
    const BigInt a = rng.below_big(p);
    const BigInt b = rng.below_big(p);
    CHECK(point_add(scalar_mul(a, P, curve), scalar_mul(b, P, curve), curve) ==
          scalar_mul(a + b, P, curve));
  }
  // Very large scalars terminate quickly (double-and-add, not repeated add).
  CHECK_NOTHROW(scalar_mul((BigInt(1) << 1000) + 7, P, curve));
}

TEST_CASE("cube-root point construction") {
  const auto curve = demo_curve();
  CHECK(point_from_y(curve, 1) == CurvePoint::affine(0, 1));
  CHECK(point_from_y(curve, 0) == CurvePoint::affine(4, 0));
  CHECK(point_from_y(curve, 7) == point_from_y(curve, 2));
  const auto unsupported = CurveParams::create(7, 0, 1);
  CHECK_THROWS_AS(point_from_y(unsupported, 1),
                  bpmatch::UnsupportedCurveForSampling);
}

TEST_CASE("sampled points lie on the curve") {
  const auto curve = demo_curve();
  Rng rng(99);
  std::set<std::pair<long, long>> seen;
  for (int i = 0; i < 200; ++i) {
    const auto P = sample_point(curve, rng);
    REQUIRE(is_on_curve(P, curve));
    CHECK_FALSE(P.is_infinity());  // y is in [0, p), never the point at infinity
    seen.insert({P.x().get_si(), P.y().get_si()});
  }
  // Every affine point is reachable: one per y value.
  CHECK(seen.size() == 5);

  const BigInt p = next_sampling_prime(BigInt(1) << 255);
  const auto big = CurveParams::create(p, 0, 1);
  for (int i = 0; i < 10; ++i) {
    const auto P = sample_point(big, rng);
    REQUIRE(is_on_curve(P, big));
    CHECK(scalar_mul(p + 1, P, big) == CurvePoint::infinity());
  }
}

TEST_CASE("point JSON round trip") {
  const auto curve = demo_curve();
  const auto g = CurvePoint::affine(2, 2);
  CHECK(point_from_json(point_to_json(g), curve) == g);
  CHECK(point_from_json(point_to_json(CurvePoint::infinity()), curve) ==
        CurvePoint::infinity());

  // Padded coordinates parse back to the same point.
  const auto padded = point_to_json_padded(g, 4);
  CHECK(padded.at("x").get<std::string>() == "0002");
  CHECK(point_from_json(padded, curve) == g);

  CHECK_THROWS_AS(point_from_json(nlohmann::json{{"x", "1"}, {"y", "1"}},
                                  curve),
                  bpmatch::PointNotOnCurve);
  CHECK_THROWS_AS(point_from_json(nlohmann::json{{"x", "2"}}, curve),
                  bpmatch::CodecError);
  CHECK_THROWS_AS(point_from_json(nlohmann::json{{"x", "2a"}, {"y", "2"}},
                                  curve),
                  bpmatch::CodecError);
}
