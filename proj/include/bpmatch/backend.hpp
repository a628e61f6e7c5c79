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

#include <concepts>
#include <cstddef>
#include <string>

#include "json.hpp"

#include "bpmatch/bgn.hpp"
#include "bpmatch/bigint.hpp"
#include "bpmatch/errors.hpp"
#include "bpmatch/paillier.hpp"
#include "bpmatch/window.hpp"

// The uniform surface the blind-and-permute protocol consumes. Both schemes
// offer: additively homomorphic encryption with an injectable randomizer, a
// re-randomizing addition, plaintext negation, and signed window decryption.
namespace bpmatch {

template <typename B>
concept HomomorphicBackend = requires(
    const typename B::KeyPair& kp, const typename B::PublicKey& pk,
    const typename B::Ciphertext& c, typename B::Decryptor& dec, Rng& rng,
    const BigInt& v, const PlaintextWindow& w, const nlohmann::json& j,
    unsigned t) {
  { B::name() } -> std::convertible_to<std::string>;
  { B::generate_keys(t, rng) } -> std::same_as<typename B::KeyPair>;
  { B::public_of(kp) } -> std::convertible_to<const typename B::PublicKey&>;
  { B::draw_randomizer(pk, rng) } -> std::same_as<BigInt>;
  { B::identity_randomizer(pk) } -> std::same_as<BigInt>;
  { B::encrypt(pk, v, v) } -> std::same_as<typename B::Ciphertext>;
  { B::hom_add(pk, c, c, v) } -> std::same_as<typename B::Ciphertext>;
  { B::hom_neg(pk, c) } -> std::same_as<typename B::Ciphertext>;
  { B::make_decryptor(kp) } -> std::same_as<typename B::Decryptor>;
  { dec.decrypt(c, w) } -> std::same_as<BigInt>;
  { B::cipher_to_json(pk, c) } -> std::same_as<nlohmann::json>;
  { B::cipher_from_json(pk, j) } -> std::same_as<typename B::Ciphertext>;
  { B::cipher_bytes(pk) } -> std::same_as<std::size_t>;
  { B::key_bits(pk) } -> std::same_as<std::size_t>;
};

// Curve-based backend. Wire form fixes every ciphertext of a key to the same
// byte width: coordinates are zero-padded decimals, and the infinity point is
// the (out-of-range) sentinel x = y = p, so payload size is a pure function
// of the key and the vector length.
struct BgnBackend {
  using KeyPair = bgn::KeyPair;
  using PublicKey = bgn::PublicKey;
  using Ciphertext = bgn::Ciphertext;

  static std::string name() { return "bgn"; }

  static KeyPair generate_keys(unsigned t, Rng& rng) {
    return bgn::generate_keys(t, rng);
  }

  static const PublicKey& public_of(const KeyPair& kp) { return kp.pub; }

  static BigInt draw_randomizer(const PublicKey& pk, Rng& rng) {
    return bgn::draw_randomizer(pk, rng);
  }

  // r = 0 makes encrypt deterministic: C = m*g.
  static BigInt identity_randomizer(const PublicKey&) { return 0; }

  static Ciphertext encrypt(const PublicKey& pk, const BigInt& m,
                            const BigInt& r) {
    return bgn::encrypt(pk, m, r);
  }

  static Ciphertext hom_add(const PublicKey& pk, const Ciphertext& c1,
                            const Ciphertext& c2, const BigInt& r) {
    return bgn::hom_add(pk, c1, c2, r);
  }

  static Ciphertext hom_neg(const PublicKey& pk, const Ciphertext& c) {
    return bgn::hom_neg(pk, c);
  }

  using Decryptor = bgn::Decryptor;

  static Decryptor make_decryptor(const KeyPair& kp) {
    return Decryptor(kp.priv, kp.pub);
  }

  static std::size_t wire_width(const PublicKey& pk) {
    return to_decimal(pk.curve.p()).size();
  }

  static nlohmann::json cipher_to_json(const PublicKey& pk,
                                       const Ciphertext& c) {
    const std::size_t w = wire_width(pk);
    const BigInt& p = pk.curve.p();
    const BigInt& x = c.point.is_infinity() ? p : c.point.x();
    const BigInt& y = c.point.is_infinity() ? p : c.point.y();
    return nlohmann::json{{"backend", name()},
                          {"x", to_decimal_padded(x, w)},
                          {"y", to_decimal_padded(y, w)}};
  }

  static Ciphertext cipher_from_json(const PublicKey& pk,
                                     const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("backend") ||
        !j["backend"].is_string() || j["backend"] != name() ||
        !j.contains("x") || !j.contains("y") || !j["x"].is_string() ||
        !j["y"].is_string()) {
      throw CodecError("bgn ciphertext: bad shape or backend tag");
    }
    const std::string xs = j["x"].get<std::string>();
    const std::string ys = j["y"].get<std::string>();
    if (xs.size() != wire_width(pk) || ys.size() != wire_width(pk)) {
      throw CodecError("bgn ciphertext: wrong field width");
    }
    const BigInt x = parse_decimal(xs);
    const BigInt y = parse_decimal(ys);
    const BigInt& p = pk.curve.p();
    if (x == p && y == p) return Ciphertext{ec::CurvePoint::infinity()};
    const auto point = ec::CurvePoint::affine(x, y);
    if (!ec::is_on_curve(point, pk.curve)) {
      throw CodecError("bgn ciphertext: point off curve");
    }
    return Ciphertext{point};
  }

  // Canonical binary size: two coordinates of |p| bits.
  static std::size_t cipher_bytes(const PublicKey& pk) {
    return 2 * ((bit_length(pk.curve.p()) + 7) / 8);
  }

  static std::size_t key_bits(const PublicKey& pk) {
    return bit_length(pk.curve.p());
  }
};

// Modular backend; same wire discipline (fixed-width decimal value).
struct PaillierBackend {
  using KeyPair = paillier::KeyPair;
  using PublicKey = paillier::PublicKey;
  using Ciphertext = paillier::Ciphertext;

  static std::string name() { return "paillier"; }

  static KeyPair generate_keys(unsigned t, Rng& rng) {
    return paillier::generate_keys(t, rng);
  }

  static const PublicKey& public_of(const KeyPair& kp) { return kp.pub; }

  static BigInt draw_randomizer(const PublicKey& pk, Rng& rng) {
    return paillier::draw_randomizer(pk, rng);
  }

  // r = 1 makes encrypt deterministic: c = G^m.
  static BigInt identity_randomizer(const PublicKey&) { return 1; }

  static Ciphertext encrypt(const PublicKey& pk, const BigInt& m,
                            const BigInt& r) {
    return paillier::encrypt(pk, m, r);
  }

  static Ciphertext hom_add(const PublicKey& pk, const Ciphertext& c1,
                            const Ciphertext& c2, const BigInt& r) {
    return paillier::hom_add(pk, c1, c2, r);
  }

  static Ciphertext hom_neg(const PublicKey& pk, const Ciphertext& c) {
    return paillier::hom_neg(pk, c);
  }

  // Stateless; exists to mirror the curve backend's cached decryptor.
  class Decryptor {
   public:
    Decryptor(paillier::PrivateKey sk, paillier::PublicKey pk)
        : sk_(std::move(sk)), pk_(std::move(pk)) {}

    BigInt decrypt(const Ciphertext& c, const PlaintextWindow& w) {
      return paillier::decrypt_in_window(sk_, pk_, c, w);
    }

   private:
    paillier::PrivateKey sk_;
    paillier::PublicKey pk_;
  };

  static Decryptor make_decryptor(const KeyPair& kp) {
    return Decryptor(kp.priv, kp.pub);
  }

  static std::size_t wire_width(const PublicKey& pk) {
    return to_decimal(pk.n_squared - 1).size();
  }

  static nlohmann::json cipher_to_json(const PublicKey& pk,
                                       const Ciphertext& c) {
    return nlohmann::json{{"backend", name()},
                          {"v", to_decimal_padded(c.value, wire_width(pk))}};
  }

  static Ciphertext cipher_from_json(const PublicKey& pk,
                                     const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("backend") ||
        !j["backend"].is_string() || j["backend"] != name() ||
        !j.contains("v") || !j["v"].is_string()) {
      throw CodecError("paillier ciphertext: bad shape or backend tag");
    }
    const std::string vs = j["v"].get<std::string>();
    if (vs.size() != wire_width(pk)) {
      throw CodecError("paillier ciphertext: wrong field width");
    }
    const BigInt v = parse_decimal(vs);
    if (v <= 0 || v >= pk.n_squared) {
      throw CodecError("paillier ciphertext: value out of range");
    }
    return Ciphertext{v};
  }

  static std::size_t cipher_bytes(const PublicKey& pk) {
    return (bit_length(pk.n_squared) + 7) / 8;
  }

  static std::size_t key_bits(const PublicKey& pk) {
    return bit_length(pk.n);
  }
};

}  // namespace bpmatch
