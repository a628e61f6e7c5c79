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

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "bpmatch/backend.hpp"
#include "bpmatch/bigint.hpp"
#include "bpmatch/errors.hpp"
#include "bpmatch/window.hpp"

// Blind-and-permute: two parties hold an additive split of a sequence and
// re-split it so the result is a permutation of the original, with each
// party knowing only its own permutation factor. One "half run" (4 steps,
// 2 messages):
//
//   1. A encrypts its shares under its own key and sends them.
//   2. B forms E_A(-r_i) for fresh blinding values and adds it to each
//      incoming ciphertext (every addition re-randomized).
//   3. B permutes the blinded vector by its private pi_B and sends it back.
//   4. A decrypts: A now holds pi_B(S' - R), B holds pi_B(S'' + R).
//
// A full run repeats with roles reversed (B's key, A's permutation), so the
// final split is permuted by pi_A composed with pi_B, each factor private to
// one party.
namespace bpmatch::bp {

// Initial shares fit in [-kShareBound, kShareBound]; blinding values come
// from [0, kBlindingRange). Intermediates then stay below 2^17 in magnitude,
// well inside the default decryption window.
inline constexpr std::int64_t kShareBound = std::int64_t{1} << 16;
inline constexpr std::int64_t kBlindingRange = std::int64_t{1} << 16;

enum class Party { A, B };

inline const char* party_name(Party p) { return p == Party::A ? "A" : "B"; }

class ShareVector {
 public:
  static ShareVector create(std::vector<BigInt> values, Party owner) {
    for (const BigInt& v : values) {
      if (v > kShareBound || v < -kShareBound) {
        throw ShareOutOfRange("share magnitude exceeds the protocol bound");
      }
    }
    return ShareVector(std::move(values), owner);
  }

  const std::vector<BigInt>& values() const { return values_; }
  Party owner() const { return owner_; }
  std::size_t size() const { return values_.size(); }

 private:
  ShareVector(std::vector<BigInt> values, Party owner)
      : values_(std::move(values)), owner_(owner) {}

  std::vector<BigInt> values_;
  Party owner_;
};

class BlindingVector {
 public:
  static BlindingVector draw(std::size_t ell, Rng& rng) {
    std::vector<BigInt> r(ell);
    for (auto& v : r) v = BigInt(rng.below(kBlindingRange));
    return BlindingVector(std::move(r));
  }

  static BlindingVector from_values(std::vector<BigInt> values) {
    for (const BigInt& v : values) {
      if (v < 0 || v >= kBlindingRange) {
        throw InvalidParams("blinding value outside [0, 2^16)");
      }
    }
    return BlindingVector(std::move(values));
  }

  const std::vector<BigInt>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }

 private:
  explicit BlindingVector(std::vector<BigInt> values)
      : values_(std::move(values)) {}

  std::vector<BigInt> values_;
};

// out[i] = in[perm[i]].
class Permutation {
 public:
  static Permutation identity(std::size_t ell) {
    std::vector<std::size_t> p(ell);
    std::iota(p.begin(), p.end(), 0);
    return Permutation(std::move(p));
  }

  // Fisher-Yates; consumes exactly ell-1 draws regardless of backend.
  static Permutation random(std::size_t ell, Rng& rng) {
    auto perm = identity(ell).perm_;
    for (std::size_t i = ell; i-- > 1;) {
      const auto j = static_cast<std::size_t>(rng.below(i + 1));
      std::swap(perm[i], perm[j]);
    }
    return Permutation(std::move(perm));
  }

  static Permutation from_mapping(std::vector<std::size_t> mapping) {
    std::vector<bool> seen(mapping.size(), false);
    for (const auto v : mapping) {
      if (v >= mapping.size() || seen[v]) {
        throw InvalidParams("permutation mapping is not a bijection");
      }
      seen[v] = true;
    }
    return Permutation(std::move(mapping));
  }

  std::size_t size() const { return perm_.size(); }
  const std::vector<std::size_t>& mapping() const { return perm_; }

  template <typename T>
  std::vector<T> apply(const std::vector<T>& in) const {
    if (in.size() != perm_.size()) {
      throw InvalidParams("permutation/vector length mismatch");
    }
    std::vector<T> out;
    out.reserve(in.size());
    for (const auto idx : perm_) out.push_back(in[idx]);
    return out;
  }

  // First *this, then `next`: apply(then(next), v) == apply(next, apply(*this, v)).
  Permutation then(const Permutation& next) const {
    if (next.size() != size()) {
      throw InvalidParams("permutation composition size mismatch");
    }
    std::vector<std::size_t> composed(size());
    for (std::size_t i = 0; i < size(); ++i) {
      composed[i] = perm_[next.perm_[i]];
    }
    return Permutation(std::move(composed));
  }

  Permutation inverse() const {
    std::vector<std::size_t> inv(size());
    for (std::size_t i = 0; i < size(); ++i) inv[perm_[i]] = i;
    return Permutation(std::move(inv));
  }

  bool operator==(const Permutation& o) const { return perm_ == o.perm_; }

 private:
  explicit Permutation(std::vector<std::size_t> perm)
      : perm_(std::move(perm)) {}

  std::vector<std::size_t> perm_;
};

// Per-half protocol-step tallies: one encryption per outgoing share, one
// negated-blinding construction, one homomorphic addition, one decryption.
struct OpCounters {
  std::uint64_t enc = 0;
  std::uint64_t add = 0;
  std::uint64_t neg = 0;
  std::uint64_t dec = 0;
};

struct WireMessage {
  int half = 1;          // 1 or 2
  int step = 1;          // 1 or 3
  std::string direction; // "A->B" or "B->A"
  std::string wire;      // exact bytes as sent

  std::size_t bytes() const { return wire.size(); }
};

class BpTranscript {
 public:
  void record_message(int half, int step, std::string direction,
                      std::string wire) {
    messages_.push_back(
        WireMessage{half, step, std::move(direction), std::move(wire)});
  }

  OpCounters& counters(int half) { return counters_.at(half - 1); }
  const OpCounters& counters(int half) const { return counters_.at(half - 1); }

  const std::vector<WireMessage>& messages() const { return messages_; }

  std::size_t message_count(int half) const {
    std::size_t c = 0;
    for (const auto& m : messages_) c += (m.half == half) ? 1 : 0;
    return c;
  }

  std::size_t total_wire_bytes() const {
    std::size_t total = 0;
    for (const auto& m : messages_) total += m.bytes();
    return total;
  }

  // One JSON line per message, annotated with its byte count.
  std::string to_jsonl() const {
    std::string out;
    for (const auto& m : messages_) {
      nlohmann::json line{{"half", m.half},
                          {"step", m.step},
                          {"direction", m.direction},
                          {"bytes", m.bytes()},
                          {"message", nlohmann::json::parse(m.wire)}};
      out += line.dump();
      out += '\n';
    }
    return out;
  }

 private:
  std::vector<WireMessage> messages_;
  std::array<OpCounters, 2> counters_{};
};

// Reliable in-order single-direction queue; the simulator runs both parties
// in one thread of control and moves bytes between them explicitly.
class Channel {
 public:
  void send(std::string wire) { queue_.push_back(std::move(wire)); }

  std::string recv() {
    if (queue_.empty()) {
      throw ProtocolAbort(ProtocolAbort::Reason::Codec,
                          "receive on empty channel");
    }
    std::string wire = std::move(queue_.front());
    queue_.pop_front();
    return wire;
  }

  bool empty() const { return queue_.empty(); }

 private:
  std::deque<std::string> queue_;
};

namespace detail {

template <HomomorphicBackend B>
std::string encode_cipher_vector(const typename B::PublicKey& pk, int step,
                                 const std::vector<typename B::Ciphertext>& cs) {
  nlohmann::json payload = nlohmann::json::array();
  for (const auto& c : cs) payload.push_back(B::cipher_to_json(pk, c));
  return nlohmann::json{{"step", step},
                        {"kind", "cipher_vector"},
                        {"payload", std::move(payload)}}
      .dump();
}

template <HomomorphicBackend B>
std::vector<typename B::Ciphertext> decode_cipher_vector(
    const typename B::PublicKey& pk, int expected_step,
    const std::string& wire, std::size_t expected_len) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(wire);
  } catch (const nlohmann::json::exception& e) {
    throw ProtocolAbort(ProtocolAbort::Reason::Codec, e.what());
  }
  if (!j.is_object() || !j.contains("step") || j["step"] != expected_step ||
      !j.contains("kind") || j["kind"] != "cipher_vector" ||
      !j.contains("payload") || !j["payload"].is_array() ||
      j["payload"].size() != expected_len) {
    throw ProtocolAbort(ProtocolAbort::Reason::Codec,
                        "unexpected message framing");
  }
  std::vector<typename B::Ciphertext> out;
  out.reserve(expected_len);
  try {
    for (const auto& cj : j["payload"]) {
      out.push_back(B::cipher_from_json(pk, cj));
    }
  } catch (const CodecError& e) {
    throw ProtocolAbort(ProtocolAbort::Reason::Codec, e.what());
  }
  return out;
}

}  // namespace detail

// The key-owning side of a half run. Holds the keypair and its shares;
// never sees a permutation or blinding vector (no such fields exist).
template <HomomorphicBackend B>
class SenderParty {
 public:
  SenderParty(const typename B::KeyPair& kp, std::vector<BigInt> shares,
              PlaintextWindow window = PlaintextWindow::default_signed())
      : kp_(kp),
        decryptor_(B::make_decryptor(kp)),
        shares_(std::move(shares)),
        window_(window) {}

  const typename B::PublicKey& public_key() const { return B::public_of(kp_); }
  const std::vector<BigInt>& shares() const { return shares_; }
  std::size_t size() const { return shares_.size(); }

  // Step 1: encrypt every share under our own key.
  std::string make_step1(Rng& crypto_rng, OpCounters& ops) {
    const auto& pk = B::public_of(kp_);
    std::vector<typename B::Ciphertext> cs;
    cs.reserve(shares_.size());
    for (const BigInt& s : shares_) {
      cs.push_back(B::encrypt(pk, s, B::draw_randomizer(pk, crypto_rng)));
      ++ops.enc;
    }
    return detail::encode_cipher_vector<B>(pk, 1, cs);
  }

  // Step 4: decrypt the returned vector; these are our new shares.
  std::vector<BigInt> read_step3(const std::string& wire, OpCounters& ops) {
    const auto& pk = B::public_of(kp_);
    const auto cs =
        detail::decode_cipher_vector<B>(pk, 3, wire, shares_.size());
    std::vector<BigInt> out;
    out.reserve(cs.size());
    for (const auto& c : cs) {
      try {
        out.push_back(decryptor_.decrypt(c, window_));
      } catch (const PlaintextOutOfWindow& e) {
        throw ProtocolAbort(ProtocolAbort::Reason::PlaintextOutOfWindow,
                            e.what());
      }
      ++ops.dec;
    }
    return out;
  }

 private:
  typename B::KeyPair kp_;
  typename B::Decryptor decryptor_;
  std::vector<BigInt> shares_;
  PlaintextWindow window_;
};

// The blinding side. Holds only the peer's public key, its own shares, and
// its private permutation and blinding vector; no private-key field exists.
template <HomomorphicBackend B>
class BlinderParty {
 public:
  BlinderParty(const typename B::PublicKey& peer_pk, std::vector<BigInt> shares,
               Permutation pi, BlindingVector blinding)
      : peer_pk_(peer_pk),
        shares_(std::move(shares)),
        pi_(std::move(pi)),
        blinding_(std::move(blinding)) {
    if (pi_.size() != shares_.size() || blinding_.size() != shares_.size()) {
      throw InvalidParams("blinder: permutation/blinding length mismatch");
    }
  }

  std::size_t size() const { return shares_.size(); }

  // Steps 2 and 3: subtract the blinding homomorphically (encrypt-negate-add,
  // each addition freshly randomized), permute, reply.
  std::string process_step1(const std::string& wire, Rng& crypto_rng,
                            OpCounters& ops) {
    const auto incoming =
        detail::decode_cipher_vector<B>(peer_pk_, 1, wire, shares_.size());
    std::vector<typename B::Ciphertext> blinded;
    blinded.reserve(incoming.size());
    for (std::size_t i = 0; i < incoming.size(); ++i) {
      const auto neg_r = B::hom_neg(
          peer_pk_, B::encrypt(peer_pk_, blinding_.values()[i],
                               B::identity_randomizer(peer_pk_)));
      ++ops.neg;
      blinded.push_back(B::hom_add(peer_pk_, incoming[i], neg_r,
                                   B::draw_randomizer(peer_pk_, crypto_rng)));
      ++ops.add;
    }
    blinded = pi_.apply(blinded);
    return detail::encode_cipher_vector<B>(peer_pk_, 3, blinded);
  }

  // Local share update: pi(S'' + R).
  std::vector<BigInt> blinded_shares() const {
    std::vector<BigInt> sum;
    sum.reserve(shares_.size());
    for (std::size_t i = 0; i < shares_.size(); ++i) {
      sum.push_back(shares_[i] + blinding_.values()[i]);
    }
    return pi_.apply(sum);
  }

 private:
  typename B::PublicKey peer_pk_;
  std::vector<BigInt> shares_;
  Permutation pi_;
  BlindingVector blinding_;
};

// sender_out = pi(sender_shares - R), blinder_out = pi(blinder_shares + R).
struct HalfRunOutcome {
  std::vector<BigInt> sender_out;
  std::vector<BigInt> blinder_out;
};

// One half run over a fresh channel pair. `sender_label` names the
// key-owning party for transcript directions.
template <HomomorphicBackend B>
HalfRunOutcome bp_half_run(const typename B::KeyPair& sender_kp,
                           const std::vector<BigInt>& sender_shares,
                           const std::vector<BigInt>& blinder_shares,
                           const Permutation& pi, const BlindingVector& blinding,
                           Rng& crypto_rng, BpTranscript& transcript,
                           int half = 1, Party sender_label = Party::A,
                           PlaintextWindow window =
                               PlaintextWindow::default_signed()) {
  if (sender_shares.size() != blinder_shares.size()) {
    throw InvalidParams("bp_half_run: share length mismatch");
  }
  const std::string fwd = std::string(party_name(sender_label)) + "->" +
                          party_name(sender_label == Party::A ? Party::B
                                                              : Party::A);
  const std::string bwd = std::string(party_name(
                              sender_label == Party::A ? Party::B : Party::A)) +
                          "->" + party_name(sender_label);

  SenderParty<B> sender(sender_kp, sender_shares, window);
  BlinderParty<B> blinder(B::public_of(sender_kp), blinder_shares, pi,
                          blinding);
  Channel to_blinder;
  Channel to_sender;
  OpCounters& ops = transcript.counters(half);

  std::string m1 = sender.make_step1(crypto_rng, ops);
  transcript.record_message(half, 1, fwd, m1);
  to_blinder.send(std::move(m1));

  std::string m3 = blinder.process_step1(to_blinder.recv(), crypto_rng, ops);
  transcript.record_message(half, 3, bwd, m3);
  to_sender.send(std::move(m3));

  HalfRunOutcome out;
  out.sender_out = sender.read_step3(to_sender.recv(), ops);
  out.blinder_out = blinder.blinded_shares();
  return out;
}

struct FullRunResult {
  std::vector<BigInt> share_a;  // A's final shares
  std::vector<BigInt> share_b;  // B's final shares
  // Harness-side logs for verification; the parties themselves never see
  // the other side's factor.
  Permutation pi_b;
  Permutation pi_a;
  Permutation composed;  // pi_B first, then pi_A
  BpTranscript transcript;
};

// Two half runs with roles reversed in the second. protocol_rng drives the
// permutations and blinding (identical draw sequence whatever the backend);
// crypto_rng drives ciphertext randomizers only.
template <HomomorphicBackend B>
FullRunResult bp_full_run(const typename B::KeyPair& kp_a,
                          const typename B::KeyPair& kp_b,
                          const ShareVector& s_prime,
                          const ShareVector& s_dprime, Rng& protocol_rng,
                          Rng& crypto_rng,
                          PlaintextWindow window =
                              PlaintextWindow::default_signed()) {
  if (s_prime.size() != s_dprime.size()) {
    throw InvalidParams("bp_full_run: share length mismatch");
  }
  const std::size_t ell = s_prime.size();

  const Permutation pi_b = Permutation::random(ell, protocol_rng);
  const BlindingVector r_b = BlindingVector::draw(ell, protocol_rng);
  const Permutation pi_a = Permutation::random(ell, protocol_rng);
  const BlindingVector r_a = BlindingVector::draw(ell, protocol_rng);

  FullRunResult result{{}, {}, pi_b, pi_a, pi_b.then(pi_a), {}};

  // Half 1: A owns the key, B blinds and permutes.
  const auto h1 =
      bp_half_run<B>(kp_a, s_prime.values(), s_dprime.values(), pi_b, r_b,
                     crypto_rng, result.transcript, 1, Party::A, window);
  // Half 2, roles reversed: B owns the key, A blinds and permutes.
  const auto h2 =
      bp_half_run<B>(kp_b, h1.blinder_out, h1.sender_out, pi_a, r_a,
                     crypto_rng, result.transcript, 2, Party::B, window);

  result.share_b = h2.sender_out;   // pi_A(V'' - R_A) at B
  result.share_a = h2.blinder_out;  // pi_A(V' + R_A) at A
  return result;
}

// Dealer-side utilities for producing and checking splits.
inline std::pair<ShareVector, ShareVector> additive_split(
    const std::vector<BigInt>& s, Rng& rng) {
  std::vector<BigInt> s_prime;
  std::vector<BigInt> s_dprime;
  s_prime.reserve(s.size());
  s_dprime.reserve(s.size());
  for (const BigInt& v : s) {
    if (v > kShareBound / 2 || v < -kShareBound / 2) {
      throw ShareOutOfRange("additive_split: |s_i| exceeds half the bound");
    }
    // Uniform over [-2^15, 2^15].
    const BigInt half = BigInt(rng.below(kShareBound + 1)) - kShareBound / 2;
    s_dprime.push_back(half);
    s_prime.push_back(v - half);
  }
  return {ShareVector::create(std::move(s_prime), Party::A),
          ShareVector::create(std::move(s_dprime), Party::B)};
}

inline std::vector<BigInt> recombine(const std::vector<BigInt>& a,
                                     const std::vector<BigInt>& b) {
  if (a.size() != b.size()) {
    throw InvalidParams("recombine: length mismatch");
  }
  std::vector<BigInt> out;
  out.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(a[i] + b[i]);
  return out;
}

}  // namespace bpmatch::bp
