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
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "bpmatch/backend.hpp"
#include "bpmatch/bigint.hpp"
#include "bpmatch/bp.hpp"
#include "bpmatch/errors.hpp"

// Profile-matching sessions: an initiator (first profile) against N-1
// candidates. Two privacy levels:
//
//   PL-1: both sides learn the intersection sets themselves.
//   PL-2: both sides learn only intersection sizes. The sizes travel through
//         a blind-and-permute run, so the initiator sees them only as a
//         permuted multiset; naming the best candidate requires inverting
//         permutations that only the verification harness logs.
//
// The additive split of the size vector is produced by a trusted dealer
// inside the harness; generating those shares obliviously is a separate
// (cited, not reimplemented) sub-protocol and an explicit seam here.
namespace bpmatch::match {

enum class PrivacyLevel { PL1, PL2 };

inline const char* level_name(PrivacyLevel l) {
  return l == PrivacyLevel::PL1 ? "pl1" : "pl2";
}

class Profile {
 public:
  static constexpr std::size_t kMaxAttributeBytes = 64;

  // Set semantics: duplicates collapse. Attribute strings are capped.
  static Profile create(std::string id, const std::vector<std::string>& attrs) {
    if (id.empty()) throw InvalidParams("profile: empty party id");
    std::set<std::string> set;
    for (const auto& a : attrs) {
      if (a.size() > kMaxAttributeBytes) {
        throw InvalidParams("profile: attribute exceeds 64 bytes");
      }
      set.insert(a);
    }
    return Profile(std::move(id), std::move(set));
  }

  const std::string& id() const { return id_; }
  const std::set<std::string>& attributes() const { return attributes_; }
  std::size_t size() const { return attributes_.size(); }

 private:
  Profile(std::string id, std::set<std::string> attrs)
      : id_(std::move(id)), attributes_(std::move(attrs)) {}

  std::string id_;
  std::set<std::string> attributes_;
};

// Shared, deterministic string<->id map: ids follow the lexicographic order
// of the union vocabulary.
class AttributeDictionary {
 public:
  static AttributeDictionary build(const std::vector<Profile>& profiles) {
    std::set<std::string> vocab;
    for (const auto& p : profiles) {
      vocab.insert(p.attributes().begin(), p.attributes().end());
    }
    AttributeDictionary d;
    int next = 0;
    for (const auto& a : vocab) d.ids_.emplace(a, next++);
    return d;
  }

  std::size_t size() const { return ids_.size(); }

  int id_of(const std::string& attr) const {
    const auto it = ids_.find(attr);
    if (it == ids_.end()) {
      throw InvalidParams("attribute not in dictionary: " + attr);
    }
    return it->second;
  }

  std::vector<int> encode(const Profile& p) const {
    std::vector<int> out;
    out.reserve(p.size());
    for (const auto& a : p.attributes()) out.push_back(id_of(a));
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  std::map<std::string, int> ids_;
};

// |S_1 intersect S_i| on encoded sets; the plaintext reference oracle.
inline int intersection_cardinality(const Profile& s1, const Profile& si) {
  const auto dict = AttributeDictionary::build({s1, si});
  const auto a = dict.encode(s1);
  const auto b = dict.encode(si);
  std::vector<int> common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(common));
  return static_cast<int>(common.size());
}

inline std::vector<std::string> intersection_set(const Profile& s1,
                                                 const Profile& si) {
  std::vector<std::string> out;
  std::set_intersection(s1.attributes().begin(), s1.attributes().end(),
                        si.attributes().begin(), si.attributes().end(),
                        std::back_inserter(out));
  return out;
}

// Position of the maximum, ties to the smallest position.
inline std::size_t best_match(const std::vector<int>& sizes) {
  if (sizes.empty()) throw NoCandidates();
  std::size_t best = 0;
  for (std::size_t i = 1; i < sizes.size(); ++i) {
    if (sizes[i] > sizes[best]) best = i;
  }
  return best;
}

struct MatchReport {
  PrivacyLevel level = PrivacyLevel::PL2;
  std::string initiator_id;
  std::vector<std::string> candidate_ids;
  // PL-1 only: per-candidate sizes (candidate order) and intersection sets.
  std::vector<int> sizes;
  std::vector<std::vector<std::string>> intersections;
  // PL-2 only: sizes as the session reveals them — a sorted multiset.
  std::vector<int> size_multiset;
  std::string best_id;
  std::size_t messages = 0;
  std::size_t wire_bytes = 0;

  nlohmann::json to_json() const {
    nlohmann::json j{{"level", level_name(level)},
                     {"initiator", initiator_id},
                     {"candidates", candidate_ids},
                     {"best", best_id}};
    if (level == PrivacyLevel::PL1) {
      j["sizes"] = sizes;
      nlohmann::json sets = nlohmann::json::object();
      for (std::size_t i = 0; i < candidate_ids.size(); ++i) {
        sets[candidate_ids[i]] = intersections[i];
      }
      j["intersections"] = sets;
    } else {
      j["size_multiset"] = size_multiset;
      j["transcript"] = nlohmann::json{{"messages", messages},
                                       {"wire_bytes", wire_bytes}};
    }
    return j;
  }
};

// What the initiator's side of a PL-2 session actually stored: its own
// shares before and after, and the permuted reconstruction. Recorded so
// tests can assert no candidate attribute data leaks into this view.
struct InitiatorView {
  std::vector<BigInt> shares_before;
  std::vector<BigInt> shares_after;
  std::vector<int> permuted_sizes;
};

struct SessionResult {
  MatchReport report;
  bp::BpTranscript transcript;
  InitiatorView initiator_view;
};

struct SessionOptions {
  unsigned t = 32;  // key size for PL-2 session keys
  PlaintextWindow window = PlaintextWindow::default_signed();
};

inline std::vector<int> plaintext_sizes(const std::vector<Profile>& profiles) {
  std::vector<int> sizes;
  sizes.reserve(profiles.size() - 1);
  for (std::size_t i = 1; i < profiles.size(); ++i) {
    sizes.push_back(intersection_cardinality(profiles[0], profiles[i]));
  }
  return sizes;
}

template <HomomorphicBackend B>
SessionResult run_session(const std::vector<Profile>& profiles,
                          PrivacyLevel level, Rng& rng,
                          const SessionOptions& opts = {}) {
  if (profiles.size() < 2) throw NoCandidates();
  SessionResult result;
  result.report.level = level;
  result.report.initiator_id = profiles[0].id();
  for (std::size_t i = 1; i < profiles.size(); ++i) {
    result.report.candidate_ids.push_back(profiles[i].id());
  }

  if (level == PrivacyLevel::PL1) {
    result.report.sizes = plaintext_sizes(profiles);
    for (std::size_t i = 1; i < profiles.size(); ++i) {
      result.report.intersections.push_back(
          intersection_set(profiles[0], profiles[i]));
    }
    result.report.best_id =
        result.report.candidate_ids[best_match(result.report.sizes)];
    return result;
  }

  // PL-2. Independent streams so key generation (whose draw count varies by
  // backend) cannot shift the permutation/blinding sequence.
  Rng key_rng_a = rng.child(1);
  Rng key_rng_b = rng.child(2);
  Rng protocol_rng = rng.child(3);
  Rng crypto_rng = rng.child(4);
  Rng dealer_rng = rng.child(5);

  const auto sizes = plaintext_sizes(profiles);
  std::vector<BigInt> s;
  s.reserve(sizes.size());
  for (const int v : sizes) s.push_back(v);

  // Dealer seam: the split arrives from a trusted dealer, standing in for
  // the cited share-producing sub-protocol.
  auto [s_prime, s_dprime] = bp::additive_split(s, dealer_rng);

  const auto kp_a = B::generate_keys(opts.t, key_rng_a);
  const auto kp_b = B::generate_keys(opts.t, key_rng_b);

  result.initiator_view.shares_before = s_prime.values();
  auto run = bp::bp_full_run<B>(kp_a, kp_b, s_prime, s_dprime, protocol_rng,
                                crypto_rng, opts.window);
  result.initiator_view.shares_after = run.share_a;

  // Both sides publish their final shares to reconstruct the permuted sizes.
  const auto permuted = bp::recombine(run.share_a, run.share_b);
  std::vector<int> permuted_sizes;
  permuted_sizes.reserve(permuted.size());
  for (const auto& v : permuted) {
    permuted_sizes.push_back(static_cast<int>(v.get_si()));
  }
  result.initiator_view.permuted_sizes = permuted_sizes;

  // The parties see the multiset only.
  result.report.size_multiset = permuted_sizes;
  std::sort(result.report.size_multiset.begin(),
            result.report.size_multiset.end());

  // Verification harness: undo the (logged) composed permutation to name the
  // best candidate in original order, with the smallest-index tie-break.
  const auto original_order = run.composed.inverse().apply(permuted_sizes);
  result.report.best_id =
      result.report.candidate_ids[best_match(original_order)];

  result.report.messages = run.transcript.messages().size();
  result.report.wire_bytes = run.transcript.total_wire_bytes();
  result.transcript = std::move(run.transcript);
  return result;
}

inline std::vector<Profile> profiles_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("parties") || !j["parties"].is_array()) {
    throw CodecError("profiles JSON: expected {\"parties\": [...]}");
  }
  std::vector<Profile> out;
  for (const auto& pj : j["parties"]) {
    if (!pj.is_object() || !pj.contains("id") || !pj["id"].is_string() ||
        !pj.contains("attributes") || !pj["attributes"].is_array()) {
      throw CodecError("profiles JSON: party needs id and attributes");
    }
    std::vector<std::string> attrs;
    for (const auto& aj : pj["attributes"]) {
      if (!aj.is_string()) {
        throw CodecError("profiles JSON: attributes must be strings");
      }
      attrs.push_back(aj.get<std::string>());
    }
    out.push_back(Profile::create(pj["id"].get<std::string>(), attrs));
  }
  return out;
}

}  // namespace bpmatch::match
