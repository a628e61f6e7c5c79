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

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "bpmatch/backend.hpp"
#include "bpmatch/bigint.hpp"
#include "bpmatch/errors.hpp"
#include "bpmatch/matching.hpp"
#include "json.hpp"

using bpmatch::BgnBackend;
using bpmatch::PaillierBackend;
using bpmatch::Rng;
using namespace bpmatch::match;

// The initiator's PL-2 view holds shares and permuted sizes only; there is
// no slot for anyone's attributes.
template <typename T>
concept HoldsAttributes = requires(T v) {
  v.attributes;
} || requires(T v) { v.candidate_attributes; };
static_assert(!HoldsAttributes<InitiatorView>);

namespace {

std::vector<Profile> example_profiles() {
  return {Profile::create("P1", {"a", "b", "c"}),
          Profile::create("P2", {"b", "c", "d"}),
          Profile::create("P3", {"a", "b", "c", "e"})};
}

// Random universe: N profiles over a bounded vocabulary.
std::vector<Profile> random_profiles(Rng& rng) {
  const std::size_t n = 2 + rng.below(9);        // 2..10 parties
  const std::size_t vocab = 5 + rng.below(46);   // 5..50 words
  std::vector<Profile> out;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t count = 1 + rng.below(20);
    std::vector<std::string> attrs;
    for (std::size_t k = 0; k < count; ++k) {
      attrs.push_back("attr" + std::to_string(rng.below(vocab)));
    }
    out.push_back(Profile::create("P" + std::to_string(i + 1), attrs));
  }
  return out;
}

std::size_t brute_force_argmax(const std::vector<int>& sizes) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < sizes.size(); ++i) {
    if (sizes[i] > sizes[best]) best = i;
  }
  return best;
}

}  // namespace

TEST_CASE("profile construction") {
  const auto p = Profile::create("P1", {"b", "a", "a", "b"});
  CHECK(p.size() == 2);  // set semantics
  CHECK(p.attributes() == std::set<std::string>{"a", "b"});

  const std::string at_cap(64, 'x');
  CHECK_NOTHROW(Profile::create("P1", {at_cap}));
  const std::string over_cap(65, 'x');
  CHECK_THROWS_AS(Profile::create("P1", {over_cap}), bpmatch::InvalidParams);
  CHECK_THROWS_AS(Profile::create("", {"a"}), bpmatch::InvalidParams);
}

TEST_CASE("attribute dictionary is deterministic and lexicographic") {
  const auto profiles = example_profiles();
  const auto d = AttributeDictionary::build(profiles);
  CHECK(d.size() == 5);  // a b c d e
  CHECK(d.id_of("a") == 0);
  CHECK(d.id_of("e") == 4);
  CHECK_THROWS_AS(d.id_of("zzz"), bpmatch::InvalidParams);

  // Insertion order never matters.
  const auto reversed = AttributeDictionary::build(
      {profiles[2], profiles[1], profiles[0]});
  for (const auto* attr : {"a", "b", "c", "d", "e"}) {
    CHECK(d.id_of(attr) == reversed.id_of(attr));
  }
  CHECK(d.encode(profiles[0]) == std::vector<int>{0, 1, 2});
}

TEST_CASE("intersection cardinality worked examples") {
  const auto s1 = Profile::create("P1", {"a", "b", "c"});
  const auto s2 = Profile::create("P2", {"b", "c", "d"});
  CHECK(intersection_cardinality(s1, s2) == 2);
  CHECK(intersection_cardinality(s1, s1) == 3);
  CHECK(intersection_cardinality(s1, Profile::create("PE", {})) == 0);
  CHECK(intersection_set(s1, s2) == std::vector<std::string>{"b", "c"});
}

TEST_CASE("best match selection") {
  CHECK(best_match({2, 5, 3}) == 1);
  CHECK(best_match({4, 4}) == 0);  // tie to the smallest index
  CHECK(best_match({0}) == 0);
  CHECK_THROWS_AS(best_match({}), bpmatch::NoCandidates);
}

TEST_CASE("PL-1 session reports sets directly") {
  Rng rng(1);
  const auto result =
      run_session<BgnBackend>(example_profiles(), PrivacyLevel::PL1, rng);
  CHECK(result.report.sizes == std::vector<int>{2, 3});
  CHECK(result.report.best_id == "P3");
  REQUIRE(result.report.intersections.size() == 2);
  CHECK(result.report.intersections[0] ==
        std::vector<std::string>{"b", "c"});
  CHECK(result.report.intersections[1] ==
        std::vector<std::string>{"a", "b", "c"});
  CHECK(result.transcript.messages().empty());

  const auto j = result.report.to_json();
  CHECK(j["level"] == "pl1");
  CHECK(j["intersections"]["P2"] == nlohmann::json::array({"b", "c"}));
  CHECK_FALSE(j.contains("size_multiset"));
  CHECK_FALSE(j.contains("transcript"));
}

TEST_CASE("PL-2 session reveals only the size multiset") {
  for (const bool use_bgn : {true, false}) {
    Rng rng(2);
    const auto result =
        use_bgn
            ? run_session<BgnBackend>(example_profiles(), PrivacyLevel::PL2,
                                      rng)
            : run_session<PaillierBackend>(example_profiles(),
                                           PrivacyLevel::PL2, rng);
    CHECK(result.report.size_multiset == std::vector<int>{2, 3});
    CHECK(result.report.best_id == "P3");
    CHECK(result.report.sizes.empty());
    CHECK(result.report.intersections.empty());
    CHECK(result.report.messages == 4);
    CHECK(result.report.wire_bytes ==
          result.transcript.total_wire_bytes());

    const auto j = result.report.to_json();
    CHECK(j["level"] == "pl2");
    CHECK(j["size_multiset"] == nlohmann::json::array({2, 3}));
    CHECK(j["transcript"]["messages"] == 4);
    CHECK_FALSE(j.contains("sizes"));
    CHECK_FALSE(j.contains("intersections"));
  }
}

TEST_CASE("identical profiles tie-break to the first candidate") {
  const std::vector<Profile> same = {
      Profile::create("P1", {"x", "y"}), Profile::create("P2", {"x", "y"}),
      Profile::create("P3", {"x", "y"}), Profile::create("P4", {"x", "y"})};
  Rng rng(3);
  const auto result =
      run_session<PaillierBackend>(same, PrivacyLevel::PL2, rng);
  CHECK(result.report.best_id == "P2");
  CHECK(result.report.size_multiset == std::vector<int>{2, 2, 2});
}

TEST_CASE("random universes match the plaintext oracle") {
  Rng universe_rng(4);
  for (int i = 0; i < 100; ++i) {
    const auto profiles = random_profiles(universe_rng);
    const auto oracle_sizes = plaintext_sizes(profiles);
    const auto expected_best =
        profiles[1 + brute_force_argmax(oracle_sizes)].id();

    Rng session_rng(1000 + i);
    const auto result =
        (i % 2 == 0)
            ? run_session<BgnBackend>(profiles, PrivacyLevel::PL2,
                                      session_rng)
            : run_session<PaillierBackend>(profiles, PrivacyLevel::PL2,
                                           session_rng);
    REQUIRE(result.report.best_id == expected_best);

    auto expected_multiset = oracle_sizes;
    std::sort(expected_multiset.begin(), expected_multiset.end());
    REQUIRE(result.report.size_multiset == expected_multiset);

    // PL-1 sets equal plaintext intersections on the same universe.
    Rng pl1_rng(2000 + i);
    const auto pl1 =
        run_session<BgnBackend>(profiles, PrivacyLevel::PL1, pl1_rng);
    for (std::size_t c = 1; c < profiles.size(); ++c) {
      REQUIRE(pl1.report.intersections[c - 1] ==
              intersection_set(profiles[0], profiles[c]));
    }
  }
}

TEST_CASE("adding a shared attribute raises the size by exactly one") {
  Rng rng(5);
  for (int i = 0; i < 20; ++i) {
    const auto profiles = random_profiles(rng);
    const auto& s1 = profiles[0];
    const auto& cand = profiles[1];
    // Find an element of S_1 the candidate lacks, if any.
    std::string missing;
    for (const auto& a : s1.attributes()) {
      if (!cand.attributes().count(a)) {
        missing = a;
        break;
      }
    }
    if (missing.empty()) continue;
    std::vector<std::string> grown(cand.attributes().begin(),
                                   cand.attributes().end());
    grown.push_back(missing);
    const auto bigger = Profile::create(cand.id(), grown);
    CHECK(intersection_cardinality(s1, bigger) ==
          intersection_cardinality(s1, cand) + 1);
  }
}

TEST_CASE("initiator view contains shares and permuted sizes only") {
  Rng rng(6);
  const auto profiles = example_profiles();
  const auto result =
      run_session<BgnBackend>(profiles, PrivacyLevel::PL2, rng);
  const auto& view = result.initiator_view;
  CHECK(view.shares_before.size() == profiles.size() - 1);
  CHECK(view.shares_after.size() == profiles.size() - 1);
  // The permuted reconstruction is some ordering of the true sizes.
  auto sorted_view = view.permuted_sizes;
  std::sort(sorted_view.begin(), sorted_view.end());
  CHECK(sorted_view == result.report.size_multiset);
}

TEST_CASE("session error paths") {
  Rng rng(7);
  CHECK_THROWS_AS(run_session<BgnBackend>({Profile::create("P1", {"a"})},
                                          PrivacyLevel::PL2, rng),
                  bpmatch::NoCandidates);
  CHECK_THROWS_AS(
      run_session<BgnBackend>({}, PrivacyLevel::PL1, rng),
      bpmatch::NoCandidates);
}

TEST_CASE("profiles parse from JSON") {
  const auto j = nlohmann::json::parse(R"({
    "parties": [
      {"id": "P1", "attributes": ["a", "b"]},
      {"id": "P2", "attributes": []}
    ]
  })");
  const auto profiles = profiles_from_json(j);
  REQUIRE(profiles.size() == 2);
  CHECK(profiles[0].id() == "P1");
  CHECK(profiles[0].size() == 2);
  CHECK(profiles[1].size() == 0);

  CHECK_THROWS_AS(profiles_from_json(nlohmann::json::array()),
                  bpmatch::CodecError);
  CHECK_THROWS_AS(profiles_from_json(nlohmann::json{{"parties", 3}}),
                  bpmatch::CodecError);
  CHECK_THROWS_AS(
      profiles_from_json(nlohmann::json::parse(
          R"({"parties": [{"id": "P1"}]})")),
      bpmatch::CodecError);
  CHECK_THROWS_AS(
      profiles_from_json(nlohmann::json::parse(
          R"({"parties": [{"id": "P1", "attributes": [7]}]})")),
      bpmatch::CodecError);
}
