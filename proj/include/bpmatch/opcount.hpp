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

#include <cstdint>

// Thread-local tallies of the primitive operations the benchmark reports:
// elliptic-curve group additions (incl. doublings) and modular
// multiplications (incl. the ones inside square-and-multiply powmod).
namespace bpmatch::opcount {

struct Counts {
  std::uint64_t group_adds = 0;
  std::uint64_t modular_mults = 0;

  Counts operator-(const Counts& other) const {
    return Counts{group_adds - other.group_adds,
                  modular_mults - other.modular_mults};
  }
};

inline Counts& tally() {
  thread_local Counts counts;
  return counts;
}

inline void count_group_add() { ++tally().group_adds; }
inline void count_modular_mult() { ++tally().modular_mults; }

inline Counts snapshot() { return tally(); }
inline void reset() { tally() = Counts{}; }

// Measures the ops performed between construction and delta().
class Scope {
 public:
  Scope() : start_(snapshot()) {}
  Counts delta() const { return snapshot() - start_; }

 private:
  Counts start_;
};

}  // namespace bpmatch::opcount
