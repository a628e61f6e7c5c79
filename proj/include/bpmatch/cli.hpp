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

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "bpmatch/backend.hpp"
#include "bpmatch/bench.hpp"
#include "bpmatch/bigint.hpp"
#include "bpmatch/errors.hpp"
#include "bpmatch/matching.hpp"

// Command implementations behind the CLI entry point. Each returns a process
// exit code: 0 success, 1 bad input or IO failure, 2 protocol abort. They
// write through streams/paths so tests can drive them directly.
namespace bpmatch::cli {

// BPMATCH_TOY=1 admits the six-point demonstration fixture (t = 2), which
// the normal t >= 8 floor rejects.
inline bool toy_mode() {
  const char* v = std::getenv("BPMATCH_TOY");
  return v != nullptr && std::string(v) == "1";
}

namespace detail {

inline bool valid_backend(const std::string& b) {
  return b == "bgn" || b == "paillier";
}

inline bool write_file(const std::string& path, const std::string& content,
                       std::ostream& err) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) {
    err << "error: cannot open for writing: " << path << "\n";
    return false;
  }
  f << content;
  f.flush();
  if (!f) {
    err << "error: write failed: " << path << "\n";
    return false;
  }
  return true;
}

}  // namespace detail

struct KeygenOptions {
  std::string backend = "bgn";
  unsigned t = 32;
  std::uint64_t seed = 1;
  std::string out;  // key file path; public half lands at out + ".pub"
};

inline int cmd_keygen(const KeygenOptions& opts, std::ostream& out,
                      std::ostream& err) {
  if (!detail::valid_backend(opts.backend)) {
    err << "error: unknown backend: " << opts.backend << "\n";
    return 1;
  }
  const bool toy = opts.t == 2 && toy_mode();
  if (!toy && opts.t < 8) {
    err << "error: t must be >= 8 (or t=2 with BPMATCH_TOY=1)\n";
    return 1;
  }
  const std::string path = opts.out.empty()
                               ? "bpmatch-" + opts.backend + "-t" +
                                     std::to_string(opts.t) + ".key.json"
                               : opts.out;
  Rng rng(opts.seed);
  try {
    nlohmann::json key_json;
    nlohmann::json pub_json;
    if (opts.backend == "bgn") {
      const auto kp = toy ? bgn::toy_fixture() : bgn::generate_keys(opts.t, rng);
      key_json = bgn::key_to_json(kp);
      pub_json = bgn::public_key_to_json(kp.pub);
      out << "backend=bgn t=" << opts.t << " n_bits=" << bit_length(kp.pub.n)
          << " p_bits=" << bit_length(kp.pub.curve.p()) << "\n";
    } else {
      const auto kp =
          toy ? paillier::toy_fixture() : paillier::generate_keys(opts.t, rng);
      key_json = paillier::key_to_json(kp);
      pub_json = paillier::public_key_to_json(kp.pub);
      out << "backend=paillier t=" << opts.t
          << " N_bits=" << bit_length(kp.pub.n) << "\n";
    }
    if (!detail::write_file(path, key_json.dump(2) + "\n", err)) return 1;
    if (!detail::write_file(path + ".pub", pub_json.dump(2) + "\n", err)) {
      return 1;
    }
    out << "key written to " << path << " (public half: " << path
        << ".pub)\n";
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

struct MatchOptions {
  std::string profiles_path;
  std::string backend = "bgn";
  std::string level = "pl2";
  unsigned t = 32;
  std::uint64_t seed = 1;
  std::string out;  // report path; PL-2 transcript lands at out + ".transcript.jsonl"
};

inline int cmd_match(const MatchOptions& opts, std::ostream& out,
                     std::ostream& err) {
  if (!detail::valid_backend(opts.backend)) {
    err << "error: unknown backend: " << opts.backend << "\n";
    return 1;
  }
  if (opts.level != "pl1" && opts.level != "pl2") {
    err << "error: level must be pl1 or pl2\n";
    return 1;
  }
  std::ifstream f(opts.profiles_path, std::ios::binary);
  if (!f) {
    err << "error: cannot read profiles: " << opts.profiles_path << "\n";
    return 1;
  }
  std::vector<match::Profile> profiles;
  try {
    profiles = match::profiles_from_json(
        nlohmann::json::parse(std::string(std::istreambuf_iterator<char>(f),
                                          std::istreambuf_iterator<char>())));
  } catch (const nlohmann::json::exception& e) {
    err << "error: profiles JSON: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  const auto level = opts.level == "pl1" ? match::PrivacyLevel::PL1
                                         : match::PrivacyLevel::PL2;
  Rng rng(opts.seed);
  match::SessionOptions session_opts;
  session_opts.t = opts.t;
  try {
    const auto result =
        opts.backend == "bgn"
            ? match::run_session<BgnBackend>(profiles, level, rng, session_opts)
            : match::run_session<PaillierBackend>(profiles, level, rng,
                                                  session_opts);
    const std::string report = result.report.to_json().dump(2) + "\n";
    if (opts.out.empty()) {
      out << report;
    } else {
      if (!detail::write_file(opts.out, report, err)) return 1;
      if (level == match::PrivacyLevel::PL2) {
        if (!detail::write_file(opts.out + ".transcript.jsonl",
                                result.transcript.to_jsonl(), err)) {
          return 1;
        }
      }
      out << "report written to " << opts.out << "\n";
    }
    return 0;
  } catch (const ProtocolAbort& e) {
    err << "protocol abort: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

struct BenchOptions {
  std::vector<unsigned> t_values{16, 64, 128};
  std::vector<std::size_t> ell_values{16};
  unsigned reps = 30;
  std::uint64_t seed = 1;
  std::string out;  // CSV path; empty = stdout
};

inline int cmd_bench(const BenchOptions& opts, std::ostream& out,
                     std::ostream& err) {
  for (const unsigned t : opts.t_values) {
    if (t < 8) {
      err << "error: bench t values must be >= 8\n";
      return 1;
    }
  }
  if (opts.t_values.empty() || opts.ell_values.empty() || opts.reps == 0) {
    err << "error: bench needs t values, ell values, and reps > 0\n";
    return 1;
  }
  bench::BenchConfig cfg;
  cfg.t_values = opts.t_values;
  cfg.ell_values = opts.ell_values;
  cfg.reps = opts.reps;
  cfg.seed = opts.seed;
  const auto records = bench::run_bench(cfg);
  std::string csv = bench::csv_header() + "\n";
  for (const auto& r : records) csv += bench::to_csv_row(r) + "\n";
  if (opts.out.empty()) {
    out << csv;
  } else {
    if (!detail::write_file(opts.out, csv, err)) return 1;
    out << "bench CSV written to " << opts.out << "\n";
  }
  // Side-by-side reference figures go to the diagnostic stream so the CSV
  // stays machine-readable.
  err << bench::literature_sidebar();
  return 0;
}

}  // namespace bpmatch::cli
