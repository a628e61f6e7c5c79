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
#include <iostream>

#include "CLI11.hpp"

#include "bpmatch/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"bpmatch: homomorphic blind-and-permute profile matching"};
  app.require_subcommand(1);

  bpmatch::cli::KeygenOptions keygen_opts;
  auto* keygen = app.add_subcommand("keygen", "generate a key pair");
  keygen->add_option("--backend", keygen_opts.backend, "bgn or paillier")
      ->check(CLI::IsMember({"bgn", "paillier"}));
  keygen->add_option("--t", keygen_opts.t, "prime bit length (>= 8)");
  keygen->add_option("--seed", keygen_opts.seed, "rng seed");
  keygen->add_option("--out", keygen_opts.out, "key file path");

  bpmatch::cli::MatchOptions match_opts;
  auto* match = app.add_subcommand("match", "run a matching session");
  match->add_option("profiles", match_opts.profiles_path, "profiles JSON file")
      ->required();
  match->add_option("--backend", match_opts.backend, "bgn or paillier")
      ->check(CLI::IsMember({"bgn", "paillier"}));
  match->add_option("--level", match_opts.level, "pl1 or pl2")
      ->check(CLI::IsMember({"pl1", "pl2"}));
  match->add_option("--t", match_opts.t, "session key bit length");
  match->add_option("--seed", match_opts.seed, "rng seed");
  match->add_option("--out", match_opts.out, "report path");

  bpmatch::cli::BenchOptions bench_opts;
  auto* bench = app.add_subcommand("bench", "measure both backends");
  bench->add_option("--t", bench_opts.t_values, "prime bit lengths");
  bench->add_option("--ell", bench_opts.ell_values, "sequence lengths");
  bench->add_option("--reps", bench_opts.reps, "timing repetitions");
  bench->add_option("--seed", bench_opts.seed, "rng seed");
  bench->add_option("--out", bench_opts.out, "CSV path");

  CLI11_PARSE(app, argc, argv);

  if (keygen->parsed()) {
    return bpmatch::cli::cmd_keygen(keygen_opts, std::cout, std::cerr);
  }
  if (match->parsed()) {
    return bpmatch::cli::cmd_match(match_opts, std::cout, std::cerr);
  }
  return bpmatch::cli::cmd_bench(bench_opts, std::cout, std::cerr);
}
