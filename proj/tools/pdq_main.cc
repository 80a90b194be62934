// Copyright 2026 The PDQ Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Command-line entry point: run experiments, self-check suites and
// population generation.

#include <cstdint>
#include <cstdlib>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "pdq/datagen_io.h"
#include "pdq/errors.h"
#include "pdq/experiment.h"
#include "pdq/verification.h"

namespace {

// PDQ_SEED, when set to an unsigned integer, replaces the master seed.
std::optional<std::uint64_t> SeedFromEnvironment() {
  const char* raw = std::getenv("PDQ_SEED");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  char* end = nullptr;
  const unsigned long long value = std::strtoull(raw, &end, 10);
  if (*end != '\0') {
    throw pdq::Error(pdq::ErrorCode::kConfig,
                     "PDQ_SEED must be an unsigned integer");
  }
  return value;
}

int Run(const std::string& config_path, const std::string& output_dir,
        bool fix_population) {
  pdq::ExperimentConfig config = pdq::LoadConfig(config_path);
  if (auto seed = SeedFromEnvironment()) config.seed = *seed;
  if (!output_dir.empty()) config.output_dir = output_dir;
  if (fix_population) config.fix_population = true;
  const pdq::ExperimentResult result = pdq::RunExperiment(config);
  pdq::WriteResults(result, config.output_dir);
  std::cerr << "wrote " << result.summary.size() << " summary rows and "
            << result.trials.size() << " trials to " << config.output_dir
            << " (seed " << config.seed;
  if (result.dropped_rows > 0) {
    std::cerr << ", dropped rows " << result.dropped_rows;
  }
  if (result.duplicate_values > 0) {
    std::cerr << ", remapped duplicates " << result.duplicate_values;
  }
  std::cerr << ")\n";
  return 0;
}

int Verify(const std::string& suite, std::uint64_t seed) {
  if (auto env = SeedFromEnvironment()) seed = *env;
  std::vector<pdq::SuiteResult> results;
  if (suite.empty() || suite == "solver") {
    results.push_back(pdq::RunSolverSuite(seed));
  }
  if (suite.empty() || suite == "icir") {
    results.push_back(pdq::RunIcIrSuite(seed));
  }
  if (suite.empty() || suite == "pdp") {
    results.push_back(pdq::RunPdpSuite(seed));
  }
  if (suite.empty() || suite == "lemma2") {
    results.push_back(pdq::RunAccuracyBoundSuite(seed));
  }
  bool ok = true;
  for (const auto& r : results) {
    std::cout << (r.pass() ? "PASS " : "FAIL ") << r.name << ": "
              << r.cases - r.failures << "/" << r.cases << " cases";
    if (!r.pass()) std::cout << " (" << r.detail << ")";
    std::cout << "\n";
    ok = ok && r.pass();
  }
  return ok ? 0 : 1;
}

int Generate(std::size_t n, double rho, std::uint64_t seed) {
  pdq::PopulationSpec spec;
  spec.n = n;
  spec.rho = rho;
  spec.seed = seed;
  pdq::WritePopulationCsv(pdq::GenCorrelatedUniforms(spec), std::cout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Budget-feasible data procurement with personalised-DP queries"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output_dir;
  bool fix_population = false;
  auto* run = app.add_subcommand("run", "Run an experiment from a config file");
  run->add_option("--config", config_path, "key = value config file")
      ->required();
  run->add_option("--output-dir", output_dir,
                  "Directory for summary.csv and trials.csv");
  run->add_flag("--fix-population", fix_population,
                "Reuse one (theta, eps) draw for every trial");

  std::string suite;
  std::uint64_t verify_seed = 20240101;
  auto* verify = app.add_subcommand("verify", "Run randomised self-checks");
  verify->add_option("--suite", suite, "Suite to run (default: all)")
      ->check(CLI::IsMember({"pdp", "icir", "lemma2", "solver"}));
  verify->add_option("--seed", verify_seed, "Seed for the random instances");

  std::size_t n = 0;
  double rho = 0.0;
  std::uint64_t gen_seed = 0;
  auto* gen = app.add_subcommand("gen", "Print a correlated (theta, eps) draw");
  gen->add_option("--n", n, "Population size")->required();
  gen->add_option("--rho", rho, "Correlation in [-1, 0]")->required();
  gen->add_option("--seed", gen_seed, "Seed")->required();

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run) return Run(config_path, output_dir, fix_population);
    if (*verify) return Verify(suite, verify_seed);
    if (*gen) return Generate(n, rho, gen_seed);
  } catch (const pdq::Error& e) {
    std::cerr << "error [" << pdq::ErrorCodeName(e.code()) << "]: " << e.what()
              << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
