#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "residueseq/analysis.hpp"

namespace residueseq {

/// Parameters shared by the verification suites. Empty lists and unset
/// optionals mean "use the suite's default grid".
struct SuiteConfig {
  std::vector<std::int64_t> primes;
  std::vector<int> exponents;
  int n = 2;
  std::optional<std::vector<Residue>> f;  // coefficient list, constant first
  std::optional<int> deg_g;
  std::optional<std::string> g;    // polynomial in x
  std::optional<std::string> eta;  // eta part of a map spec
  bool all_eta = false;
  bool all_w = false;
  std::optional<Digit> s;
  std::optional<Digit> k;
  std::optional<Digit> lambda;
  std::uint64_t states = 10;
  std::uint64_t seed = 0;
  std::uint64_t budget = kDefaultBudget;
  bool timing = false;
};

const std::vector<std::string>& suite_names();

// Runs one named suite ("all" runs every suite with its defaults). Throws
// InvalidInput for an unknown suite or inconsistent parameters.
std::vector<UniformityReport> run_suite(std::string_view name, const SuiteConfig& config);

// Command line that re-runs the cell a report came from.
std::string repro_command(std::string_view suite, const UniformityReport& report, const SuiteConfig& config);

}  // namespace residueseq
