#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "seqlab/coeff_vector.hpp"
#include "seqlab/duality.hpp"
#include "seqlab/equivalence.hpp"
#include "seqlab/search.hpp"
#include "seqlab/space.hpp"

namespace seqlab {

struct GrowthRow {
  std::size_t n = 0;
  double lambda = 0.0;
  double mu = 0.0;
  /// lambda * mu / n.
  double bracket = 0.0;
  /// mu came from a closed-form dual (otherwise it is a search lower bound).
  bool mu_exact = true;
};

struct GrowthTable {
  std::vector<GrowthRow> rows;
  /// (m, n) with m <= n and m * n <= n_max  ->  lambda(mn) / (lambda(m) lambda(n)).
  std::map<std::pair<std::size_t, std::size_t>, double> ratios;
};

/// n_values must be strictly increasing, positive and <= n_max.
GrowthTable growth_table(const SpaceSpec& spec, std::span<const std::size_t> n_values, std::size_t n_max,
                         const DualBudget& budget = {});

/// 2, 4, 8, ... up to n_max.
std::vector<std::size_t> dyadic_grid(std::size_t n_max);

struct PowerFit {
  /// 1 / slope; absent when the values are flat (c0 flag).
  std::optional<double> exponent;
  double slope = 0.0;
  double intercept = 0.0;
  /// max_n |log v(n) - slope * log n|.
  double max_deviation = 0.0;
  bool c0_flag = false;
};

/// Least-squares line through (log n, log v(n)).
PowerFit fit_power_law(std::span<const std::size_t> ns, std::span<const double> values);

/// Fits lambda(n) ~ n^{1/p}. Throws InputError unless the table has at
/// least 3 rows with lambda > 1, except in the flat (c0) case.
PowerFit fit_p(const GrowthTable& table);

struct SandwichOptions {
  std::size_t n_max = 4096;
  std::size_t samples = 256;
  std::uint64_t seed = 0;
  double scale = 1.0;
};

struct SandwichResult {
  /// ||a|| <= 2K ||a||_p on every tested a.
  bool upper_ok = true;
  /// ||a|| >= ||a||_p / (2K) on every tested a.
  bool lower_ok = true;
  /// Largest ||a|| / ||a||_p seen, and where.
  double max_ratio = 0.0;
  CoeffVector max_witness;
  /// Smallest ||a|| / ||a||_p seen, and where.
  double min_ratio = 0.0;
  CoeffVector min_witness;
  std::size_t tested = 0;
};

/// Tests the two-sided l_p estimate with constants 2K and 1/(2K) on flat
/// vectors of every dyadic length up to n_max and structured/random
/// candidates of shorter lengths.
SandwichResult sandwich_check(const SpaceSpec& spec, double p, double k, const SandwichOptions& options = {});

enum class VerdictClass { C0Like, LpLike, NotUniform, Inconclusive };

std::string verdict_name(VerdictClass v);

struct ClassifyConfig {
  /// Growth-table grid; empty means dyadic_grid(n_max).
  std::vector<std::size_t> n_values;
  std::size_t n_max = 4096;
  double lambda_bound = 4.0;
  double k_threshold = 1.5;
  double dev_threshold = 0.05;
  /// Truncation N and largest generator width for the uniform sweep.
  std::size_t sweep_n = 64;
  std::size_t m_max = 64;
  std::size_t evaluations = 10000;
  DualBudget dual;
  std::size_t sandwich_samples = 256;
  double scale = 1.0;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
};

struct SweepEvidence {
  std::string generator;
  CoeffVector alpha;
  EquivalenceEstimate estimate;
};

struct Verdict {
  VerdictClass verdict = VerdictClass::Inconclusive;
  std::optional<double> p_hat;
  /// Largest equivalence-constant lower bound found by the sweep.
  double k_evidence = 1.0;
  double lambda_at_max = 0.0;
  std::string summary;
  GrowthTable table;
  std::optional<PowerFit> fit;
  std::optional<PowerFit> dual_fit;
  SweepEvidence worst;
  std::size_t generators = 0;
  std::optional<SandwichResult> sandwich;
  ClassifyConfig config;
};

/// Growth table, c0 test on lambda(n_max), power-law fit, uniform sweep over
/// the default generator pool and the l_p sandwich, combined into a class.
/// Deterministic given config.seed.
Verdict classify(const SpaceSpec& spec, const ClassifyConfig& config = {});

}  // namespace seqlab
