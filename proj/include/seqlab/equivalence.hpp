#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "seqlab/blocks.hpp"
#include "seqlab/coeff_vector.hpp"
#include "seqlab/search.hpp"
#include "seqlab/space.hpp"

namespace seqlab {

/// Budget for estimate_k: `evaluations` is the total for N <= 128.
using EquivalenceOptions = WitnessOptions;

/// Lower bound on the constant K with (1/K)||sum a_i x_i|| <= ||sum a_i U_i|| <= K||sum a_i x_i||
/// over coefficient vectors of length <= N, certified by two witnesses.
struct EquivalenceEstimate {
  double k_lower = 1.0;
  /// Maximizes block_norm / norm.
  CoeffVector witness_up;
  double ratio_up = 1.0;
  /// Maximizes norm / block_norm.
  CoeffVector witness_down;
  double ratio_down = 1.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  bool exhausted = false;
};

/// block_norm(a) / norm(a); throws InputError for a = 0.
double ratio(const SpaceSpec& spec, const GeneratedBlockSpec& bspec, const CoeffVector& a);

/// Searches truncation levels 1, 2, 4, ... below N and N itself. Each level
/// gets a fixed share of the budget and its own seed stream, so for dyadic
/// N the estimate is non-decreasing in N.
EquivalenceEstimate estimate_k(const SpaceSpec& spec, const GeneratedBlockSpec& bspec, std::size_t n,
                               const EquivalenceOptions& options = {});

struct NamedGenerator {
  std::string label;
  GeneratedBlockSpec block;
};

/// Normalized generators for widths 1, 2, 4, ..., m_max (and m_max):
/// the last coordinate vector, the flat vector, geometric decays 0.5^k and
/// 0.9^k, and one Gaussian vector per width.
std::vector<NamedGenerator> default_generator_pool(const SpaceSpec& spec, std::size_t m_max, std::uint64_t seed,
                                                   std::size_t max_length = kDefaultMaxLength);

struct SweepResult {
  double k_sup = 1.0;
  std::size_t worst = 0;
  std::vector<EquivalenceEstimate> estimates;
};

/// Max of estimate_k over a family of normalized generators.
SweepResult uniform_sweep(const SpaceSpec& spec, std::span<const GeneratedBlockSpec> family, std::size_t n,
                          const EquivalenceOptions& options = {}, std::size_t threads = 1);

}  // namespace seqlab
