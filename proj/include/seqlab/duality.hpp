#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>

#include "seqlab/coeff_vector.hpp"
#include "seqlab/space.hpp"

namespace seqlab {

struct DualBudget {
  /// Total norm evaluations across all restarts; 0 disables the search.
  std::size_t evaluations = 200000;
  std::size_t restarts = 32;
  std::uint64_t seed = 0;
};

/// ||y||_* = sup { <x, y> : ||x|| <= 1 }, reported as a witness-certified
/// lower bound.
struct DualEvaluation {
  double value = 0.0;
  /// Primal vector with norm <= 1 and <witness, y> = value.
  CoeffVector witness;
  /// Upper certificate minus value; present only for closed-form duals.
  std::optional<double> gap;
  bool analytic = false;
  std::size_t evaluations = 0;
  bool exhausted = false;
};

/// Lp, C0, Lorentz with p = 1 and the summing basis use closed forms
/// (the summing dual is sum_k |y_k - y_{k-1}| + |y_N| with y_0 = 0);
/// Tsirelson and Lorentz with p > 1 use the search.
DualEvaluation dual_norm(const SpaceSpec& spec, const CoeffVector& y, const DualBudget& budget = {});

using NormFunction = std::function<double(const CoeffVector&)>;

/// What the dual search may assume about the primal norm.
struct DualStructure {
  /// Restrict to x with sign(x_k) = sign(y_k) and supp x within supp y.
  bool unconditional = false;
  /// Restrict to x whose magnitudes are ordered like |y|.
  bool symmetric = false;
  /// Extra trailing primal coordinates beyond the length of y (needed for
  /// conditional norms, where the tail of x still affects its norm).
  std::size_t extra_coordinates = 0;
};

/// Multi-start coordinate ascent on <x, y> / ||x|| for an arbitrary norm.
DualEvaluation dual_norm_search(const NormFunction& primal, const CoeffVector& y, const DualStructure& structure,
                                const DualBudget& budget);

/// mu(n) = || x_1^* + ... + x_n^* ||.
double mu(const SpaceSpec& spec, std::size_t n, const DualBudget& budget = {});

/// lambda(n) mu(n) / n; requires an unconditional family.
double duality_bracket(const SpaceSpec& spec, std::size_t n, const DualBudget& budget = {});

}  // namespace seqlab
