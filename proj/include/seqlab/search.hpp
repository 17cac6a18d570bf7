#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "seqlab/coeff_vector.hpp"
#include "seqlab/random.hpp"

namespace seqlab {

/// A scale-invariant objective to maximize. Must return -inf (or any very
/// small value) for inputs it cannot evaluate, such as the zero vector.
using Objective = std::function<double(const CoeffVector&)>;

struct LocalSearchOptions {
  std::size_t max_evaluations = 1000;
  /// First additive step, relative to the current largest |x_k|.
  double initial_step = 0.25;
  double min_step = 1e-10;
  /// Also move along prefix indicators 1_{1..k} of the given order.
  bool staircase_moves = false;
  /// Also transfer mass between pairs of coordinates.
  bool pair_moves = false;
  /// Coordinate order used by staircase moves; identity when empty.
  std::vector<std::size_t> staircase_order;
  /// Applied to every trial point before evaluation.
  std::function<void(CoeffVector&)> canonicalize;
};

struct SearchOutcome {
  CoeffVector argmax;
  double value = 0.0;
  std::size_t evaluations = 0;
  /// True when the evaluation budget ran out before the step size reached
  /// its floor.
  bool exhausted = false;
};

/// Greedy compass search: tries x +- step * scale * d along coordinate
/// directions (plus optional staircase and pair directions), accepts the first
/// improvement, halves the step when a full pass fails.
SearchOutcome local_search(const Objective& f, CoeffVector start, const LocalSearchOptions& options);

/// Evaluates every pool member, then spends what is left of the budget on
/// local search from the `refine` best members, in rank order.
SearchOutcome pool_search(const Objective& f, std::span<const CoeffVector> pool, std::size_t budget,
                          std::size_t refine, const LocalSearchOptions& local);

struct PoolOptions {
  /// Upper bound on the number of coordinate vectors e_k (spread evenly).
  std::size_t max_coordinates = 16;
  bool flats = true;
  bool staircases = true;
  std::size_t random = 8;
};

/// Structured candidates of the given length: coordinate vectors, flat
/// vectors with constant, alternating and random sign patterns, decreasing
/// staircases (linear, 1/k, 1/sqrt(k), geometric) and Gaussian vectors.
std::vector<CoeffVector> candidate_pool(std::size_t length, const PoolOptions& options, Rng& rng);

/// Budget and seeding for the witness searches behind equivalence constants
/// and operator norms.
struct WitnessOptions {
  std::size_t evaluations = 10000;
  std::uint64_t seed = 0;
  std::size_t random_candidates = 4;
  /// Pool members refined by local search (per search direction).
  std::size_t refine = 2;
  /// Positive factor applied to every candidate before the search; the
  /// searched objectives are ratios, so results do not depend on it.
  double scale = 1.0;
};

/// Runs fn(0), ..., fn(count - 1) on up to `threads` workers (0 = hardware
/// concurrency). Results must be written to per-index slots.
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& fn);

}  // namespace seqlab
