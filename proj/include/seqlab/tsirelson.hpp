#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace seqlab::tsirelson {

/// Largest number of nonzero coefficients the interval recursion accepts.
inline constexpr std::size_t kMaxSupport = 256;

struct Evaluation {
  double norm = 0.0;
  /// Number of sweeps of the recursion that changed some interval norm.
  std::size_t iterations = 0;
};

/// Tsirelson norm of sum_k a_k x_k (a_k stored 0-based, basis index k + 1).
///
/// Iterates ||x||_{j+1} = max(||x||_inf, theta * max sum_i ||E_i x||_j) over
/// admissible families E_1 < ... < E_l with l <= min E_1 until no interval
/// norm changes. Only intervals between nonzero coordinates are tabulated;
/// for the lattice iterates, finer partitions never lose, so the best
/// family starting at a coordinate of index t uses min(t, #points) pieces.
Evaluation evaluate(std::span<const double> a, double theta);

/// A functional from the norming set (the smallest set containing +-e_k^*
/// and closed under theta * (f_1 + ... + f_l) over admissible families)
/// that attains the norm: <result, a> = ||a||. Same length as a.
std::vector<double> norming_functional(std::span<const double> a, double theta);

}  // namespace seqlab::tsirelson
