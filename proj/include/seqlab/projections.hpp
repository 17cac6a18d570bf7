#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "seqlab/blocks.hpp"
#include "seqlab/coeff_vector.hpp"
#include "seqlab/duality.hpp"
#include "seqlab/search.hpp"
#include "seqlab/space.hpp"

namespace seqlab {

/// Tolerance for certifying norming functionals.
inline constexpr double kSearchTolerance = 1e-4;

struct NormingFunctional {
  /// Length m, with <beta, alpha> = 1.
  CoeffVector beta;
  double pairing = 0.0;
  /// Upper bound on ||beta||_*; equals 1 / ||alpha||.
  double dual_norm_bound = 0.0;
  /// Search lower bound on ||beta||_* for spaces without a closed-form dual.
  std::optional<double> dual_norm_lower;
  /// pairing = 1 and the dual norm is within kSearchTolerance of the bound.
  bool certified = false;
  std::string method;
};

/// Constructs beta from a norm-attaining functional of alpha:
///   lp       sign(a)|a|^{p-1}                      (closed form)
///   c0       sign(a_j) e_j, j = argmax |a_j|         (closed form)
///   lorentz  sign(a_k) w_{rank(k)} |a_k|^{p-1}        (subgradient of the norm)
///   tsirelson the optimal admissible tree functional
///   summing  the tail functional sum_{k>=j} restricted to the block window;
///            its dual norm is measured on functionals of that window.
NormingFunctional norming_functional(const SpaceSpec& spec, const CoeffVector& alpha, const DualBudget& budget = {});

/// P x = sum_i <beta, x restricted to block i> U_i. x is zero-padded to a
/// multiple of m. P fixes every U_i when <beta, alpha> = 1.
CoeffVector block_projection(const GeneratedBlockSpec& bspec, const CoeffVector& beta, const CoeffVector& x);

struct ProjectionReport {
  /// max ||Px|| / ||x|| over tested x.
  double norm_lower = 0.0;
  CoeffVector witness;
  /// max ||P(Px) - Px|| over tested x.
  double idempotency_residual = 0.0;
  std::size_t samples = 0;
  bool exhausted = false;
};

/// Witness search for ||P|| over x of length N * m.
ProjectionReport projection_norm(const SpaceSpec& spec, const GeneratedBlockSpec& bspec, const CoeffVector& beta,
                                 std::size_t n, const WitnessOptions& options = {});

/// Summing-basis projection onto [x_{n_1}, x_{n_2}, ...]: the coefficients
/// a_j with n_{i-1} < j <= n_i (n_0 = 0) are summed into x_{n_i}. When the
/// last boundary is below len(a), the trailing group closes at len(a).
/// Boundaries are 1-based and strictly increasing.
CoeffVector summing_projection(const CoeffVector& a, std::span<const std::size_t> boundaries);

/// Dense row-major real matrix.
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);
  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  CoeffVector apply(const CoeffVector& x) const;
  Matrix diagonal() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

struct DiagonalCompression {
  double diag_norm_lower = 0.0;
  double t_norm_lower = 0.0;
  CoeffVector diag_witness;
  CoeffVector t_witness;
};

/// Lower bounds on ||diag T|| and ||T|| from one shared candidate pool; the
/// search for ||T|| also receives the diagonal's witness.
DiagonalCompression diagonal_compression(const SpaceSpec& spec, const Matrix& t, const WitnessOptions& options = {});

}  // namespace seqlab
