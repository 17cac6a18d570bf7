#pragma once

#include <cstddef>

#include "seqlab/coeff_vector.hpp"
#include "seqlab/space.hpp"

namespace seqlab {

/// Default cap on the expanded length len(a) * m.
inline constexpr std::size_t kDefaultMaxLength = 4096;

/// A generator alpha = sum_{n<=m} b_n x_n. Its block basis is
/// U_i = sum_{n=(i-1)m+1}^{im} b_{n-(i-1)m} x_n, so U_1 = alpha and the
/// blocks occupy consecutive windows of width m = alpha.size().
class GeneratedBlockSpec {
 public:
  explicit GeneratedBlockSpec(CoeffVector alpha, std::size_t max_length = kDefaultMaxLength);

  /// Rescales alpha to a unit vector of `spec`.
  static GeneratedBlockSpec normalized(const SpaceSpec& spec, const CoeffVector& alpha,
                                       std::size_t max_length = kDefaultMaxLength);

  const CoeffVector& alpha() const { return alpha_; }
  std::size_t width() const { return alpha_.size(); }
  bool is_normalized() const { return normalized_; }
  std::size_t max_length() const { return max_length_; }

 private:
  CoeffVector alpha_;
  std::size_t max_length_;
  bool normalized_ = false;
};

/// U_i (i >= 1) as a coefficient vector of length i * m.
CoeffVector generate_block(const GeneratedBlockSpec& bspec, std::size_t i);

/// sum_i a_i U_i, of length len(a) * m.
CoeffVector expand(const GeneratedBlockSpec& bspec, const CoeffVector& a);

/// || sum_i a_i U_i ||.
double block_norm(const SpaceSpec& spec, const GeneratedBlockSpec& bspec, const CoeffVector& a);

struct SubsymmetricBound {
  bool lower_ok = false;
  bool upper_ok = false;
  /// block_norm / norm(a).
  double ratio = 0.0;
  /// |b_j| * ||a|| with j = argmax |b_j|.
  double lower = 0.0;
  double block = 0.0;
  /// (sum_k |b_k|) * ||a||.
  double upper = 0.0;
};

/// Checks |b_j| ||sum a_i x_i|| <= ||sum a_i U_i|| <= (sum_k |b_k|) ||sum a_i x_i||
/// to within kNormTolerance (relative to the upper bound when it exceeds 1).
/// Requires a spreading-invariant space.
SubsymmetricBound subsymmetric_bound(const SpaceSpec& spec, const GeneratedBlockSpec& bspec, const CoeffVector& a);

}  // namespace seqlab
