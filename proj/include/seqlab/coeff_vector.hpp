#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace seqlab {

/// A finitely supported real coefficient sequence (a_1, ..., a_N) against a
/// fixed normalized basis. Storage is 0-based; the mathematical index of
/// entry k is k + 1. Trailing zeros are allowed.
class CoeffVector {
 public:
  /// The length-1 zero vector.
  CoeffVector() : coeffs_(1, 0.0) {}
  explicit CoeffVector(std::vector<double> coeffs);
  CoeffVector(std::initializer_list<double> coeffs);

  static CoeffVector zeros(std::size_t n);
  static CoeffVector ones(std::size_t n);
  /// The unit vector e_index (1-based) of length n.
  static CoeffVector unit(std::size_t n, std::size_t index);

  std::size_t size() const { return coeffs_.size(); }
  double operator[](std::size_t k) const { return coeffs_[k]; }
  double& operator[](std::size_t k) { return coeffs_[k]; }

  std::span<const double> values() const { return coeffs_; }
  std::span<double> values() { return coeffs_; }
  const std::vector<double>& data() const { return coeffs_; }

  bool is_zero() const;
  double max_abs() const;
  /// One past the last nonzero entry (0 for the zero vector).
  std::size_t support_end() const;

  /// Copy zero-extended (or truncated) to length n.
  CoeffVector resized(std::size_t n) const;

  CoeffVector& operator+=(const CoeffVector& other);
  CoeffVector& operator-=(const CoeffVector& other);
  CoeffVector& operator*=(double c);

  friend CoeffVector operator+(CoeffVector a, const CoeffVector& b) { return a += b; }
  friend CoeffVector operator-(CoeffVector a, const CoeffVector& b) { return a -= b; }
  friend CoeffVector operator*(double c, CoeffVector a) { return a *= c; }
  friend CoeffVector operator*(CoeffVector a, double c) { return a *= c; }

  /// Exact equality up to trailing zeros.
  friend bool operator==(const CoeffVector& a, const CoeffVector& b);

 private:
  std::vector<double> coeffs_;
};

/// sum_k a_k b_k over the common prefix.
double pairing(const CoeffVector& a, const CoeffVector& b);

}  // namespace seqlab
