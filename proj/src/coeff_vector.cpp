#include "seqlab/coeff_vector.hpp"

#include <algorithm>
#include <cmath>

#include "seqlab/error.hpp"

namespace seqlab {

namespace {

void check_entries(const std::vector<double>& coeffs) {
  if (coeffs.empty()) throw InputError("coefficient vector must have length >= 1");
  for (double c : coeffs) {
    if (!std::isfinite(c)) throw InputError("coefficient vector has a non-finite entry");
  }
}

}  // namespace

CoeffVector::CoeffVector(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  check_entries(coeffs_);
}

CoeffVector::CoeffVector(std::initializer_list<double> coeffs) : coeffs_(coeffs) {
  check_entries(coeffs_);
}

CoeffVector CoeffVector::zeros(std::size_t n) { return CoeffVector(std::vector<double>(n, 0.0)); }

CoeffVector CoeffVector::ones(std::size_t n) { return CoeffVector(std::vector<double>(n, 1.0)); }

CoeffVector CoeffVector::unit(std::size_t n, std::size_t index) {
  if (index == 0 || index > n) throw InputError("unit vector index out of range");
  std::vector<double> c(n, 0.0);
  c[index - 1] = 1.0;
  return CoeffVector(std::move(c));
}

bool CoeffVector::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](double c) { return c == 0.0; });
}

double CoeffVector::max_abs() const {
  double m = 0.0;
  for (double c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

std::size_t CoeffVector::support_end() const {
  std::size_t end = coeffs_.size();
  while (end > 0 && coeffs_[end - 1] == 0.0) --end;
  return end;
}

CoeffVector CoeffVector::resized(std::size_t n) const {
  std::vector<double> c(coeffs_);
  c.resize(n, 0.0);
  return CoeffVector(std::move(c));
}

CoeffVector& CoeffVector::operator+=(const CoeffVector& other) {
  if (other.size() > size()) coeffs_.resize(other.size(), 0.0);
  for (std::size_t k = 0; k < other.size(); ++k) coeffs_[k] += other.coeffs_[k];
  return *this;
}

CoeffVector& CoeffVector::operator-=(const CoeffVector& other) {
  if (other.size() > size()) coeffs_.resize(other.size(), 0.0);
  for (std::size_t k = 0; k < other.size(); ++k) coeffs_[k] -= other.coeffs_[k];
  return *this;
}

CoeffVector& CoeffVector::operator*=(double c) {
  for (double& x : coeffs_) x *= c;
  return *this;
}

bool operator==(const CoeffVector& a, const CoeffVector& b) {
  const std::size_t n = std::max(a.size(), b.size());
  for (std::size_t k = 0; k < n; ++k) {
    const double x = k < a.size() ? a[k] : 0.0;
    const double y = k < b.size() ? b[k] : 0.0;
    if (x != y) return false;
  }
  return true;
}

double pairing(const CoeffVector& a, const CoeffVector& b) {
  const std::size_t n = std::min(a.size(), b.size());
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) s += a[k] * b[k];
  return s;
}

}  // namespace seqlab
