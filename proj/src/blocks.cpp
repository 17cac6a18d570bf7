#include "seqlab/blocks.hpp"

#include <algorithm>
#include <cmath>

#include "seqlab/error.hpp"

namespace seqlab {

GeneratedBlockSpec::GeneratedBlockSpec(CoeffVector alpha, std::size_t max_length)
    : alpha_(std::move(alpha)), max_length_(max_length) {
  if (alpha_.is_zero()) throw InputError("block generator must be nonzero");
  if (alpha_.size() > max_length_) throw ConfigError("block generator is longer than the length cap");
}

GeneratedBlockSpec GeneratedBlockSpec::normalized(const SpaceSpec& spec, const CoeffVector& alpha,
                                                  std::size_t max_length) {
  GeneratedBlockSpec b(normalize(spec, alpha), max_length);
  b.normalized_ = true;
  return b;
}

CoeffVector generate_block(const GeneratedBlockSpec& bspec, std::size_t i) {
  if (i == 0) throw InputError("block index starts at 1");
  const std::size_t m = bspec.width();
  CoeffVector out = CoeffVector::zeros(i * m);
  for (std::size_t k = 0; k < m; ++k) out[(i - 1) * m + k] = bspec.alpha()[k];
  return out;
}

CoeffVector expand(const GeneratedBlockSpec& bspec, const CoeffVector& a) {
  const std::size_t m = bspec.width();
  if (a.size() > bspec.max_length() / m) {
    throw ConfigError("expanded length " + std::to_string(a.size() * m) + " exceeds the cap of " +
                      std::to_string(bspec.max_length()));
  }
  std::vector<double> out(a.size() * m, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) continue;
    for (std::size_t k = 0; k < m; ++k) out[i * m + k] = a[i] * bspec.alpha()[k];
  }
  return CoeffVector(std::move(out));
}

double block_norm(const SpaceSpec& spec, const GeneratedBlockSpec& bspec, const CoeffVector& a) {
  return norm(spec, expand(bspec, a));
}

SubsymmetricBound subsymmetric_bound(const SpaceSpec& spec, const GeneratedBlockSpec& bspec, const CoeffVector& a) {
  if (!spec.spreading_invariant()) {
    throw ConfigError("the block sandwich needs a spreading-invariant space, got " + spec.name());
  }
  double largest = 0.0, total = 0.0;
  for (double b : bspec.alpha().values()) {
    largest = std::max(largest, std::abs(b));
    total += std::abs(b);
  }
  const double base = norm(spec, a);
  SubsymmetricBound out;
  out.block = block_norm(spec, bspec, a);
  out.lower = largest * base;
  out.upper = total * base;
  out.ratio = base > 0.0 ? out.block / base : 1.0;
  const double tol = kNormTolerance * std::max(1.0, out.upper);
  out.lower_ok = out.lower <= out.block + tol;
  out.upper_ok = out.block <= out.upper + tol;
  return out;
}

}  // namespace seqlab
