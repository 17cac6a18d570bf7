#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "seqlab/coeff_vector.hpp"

namespace seqlab {

enum class Family { Lp, C0, Lorentz, Tsirelson, Summing };

/// Positive non-increasing Lorentz weight sequence with w_1 = 1.
class WeightRule {
 public:
  enum class Kind { Harmonic, Power, List };

  /// w_i = 1/i.
  static WeightRule harmonic();
  /// w_i = i^{-s}, s >= 0.
  static WeightRule power(double s);
  /// Explicit finite list; vectors with more nonzero entries than listed
  /// weights are rejected.
  static WeightRule list(std::vector<double> values);

  Kind kind() const { return kind_; }
  double exponent() const { return exponent_; }
  const std::vector<double>& values() const { return values_; }

  /// w_i for 1-based i.
  double weight(std::size_t i) const;
  /// Largest admissible i (SIZE_MAX for closed-form rules).
  std::size_t limit() const;

  std::string describe() const;

 private:
  WeightRule(Kind kind, double exponent, std::vector<double> values);

  Kind kind_;
  double exponent_;
  std::vector<double> values_;
};

/// Declarative description of a sequence-space norm against its normalized
/// unit vector basis. Construct through the factories, which validate.
class SpaceSpec {
 public:
  static SpaceSpec lp(double p);
  static SpaceSpec c0();
  static SpaceSpec lorentz(WeightRule weights, double p = 1.0);
  static SpaceSpec tsirelson(double theta = 0.5);
  static SpaceSpec summing();

  Family family() const { return family_; }
  double p() const { return p_; }
  const WeightRule& weights() const { return weights_; }
  double theta() const { return theta_; }

  /// Sign changes never change the norm.
  bool unconditional() const { return family_ != Family::Summing; }
  /// Permutations never change the norm.
  bool symmetric() const {
    return family_ == Family::Lp || family_ == Family::C0 || family_ == Family::Lorentz;
  }
  /// Moving the support to any increasing index set leaves the norm unchanged.
  bool spreading_invariant() const { return symmetric(); }

  /// Short label such as "lp(p=2)" or "lorentz(p=1,w=harmonic)".
  std::string name() const;

 private:
  SpaceSpec(Family family, double p, WeightRule weights, double theta);

  Family family_;
  double p_;
  WeightRule weights_;
  double theta_;
};

std::string family_name(Family family);

/// Norm of sum_k v_k x_k.
double norm(const SpaceSpec& spec, const CoeffVector& v);

/// v / norm(v); throws InputError for the zero vector.
CoeffVector normalize(const SpaceSpec& spec, const CoeffVector& v);

/// lambda(n) = || x_1 + ... + x_n ||.
double lambda(const SpaceSpec& spec, std::size_t n);

/// Tolerance on unit-scale quantities.
inline constexpr double kNormTolerance = 1e-9;

}  // namespace seqlab
