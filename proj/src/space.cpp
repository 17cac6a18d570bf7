#include "seqlab/space.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <sstream>

#include "seqlab/error.hpp"
#include "seqlab/tsirelson.hpp"

namespace seqlab {

// ---------------------------------------------------------------- weights

WeightRule::WeightRule(Kind kind, double exponent, std::vector<double> values)
    : kind_(kind), exponent_(exponent), values_(std::move(values)) {}

WeightRule WeightRule::harmonic() { return WeightRule(Kind::Harmonic, 1.0, {}); }

WeightRule WeightRule::power(double s) {
  if (!std::isfinite(s) || s < 0.0) throw ConfigError("power weight exponent must be finite and >= 0");
  return WeightRule(Kind::Power, s, {});
}

WeightRule WeightRule::list(std::vector<double> values) {
  if (values.empty()) throw ConfigError("weight list must not be empty");
  if (values.front() != 1.0) throw ConfigError("weight list must start with w_1 = 1");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i]) || values[i] <= 0.0) throw ConfigError("weights must be positive");
    if (i > 0 && values[i] > values[i - 1]) throw ConfigError("weights must be non-increasing");
  }
  return WeightRule(Kind::List, 0.0, std::move(values));
}

double WeightRule::weight(std::size_t i) const {
  switch (kind_) {
    case Kind::Harmonic:
      return 1.0 / static_cast<double>(i);
    case Kind::Power:
      return exponent_ == 0.0 ? 1.0 : std::pow(static_cast<double>(i), -exponent_);
    case Kind::List:
      if (i == 0 || i > values_.size()) throw ConfigError("vector support exceeds the listed Lorentz weights");
      return values_[i - 1];
  }
  return 0.0;
}

std::size_t WeightRule::limit() const {
  return kind_ == Kind::List ? values_.size() : std::numeric_limits<std::size_t>::max();
}

std::string WeightRule::describe() const {
  std::ostringstream out;
  switch (kind_) {
    case Kind::Harmonic:
      out << "harmonic";
      break;
    case Kind::Power:
      out << "power(s=" << exponent_ << ")";
      break;
    case Kind::List:
      out << "list(" << values_.size() << ")";
      break;
  }
  return out.str();
}

// ---------------------------------------------------------------- spaces

SpaceSpec::SpaceSpec(Family family, double p, WeightRule weights, double theta)
    : family_(family), p_(p), weights_(std::move(weights)), theta_(theta) {}

SpaceSpec SpaceSpec::lp(double p) {
  if (!std::isfinite(p) || p < 1.0) throw ConfigError("Lp exponent must satisfy 1 <= p < inf");
  return SpaceSpec(Family::Lp, p, WeightRule::harmonic(), 0.5);
}

SpaceSpec SpaceSpec::c0() { return SpaceSpec(Family::C0, 0.0, WeightRule::harmonic(), 0.5); }

SpaceSpec SpaceSpec::lorentz(WeightRule weights, double p) {
  if (!std::isfinite(p) || p < 1.0) throw ConfigError("Lorentz exponent must satisfy 1 <= p < inf");
  return SpaceSpec(Family::Lorentz, p, std::move(weights), 0.5);
}

SpaceSpec SpaceSpec::tsirelson(double theta) {
  if (!std::isfinite(theta) || theta <= 0.0 || theta >= 1.0) throw ConfigError("Tsirelson theta must lie in (0, 1)");
  return SpaceSpec(Family::Tsirelson, 0.0, WeightRule::harmonic(), theta);
}

SpaceSpec SpaceSpec::summing() { return SpaceSpec(Family::Summing, 0.0, WeightRule::harmonic(), 0.5); }

std::string family_name(Family family) {
  switch (family) {
    case Family::Lp:
      return "lp";
    case Family::C0:
      return "c0";
    case Family::Lorentz:
      return "lorentz";
    case Family::Tsirelson:
      return "tsirelson";
    case Family::Summing:
      return "summing";
  }
  return "unknown";
}

std::string SpaceSpec::name() const {
  std::ostringstream out;
  out << family_name(family_);
  switch (family_) {
    case Family::Lp:
      out << "(p=" << p_ << ")";
      break;
    case Family::Lorentz:
      out << "(p=" << p_ << ",w=" << weights_.describe() << ")";
      break;
    case Family::Tsirelson:
      out << "(theta=" << theta_ << ")";
      break;
    default:
      break;
  }
  return out.str();
}

// ---------------------------------------------------------------- norms

namespace {

// (sum |t|^p)^{1/p} for a scaled entry t in [0, 1].
double power_sum_root(double sum, double p) {
  if (p == 1.0) return sum;
  if (p == 2.0) return std::sqrt(sum);
  if (p == 3.0) return std::cbrt(sum);
  return std::pow(sum, 1.0 / p);
}

double power_of(double t, double p) {
  if (p == 1.0) return t;
  if (p == 2.0) return t * t;
  if (p == 3.0) return t * t * t;
  return std::pow(t, p);
}

// Sums in increasing order of magnitude, which makes the result exactly
// permutation invariant.
double lp_norm(std::span<const double> a, double p) {
  std::vector<double> mags;
  mags.reserve(a.size());
  for (double x : a) {
    if (x != 0.0) mags.push_back(std::abs(x));
  }
  if (mags.empty()) return 0.0;
  std::sort(mags.begin(), mags.end());
  const double scale = mags.back();
  double s = 0.0;
  if (p == 1.0) {
    for (double x : mags) s += x;
    return s;
  }
  for (double x : mags) s += power_of(x / scale, p);
  return scale * power_sum_root(s, p);
}

double lorentz_norm(std::span<const double> a, const WeightRule& w, double p) {
  std::vector<double> mags;
  mags.reserve(a.size());
  for (double x : a) {
    if (x != 0.0) mags.push_back(std::abs(x));
  }
  if (mags.empty()) return 0.0;
  if (mags.size() > w.limit()) throw ConfigError("vector support exceeds the listed Lorentz weights");
  std::sort(mags.begin(), mags.end(), std::greater<>());
  const double scale = mags.front();
  double s = 0.0;
  for (std::size_t i = 0; i < mags.size(); ++i) {
    s += w.weight(i + 1) * (p == 1.0 ? mags[i] : power_of(mags[i] / scale, p));
  }
  return p == 1.0 ? s : scale * power_sum_root(s, p);
}

double summing_norm(std::span<const double> a) {
  double tail = 0.0;
  double best = 0.0;
  for (std::size_t k = a.size(); k-- > 0;) {
    tail += a[k];
    best = std::max(best, std::abs(tail));
  }
  return best;
}

}  // namespace

double norm(const SpaceSpec& spec, const CoeffVector& v) {
  const auto a = v.values();
  switch (spec.family()) {
    case Family::Lp:
      return lp_norm(a, spec.p());
    case Family::C0:
      return v.max_abs();
    case Family::Lorentz:
      return lorentz_norm(a, spec.weights(), spec.p());
    case Family::Tsirelson:
      return tsirelson::evaluate(a, spec.theta()).norm;
    case Family::Summing:
      return summing_norm(a);
  }
  return 0.0;
}

CoeffVector normalize(const SpaceSpec& spec, const CoeffVector& v) {
  const double n = norm(spec, v);
  if (n == 0.0) throw InputError("cannot normalize the zero vector");
  CoeffVector out = v;
  for (double& c : out.values()) c /= n;
  return out;
}

double lambda(const SpaceSpec& spec, std::size_t n) {
  if (n == 0) throw InputError("lambda(n) requires n >= 1");
  return norm(spec, CoeffVector::ones(n));
}

}  // namespace seqlab
