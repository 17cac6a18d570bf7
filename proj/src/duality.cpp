#include "seqlab/duality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "seqlab/error.hpp"
#include "seqlab/random.hpp"
#include "seqlab/search.hpp"

namespace seqlab {

namespace {

double sgn(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

DualEvaluation closed_form(double value, CoeffVector witness) {
  DualEvaluation out;
  out.value = value;
  out.witness = std::move(witness);
  out.gap = 0.0;
  out.analytic = true;
  return out;
}

DualEvaluation lp_dual(double p, const CoeffVector& y) {
  const std::size_t n = y.size();
  if (y.is_zero()) return closed_form(0.0, CoeffVector::zeros(n));
  if (p == 1.0) {
    std::size_t arg = 0;
    for (std::size_t k = 1; k < n; ++k) {
      if (std::abs(y[k]) > std::abs(y[arg])) arg = k;
    }
    CoeffVector w = CoeffVector::zeros(n);
    w[arg] = sgn(y[arg]);
    return closed_form(std::abs(y[arg]), std::move(w));
  }
  const double q = p / (p - 1.0);
  const double value = norm(SpaceSpec::lp(q), y);
  CoeffVector w = CoeffVector::zeros(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (y[k] != 0.0) w[k] = sgn(y[k]) * std::pow(std::abs(y[k]) / value, q - 1.0);
  }
  return closed_form(value, std::move(w));
}

DualEvaluation c0_dual(const CoeffVector& y) {
  CoeffVector w = CoeffVector::zeros(y.size());
  double s = 0.0;
  for (std::size_t k = 0; k < y.size(); ++k) {
    w[k] = sgn(y[k]);
    s += std::abs(y[k]);
  }
  return closed_form(s, std::move(w));
}

// d(w, 1)^*: max_k (y*_1 + ... + y*_k) / (w_1 + ... + w_k).
DualEvaluation lorentz1_dual(const WeightRule& weights, const CoeffVector& y) {
  const std::size_t n = y.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return std::abs(y[a]) > std::abs(y[b]); });
  double mass = 0.0, wsum = 0.0, best = 0.0;
  std::size_t best_k = 0;
  double best_w = 1.0;
  const std::size_t limit = std::min(n, weights.limit());
  for (std::size_t k = 0; k < limit && y[order[k]] != 0.0; ++k) {
    mass += std::abs(y[order[k]]);
    wsum += weights.weight(k + 1);
    if (mass / wsum > best) {
      best = mass / wsum;
      best_k = k + 1;
      best_w = wsum;
    }
  }
  CoeffVector w = CoeffVector::zeros(n);
  for (std::size_t k = 0; k < best_k; ++k) w[order[k]] = sgn(y[order[k]]) / best_w;
  return closed_form(best, std::move(w));
}

// Tail sums z_k of the witness are +-1, so its summing norm is 1.
DualEvaluation summing_dual(const CoeffVector& y) {
  const std::size_t n = y.size();
  std::vector<double> z(n + 1);
  double value = 0.0;
  double prev = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    z[k] = sgn(y[k] - prev);
    value += std::abs(y[k] - prev);
    prev = y[k];
  }
  z[n] = -sgn(y[n - 1]);
  value += std::abs(y[n - 1]);
  std::vector<double> x(n + 1);
  for (std::size_t k = 0; k < n; ++k) x[k] = z[k] - z[k + 1];
  x[n] = z[n];
  return closed_form(value, CoeffVector(std::move(x)));
}

}  // namespace

DualEvaluation dual_norm_search(const NormFunction& primal, const CoeffVector& y, const DualStructure& structure,
                                const DualBudget& budget) {
  if (budget.evaluations == 0 || budget.restarts == 0) {
    throw UnsupportedError("dual norm has no closed form for this space and the search budget is zero");
  }
  const std::size_t n = y.size() + structure.extra_coordinates;
  const CoeffVector target = y.resized(n);
  if (target.is_zero()) {
    DualEvaluation out;
    out.witness = CoeffVector::zeros(n);
    return out;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return std::abs(target[a]) > std::abs(target[b]); });

  LocalSearchOptions local;
  local.staircase_moves = true;
  local.pair_moves = true;
  local.staircase_order = order;
  local.initial_step = 0.25;
  local.min_step = 1e-12;
  if (structure.unconditional) {
    local.canonicalize = [&target, &order, symmetric = structure.symmetric](CoeffVector& x) {
      for (std::size_t k = 0; k < x.size(); ++k) x[k] = std::abs(x[k]) * sgn(target[k]);
      if (!symmetric) return;
      std::vector<double> mags;
      mags.reserve(x.size());
      for (std::size_t k = 0; k < x.size(); ++k) mags.push_back(std::abs(x[k]));
      std::sort(mags.begin(), mags.end(), std::greater<>());
      for (std::size_t r = 0; r < order.size(); ++r) x[order[r]] = mags[r] * sgn(target[order[r]]);
    };
  }

  const Objective ratio = [&](const CoeffVector& x) {
    const double nx = primal(x);
    if (!(nx > 0.0)) return -std::numeric_limits<double>::infinity();
    return pairing(x, target) / nx;
  };

  // Structured starting points first, then random ones.
  std::vector<CoeffVector> starts;
  starts.push_back(target);
  {
    CoeffVector s = CoeffVector::zeros(n);
    for (std::size_t k = 0; k < n; ++k) s[k] = sgn(target[k]);
    starts.push_back(s);
  }
  for (std::size_t len = 1; len < n; len *= 2) {
    CoeffVector s = CoeffVector::zeros(n);
    for (std::size_t r = 0; r < len; ++r) s[order[r]] = sgn(target[order[r]]);
    starts.push_back(s);
  }
  for (double r : {0.5, 2.0, 3.0}) {
    CoeffVector s = CoeffVector::zeros(n);
    for (std::size_t k = 0; k < n; ++k) s[k] = sgn(target[k]) * std::pow(std::abs(target[k]), r);
    starts.push_back(s);
  }
  Rng rng(derive_seed(budget.seed, {0x6475616cULL, n}));
  while (starts.size() < budget.restarts) {
    CoeffVector s = CoeffVector::zeros(n);
    for (std::size_t k = 0; k < n; ++k) {
      const double g = rng.normal();
      s[k] = structure.unconditional ? std::abs(g) * sgn(target[k]) : g;
    }
    if (!s.is_zero()) starts.push_back(std::move(s));
  }
  starts.resize(std::min(starts.size(), budget.restarts));

  DualEvaluation out;
  double best = -std::numeric_limits<double>::infinity();
  CoeffVector best_x = starts.front();
  for (std::size_t r = 0; r < starts.size(); ++r) {
    local.max_evaluations = std::max<std::size_t>(1, budget.evaluations / starts.size());
    const SearchOutcome s = local_search(ratio, starts[r], local);
    out.evaluations += s.evaluations;
    out.exhausted = out.exhausted || s.exhausted;
    if (s.value > best) {
      best = s.value;
      best_x = s.argmax;
    }
  }
  const double nx = primal(best_x);
  CoeffVector witness = best_x;
  for (double& c : witness.values()) c /= nx;
  out.value = pairing(witness, target);
  out.witness = std::move(witness);
  return out;
}

DualEvaluation dual_norm(const SpaceSpec& spec, const CoeffVector& y, const DualBudget& budget) {
  switch (spec.family()) {
    case Family::Lp:
      return lp_dual(spec.p(), y);
    case Family::C0:
      return c0_dual(y);
    case Family::Summing:
      return summing_dual(y);
    case Family::Lorentz:
      if (spec.p() == 1.0) return lorentz1_dual(spec.weights(), y);
      break;
    case Family::Tsirelson:
      break;
  }
  DualStructure structure;
  structure.unconditional = spec.unconditional();
  structure.symmetric = spec.symmetric();
  return dual_norm_search([&spec](const CoeffVector& x) { return norm(spec, x); }, y, structure, budget);
}

double mu(const SpaceSpec& spec, std::size_t n, const DualBudget& budget) {
  if (n == 0) throw InputError("mu(n) requires n >= 1");
  return dual_norm(spec, CoeffVector::ones(n), budget).value;
}

double duality_bracket(const SpaceSpec& spec, std::size_t n, const DualBudget& budget) {
  if (!spec.unconditional()) throw InputError("the duality bracket is defined here for unconditional bases only");
  return lambda(spec, n) * mu(spec, n, budget) / static_cast<double>(n);
}

}  // namespace seqlab
