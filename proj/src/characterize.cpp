#include "seqlab/characterize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "seqlab/error.hpp"
#include "seqlab/random.hpp"

namespace seqlab {

std::vector<std::size_t> dyadic_grid(std::size_t n_max) {
  std::vector<std::size_t> grid;
  for (std::size_t n = 2; n <= n_max; n *= 2) grid.push_back(n);
  return grid;
}

GrowthTable growth_table(const SpaceSpec& spec, std::span<const std::size_t> n_values, std::size_t n_max,
                         const DualBudget& budget) {
  if (n_values.empty()) throw InputError("growth table needs at least one n");
  for (std::size_t i = 0; i < n_values.size(); ++i) {
    if (n_values[i] == 0) throw InputError("growth table n values must be positive");
    if (i > 0 && n_values[i] <= n_values[i - 1]) throw InputError("growth table n values must be strictly increasing");
  }
  if (n_values.back() > n_max) throw InputError("growth table n exceeds n_max");

  std::map<std::size_t, double> lambdas;
  auto lam = [&](std::size_t n) {
    auto it = lambdas.find(n);
    if (it == lambdas.end()) it = lambdas.emplace(n, lambda(spec, n)).first;
    return it->second;
  };

  GrowthTable table;
  for (std::size_t n : n_values) {
    const DualEvaluation d = dual_norm(spec, CoeffVector::ones(n), budget);
    GrowthRow row;
    row.n = n;
    row.lambda = lam(n);
    row.mu = d.value;
    row.bracket = row.lambda * row.mu / static_cast<double>(n);
    row.mu_exact = d.analytic;
    table.rows.push_back(row);
  }
  for (std::size_t m : n_values) {
    for (std::size_t n : n_values) {
      if (m > n || m * n > n_max) continue;
      table.ratios[{m, n}] = lam(m * n) / (lam(m) * lam(n));
    }
  }
  return table;
}

PowerFit fit_power_law(std::span<const std::size_t> ns, std::span<const double> values) {
  if (ns.size() != values.size() || ns.empty()) throw InputError("power-law fit needs matching, nonempty data");
  PowerFit fit;
  const double lo = *std::min_element(values.begin(), values.end());
  const double hi = *std::max_element(values.begin(), values.end());
  if (!(lo > 0.0)) throw InputError("power-law fit needs positive values");
  if (hi - lo <= kNormTolerance * hi) {
    fit.c0_flag = true;
    fit.intercept = std::log(hi);
    return fit;
  }
  const std::size_t k = ns.size();
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    sx += std::log(static_cast<double>(ns[i]));
    sy += std::log(values[i]);
  }
  const double mx = sx / static_cast<double>(k), my = sy / static_cast<double>(k);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double dx = std::log(static_cast<double>(ns[i])) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(values[i]) - my);
  }
  if (sxx == 0.0) throw InputError("power-law fit needs at least two distinct n");
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (fit.slope > 0.0) fit.exponent = 1.0 / fit.slope;
  for (std::size_t i = 0; i < k; ++i) {
    const double dev = std::abs(std::log(values[i]) - fit.slope * std::log(static_cast<double>(ns[i])));
    fit.max_deviation = std::max(fit.max_deviation, dev);
  }
  return fit;
}

PowerFit fit_p(const GrowthTable& table) {
  std::vector<std::size_t> ns;
  std::vector<double> lams;
  std::size_t growing = 0;
  for (const GrowthRow& r : table.rows) {
    ns.push_back(r.n);
    lams.push_back(r.lambda);
    if (r.lambda > 1.0 + kNormTolerance) ++growing;
  }
  if (ns.empty()) throw InputError("empty growth table");
  PowerFit fit = fit_power_law(ns, lams);
  if (!fit.c0_flag && growing < 3) throw InputError("p fit needs at least 3 rows with lambda(n) > 1");
  return fit;
}

SandwichResult sandwich_check(const SpaceSpec& spec, double p, double k, const SandwichOptions& options) {
  if (!(p >= 1.0)) throw InputError("sandwich exponent must be >= 1");
  if (!(k >= 1.0)) throw InputError("sandwich constant must be >= 1");
  const SpaceSpec reference = SpaceSpec::lp(p);

  std::vector<CoeffVector> candidates;
  for (std::size_t n = 1; n <= options.n_max; n *= 2) candidates.push_back(CoeffVector::ones(n));
  if (candidates.back().size() != options.n_max) candidates.push_back(CoeffVector::ones(options.n_max));
  Rng rng(derive_seed(options.seed, {0x73616e64ULL}));
  for (std::size_t len = 2; len <= std::min<std::size_t>(options.n_max, 256) && candidates.size() < options.samples;
       len *= 2) {
    for (CoeffVector& c : candidate_pool(len, PoolOptions{4, true, true, 2}, rng)) {
      if (candidates.size() >= options.samples) break;
      candidates.push_back(std::move(c));
    }
  }

  SandwichResult out;
  out.max_ratio = -1.0;
  out.min_ratio = std::numeric_limits<double>::infinity();
  for (CoeffVector& a : candidates) {
    a *= options.scale;
    const double r = norm(spec, a) / norm(reference, a);
    ++out.tested;
    if (r > out.max_ratio) {
      out.max_ratio = r;
      out.max_witness = a;
    }
    if (r < out.min_ratio) {
      out.min_ratio = r;
      out.min_witness = a;
    }
  }
  out.upper_ok = out.max_ratio <= 2.0 * k * (1.0 + kNormTolerance);
  out.lower_ok = out.min_ratio >= (1.0 - kNormTolerance) / (2.0 * k);
  return out;
}

std::string verdict_name(VerdictClass v) {
  switch (v) {
    case VerdictClass::C0Like:
      return "C0_LIKE";
    case VerdictClass::LpLike:
      return "LP_LIKE";
    case VerdictClass::NotUniform:
      return "NOT_UNIFORM";
    case VerdictClass::Inconclusive:
      return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

Verdict classify(const SpaceSpec& spec, const ClassifyConfig& config) {
  Verdict v;
  v.config = config;
  v.config.dual.seed = config.seed;
  std::vector<std::size_t> grid = config.n_values.empty() ? dyadic_grid(config.n_max) : config.n_values;
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  v.config.n_values = grid;

  v.table = growth_table(spec, grid, config.n_max, v.config.dual);
  v.lambda_at_max = lambda(spec, config.n_max);

  {
    std::vector<std::size_t> ns;
    std::vector<double> mus;
    for (const GrowthRow& r : v.table.rows) {
      ns.push_back(r.n);
      mus.push_back(r.mu);
    }
    v.dual_fit = fit_power_law(ns, mus);
  }

  const std::vector<NamedGenerator> pool = default_generator_pool(spec, config.m_max, config.seed);
  std::vector<GeneratedBlockSpec> family;
  family.reserve(pool.size());
  for (const auto& g : pool) family.push_back(g.block);
  WitnessOptions witness;
  witness.evaluations = config.evaluations;
  witness.seed = config.seed;
  witness.scale = config.scale;
  const SweepResult sweep = uniform_sweep(spec, family, config.sweep_n, witness, config.threads);
  v.generators = pool.size();
  v.k_evidence = sweep.k_sup;
  v.worst = {pool[sweep.worst].label, pool[sweep.worst].block.alpha(), sweep.estimates[sweep.worst]};

  std::ostringstream summary;
  if (v.lambda_at_max <= config.lambda_bound) {
    v.verdict = VerdictClass::C0Like;
    summary << "consistent with the unit vector basis of c0: lambda(" << config.n_max << ") = " << v.lambda_at_max
            << " <= " << config.lambda_bound;
    v.summary = summary.str();
    return v;
  }

  try {
    v.fit = fit_p(v.table);
  } catch (const InputError&) {
    v.fit.reset();
  }
  const bool have_p = v.fit && v.fit->exponent && *v.fit->exponent >= 1.0 - 1e-6;
  if (have_p) {
    v.p_hat = std::max(1.0, *v.fit->exponent);
    SandwichOptions so;
    so.n_max = config.n_max;
    so.samples = config.sandwich_samples;
    so.seed = config.seed;
    so.scale = config.scale;
    v.sandwich = sandwich_check(spec, *v.p_hat, std::max(1.0, sweep.k_sup), so);
  }

  const bool fit_ok = have_p && v.fit->max_deviation <= config.dev_threshold;
  const bool uniform = sweep.k_sup <= config.k_threshold;
  const bool sandwich_ok = v.sandwich && v.sandwich->upper_ok && v.sandwich->lower_ok;
  if (spec.unconditional() && fit_ok && uniform && sandwich_ok) {
    v.verdict = VerdictClass::LpLike;
    summary << "consistent with the unit vector basis of l_p, p_hat = " << *v.p_hat
            << ", K_lower = " << sweep.k_sup;
  } else if (!uniform) {
    v.verdict = VerdictClass::NotUniform;
    summary << "witnessed violation of uniformity: K_lower = " << sweep.k_sup << " > " << config.k_threshold
            << " for generator " << v.worst.generator;
  } else {
    v.verdict = VerdictClass::Inconclusive;
    summary << "inconclusive:";
    if (!spec.unconditional()) summary << " basis is not unconditional;";
    if (!fit_ok) summary << " lambda(n) is not within dev_threshold of a power law;";
    if (have_p && !sandwich_ok) summary << " l_p sandwich failed;";
    summary << " K_lower = " << sweep.k_sup;
  }
  v.summary = summary.str();
  return v;
}

}  // namespace seqlab
