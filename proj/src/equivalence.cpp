#include "seqlab/equivalence.hpp"

#include <cmath>
#include <limits>

#include "seqlab/error.hpp"
#include "seqlab/random.hpp"
#include "seqlab/search.hpp"

namespace seqlab {

namespace {

// The budget is divided into this many level shares.
constexpr std::size_t kLevelShares = 8;

std::vector<std::size_t> truncation_levels(std::size_t n) {
  std::vector<std::size_t> levels;
  for (std::size_t l = 1; l < n; l *= 2) levels.push_back(l);
  levels.push_back(n);
  return levels;
}

}  // namespace

double ratio(const SpaceSpec& spec, const GeneratedBlockSpec& bspec, const CoeffVector& a) {
  const double base = norm(spec, a);
  if (base == 0.0) throw InputError("ratio is undefined for the zero coefficient vector");
  return block_norm(spec, bspec, a) / base;
}

EquivalenceEstimate estimate_k(const SpaceSpec& spec, const GeneratedBlockSpec& bspec, std::size_t n,
                               const EquivalenceOptions& options) {
  if (n == 0) throw InputError("truncation N must be >= 1");
  if (n > bspec.max_length() / bspec.width()) {
    throw ConfigError("N * m = " + std::to_string(n * bspec.width()) + " exceeds the cap of " +
                      std::to_string(bspec.max_length()));
  }
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  const Objective up = [&](const CoeffVector& a) {
    const double base = norm(spec, a);
    return base > 0.0 ? block_norm(spec, bspec, a) / base : kNegInf;
  };
  const Objective down = [&](const CoeffVector& a) {
    const double blocks = block_norm(spec, bspec, a);
    return blocks > 0.0 ? norm(spec, a) / blocks : kNegInf;
  };

  EquivalenceEstimate est;
  est.seed = options.seed;
  double best_up = kNegInf, best_down = kNegInf;
  const std::size_t share = std::max<std::size_t>(2, options.evaluations / kLevelShares);
  for (std::size_t level : truncation_levels(n)) {
    Rng rng(derive_seed(options.seed, {0x6571ULL, level}));
    PoolOptions pool_opts;
    pool_opts.random = options.random_candidates;
    std::vector<CoeffVector> pool = candidate_pool(level, pool_opts, rng);
    for (CoeffVector& c : pool) c *= options.scale;
    LocalSearchOptions local;
    local.min_step = 1e-6;
    const SearchOutcome u = pool_search(up, pool, share / 2, options.refine, local);
    const SearchOutcome d = pool_search(down, pool, share - share / 2, options.refine, local);
    est.samples += u.evaluations + d.evaluations;
    est.exhausted = est.exhausted || u.exhausted || d.exhausted;
    if (u.value > best_up) {
      best_up = u.value;
      est.witness_up = u.argmax;
    }
    if (d.value > best_down) {
      best_down = d.value;
      est.witness_down = d.argmax;
    }
  }
  est.ratio_up = ratio(spec, bspec, est.witness_up);
  est.ratio_down = 1.0 / ratio(spec, bspec, est.witness_down);
  est.k_lower = std::max(est.ratio_up, est.ratio_down);
  return est;
}

std::vector<NamedGenerator> default_generator_pool(const SpaceSpec& spec, std::size_t m_max, std::uint64_t seed,
                                                   std::size_t max_length) {
  if (m_max == 0) throw ConfigError("m_max must be >= 1");
  std::vector<std::size_t> widths;
  for (std::size_t m = 1; m < m_max; m *= 2) widths.push_back(m);
  widths.push_back(m_max);

  std::vector<NamedGenerator> pool;
  auto add = [&](std::string label, std::vector<double> coeffs) {
    pool.push_back({std::move(label), GeneratedBlockSpec::normalized(spec, CoeffVector(std::move(coeffs)), max_length)});
  };
  for (std::size_t m : widths) {
    const std::string suffix = "(m=" + std::to_string(m) + ")";
    if (m == 1) {
      add("coord" + suffix, {1.0});
      continue;
    }
    std::vector<double> coord(m, 0.0);
    coord[m - 1] = 1.0;
    add("coord" + suffix, coord);
    add("flat" + suffix, std::vector<double>(m, 1.0));
    for (double r : {0.5, 0.9}) {
      std::vector<double> g(m);
      for (std::size_t k = 0; k < m; ++k) g[k] = std::pow(r, static_cast<double>(k));
      add((r == 0.5 ? "geo0.5" : "geo0.9") + suffix, g);
    }
    Rng rng(derive_seed(seed, {0x67656eULL, m}));
    std::vector<double> g(m);
    for (double& c : g) c = rng.normal();
    add("random" + suffix, g);
  }
  return pool;
}

SweepResult uniform_sweep(const SpaceSpec& spec, std::span<const GeneratedBlockSpec> family, std::size_t n,
                          const EquivalenceOptions& options, std::size_t threads) {
  if (family.empty()) throw InputError("uniform sweep needs at least one generator");
  for (const auto& g : family) {
    if (!g.is_normalized()) throw InputError("uniform sweep requires normalized generators");
  }
  SweepResult out;
  out.estimates.resize(family.size());
  parallel_for(family.size(), threads, [&](std::size_t i) { out.estimates[i] = estimate_k(spec, family[i], n, options); });
  out.k_sup = out.estimates.front().k_lower;
  for (std::size_t i = 1; i < out.estimates.size(); ++i) {
    if (out.estimates[i].k_lower > out.k_sup) {
      out.k_sup = out.estimates[i].k_lower;
      out.worst = i;
    }
  }
  return out;
}

}  // namespace seqlab
