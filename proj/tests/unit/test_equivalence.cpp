#include <doctest.h>

#include <cmath>

#include "../generators.hpp"
#include "../oracles.hpp"
#include "seqlab/equivalence.hpp"
#include "seqlab/error.hpp"

using namespace seqlab;

namespace {

const SpaceSpec kHarmonic = SpaceSpec::lorentz(WeightRule::harmonic());

double h(std::size_t n) { return static_cast<double>(oracle::harmonic(n)); }

// Lower bound on the equivalence constant of ones(m)/H_m, from the flat witness.
double harmonic_bound(std::size_t m, std::size_t n) { return h(m) * h(n) / h(m * n); }

}  // namespace

TEST_CASE("ratio examples") {
  const auto l2 = GeneratedBlockSpec::normalized(SpaceSpec::lp(2.0), {1.0, 2.0, -0.5});
  CHECK(ratio(SpaceSpec::lp(2.0), l2, {0.2, -4.0, 1.0}) == doctest::Approx(1.0).epsilon(1e-14));
  const auto flat = GeneratedBlockSpec::normalized(kHarmonic, CoeffVector::ones(64));
  CHECK(ratio(kHarmonic, flat, CoeffVector::ones(64)) == doctest::Approx(h(4096) / (h(64) * h(64))).epsilon(1e-12));
  CHECK(ratio(kHarmonic, flat, CoeffVector::ones(64)) == doctest::Approx(0.397).epsilon(1e-2));
  CHECK(ratio(SpaceSpec::summing(), GeneratedBlockSpec(CoeffVector{1.0, -1.0}), {1.0, 0.0}) == 1.0);
  CHECK_THROWS_AS(ratio(SpaceSpec::lp(2.0), l2, CoeffVector::zeros(3)), InputError);
}

TEST_CASE("estimate_k examples") {
  EquivalenceOptions o;
  for (double p : {1.0, 1.5, 2.0, 3.0}) {
    const SpaceSpec s = SpaceSpec::lp(p);
    const auto g = GeneratedBlockSpec::normalized(s, {0.3, -1.0, 0.2, 0.7});
    CHECK(std::fabs(estimate_k(s, g, 64, o).k_lower - 1.0) <= 1e-9);
  }
  const auto c = GeneratedBlockSpec::normalized(SpaceSpec::c0(), {0.3, -1.0, 0.2});
  CHECK(std::fabs(estimate_k(SpaceSpec::c0(), c, 64, o).k_lower - 1.0) <= 1e-9);

  const auto flat = GeneratedBlockSpec::normalized(kHarmonic, CoeffVector::ones(64));
  CHECK(estimate_k(kHarmonic, flat, 64, o).k_lower >= harmonic_bound(64, 64) - 1e-9);
  CHECK(harmonic_bound(64, 64) == doctest::Approx(2.52).epsilon(1e-2));
  CHECK_THROWS_AS(estimate_k(kHarmonic, flat, 65, o), ConfigError);
}

TEST_CASE("witnesses reproduce the estimate") {
  Rng rng(51);
  EquivalenceOptions o;
  o.evaluations = 3000;
  for (const auto& s : gen::fixtures()) {
    for (int t = 0; t < 3; ++t) {
      const auto g = GeneratedBlockSpec::normalized(s, gen::nonzero_vector(rng, gen::length(rng, 1, 4)));
      o.seed = rng.next();
      const EquivalenceEstimate e = estimate_k(s, g, 8, o);
      const double up = ratio(s, g, e.witness_up), down = 1.0 / ratio(s, g, e.witness_down);
      CHECK(e.k_lower == doctest::Approx(std::max(up, down)).epsilon(kNormTolerance));
      CHECK(e.k_lower >= 1.0 - kNormTolerance);
      CHECK(e.seed == o.seed);
      CHECK(e.samples > 0);
    }
  }
}

TEST_CASE("ratio is scale invariant") {
  Rng rng(52);
  for (const auto& s : gen::fixtures()) {
    for (int t = 0; t < 200; ++t) {
      const auto g = GeneratedBlockSpec(gen::nonzero_vector(rng, gen::length(rng, 1, 4)));
      const CoeffVector a = gen::nonzero_vector(rng, gen::length(rng, 1, 8));
      const double c = rng.sign() * std::exp(rng.uniform(-5.0, 5.0));
      CHECK(ratio(s, g, c * a) == doctest::Approx(ratio(s, g, a)).epsilon(1e-12));
    }
  }
}

TEST_CASE("estimate_k is non-decreasing along dyadic N") {
  EquivalenceOptions o;
  o.evaluations = 4000;
  o.seed = 5;
  for (const auto& s : {kHarmonic, SpaceSpec::summing(), SpaceSpec::lorentz(WeightRule::power(0.5), 2.0)}) {
    const auto g = GeneratedBlockSpec::normalized(s, {1.0, 0.5, 0.25});
    double prev = 0.0;
    for (std::size_t n = 1; n <= 64; n *= 2) {
      const double k = estimate_k(s, g, n, o).k_lower;
      CHECK(k >= prev);
      prev = k;
    }
  }
}

TEST_CASE("estimate_k is deterministic given the seed") {
  EquivalenceOptions o;
  o.seed = 77;
  o.evaluations = 2000;
  const auto g = GeneratedBlockSpec::normalized(SpaceSpec::tsirelson(), {1.0, 0.4});
  const EquivalenceEstimate a = estimate_k(SpaceSpec::tsirelson(), g, 8, o);
  const EquivalenceEstimate b = estimate_k(SpaceSpec::tsirelson(), g, 8, o);
  CHECK(a.k_lower == b.k_lower);
  CHECK(a.witness_up == b.witness_up);
  CHECK(a.witness_down == b.witness_down);
}

TEST_CASE("default generator pool") {
  const auto pool = default_generator_pool(SpaceSpec::lp(2.0), 64, 0);
  CHECK(pool.size() == 1 + 6 * 5);  // width 1 has only e_1
  for (const auto& g : pool) {
    CHECK(g.block.is_normalized());
    CHECK(norm(SpaceSpec::lp(2.0), g.block.alpha()) == doctest::Approx(1.0).epsilon(kNormTolerance));
  }
  CHECK(default_generator_pool(SpaceSpec::lp(2.0), 6, 0).back().block.width() == 6);
  CHECK_THROWS_AS(default_generator_pool(SpaceSpec::lp(2.0), 0, 0), ConfigError);
}

TEST_CASE("uniform_sweep examples") {
  EquivalenceOptions o;
  o.evaluations = 2000;
  std::vector<GeneratedBlockSpec> l2, c0;
  for (std::size_t m = 1; m <= 32; ++m) {
    l2.push_back(GeneratedBlockSpec::normalized(SpaceSpec::lp(2.0), CoeffVector::ones(m)));
    c0.push_back(GeneratedBlockSpec::normalized(SpaceSpec::c0(), CoeffVector::ones(m)));
  }
  CHECK(std::fabs(uniform_sweep(SpaceSpec::lp(2.0), l2, 32, o).k_sup - 1.0) <= 1e-9);
  CHECK(std::fabs(uniform_sweep(SpaceSpec::c0(), c0, 32, o).k_sup - 1.0) <= 1e-9);

  std::vector<GeneratedBlockSpec> flats;
  double prev = 0.0;
  for (std::size_t m = 2; m <= 64; m *= 2) {
    flats.push_back(GeneratedBlockSpec::normalized(kHarmonic, CoeffVector::ones(m)));
    const SweepResult r = uniform_sweep(kHarmonic, flats, 64, o);
    CHECK(r.k_sup >= prev);
    CHECK(r.k_sup >= harmonic_bound(m, 64) - 1e-9);
    prev = r.k_sup;
  }
  CHECK(prev >= 2.0);

  CHECK_THROWS_AS(uniform_sweep(kHarmonic, std::vector<GeneratedBlockSpec>{}, 8, o), InputError);
  const std::vector<GeneratedBlockSpec> raw = {GeneratedBlockSpec(CoeffVector{3.0})};
  CHECK_THROWS_AS(uniform_sweep(kHarmonic, raw, 8, o), InputError);
}

TEST_CASE("uniform_sweep result does not depend on the thread count") {
  EquivalenceOptions o;
  o.evaluations = 1000;
  std::vector<GeneratedBlockSpec> fam;
  for (const auto& g : default_generator_pool(SpaceSpec::summing(), 8, 3)) fam.push_back(g.block);
  const SweepResult a = uniform_sweep(SpaceSpec::summing(), fam, 16, o, 1);
  const SweepResult b = uniform_sweep(SpaceSpec::summing(), fam, 16, o, 4);
  CHECK(a.k_sup == b.k_sup);
  CHECK(a.worst == b.worst);
}
