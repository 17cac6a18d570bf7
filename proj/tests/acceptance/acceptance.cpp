// Runs every acceptance criterion at its stated tolerance and prints one
// PASS/FAIL line per criterion. Exit status is nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "../generators.hpp"
#include "../oracles.hpp"
#include "seqlab/blocks.hpp"
#include "seqlab/characterize.hpp"
#include "seqlab/duality.hpp"
#include "seqlab/equivalence.hpp"
#include "seqlab/projections.hpp"
#include "seqlab/space.hpp"

using namespace seqlab;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double time_limit;  // seconds; 0 = none
  std::function<Outcome()> run;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

const SpaceSpec kHarmonic = SpaceSpec::lorentz(WeightRule::harmonic());

double reference_norm(const SpaceSpec& s, const std::vector<double>& a) {
  switch (s.family()) {
    case Family::Lp:
      return oracle::lp(a, s.p());
    case Family::C0:
      return oracle::sup(a);
    case Family::Lorentz:
      return oracle::lorentz(a, [&](std::size_t i) { return s.weights().weight(i); }, s.p());
    case Family::Summing:
      return oracle::summing(a);
    case Family::Tsirelson:
      return oracle::tsirelson(a, s.theta()).norm;
  }
  return 0.0;
}

// All vectors over `levels` with at most `max_support` nonzeros, length n.
void enumerate(std::size_t n, std::size_t max_support, const std::vector<double>& levels,
               const std::function<void(const std::vector<double>&)>& fn) {
  std::vector<double> v(n, 0.0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t k, std::size_t used) {
    if (k == n) {
      fn(v);
      return;
    }
    for (double x : levels) {
      if (x != 0.0 && used == max_support) continue;
      v[k] = x;
      rec(k + 1, used + (x != 0.0));
    }
    v[k] = 0.0;
  };
  rec(0, 0);
}

Outcome norm_oracle() {
  const std::vector<SpaceSpec> spaces = {SpaceSpec::lp(1.0), SpaceSpec::lp(1.5), SpaceSpec::lp(2.0),
                                         SpaceSpec::lp(3.0), SpaceSpec::c0(),     kHarmonic,
                                         SpaceSpec::summing(), SpaceSpec::tsirelson()};
  const std::vector<double> levels{-1.0, -0.5, 0.0, 0.5, 1.0};
  double worst = 0.0;
  std::size_t count = 0;
  for (const auto& s : spaces) {
    // support <= 4 at positions 1..4, and for the index-dependent Tsirelson
    // norm also at positions 1..8
    const std::size_t len = s.family() == Family::Tsirelson ? 8 : 4;
    enumerate(len, 4, levels, [&](const std::vector<double>& v) {
      worst = std::max(worst, std::fabs(norm(s, CoeffVector(v)) - reference_norm(s, v)));
      ++count;
    });
  }
  return {worst <= 1e-12, std::to_string(count) + " vectors, max |error| = " + fmt("%.3g", worst)};
}

Outcome duality_bracket_criterion() {
  const std::vector<SpaceSpec> spaces = {SpaceSpec::lp(1.0), SpaceSpec::lp(1.5), SpaceSpec::lp(2.0),
                                         SpaceSpec::lp(3.0), SpaceSpec::c0(), kHarmonic};
  double lo = 1e300, hi = -1e300;
  bool analytic = true;
  for (const auto& s : spaces) {
    for (std::size_t n = 2; n <= 256; n *= 2) {
      const double b = duality_bracket(s, n);
      analytic = analytic && dual_norm(s, CoeffVector::ones(n)).analytic;
      lo = std::min(lo, b);
      hi = std::max(hi, b);
    }
  }
  const bool ok = lo >= 1.0 - 1e-9 && hi <= 2.0 + 1e-4 && analytic;
  return {ok, "bracket range [" + fmt("%.12g", lo) + ", " + fmt("%.12g", hi) + "], all duals analytic: " +
                  (analytic ? "yes" : "no")};
}

Outcome p_recovery() {
  const std::vector<std::size_t> grid = dyadic_grid(4096);
  double err = 0.0, dev = 0.0;
  for (double p : {1.0, 1.5, 2.0, 3.0}) {
    const PowerFit f = fit_p(growth_table(SpaceSpec::lp(p), grid, 4096));
    if (!f.exponent) return {false, "no exponent for p = " + fmt("%g", p)};
    err = std::max(err, std::fabs(*f.exponent - p));
    dev = std::max(dev, f.max_deviation);
  }
  return {err <= 1e-6 && dev < 1e-9, "max |p_hat - p| = " + fmt("%.3g", err) + ", max deviation = " + fmt("%.3g", dev)};
}

Outcome lp_uniformity() {
  double worst = 0.0;
  std::size_t count = 0;
  for (const auto& s : {SpaceSpec::lp(1.0), SpaceSpec::lp(1.5), SpaceSpec::lp(2.0), SpaceSpec::lp(3.0), SpaceSpec::c0()}) {
    std::vector<GeneratedBlockSpec> fam;
    for (const auto& g : default_generator_pool(s, 64, 0)) fam.push_back(g.block);
    const SweepResult r = uniform_sweep(s, fam, 64);
    for (const auto& e : r.estimates) worst = std::max(worst, std::fabs(e.k_lower - 1.0));
    count += fam.size();
  }
  return {worst <= 1e-9, std::to_string(count) + " generators, max |K - 1| = " + fmt("%.3g", worst)};
}

Outcome lorentz_blowup() {
  std::vector<GeneratedBlockSpec> fam;
  std::vector<std::size_t> widths;
  for (std::size_t m = 2; m <= 64; m *= 2) {
    fam.push_back(GeneratedBlockSpec::normalized(kHarmonic, CoeffVector::ones(m)));
    widths.push_back(m);
  }
  const SweepResult r = uniform_sweep(kHarmonic, fam, 64);
  bool monotone = true, close = true;
  double sup = 0.0, worst_rel = 0.0;
  std::string trace;
  for (std::size_t i = 0; i < fam.size(); ++i) {
    const double k = r.estimates[i].k_lower;
    const double bound = static_cast<double>(oracle::harmonic(widths[i]) * oracle::harmonic(64) /
                                             oracle::harmonic(64 * widths[i]));
    const double prefix = std::max(sup, k);
    monotone = monotone && prefix >= sup && k >= (i == 0 ? 0.0 : r.estimates[i - 1].k_lower);
    sup = prefix;
    const double rel = std::fabs(k - bound) / bound;
    worst_rel = std::max(worst_rel, rel);
    close = close && rel <= 0.05 && k >= bound - 1e-9;
    trace += (i ? " " : "") + fmt("%.4g", k);
  }
  const bool ok = sup >= 2.0 && monotone && close;
  return {ok, "K(m=2..64) = " + trace + "; K_sup = " + fmt("%.6g", r.k_sup) + ", max relative gap to harmonic bound " +
                  fmt("%.3g", worst_rel)};
}

Outcome block_sandwich() {
  Rng rng(derive_seed(0, {6}));
  std::size_t violations = 0, tested = 0;
  for (const auto& s : {SpaceSpec::lp(1.0), SpaceSpec::lp(1.5), SpaceSpec::lp(2.0), SpaceSpec::lp(3.0), SpaceSpec::c0(),
                        kHarmonic}) {
    for (int t = 0; t < 10000; ++t) {
      const GeneratedBlockSpec g(gen::nonzero_vector(rng, gen::length(rng, 1, 8)));
      const SubsymmetricBound b = subsymmetric_bound(s, g, gen::nonzero_vector(rng, gen::length(rng, 1, 16)));
      violations += !(b.lower_ok && b.upper_ok);
      ++tested;
    }
  }
  return {violations == 0, std::to_string(tested) + " cases, " + std::to_string(violations) + " violations"};
}

Outcome summing_projection_criterion() {
  Rng rng(derive_seed(0, {7}));
  const SpaceSpec s = SpaceSpec::summing();
  std::size_t violations = 0;
  double residual = 0.0;
  for (int t = 0; t < 10000; ++t) {
    const std::size_t n = gen::length(rng, 1, 24);
    const CoeffVector x = gen::vector(rng, n);
    const std::vector<std::size_t> b = gen::increasing(rng, gen::length(rng, 1, n), n);
    const CoeffVector px = summing_projection(x, b);
    violations += norm(s, px) > norm(s, x) + kNormTolerance;
    residual = std::max(residual, norm(s, summing_projection(px, b) - px));
  }
  const std::vector<std::size_t> b{2, 5};
  const CoeffVector e1 = CoeffVector::unit(6, 1);
  const bool equality = norm(s, summing_projection(e1, b)) == norm(s, e1);
  return {violations == 0 && equality && residual <= 1e-12,
          "10000 cases, " + std::to_string(violations) + " contraction violations, e_1 equality " +
              (equality ? "attained" : "missed") + ", max idempotency residual " + fmt("%.3g", residual)};
}

Outcome diagonal_compression_criterion() {
  Rng rng(derive_seed(0, {8}));
  WitnessOptions o;
  o.evaluations = 300;
  std::size_t violations = 0, tested = 0;
  double margin = 1e300;
  for (const auto& s : {SpaceSpec::lp(1.0), SpaceSpec::lp(1.5), SpaceSpec::lp(2.0), SpaceSpec::lp(3.0), SpaceSpec::c0(),
                        kHarmonic, SpaceSpec::tsirelson()}) {
    for (int t = 0; t < 1000; ++t) {
      const std::size_t n = gen::length(rng, 1, 16);
      std::vector<double> d(n * n);
      for (double& x : d) x = rng.uniform() < 0.3 ? 0.0 : rng.normal();
      o.seed = rng.next();
      const DiagonalCompression c = diagonal_compression(s, Matrix(n, n, std::move(d)), o);
      violations += c.diag_norm_lower > c.t_norm_lower + kNormTolerance;
      margin = std::min(margin, c.t_norm_lower - c.diag_norm_lower);
      ++tested;
    }
  }
  return {violations == 0, std::to_string(tested) + " matrices, " + std::to_string(violations) +
                               " violations, min ||T|| - ||diag T|| lower-bound margin " + fmt("%.3g", margin)};
}

Outcome verdict_end_to_end() {
  struct Case {
    SpaceSpec spec;
    VerdictClass want;
    double p;
  };
  const std::vector<Case> cases = {{SpaceSpec::c0(), VerdictClass::C0Like, 0.0},
                                   {SpaceSpec::lp(1.5), VerdictClass::LpLike, 1.5},
                                   {SpaceSpec::lp(3.0), VerdictClass::LpLike, 3.0},
                                   {kHarmonic, VerdictClass::NotUniform, 0.0}};
  bool ok = true;
  std::string detail;
  for (const auto& c : cases) {
    const Verdict a = classify(c.spec);
    const Verdict b = classify(c.spec);
    bool good = a.verdict == c.want;
    if (c.want == VerdictClass::LpLike) good = good && a.p_hat && std::fabs(*a.p_hat - c.p) <= 1e-3;
    const bool same = a.verdict == b.verdict && a.k_evidence == b.k_evidence && a.p_hat == b.p_hat &&
                      a.worst.estimate.witness_up == b.worst.estimate.witness_up;
    ok = ok && good && same;
    detail += (detail.empty() ? "" : "; ") + c.spec.name() + " -> " + verdict_name(a.verdict) +
              (a.p_hat ? fmt(" p_hat=%.9g", *a.p_hat) : "") + (same ? "" : " (NOT deterministic)");
  }
  return {ok, detail};
}

Outcome tsirelson_spreading() {
  const SpaceSpec t = SpaceSpec::tsirelson();
  const std::vector<double> front{1.0, 1.0, 1.0}, back{0, 0, 0, 0, 0, 1.0, 1.0, 1.0};
  const double lf = norm(t, CoeffVector(front)), lb = norm(t, CoeffVector(back));
  const double of = oracle::tsirelson(front, 0.5).norm, ob = oracle::tsirelson(back, 0.5).norm;
  const bool ok = lf == 1.0 && lb == 1.5 && of == 1.0 && ob == 1.5;
  return {ok, "positions 1..3: " + fmt("%.17g", lf) + " (oracle " + fmt("%.17g", of) + "), positions 6..8: " +
                  fmt("%.17g", lb) + " (oracle " + fmt("%.17g", ob) + ")"};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "norm-oracle correctness", 10.0, norm_oracle},
      {2, "duality bracket", 60.0, duality_bracket_criterion},
      {3, "p-recovery", 5.0, p_recovery},
      {4, "lp/c0 uniformity", 0.0, lp_uniformity},
      {5, "lorentz non-uniformity witness", 0.0, lorentz_blowup},
      {6, "block sandwich", 0.0, block_sandwich},
      {7, "summing projection", 0.0, summing_projection_criterion},
      {8, "diagonal compression", 0.0, diagonal_compression_criterion},
      {9, "verdict end-to-end", 300.0, verdict_end_to_end},
      {10, "tsirelson spreading witness", 0.0, tsirelson_spreading},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool pass = o.pass;
    std::string timing = fmt("%.2fs", secs);
    if (c.time_limit > 0.0) {
      timing += fmt(" (limit %.0fs)", c.time_limit);
      pass = pass && secs < c.time_limit;
    }
    failures += !pass;
    std::printf("[%s] %2d %s: %s [%s]\n", pass ? "PASS" : "FAIL", c.id, c.name.c_str(), o.detail.c_str(),
                timing.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
