#include "seqlab/projections.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "seqlab/error.hpp"
#include "seqlab/random.hpp"
#include "seqlab/tsirelson.hpp"

namespace seqlab {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double sgn(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

// A functional f with <f, alpha> = ||alpha|| and ||f||_* = 1.
std::vector<double> attaining_functional(const SpaceSpec& spec, const CoeffVector& alpha, double alpha_norm,
                                         std::string& method) {
  const std::size_t m = alpha.size();
  std::vector<double> f(m, 0.0);
  switch (spec.family()) {
    case Family::Lp: {
      method = "conjugate";
      const double p = spec.p();
      for (std::size_t k = 0; k < m; ++k) {
        if (alpha[k] != 0.0) f[k] = sgn(alpha[k]) * (p == 1.0 ? 1.0 : std::pow(std::abs(alpha[k]) / alpha_norm, p - 1.0));
      }
      return f;
    }
    case Family::C0: {
      method = "coordinate";
      std::size_t j = 0;
      for (std::size_t k = 1; k < m; ++k) {
        if (std::abs(alpha[k]) > std::abs(alpha[j])) j = k;
      }
      f[j] = sgn(alpha[j]);
      return f;
    }
    case Family::Lorentz: {
      method = "subgradient";
      std::vector<std::size_t> order(m);
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return std::abs(alpha[a]) > std::abs(alpha[b]); });
      const double p = spec.p();
      for (std::size_t r = 0; r < m && alpha[order[r]] != 0.0; ++r) {
        const std::size_t k = order[r];
        const double mag = std::abs(alpha[k]) / alpha_norm;
        f[k] = sgn(alpha[k]) * spec.weights().weight(r + 1) * (p == 1.0 ? 1.0 : std::pow(mag, p - 1.0));
      }
      return f;
    }
    case Family::Tsirelson:
      method = "admissible-tree";
      return tsirelson::norming_functional(alpha.values(), spec.theta());
    case Family::Summing: {
      method = "tail-functional";
      double tail = 0.0, best = -1.0;
      std::size_t start = 0;
      for (std::size_t k = m; k-- > 0;) {
        tail += alpha[k];
        if (std::abs(tail) > best) {
          best = std::abs(tail);
          start = k;
        }
      }
      double s = 0.0;
      for (std::size_t k = start; k < m; ++k) s += alpha[k];
      for (std::size_t k = start; k < m; ++k) f[k] = sgn(s);
      return f;
    }
  }
  return f;
}

bool has_closed_form_dual(const SpaceSpec& spec) {
  return spec.family() == Family::Lp || spec.family() == Family::C0 ||
         (spec.family() == Family::Lorentz && spec.p() == 1.0);
}

}  // namespace

NormingFunctional norming_functional(const SpaceSpec& spec, const CoeffVector& alpha, const DualBudget& budget) {
  const double alpha_norm = norm(spec, alpha);
  if (alpha_norm == 0.0) throw InputError("norming functional needs a nonzero generator");
  NormingFunctional out;
  std::vector<double> f = attaining_functional(spec, alpha, alpha_norm, out.method);
  for (double& c : f) c /= alpha_norm;
  out.beta = CoeffVector(std::move(f));
  out.pairing = pairing(out.beta, alpha);
  out.dual_norm_bound = 1.0 / alpha_norm;

  bool dual_ok = true;
  if (spec.family() == Family::Summing) {
    // Dual of the summing norm on vectors supported in the window.
    double v = 0.0, prev = 0.0;
    for (double c : out.beta.values()) {
      v += std::abs(c - prev);
      prev = c;
    }
    dual_ok = v <= out.dual_norm_bound * (1.0 + kSearchTolerance);
  } else if (budget.evaluations > 0 || has_closed_form_dual(spec)) {
    const DualEvaluation d = dual_norm(spec, out.beta, budget);
    if (d.analytic) {
      out.dual_norm_bound = d.value;
    } else {
      out.dual_norm_lower = d.value;
    }
    dual_ok = d.value <= (1.0 / alpha_norm) * (1.0 + kSearchTolerance);
  }
  out.certified = std::abs(out.pairing - 1.0) <= kNormTolerance && dual_ok;
  return out;
}

CoeffVector block_projection(const GeneratedBlockSpec& bspec, const CoeffVector& beta, const CoeffVector& x) {
  const std::size_t m = bspec.width();
  if (beta.size() != m) throw InputError("functional length must equal the block width");
  const std::size_t blocks = (x.size() + m - 1) / m;
  std::vector<double> out(blocks * m, 0.0);
  for (std::size_t i = 0; i < blocks; ++i) {
    double c = 0.0;
    for (std::size_t k = 0; k < m && i * m + k < x.size(); ++k) c += beta[k] * x[i * m + k];
    if (c == 0.0) continue;
    for (std::size_t k = 0; k < m; ++k) out[i * m + k] = c * bspec.alpha()[k];
  }
  return CoeffVector(std::move(out));
}

ProjectionReport projection_norm(const SpaceSpec& spec, const GeneratedBlockSpec& bspec, const CoeffVector& beta,
                                 std::size_t n, const WitnessOptions& options) {
  if (n == 0) throw InputError("truncation N must be >= 1");
  const std::size_t m = bspec.width();
  if (n > bspec.max_length() / m) throw ConfigError("N * m exceeds the length cap");
  const std::size_t len = n * m;

  Rng rng(derive_seed(options.seed, {0x70726f6aULL, len}));
  PoolOptions pool_opts;
  pool_opts.random = options.random_candidates;
  std::vector<CoeffVector> pool = candidate_pool(len, pool_opts, rng);
  // Range vectors and per-block copies of alpha with perturbations.
  const std::vector<CoeffVector> coeff_pool = candidate_pool(n, PoolOptions{4, true, false, 1}, rng);
  for (const CoeffVector& a : coeff_pool) pool.push_back(expand(bspec, a));
  for (std::size_t r = 0; r < options.random_candidates; ++r) {
    CoeffVector x = expand(bspec, CoeffVector::ones(n));
    for (double& c : x.values()) c += 0.5 * rng.normal() * bspec.alpha().max_abs();
    if (!x.is_zero()) pool.push_back(std::move(x));
  }

  for (CoeffVector& c : pool) c *= options.scale;

  ProjectionReport report;
  auto residual = [&](const CoeffVector& x) {
    const CoeffVector px = block_projection(bspec, beta, x);
    return norm(spec, block_projection(bspec, beta, px) - px);
  };
  for (const CoeffVector& x : pool) report.idempotency_residual = std::max(report.idempotency_residual, residual(x));

  const Objective f = [&](const CoeffVector& x) {
    const double nx = norm(spec, x);
    return nx > 0.0 ? norm(spec, block_projection(bspec, beta, x)) / nx : kNegInf;
  };
  LocalSearchOptions local;
  local.min_step = 1e-6;
  const SearchOutcome s = pool_search(f, pool, options.evaluations, options.refine, local);
  report.witness = s.argmax;
  report.norm_lower = f(report.witness);
  report.idempotency_residual = std::max(report.idempotency_residual, residual(report.witness));
  report.samples = s.evaluations;
  report.exhausted = s.exhausted;
  return report;
}

CoeffVector summing_projection(const CoeffVector& a, std::span<const std::size_t> boundaries) {
  const std::size_t n = a.size();
  if (boundaries.empty()) throw InputError("summing projection needs at least one boundary");
  std::size_t prev = 0;
  for (std::size_t b : boundaries) {
    if (b <= prev) throw InputError("boundaries must be strictly increasing positive integers");
    if (b > n) throw InputError("boundary beyond the coefficient vector");
    prev = b;
  }
  std::vector<std::size_t> closed(boundaries.begin(), boundaries.end());
  if (closed.back() < n) closed.push_back(n);

  std::vector<double> out(n, 0.0);
  std::size_t lo = 0;
  for (std::size_t b : closed) {
    double group = 0.0;
    for (std::size_t j = lo; j < b; ++j) group += a[j];
    out[b - 1] = group;
    lo = b;
  }
  return CoeffVector(std::move(out));
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (rows_ == 0 || cols_ == 0 || data_.size() != rows_ * cols_) throw InputError("matrix data does not match its shape");
  for (double v : data_) {
    if (!std::isfinite(v)) throw InputError("matrix has a non-finite entry");
  }
}

Matrix Matrix::identity(std::size_t n) {
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) d[i * n + i] = 1.0;
  return Matrix(n, n, std::move(d));
}

CoeffVector Matrix::apply(const CoeffVector& x) const {
  if (x.size() != cols_) throw InputError("matrix-vector dimension mismatch");
  std::vector<double> y(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) s += data_[i * cols_ + j] * x[j];
    y[i] = s;
  }
  return CoeffVector(std::move(y));
}

Matrix Matrix::diagonal() const {
  std::vector<double> d(rows_ * cols_, 0.0);
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) d[i * cols_ + i] = data_[i * cols_ + i];
  return Matrix(rows_, cols_, std::move(d));
}

DiagonalCompression diagonal_compression(const SpaceSpec& spec, const Matrix& t, const WitnessOptions& options) {
  if (t.rows() != t.cols()) throw InputError("diagonal compression needs a square matrix");
  if (!spec.unconditional()) throw ConfigError("diagonal compression needs an unconditional space");
  const std::size_t d = t.rows();
  const Matrix diag = t.diagonal();

  Rng rng(derive_seed(options.seed, {0x64696167ULL, d}));
  PoolOptions pool_opts;
  pool_opts.max_coordinates = d;
  pool_opts.random = options.random_candidates;
  std::vector<CoeffVector> pool = candidate_pool(d, pool_opts, rng);
  for (CoeffVector& c : pool) c *= options.scale;

  auto operator_ratio = [&spec](const Matrix& op) {
    return Objective([&spec, &op](const CoeffVector& x) {
      const double nx = norm(spec, x);
      return nx > 0.0 ? norm(spec, op.apply(x)) / nx : kNegInf;
    });
  };
  LocalSearchOptions local;
  local.min_step = 1e-6;
  const Objective fd = operator_ratio(diag);
  const Objective ft = operator_ratio(t);

  DiagonalCompression out;
  const SearchOutcome sd = pool_search(fd, pool, options.evaluations, options.refine, local);
  out.diag_witness = sd.argmax;
  out.diag_norm_lower = fd(out.diag_witness);
  pool.insert(pool.begin(), out.diag_witness);
  const SearchOutcome st = pool_search(ft, pool, options.evaluations + 1, options.refine, local);
  out.t_witness = st.argmax;
  out.t_norm_lower = ft(out.t_witness);
  return out;
}

}  // namespace seqlab
