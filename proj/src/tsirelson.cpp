#include "seqlab/tsirelson.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "seqlab/error.hpp"

namespace seqlab::tsirelson {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Interval tables over the nonzero coordinates of a vector. Interval [s, e]
// (0 <= s <= e < n) refers to the s-th through e-th nonzero coordinates.
class IntervalSolver {
 public:
  IntervalSolver(std::span<const double> a, double theta) : theta_(theta) {
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (a[k] != 0.0) {
        index_.push_back(k + 1);
        offset_.push_back(k);
        mag_.push_back(std::abs(a[k]));
        sign_.push_back(a[k] > 0.0 ? 1.0 : -1.0);
      }
    }
    n_ = index_.size();
    if (n_ > kMaxSupport) {
      throw ConfigError("Tsirelson norm supports at most " + std::to_string(kMaxSupport) +
                        " nonzero coefficients");
    }
    prefix_.assign(n_ + 1, 0.0);
    for (std::size_t r = 0; r < n_; ++r) prefix_[r + 1] = prefix_[r] + mag_[r];
    sup_.assign(n_ * n_, 0.0);
    for (std::size_t s = 0; s < n_; ++s) {
      double m = 0.0;
      for (std::size_t e = s; e < n_; ++e) {
        m = std::max(m, mag_[e]);
        sup_[s * n_ + e] = m;
      }
    }
  }

  std::size_t size() const { return n_; }

  // Runs the recursion to its fixed point.
  std::size_t solve() {
    table_ = sup_;
    std::vector<double> next(n_ * n_, 0.0);
    std::size_t iterations = 0;
    // Each productive sweep adds a nesting level; n + 1 sweeps always suffice.
    for (std::size_t sweep = 0; sweep <= n_ + 1; ++sweep) {
      best_pieces(table_, pieces_);
      bool changed = false;
      for (std::size_t e = 0; e < n_; ++e) {
        double best = kNegInf;
        for (std::size_t s = e + 1; s-- > 0;) {
          best = std::max(best, pieces_[s * n_ + e]);
          const double v = std::max(sup_[s * n_ + e], theta_ * best);
          next[s * n_ + e] = v;
          if (v != table_[s * n_ + e]) changed = true;
        }
      }
      if (!changed) return iterations;
      table_.swap(next);
      ++iterations;
    }
    throw Error("Tsirelson recursion failed to reach a fixed point");
  }

  double whole() const { return n_ == 0 ? 0.0 : table_[n_ - 1]; }

  // Accumulates weight * (norming functional of interval [s, e]) into out.
  void norming(std::size_t s, std::size_t e, double weight, std::vector<double>& out) const {
    double best = kNegInf;
    std::size_t best_t = s;
    for (std::size_t t = s; t <= e; ++t) {
      if (pieces_[t * n_ + e] > best) {
        best = pieces_[t * n_ + e];
        best_t = t;
      }
    }
    if (sup_[s * n_ + e] >= theta_ * best) {
      std::size_t r = s;
      for (std::size_t q = s; q <= e; ++q) {
        if (mag_[q] > mag_[r]) r = q;
      }
      out[offset_[r]] += weight * sign_[r];
      return;
    }
    for (const auto& [u, v] : partition(best_t, e)) norming(u, v, weight * theta_, out);
  }

 private:
  double l1(std::size_t s, std::size_t e) const { return prefix_[e + 1] - prefix_[s]; }

  // pieces[t * n + e] = best sum of interval norms over partitions of [t, e]
  // into at most index(t) consecutive intervals.
  void best_pieces(const std::vector<double>& table, std::vector<double>& pieces) const {
    pieces.assign(n_ * n_, kNegInf);
    std::vector<double> prev(n_), cur(n_);
    for (std::size_t t = 0; t < n_; ++t) {
      const std::size_t allowed = index_[t];
      for (std::size_t e = t; e < n_; ++e) {
        if (e - t + 1 <= allowed) pieces[t * n_ + e] = l1(t, e);
      }
      if (t + allowed >= n_) continue;
      // prev[e] = best partition of [t, e] into exactly j pieces.
      for (std::size_t e = t; e < n_; ++e) prev[e] = table[t * n_ + e];
      for (std::size_t j = 2; j <= allowed; ++j) {
        for (std::size_t e = t + j - 1; e < n_; ++e) {
          double best = kNegInf;
          for (std::size_t u = t + j - 2; u < e; ++u) best = std::max(best, prev[u] + table[(u + 1) * n_ + e]);
          cur[e] = best;
        }
        std::swap(prev, cur);
      }
      for (std::size_t e = t + allowed; e < n_; ++e) pieces[t * n_ + e] = prev[e];
    }
  }

  // Recovers the optimal pieces of [t, e] under the fixed-point table.
  std::vector<std::pair<std::size_t, std::size_t>> partition(std::size_t t, std::size_t e) const {
    const std::size_t allowed = index_[t];
    std::vector<std::pair<std::size_t, std::size_t>> out;
    if (e - t + 1 <= allowed) {
      for (std::size_t r = t; r <= e; ++r) out.emplace_back(r, r);
      return out;
    }
    const std::size_t width = n_;
    // choice[j][e] = end of the (j-1)-piece prefix in the best j-piece split.
    std::vector<std::vector<double>> value(allowed + 1, std::vector<double>(width, kNegInf));
    std::vector<std::vector<std::size_t>> choice(allowed + 1, std::vector<std::size_t>(width, 0));
    for (std::size_t v = t; v <= e; ++v) value[1][v] = table_[t * n_ + v];
    for (std::size_t j = 2; j <= allowed; ++j) {
      for (std::size_t v = t + j - 1; v <= e; ++v) {
        for (std::size_t u = t + j - 2; u < v; ++u) {
          const double c = value[j - 1][u] + table_[(u + 1) * n_ + v];
          if (c > value[j][v]) {
            value[j][v] = c;
            choice[j][v] = u;
          }
        }
      }
    }
    std::size_t v = e;
    for (std::size_t j = allowed; j >= 2; --j) {
      const std::size_t u = choice[j][v];
      out.emplace_back(u + 1, v);
      v = u;
    }
    out.emplace_back(t, v);
    std::reverse(out.begin(), out.end());
    return out;
  }

  double theta_;
  std::size_t n_ = 0;
  std::vector<std::size_t> index_;
  std::vector<std::size_t> offset_;
  std::vector<double> mag_;
  std::vector<double> sign_;
  std::vector<double> prefix_;
  std::vector<double> sup_;
  std::vector<double> table_;
  std::vector<double> pieces_;
};

}  // namespace

Evaluation evaluate(std::span<const double> a, double theta) {
  IntervalSolver solver(a, theta);
  if (solver.size() == 0) return {};
  Evaluation ev;
  ev.iterations = solver.solve();
  ev.norm = solver.whole();
  return ev;
}

std::vector<double> norming_functional(std::span<const double> a, double theta) {
  IntervalSolver solver(a, theta);
  std::vector<double> out(a.size(), 0.0);
  if (solver.size() == 0) return out;
  solver.solve();
  solver.norming(0, solver.size() - 1, 1.0, out);
  return out;
}

}  // namespace seqlab::tsirelson
