#pragma once

// Direct-evaluation reference implementations, written without reference to
// the library's algorithms. Slow by design.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <vector>

namespace oracle {

inline long double harmonic(std::size_t n) {
  long double h = 0.0L;
  for (std::size_t i = n; i >= 1; --i) h += 1.0L / static_cast<long double>(i);
  return h;
}

inline double lp(const std::vector<double>& a, double p) {
  long double s = 0.0L;
  for (double x : a) s += std::pow(static_cast<long double>(std::fabs(x)), static_cast<long double>(p));
  return static_cast<double>(std::pow(s, 1.0L / static_cast<long double>(p)));
}

inline double sup(const std::vector<double>& a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::fabs(x));
  return m;
}

// max over all assignments of the nonzero magnitudes to weight slots
inline double lorentz(const std::vector<double>& a, const std::function<double(std::size_t)>& w, double p) {
  std::vector<double> mags;
  for (double x : a) {
    if (x != 0.0) mags.push_back(std::fabs(x));
  }
  std::sort(mags.begin(), mags.end());
  long double best = 0.0L;
  do {
    long double s = 0.0L;
    for (std::size_t i = 0; i < mags.size(); ++i) s += w(i + 1) * std::pow(static_cast<long double>(mags[i]), p);
    best = std::max(best, s);
  } while (std::next_permutation(mags.begin(), mags.end()));
  return static_cast<double>(std::pow(best, 1.0L / p));
}

// sum_j a_j s_j with s_j = e_1 + ... + e_j, via the explicit matrix
inline double summing(const std::vector<double>& a) {
  const std::size_t n = a.size();
  std::vector<std::vector<double>> s(n, std::vector<double>(n, 0.0));
  for (std::size_t row = 0; row < n; ++row) {
    for (std::size_t col = row; col < n; ++col) s[row][col] = 1.0;
  }
  double m = 0.0;
  for (std::size_t row = 0; row < n; ++row) {
    double x = 0.0;
    for (std::size_t col = 0; col < n; ++col) x += s[row][col] * a[col];
    m = std::max(m, std::fabs(x));
  }
  return m;
}

// Tsirelson norm by fixed-point iteration over arbitrary admissible set
// families: f_{k+1}(E) = max(sup, theta * max sum_i f_k(E_i)) for every
// subset E of the support, E_1 < ... < E_l, l <= min E_1. Sets are bitmasks
// over the nonzero coordinates; absolute indices come from `a`.
struct TsirelsonResult {
  double norm = 0.0;
  std::size_t iterations = 0;
};

inline TsirelsonResult tsirelson(const std::vector<double>& a, double theta) {
  std::vector<std::size_t> idx;
  std::vector<double> val;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] != 0.0) {
      idx.push_back(k + 1);
      val.push_back(std::fabs(a[k]));
    }
  }
  const std::size_t d = idx.size();
  if (d == 0) return {};
  const std::size_t full = (std::size_t{1} << d) - 1;
  std::vector<double> f(full + 1, 0.0);
  for (std::size_t mask = 1; mask <= full; ++mask) {
    for (std::size_t b = 0; b < d; ++b) {
      if (mask & (std::size_t{1} << b)) f[mask] = std::max(f[mask], val[b]);
    }
  }
  auto lowest = [](std::size_t mask) { return static_cast<std::size_t>(__builtin_ctzll(mask)); };
  auto highest = [](std::size_t mask) { return static_cast<std::size_t>(63 - __builtin_clzll(mask)); };

  std::size_t iterations = 0;
  for (;;) {
    std::vector<double> next(f);
    for (std::size_t mask = 1; mask <= full; ++mask) {
      // best(rest, left): best sum over families E_1 < ... of at most `left`
      // sets inside `rest`
      std::map<std::pair<std::size_t, std::size_t>, double> memo;
      std::function<double(std::size_t, std::size_t)> best = [&](std::size_t rest, std::size_t left) -> double {
        if (rest == 0 || left == 0) return 0.0;
        const auto key = std::make_pair(rest, left);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        double out = 0.0;
        for (std::size_t e = rest; e != 0; e = (e - 1) & rest) {
          const std::size_t top = highest(e);
          const std::size_t after = top + 1 >= 64 ? 0 : rest & ~((std::size_t{1} << (top + 1)) - 1);
          out = std::max(out, f[e] + best(after, left - 1));
        }
        memo[key] = out;
        return out;
      };
      double fam = 0.0;
      for (std::size_t e1 = mask; e1 != 0; e1 = (e1 - 1) & mask) {
        const std::size_t l = idx[lowest(e1)];
        const std::size_t top = highest(e1);
        const std::size_t after = mask & ~((std::size_t{1} << (top + 1)) - 1);
        fam = std::max(fam, f[e1] + best(after, l - 1));
      }
      next[mask] = std::max(f[mask], std::max(next[mask], theta * fam));
    }
    if (next == f) break;
    f = next;
    ++iterations;
  }
  return {f[full], iterations};
}

// Primal maximization of <x, y> over the sup-norm box surface, refined by
// repeated zooming. For support <= 3.
inline double dual_by_grid(const std::function<double(const std::vector<double>&)>& primal,
                           const std::vector<double>& y, std::size_t grid = 12, std::size_t rounds = 36) {
  const std::size_t d = y.size();
  std::vector<double> center(d, 0.0);
  double radius = 1.0;
  double best = 0.0;
  std::vector<double> best_x(d, 0.0);
  for (std::size_t round = 0; round < rounds; ++round) {
    std::vector<double> x(d);
    std::size_t total = 1;
    for (std::size_t k = 0; k < d; ++k) total *= (2 * grid + 1);
    for (std::size_t code = 0; code < total; ++code) {
      std::size_t c = code;
      for (std::size_t k = 0; k < d; ++k) {
        const double step = static_cast<double>(c % (2 * grid + 1)) - static_cast<double>(grid);
        c /= (2 * grid + 1);
        x[k] = center[k] + radius * step / static_cast<double>(grid);
      }
      const double n = primal(x);
      if (n <= 0.0) continue;
      double s = 0.0;
      for (std::size_t k = 0; k < d; ++k) s += x[k] * y[k];
      if (s / n > best) {
        best = s / n;
        best_x = x;
      }
    }
    const double n = primal(best_x);
    for (std::size_t k = 0; k < d; ++k) center[k] = best_x[k] / n;
    radius *= 0.5;
  }
  return best;
}

// Summing-basis dual by vertex enumeration: the unit ball is {x : |T_k x| <= 1}
// with T the tail-sum matrix, so the sup of <x, y> is attained at a sign
// vector of tail sums on n + 1 coordinates.
inline double summing_dual(const std::vector<double>& y) {
  const std::size_t n = y.size() + 1;
  double best = 0.0;
  for (std::size_t signs = 0; signs < (std::size_t{1} << n); ++signs) {
    std::vector<double> t(n + 1, 0.0);
    for (std::size_t k = 0; k < n; ++k) t[k] = (signs >> k) & 1 ? 1.0 : -1.0;
    double s = 0.0;
    for (std::size_t k = 0; k < y.size(); ++k) s += (t[k] - t[k + 1]) * y[k];
    best = std::max(best, s);
  }
  return best;
}

}  // namespace oracle
