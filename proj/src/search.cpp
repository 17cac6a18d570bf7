#include "seqlab/search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <thread>

namespace seqlab {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
// Pair moves are quadratic in the dimension.
constexpr std::size_t kMaxPairDimension = 16;

double safe_eval(const Objective& f, const CoeffVector& x) {
  const double v = f(x);
  return std::isnan(v) ? kNegInf : v;
}

}  // namespace

SearchOutcome local_search(const Objective& f, CoeffVector start, const LocalSearchOptions& options) {
  SearchOutcome out;
  CoeffVector x = std::move(start);
  if (options.canonicalize) options.canonicalize(x);
  double fx = safe_eval(f, x);
  out.evaluations = 1;
  const std::size_t n = x.size();

  std::vector<std::size_t> order = options.staircase_order;
  if (order.size() != n) {
    order.resize(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
  }

  double step = options.initial_step;
  CoeffVector y = x;
  // Returns false once the budget is spent.
  auto attempt = [&](auto&& build) {
    if (out.evaluations >= options.max_evaluations) return false;
    y = x;
    build(y);
    if (options.canonicalize) options.canonicalize(y);
    const double fy = safe_eval(f, y);
    ++out.evaluations;
    if (fy > fx) {
      x = y;
      fx = fy;
    }
    return true;
  };

  while (step >= options.min_step) {
    const double before = fx;
    double scale = x.max_abs();
    if (scale == 0.0) scale = 1.0;
    const double delta = step * scale;
    bool budget_left = true;

    for (std::size_t k = 0; k < n && budget_left; ++k) {
      const double base = fx;
      budget_left = attempt([&](CoeffVector& v) { v[k] += delta; });
      if (budget_left && fx == base) budget_left = attempt([&](CoeffVector& v) { v[k] -= delta; });
      if (budget_left && fx == base && x[k] != 0.0) budget_left = attempt([&](CoeffVector& v) { v[k] = 0.0; });
    }
    if (options.staircase_moves) {
      for (std::size_t len = 1; len <= n && budget_left; ++len) {
        const double base = fx;
        budget_left = attempt([&](CoeffVector& v) {
          for (std::size_t r = 0; r < len; ++r) v[order[r]] += delta;
        });
        if (budget_left && fx == base) {
          budget_left = attempt([&](CoeffVector& v) {
            for (std::size_t r = 0; r < len; ++r) v[order[r]] -= delta;
          });
        }
      }
    }
    if (options.pair_moves && n <= kMaxPairDimension) {
      for (std::size_t i = 0; i < n && budget_left; ++i) {
        for (std::size_t j = 0; j < n && budget_left; ++j) {
          if (i == j) continue;
          budget_left = attempt([&](CoeffVector& v) {
            v[i] += delta;
            v[j] -= delta;
          });
        }
      }
    }
    if (!budget_left) {
      out.exhausted = true;
      break;
    }
    if (fx == before) step *= 0.5;
  }
  out.argmax = std::move(x);
  out.value = fx;
  return out;
}

SearchOutcome pool_search(const Objective& f, std::span<const CoeffVector> pool, std::size_t budget,
                          std::size_t refine, const LocalSearchOptions& local) {
  SearchOutcome best;
  best.value = kNegInf;
  std::vector<std::pair<double, std::size_t>> scored;
  scored.reserve(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (best.evaluations >= budget) {
      best.exhausted = true;
      break;
    }
    CoeffVector x = pool[i];
    if (local.canonicalize) local.canonicalize(x);
    const double v = safe_eval(f, x);
    ++best.evaluations;
    scored.emplace_back(v, i);
    if (v > best.value) {
      best.value = v;
      best.argmax = std::move(x);
    }
  }
  std::stable_sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  refine = std::min(refine, scored.size());
  for (std::size_t r = 0; r < refine; ++r) {
    const std::size_t remaining = budget > best.evaluations ? budget - best.evaluations : 0;
    if (remaining == 0) {
      best.exhausted = true;
      break;
    }
    LocalSearchOptions opts = local;
    opts.max_evaluations = remaining / (refine - r);
    if (opts.max_evaluations == 0) continue;
    SearchOutcome s = local_search(f, pool[scored[r].second], opts);
    best.evaluations += s.evaluations;
    if (s.exhausted) best.exhausted = true;
    if (s.value > best.value) {
      best.value = s.value;
      best.argmax = std::move(s.argmax);
    }
  }
  return best;
}

std::vector<CoeffVector> candidate_pool(std::size_t length, const PoolOptions& options, Rng& rng) {
  std::vector<CoeffVector> pool;
  const std::size_t n = length;
  const std::size_t coords = std::min(n, options.max_coordinates);
  for (std::size_t c = 0; c < coords; ++c) {
    const std::size_t k = coords == 1 ? 0 : (c * (n - 1)) / (coords - 1);
    pool.push_back(CoeffVector::unit(n, k + 1));
  }
  auto make = [n](auto&& fn) {
    std::vector<double> v(n);
    for (std::size_t k = 0; k < n; ++k) v[k] = fn(k);
    return CoeffVector(std::move(v));
  };
  if (options.flats && n > 1) {
    pool.push_back(CoeffVector::ones(n));
    pool.push_back(make([](std::size_t k) { return k % 2 == 0 ? 1.0 : -1.0; }));
    pool.push_back(make([&](std::size_t) { return rng.sign(); }));
    pool.push_back(make([n](std::size_t k) { return k < (n + 1) / 2 ? 1.0 : 0.0; }));
  }
  if (options.staircases && n > 1) {
    const double len = static_cast<double>(n);
    pool.push_back(make([len](std::size_t k) { return (len - static_cast<double>(k)) / len; }));
    pool.push_back(make([](std::size_t k) { return 1.0 / static_cast<double>(k + 1); }));
    pool.push_back(make([](std::size_t k) { return 1.0 / std::sqrt(static_cast<double>(k + 1)); }));
    pool.push_back(make([](std::size_t k) { return std::pow(0.5, static_cast<double>(k)); }));
    pool.push_back(make([](std::size_t k) { return std::pow(0.9, static_cast<double>(k)); }));
  }
  for (std::size_t r = 0; r < options.random; ++r) {
    CoeffVector v = make([&](std::size_t) { return rng.normal(); });
    if (!v.is_zero()) pool.push_back(std::move(v));
  }
  return pool;
}

void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> workers;
  workers.reserve(threads);
  for (std::size_t w = 0; w < threads; ++w) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : workers) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace seqlab
