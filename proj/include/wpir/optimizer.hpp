//
// Copyright 2026 The WPIR Lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// Leakage minimization for time-shared Scheme A under a download budget D.
//
// The variable is the strategy pmf z over [0:n-1]^{M-1}; the budget becomes
// z_0 >= c with c = n - D. Feasible points are written z = c e_0 + (1 - c) w
// with w in the simplex, and w is updated by pairwise Frank-Wolfe steps
// (mass moves from the worst active vertex to the linear minimizer) with an
// exact line search. MI is smooth away from the boundary; MaxL is smoothed by
// an annealed log-sum-exp and certified by a dual lower bound.

#ifndef WPIR_OPTIMIZER_HPP_
#define WPIR_OPTIMIZER_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "wpir/core.hpp"
#include "wpir/entropy.hpp"

namespace wpir {

enum class LeakageMetric { kMi, kMaxl };

inline std::string ToString(LeakageMetric m) {
  return m == LeakageMetric::kMi ? "mi" : "maxl";
}

// The budget D is below n - 1, so no strategy meets it.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OptProblem {
  int files = 2;
  int servers = 2;
  LeakageMetric metric = LeakageMetric::kMi;
  double download_budget = 2.0;
};

struct OptOptions {
  double tolerance = 1e-7;          // target certified gap, bits
  std::int64_t max_iterations = 200000;
  double first_temperature = 1e-1;  // MaxL smoothing schedule
  double last_temperature = 1e-4;
  double min_temperature = 1e-10;
  std::int64_t level_iterations = 20000;  // per MaxL temperature
};

struct OptResult {
  Pmf z_star;
  double objective = 0.0;  // leakage in bits
  double fw_gap = 0.0;     // certified bound on objective - optimum, bits
  std::int64_t iterations = 0;
  double rate = 0.0;       // (n - 1) / (n - z*_0)
  bool converged = false;  // fw_gap <= tolerance
};

inline constexpr double kLogFloor = 1e-12;

// Index tables for the time-shared query space [0:n-1]^M. Query k has entry
// i equal to digit i of k in base n; Drop(k, m) is the strategy index of the
// query with entry m removed.
class TimeshareLattice {
 public:
  struct Link {
    std::uint32_t query;
    std::uint32_t file;  // 0-based
  };

  TimeshareLattice(int files, int n) : files_(files), n_(n) {
    Require(files >= 1 && n >= 2, "TimeshareLattice: bad (M, n)");
    strategies_ = IntPow(n, files - 1);
    queries_ = IntPow(n, files);
    if (queries_ * files > (std::uint64_t{1} << 26)) {
      throw CapacityError("TimeshareLattice: n^M * M too large");
    }
    drop_.resize(queries_ * files);
    std::vector<std::uint32_t> count(strategies_ + 1, 0);
    std::vector<std::uint64_t> pow(files + 1, 1);
    for (int i = 1; i <= files; ++i) pow[i] = pow[i - 1] * n;
    for (std::uint64_t q = 0; q < queries_; ++q) {
      for (int m = 0; m < files; ++m) {
        const std::uint64_t low = q % pow[m];
        const std::uint64_t high = q / pow[m + 1];
        const auto s = static_cast<std::uint32_t>(low + high * pow[m]);
        drop_[q * files + m] = s;
        ++count[s + 1];
      }
    }
    for (std::uint64_t s = 0; s < strategies_; ++s) count[s + 1] += count[s];
    offsets_ = count;
    links_.resize(queries_ * files);
    for (std::uint64_t q = 0; q < queries_; ++q) {
      for (int m = 0; m < files; ++m) {
        const auto s = drop_[q * files + m];
        links_[count[s]++] = {static_cast<std::uint32_t>(q),
                              static_cast<std::uint32_t>(m)};
      }
    }
  }

  int files() const { return files_; }
  int servers() const { return n_; }
  std::uint64_t strategies() const { return strategies_; }
  std::uint64_t queries() const { return queries_; }
  std::uint32_t Drop(std::uint64_t q, int m) const { return drop_[q * files_ + m]; }
  std::span<const Link> Links(std::uint64_t s) const {
    return std::span<const Link>(links_).subspan(offsets_[s],
                                                 offsets_[s + 1] - offsets_[s]);
  }

 private:
  int files_;
  int n_;
  std::uint64_t strategies_ = 0;
  std::uint64_t queries_ = 0;
  std::vector<std::uint32_t> drop_;
  std::vector<std::uint32_t> offsets_;
  std::vector<Link> links_;
};

// ---------------------------------------------------------------------------
// Objectives

// (1/n) sum_q eta(u_q) - H(z), u_q = (1/M) sum_m z_{q without m}.
inline double MiObjective(const TimeshareLattice& lat, std::span<const double> z) {
  Require(z.size() == lat.strategies(), "MiObjective: z has the wrong size");
  const int M = lat.files();
  double total = 0.0;
  for (std::uint64_t q = 0; q < lat.queries(); ++q) {
    double u = 0.0;
    for (int m = 0; m < M; ++m) u += z[lat.Drop(q, m)];
    total += EntropyTerm(u / M);
  }
  return total / lat.servers() - EntropyBits(z);
}

inline std::vector<double> MiGradient(const TimeshareLattice& lat,
                                      std::span<const double> z) {
  const int M = lat.files();
  std::vector<double> log_u(lat.queries());
  for (std::uint64_t q = 0; q < lat.queries(); ++q) {
    double u = 0.0;
    for (int m = 0; m < M; ++m) u += z[lat.Drop(q, m)];
    log_u[q] = std::log2(std::max(u / M, kLogFloor));
  }
  std::vector<double> g(lat.strategies());
  const double scale = 1.0 / (static_cast<double>(lat.servers()) * M);
  for (std::uint64_t s = 0; s < g.size(); ++s) {
    double acc = 0.0;
    for (const auto& link : lat.Links(s)) acc += log_u[link.query];
    g[s] = std::log2(std::max(z[s], kLogFloor)) - scale * acc;
  }
  return g;
}

// Linear-domain MaxL: (1/n) sum_q max_m z_{q without m}.
inline double MaxlObjective(const TimeshareLattice& lat, std::span<const double> z) {
  Require(z.size() == lat.strategies(), "MaxlObjective: z has the wrong size");
  double total = 0.0;
  for (std::uint64_t q = 0; q < lat.queries(); ++q) {
    double best = 0.0;
    for (int m = 0; m < lat.files(); ++m) best = std::max(best, z[lat.Drop(q, m)]);
    total += best;
  }
  return total / lat.servers();
}

// Subgradient from the first maximizing file of every query.
inline std::vector<double> MaxlSubgradient(const TimeshareLattice& lat,
                                           std::span<const double> z) {
  std::vector<double> g(lat.strategies(), 0.0);
  for (std::uint64_t q = 0; q < lat.queries(); ++q) {
    int arg = 0;
    for (int m = 1; m < lat.files(); ++m) {
      if (z[lat.Drop(q, m)] > z[lat.Drop(q, arg)]) arg = m;
    }
    g[lat.Drop(q, arg)] += 1.0 / lat.servers();
  }
  return g;
}

inline double MiObjective(int files, int n, const Pmf& z) {
  return MiObjective(TimeshareLattice(files, n), z.probs());
}
inline double MaxlObjective(int files, int n, const Pmf& z) {
  return MaxlObjective(TimeshareLattice(files, n), z.probs());
}

// Minimizer of <g, z> over {z in simplex, z_0 >= c}: c e_0 + (1 - c) e_j
// with j the first index attaining min g.
inline std::vector<double> Lmo(std::span<const double> g, double c) {
  Require(!g.empty(), "Lmo: empty gradient");
  if (c > 1.0) throw InfeasibleError("Lmo: floor on z_0 exceeds 1");
  c = std::max(c, 0.0);
  const auto j = static_cast<std::size_t>(
      std::min_element(g.begin(), g.end()) - g.begin());
  std::vector<double> v(g.size(), 0.0);
  v[0] += c;
  v[j] += 1.0 - c;
  return v;
}

namespace detail {

// Smoothed MaxL: (1/n) sum_q tau * ln sum_m exp(z_{q\m} / tau).
inline double SoftMaxlObjective(const TimeshareLattice& lat,
                                std::span<const double> z, double tau) {
  const int M = lat.files();
  double total = 0.0;
  for (std::uint64_t q = 0; q < lat.queries(); ++q) {
    double best = -kInfinity;
    for (int m = 0; m < M; ++m) best = std::max(best, z[lat.Drop(q, m)]);
    double sum = 0.0;
    for (int m = 0; m < M; ++m) sum += std::exp((z[lat.Drop(q, m)] - best) / tau);
    total += best + tau * std::log(sum);
  }
  return total / lat.servers();
}

// Softmax weight of file m in query q at temperature tau; tau = 0 splits
// evenly among exact maximizers.
template <typename Z>
double SoftWeight(const TimeshareLattice& lat, const Z& z, std::uint64_t q,
                  int m, double tau) {
  const int M = lat.files();
  double best = -kInfinity;
  for (int k = 0; k < M; ++k) best = std::max(best, z(lat.Drop(q, k)));
  if (tau <= 0.0) {
    int ties = 0;
    for (int k = 0; k < M; ++k) ties += z(lat.Drop(q, k)) == best ? 1 : 0;
    return z(lat.Drop(q, m)) == best ? 1.0 / ties : 0.0;
  }
  double sum = 0.0;
  for (int k = 0; k < M; ++k) sum += std::exp((z(lat.Drop(q, k)) - best) / tau);
  return std::exp((z(lat.Drop(q, m)) - best) / tau) / sum;
}

// Partial derivative in coordinate s, evaluated at a point given by `z`.
template <typename Z>
double CoordinateGradient(const TimeshareLattice& lat, LeakageMetric metric,
                          double tau, const Z& z, std::uint64_t s) {
  const int M = lat.files();
  const double n = lat.servers();
  double acc = 0.0;
  if (metric == LeakageMetric::kMi) {
    for (const auto& link : lat.Links(s)) {
      double u = 0.0;
      for (int m = 0; m < M; ++m) u += z(lat.Drop(link.query, m));
      acc += std::log2(std::max(u / M, kLogFloor));
    }
    return std::log2(std::max(z(s), kLogFloor)) - acc / (n * M);
  }
  for (const auto& link : lat.Links(s)) {
    acc += SoftWeight(lat, z, link.query, static_cast<int>(link.file), tau);
  }
  return acc / n;
}

inline std::vector<double> SoftMaxlGradient(const TimeshareLattice& lat,
                                            std::span<const double> z,
                                            double tau) {
  const int M = lat.files();
  std::vector<double> g(lat.strategies(), 0.0);
  std::vector<double> w(M);
  for (std::uint64_t q = 0; q < lat.queries(); ++q) {
    double best = -kInfinity;
    for (int m = 0; m < M; ++m) best = std::max(best, z[lat.Drop(q, m)]);
    double sum = 0.0;
    for (int m = 0; m < M; ++m) {
      w[m] = std::exp((z[lat.Drop(q, m)] - best) / tau);
      sum += w[m];
    }
    for (int m = 0; m < M; ++m) g[lat.Drop(q, m)] += w[m] / sum;
  }
  for (double& v : g) v /= lat.servers();
  return g;
}

// Lower bound on min F over the feasible set from per-query file weights y:
// F(z) >= sum_s z_s c_s(y), minimized in closed form over the feasible set.
inline double MaxlDualBound(const TimeshareLattice& lat, std::span<const double> z,
                            double c, double tau) {
  std::vector<double> coef(lat.strategies(), 0.0);
  auto at = [&](std::uint64_t s) { return z[s]; };
  for (std::uint64_t q = 0; q < lat.queries(); ++q) {
    for (int m = 0; m < lat.files(); ++m) {
      coef[lat.Drop(q, m)] += SoftWeight(lat, at, q, m, tau);
    }
  }
  for (double& v : coef) v /= lat.servers();
  return c * coef[0] + (1.0 - c) * *std::min_element(coef.begin(), coef.end());
}

// Pairwise Frank-Wolfe on z = c e_0 + (1 - c) w until the FW gap drops to
// `tol` or `budget` iterations are spent. Returns the last FW gap.
inline double PairwiseFrankWolfe(const TimeshareLattice& lat, LeakageMetric metric,
                                 double tau, double c, std::vector<double>& z,
                                 std::vector<double>& w, double tol,
                                 std::int64_t budget, std::int64_t* iterations) {
  const double span_w = 1.0 - c;
  double gap = kInfinity;
  for (std::int64_t it = 0; it < budget; ++it) {
    const auto g = metric == LeakageMetric::kMi ? MiGradient(lat, z)
                                                : SoftMaxlGradient(lat, z, tau);
    std::size_t j = 0;
    std::size_t a = 0;
    double dot = 0.0;
    double worst = -kInfinity;
    for (std::size_t s = 0; s < g.size(); ++s) {
      if (g[s] < g[j]) j = s;
      if (w[s] > 0.0) {
        dot += w[s] * g[s];
        if (g[s] > worst) {
          worst = g[s];
          a = s;
        }
      }
    }
    gap = std::max(span_w * (dot - g[j]), 0.0);
    if (gap <= tol || a == j) break;
    ++*iterations;

    // Directional derivative after moving delta of z-mass from a to j.
    auto slope = [&](double delta) {
      auto at = [&](std::uint64_t s) {
        if (s == a) return z[a] - delta;
        if (s == j) return z[j] + delta;
        return z[s];
      };
      return CoordinateGradient(lat, metric, tau, at, j) -
             CoordinateGradient(lat, metric, tau, at, a);
    };
    const double delta_max = span_w * w[a];
    double delta = delta_max;
    if (slope(delta_max) > 0.0) {
      double lo = 0.0;
      double hi = delta_max;
      for (int k = 0; k < 200 && hi - lo > 1e-17; ++k) {
        const double mid = 0.5 * (lo + hi);
        if (slope(mid) > 0.0) {
          hi = mid;
        } else {
          lo = mid;
        }
      }
      delta = 0.5 * (lo + hi);
    }
    if (delta <= 0.0) break;
    if (delta >= delta_max) {
      w[j] += w[a];
      w[a] = 0.0;
    } else {
      w[a] -= delta / span_w;
      w[j] += delta / span_w;
    }
    for (std::size_t s : {a, j}) z[s] = (s == 0 ? c : 0.0) + span_w * w[s];
  }
  return gap;
}

}  // namespace detail

// Minimizes the leakage of time-shared Scheme A subject to the download
// budget. Throws InfeasibleError when D < n - 1.
inline OptResult MinimizeLeakage(const OptProblem& p, const OptOptions& opt = {}) {
  Require(p.files >= 1 && p.servers >= 2, "MinimizeLeakage: bad (M, n)");
  const double n = p.servers;
  if (!(p.download_budget >= n - 1.0 - 1e-12)) {
    throw InfeasibleError("download budget " + std::to_string(p.download_budget) +
                          " is below n - 1 = " + std::to_string(n - 1.0));
  }
  const TimeshareLattice lat(p.files, p.servers);
  const std::size_t K = lat.strategies();
  const double c = std::clamp(n - p.download_budget, 0.0, 1.0);

  // Interior start: w uniform.
  std::vector<double> w(K, 1.0 / K);
  std::vector<double> z(K);
  for (std::size_t s = 0; s < K; ++s) z[s] = (s == 0 ? c : 0.0) + (1.0 - c) * w[s];

  OptResult r;
  if (p.metric == LeakageMetric::kMi) {
    if (c < 1.0) {
      r.fw_gap = detail::PairwiseFrankWolfe(lat, p.metric, 0.0, c, z, w,
                                            opt.tolerance, opt.max_iterations,
                                            &r.iterations);
    }
    r.objective = std::max(MiObjective(lat, z), 0.0);
  } else {
    double best_bound = 0.0;
    double tau = opt.first_temperature;
    while (c < 1.0 && r.iterations < opt.max_iterations) {
      // Each level only needs a smooth gap well below its own smoothing bias.
      const std::int64_t level_budget =
          std::min(opt.level_iterations, opt.max_iterations - r.iterations);
      detail::PairwiseFrankWolfe(lat, p.metric, tau, c, z, w, tau * 1e-2,
                                 level_budget, &r.iterations);
      if (tau <= opt.last_temperature * (1 + 1e-9)) {
        const double value = MaxlObjective(lat, z);
        for (double t = tau; t >= 1e-13; t /= 10.0) {
          best_bound = std::max(best_bound, detail::MaxlDualBound(lat, z, c, t));
        }
        best_bound = std::max(best_bound, detail::MaxlDualBound(lat, z, c, 0.0));
        const double gap = std::log2(value) - std::log2(best_bound);
        if (gap <= opt.tolerance || tau <= opt.min_temperature) break;
      }
      tau /= 10.0;
    }
    const double value = MaxlObjective(lat, z);
    r.objective = std::max(std::log2(value), 0.0);
    if (c >= 1.0) {
      r.fw_gap = 0.0;
    } else {
      best_bound = std::max(best_bound, detail::MaxlDualBound(lat, z, c, 0.0));
      r.fw_gap = std::max(std::log2(value) - std::log2(best_bound), 0.0);
    }
  }
  r.z_star = Pmf(z);
  r.rate = (n - 1.0) / (n - z[0]);
  r.converged = r.fw_gap <= opt.tolerance;
  return r;
}

struct CurvePoint {
  double budget = 0.0;
  double rate = 0.0;
  double leakage = 0.0;
  double fw_gap = 0.0;
};

inline std::vector<CurvePoint> RateLeakageCurve(int files, int n,
                                                LeakageMetric metric,
                                                std::span<const double> budgets,
                                                const OptOptions& opt = {}) {
  std::vector<CurvePoint> out;
  out.reserve(budgets.size());
  for (double d : budgets) {
    const auto r = MinimizeLeakage({files, n, metric, d}, opt);
    out.push_back({d, r.rate, r.objective, r.fw_gap});
  }
  return out;
}

}  // namespace wpir

#endif  // WPIR_OPTIMIZER_HPP_
