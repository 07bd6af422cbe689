// Copyright 2026 The jackmoment Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef JACKMOMENT_MCMC_HPP
#define JACKMOMENT_MCMC_HPP

// Metropolis sampling of circular and Jacobi beta-ensembles from their
// explicit eigenvalue densities, with batch-means error bars.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <ostream>
#include <random>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "jackmoment/ensemble.hpp"
#include "jackmoment/errors.hpp"

namespace jackmoment {

struct ChainConfig {
  long long n_samples = 100'000;  ///< retained samples per chain
  int burn_in = 2'000;            ///< sweeps used for step adaptation, then discarded
  int thinning = 1;               ///< sweeps between retained samples
  std::uint64_t seed = 20260101;
  int chains = 1;                 ///< independent chains, pooled
  int threads = 1;
  int batches = 50;               ///< batches per chain for batch means
  double target_acceptance = 0.3;
};

struct ChainStats {
  long long n_samples = 0;  ///< total retained samples over all chains
  int burn_in = 0;
  int thinning = 0;
  std::uint64_t seed = 0;
  double acceptance_rate = 0.0;
  double estimate = 0.0;
  double std_error = 0.0;  ///< batch-means standard error
  bool flagged = false;
  std::vector<std::string> warnings;
};

/// Single-site Metropolis chain. A sweep proposes one move per eigenvalue.
/// Circular angles wrap modulo 2 pi; Jacobi coordinates reflect at 0 and 1.
class MetropolisSampler {
public:
  MetropolisSampler(const EnsembleSpec& ensemble, std::uint64_t seed) : rng_(seed) {
    validate(ensemble);
    if (const auto* c = std::get_if<CircularEnsemble>(&ensemble)) {
      circular_ = true;
      beta_ = c->beta;
      n_ = c->n;
      step_ = 0.5;
      for (int i = 0; i < n_; ++i) x_.push_back(2 * std::numbers::pi * (i + 0.5) / n_);
    } else if (const auto* j = std::get_if<JacobiEnsemble>(&ensemble)) {
      beta_ = j->beta;
      a_ = j->a;
      b_ = j->b;
      n_ = j->n;
      step_ = 0.1;
      for (int i = 0; i < n_; ++i) x_.push_back((i + 0.5) / n_);
    } else {
      throw InvalidArgument("Monte Carlo sampling supports circular and Jacobi ensembles only");
    }
  }

  /// Runs `sweeps` sweeps adapting the step toward `target` acceptance.
  void adapt(int sweeps, double target) {
    const int block = 50;
    for (int done = 0; done < sweeps; done += block) {
      const long long acc0 = accepted_, prop0 = proposed_;
      for (int s = 0; s < std::min(block, sweeps - done); ++s) sweep();
      const double rate = static_cast<double>(accepted_ - acc0) / static_cast<double>(proposed_ - prop0);
      step_ *= std::exp(rate - target);
      step_ = std::clamp(step_, 1e-6, circular_ ? std::numbers::pi : 0.5);
    }
    accepted_ = proposed_ = 0;
  }

  void sweep() {
    for (int i = 0; i < n_; ++i) {
      const double old = x_[static_cast<std::size_t>(i)];
      double cand = old + step_ * (2 * unit_(rng_) - 1);
      if (circular_) {
        cand = std::fmod(cand, 2 * std::numbers::pi);
        if (cand < 0) cand += 2 * std::numbers::pi;
      } else {
        if (cand < 0) cand = -cand;
        if (cand > 1) cand = 2 - cand;
        if (cand <= 0 || cand >= 1) {
          ++proposed_;
          continue;
        }
      }
      const double dlog = local_log_density(i, cand) - local_log_density(i, old);
      ++proposed_;
      if (dlog >= 0 || unit_(rng_) < std::exp(dlog)) {
        x_[static_cast<std::size_t>(i)] = cand;
        ++accepted_;
      }
    }
  }

  const std::vector<double>& state() const noexcept { return x_; }
  double acceptance_rate() const noexcept {
    return proposed_ ? static_cast<double>(accepted_) / static_cast<double>(proposed_) : 0.0;
  }
  double step() const noexcept { return step_; }
  bool circular() const noexcept { return circular_; }

private:
  double local_log_density(int i, double v) const {
    double s = 0.0;
    for (int k = 0; k < n_; ++k) {
      if (k == i) continue;
      const double w = x_[static_cast<std::size_t>(k)];
      const double d = circular_ ? 2 * std::fabs(std::sin(0.5 * (v - w))) : std::fabs(v - w);
      s += std::log(d);
    }
    s *= beta_;
    if (!circular_) s += a_ * std::log(v) + b_ * std::log1p(-v);
    return s;
  }

  std::mt19937_64 rng_;
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
  bool circular_ = false;
  double beta_ = 2.0, a_ = 0.0, b_ = 0.0, step_ = 0.1;
  int n_ = 1;
  std::vector<double> x_;
  long long accepted_ = 0, proposed_ = 0;
};

namespace detail {

inline void validate_chain(const ChainConfig& cfg) {
  if (cfg.n_samples < 2 || cfg.burn_in < 0 || cfg.thinning < 1 || cfg.chains < 1 || cfg.batches < 2 ||
      cfg.n_samples < cfg.batches)
    throw InvalidArgument("invalid chain configuration");
}

inline std::uint64_t chain_seed(std::uint64_t seed, int chain) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(chain)};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

} // namespace detail

/// Per-chain observable series: values[c][s] for chain c, retained sample s.
struct ChainRun {
  std::vector<std::vector<double>> values;
  std::vector<double> acceptance;
};

/// Runs cfg.chains independently seeded chains (in parallel when
/// cfg.threads > 1) and records obs(state) at each retained sample.
template <class Observable>
ChainRun run_chains(const EnsembleSpec& ensemble, const ChainConfig& cfg, Observable obs) {
  detail::validate_chain(cfg);
  ChainRun run;
  run.values.resize(static_cast<std::size_t>(cfg.chains));
  run.acceptance.resize(static_cast<std::size_t>(cfg.chains));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(cfg.chains));
  auto one = [&](int c) {
    try {
      MetropolisSampler s(ensemble, cfg.chains == 1 ? cfg.seed : detail::chain_seed(cfg.seed, c));
      s.adapt(cfg.burn_in, cfg.target_acceptance);
      auto& out = run.values[static_cast<std::size_t>(c)];
      out.reserve(static_cast<std::size_t>(cfg.n_samples));
      for (long long k = 0; k < cfg.n_samples; ++k) {
        for (int t = 0; t < cfg.thinning; ++t) s.sweep();
        out.push_back(obs(s.state()));
      }
      run.acceptance[static_cast<std::size_t>(c)] = s.acceptance_rate();
    } catch (...) {
      errors[static_cast<std::size_t>(c)] = std::current_exception();
    }
  };
  const int workers = std::max(1, std::min(cfg.threads, cfg.chains));
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (int c = w; c < cfg.chains; c += workers) one(c);
    });
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return run;
}

struct BatchMeans {
  double mean = 0.0;
  double std_error = 0.0;
  std::vector<double> batch_values;
};

/// Batch means of f over the pooled chains: each chain is cut into `batches`
/// contiguous batches; f maps a batch (span of samples) to a batch statistic.
template <class F>
BatchMeans batch_statistic(const ChainRun& run, int batches, F f) {
  BatchMeans bm;
  for (const auto& chain : run.values) {
    const std::size_t len = chain.size() / static_cast<std::size_t>(batches);
    for (int b = 0; b < batches; ++b)
      bm.batch_values.push_back(f(std::span<const double>(chain.data() + b * len, len)));
  }
  const double m = static_cast<double>(bm.batch_values.size());
  for (double v : bm.batch_values) bm.mean += v;
  bm.mean /= m;
  double ss = 0.0;
  for (double v : bm.batch_values) ss += (v - bm.mean) * (v - bm.mean);
  bm.std_error = std::sqrt(ss / (m - 1) / m);
  return bm;
}

inline double span_mean(std::span<const double> s) {
  double acc = 0.0;
  for (double v : s) acc += v;
  return acc / static_cast<double>(s.size());
}

inline double span_variance(std::span<const double> s) {
  const double m = span_mean(s);
  double acc = 0.0;
  for (double v : s) acc += (v - m) * (v - m);
  return acc / static_cast<double>(s.size() - 1);
}

namespace detail {

inline ChainStats summarize(const ChainRun& run, const ChainConfig& cfg, const BatchMeans& bm) {
  ChainStats st;
  st.n_samples = cfg.n_samples * cfg.chains;
  st.burn_in = cfg.burn_in;
  st.thinning = cfg.thinning;
  st.seed = cfg.seed;
  for (double a : run.acceptance) st.acceptance_rate += a / static_cast<double>(run.acceptance.size());
  st.estimate = bm.mean;
  st.std_error = bm.std_error;
  if (st.acceptance_rate < 0.1 || st.acceptance_rate > 0.7) {
    st.warnings.push_back("acceptance rate " + std::to_string(st.acceptance_rate) + " outside [0.1, 0.7]");
  }
  return st;
}

// Heavy-tail heuristic: a single sample carrying more than 1% of the total.
inline bool heavy_tailed(const ChainRun& run) {
  double total = 0.0, largest = 0.0;
  for (const auto& c : run.values)
    for (double v : c) {
      total += std::fabs(v);
      largest = std::max(largest, std::fabs(v));
    }
  return total > 0 && largest > 0.01 * total;
}

} // namespace detail

/// Monte Carlo estimate of <prod |point - lambda_l|^{2 mu}>. For circular
/// ensembles point is |z| (placed on the positive real axis by rotation
/// invariance); for Jacobi ensembles it is x.
inline ChainStats mc_moment(const EnsembleSpec& ensemble, double mu, double point, const ChainConfig& cfg) {
  validate(ensemble);
  detail::validate_chain(cfg);
  const bool circ = std::holds_alternative<CircularEnsemble>(ensemble);
  if (!circ && !std::holds_alternative<JacobiEnsemble>(ensemble))
    throw InvalidArgument("Monte Carlo sampling supports circular and Jacobi ensembles only");
  const double dist = circ ? std::fabs(std::fabs(point) - 1.0) : std::min(std::fabs(point), std::fabs(point - 1.0));
  if (!circ && point >= 0.0 && point <= 1.0) throw InvalidArgument("x must lie outside [0,1]");
  if (mu < 0 && dist < 0.05) throw InvalidArgument("point must be at distance >= 0.05 from the support for mu < 0");
  if (mu == 0.0) {
    ChainStats st;
    st.n_samples = cfg.n_samples * cfg.chains;
    st.burn_in = cfg.burn_in;
    st.thinning = cfg.thinning;
    st.seed = cfg.seed;
    st.estimate = 1.0;
    return st;
  }
  const double r = std::fabs(point);
  auto obs = [&](const std::vector<double>& x) {
    double log_sum = 0.0;
    for (double v : x) {
      const double d2 = circ ? 1.0 + r * r - 2.0 * r * std::cos(v) : (point - v) * (point - v);
      log_sum += std::log(d2);
    }
    return std::exp(mu * log_sum);
  };
  const auto run = run_chains(ensemble, cfg, obs);
  const auto bm = batch_statistic(run, cfg.batches, span_mean);
  auto st = detail::summarize(run, cfg, bm);
  if (detail::heavy_tailed(run)) {
    st.flagged = true;
    st.warnings.push_back("a single sample exceeds 1% of the total: variance may be infinite");
  }
  return st;
}

struct LinearStatistic {
  double mean = 0.0;
  double mean_std_error = 0.0;
  double variance = 0.0;
  double variance_std_error = 0.0;
  double predicted_variance = 0.0;  ///< -(4/beta) log(1 - |z|^2)
  ChainStats stats;
};

/// Samples A(z) = sum_j log |z - e^{i theta_j}|^2 over the circular ensemble
/// and compares its variance with -(4/beta) log(1 - |z|^2).
inline LinearStatistic linear_statistic_check(double beta, int n, double r, const ChainConfig& cfg) {
  if (!(std::fabs(r) <= 0.8)) throw InvalidArgument("linear statistic check needs |z| <= 0.8");
  if (n < 16) throw InvalidArgument("linear statistic check needs N >= 16");
  const EnsembleSpec ens = CircularEnsemble{beta, n};
  validate(ens);
  detail::validate_chain(cfg);
  r = std::fabs(r);
  auto obs = [r](const std::vector<double>& x) {
    double s = 0.0;
    for (double v : x) s += std::log(1.0 + r * r - 2.0 * r * std::cos(v));
    return s;
  };
  const auto run = run_chains(ens, cfg, obs);
  const auto bm = batch_statistic(run, cfg.batches, span_mean);
  const auto bv = batch_statistic(run, cfg.batches, span_variance);
  LinearStatistic out;
  out.stats = detail::summarize(run, cfg, bm);
  out.mean = bm.mean;
  out.mean_std_error = bm.std_error;
  // Pooled variance about the pooled mean; batch spread gives its error bar.
  double acc = 0.0;
  long long cnt = 0;
  for (const auto& c : run.values)
    for (double v : c) {
      acc += (v - bm.mean) * (v - bm.mean);
      ++cnt;
    }
  out.variance = acc / static_cast<double>(cnt - 1);
  out.variance_std_error = bv.std_error;
  out.predicted_variance = -(4.0 / beta) * std::log1p(-r * r);
  return out;
}

/// Kolmogorov-Smirnov statistic sup |F_n - F| of a sample against a CDF.
template <class Cdf>
double ks_statistic(std::vector<double> sample, Cdf cdf) {
  if (sample.empty()) throw InvalidArgument("ks_statistic needs a non-empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

/// Asymptotic 1% critical value of the one-sample KS statistic.
inline double ks_critical_1pct(std::size_t n) { return 1.628 / std::sqrt(static_cast<double>(n)); }

/// Writes `count` configurations, one CSV row each, `thinning` sweeps apart.
inline void write_samples_csv(std::ostream& os, MetropolisSampler& sampler, long long count, int thinning = 1) {
  const auto& x = sampler.state();
  for (std::size_t i = 0; i < x.size(); ++i) os << (i ? "," : "") << (sampler.circular() ? "theta" : "x") << i + 1;
  os << "\n";
  os.precision(17);
  for (long long k = 0; k < count; ++k) {
    for (int t = 0; t < thinning; ++t) sampler.sweep();
    for (std::size_t i = 0; i < x.size(); ++i) os << (i ? "," : "") << x[i];
    os << "\n";
  }
}

} // namespace jackmoment

#endif // JACKMOMENT_MCMC_HPP
