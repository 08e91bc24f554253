// SPDX-License-Identifier: Apache-2.0
//
// cachebc: delivery-time and GDoF analysis for the symmetric cache-aided
// MISO broadcast channel with partial CSIT.

#include "cachebc/analytics.hpp"

#include <cmath>
#include <cstdint>
#include <string>

namespace cachebc {

namespace {

void check_k(int K) {
  if (K < 1) throw RangeError("K below 1");
}

void check_delta(double delta) {
  if (!(delta >= 0.0 && delta <= 1.0)) throw RangeError("delta outside [0,1]");
}

void check_mu_closed(double mu) {
  if (!(mu >= 0.0 && mu <= 1.0)) throw RangeError("mu outside [0,1]");
}

void check_mu_half_open(double mu) {
  if (!(mu >= 0.0 && mu < 1.0)) throw RangeError("mu outside [0,1)");
}

}  // namespace

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  if (k == 0 || k == n) return 1.0;
  if (n <= 50) {
    // Exact: r stays integral after each division and C(50,25) < 2^53.
    std::uint64_t r = 1;
    int kk = (k < n - k) ? k : n - k;
    for (int i = 1; i <= kk; ++i) {
      r = r * static_cast<std::uint64_t>(n - kk + i) /
          static_cast<std::uint64_t>(i);
    }
    return static_cast<double>(r);
  }
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                  std::lgamma(n - k + 1.0));
}

double gndt_centralized_grid(int K, int t, double delta) {
  check_k(K);
  check_delta(delta);
  if (t < 0 || t > K) throw RangeError("t outside [0,K]");
  const double Kd = static_cast<double>(K);
  return (Kd - t) / (Kd * (1.0 - delta) + (1.0 + t) * delta);
}

double gndt_centralized(int K, double mu, double delta) {
  check_k(K);
  check_delta(delta);
  check_mu_closed(mu);
  const double x = K * mu;
  const int lo = static_cast<int>(std::floor(x));
  if (lo >= K) return 0.0;  // mu = 1
  const double frac = x - lo;
  if (frac == 0.0) return gndt_centralized_grid(K, lo, delta);
  return (1.0 - frac) * gndt_centralized_grid(K, lo, delta) +
         frac * gndt_centralized_grid(K, lo + 1, delta);
}

double gdof_centralized(int K, double mu, double delta) {
  const double t = gndt_centralized(K, mu, delta);
  if (t <= 0.0) {
    throw DegenerateError("delivery time is zero at mu = 1; GDoF unbounded");
  }
  return K / t;
}

DecentralizedWeights decentralized_weights(int K, double mu) {
  check_k(K);
  check_mu_half_open(mu);
  DecentralizedWeights w;
  w.K = K;
  w.mu = mu;
  w.weights.resize(K);
  const double Kd = static_cast<double>(K);
  for (int m = 0; m < K; ++m) {
    w.weights[m] = Kd * binomial(K - 1, m) * std::pow(mu, m) *
                   std::pow(1.0 - mu, K - m) / (Kd * (1.0 - mu));
  }
  return w;
}

double gndt_decentralized(int K, double mu, double delta) {
  check_k(K);
  check_delta(delta);
  check_mu_closed(mu);
  if (mu == 1.0) return 0.0;
  const double Kd = static_cast<double>(K);
  double total = 0.0;
  for (int m = 0; m < K; ++m) {
    total += binomial(K - 1, m) * std::pow(mu, m) * std::pow(1.0 - mu, K - m) /
             (Kd * (1.0 - delta) + (1.0 + m) * delta);
  }
  return Kd * total;
}

double gdof_decentralized(int K, double mu, double delta) {
  const double t = gndt_decentralized(K, mu, delta);
  if (t <= 0.0) {
    throw DegenerateError("delivery time is zero at mu = 1; GDoF unbounded");
  }
  return K / t;
}

double u_param(int K, double mu) {
  check_k(K);
  check_mu_half_open(mu);
  if (mu == 0.0) return 0.0;
  // 1 - (1-mu)^K via expm1/log1p, stable for small mu.
  const double one_minus = -std::expm1(K * std::log1p(-mu));
  return K * mu / one_minus - 1.0;
}

double gndt_decentralized_ub(int K, double mu, double delta) {
  check_delta(delta);
  const double u = u_param(K, mu);
  const double Kd = static_cast<double>(K);
  return Kd * (1.0 - mu) / (Kd * (1.0 - delta) + (1.0 + u) * delta);
}

EnvelopeTable envelope_table(int K, double delta) {
  check_k(K);
  check_delta(delta);
  EnvelopeTable table;
  table.K = K;
  table.delta = delta;
  table.grid_values.resize(K + 1);
  for (int t = 0; t <= K; ++t) {
    table.grid_values[t] = gndt_centralized_grid(K, t, delta);
  }
  return table;
}

}  // namespace cachebc
