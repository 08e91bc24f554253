// SPDX-License-Identifier: Apache-2.0
//
// cachebc: delivery-time and GDoF analysis for the symmetric cache-aided
// MISO broadcast channel with partial CSIT.

#ifndef CACHEBC_ANALYTICS_HPP
#define CACHEBC_ANALYTICS_HPP

#include <vector>

#include "cachebc/errors.hpp"

namespace cachebc {

// Closed-form achievable delivery times (GNDT, in time-slots) and GDoF
// values. Everything here is a pure function of (K, mu, delta) with
// delta = alpha - beta; callers may parallelize sweeps freely.

/// Binomial coefficient C(n, k) as a double. Exact integer arithmetic up
/// to n = 50, log-gamma beyond that (relative error well under 1e-12);
/// the stated 1e-10 tolerance budgets account for this. Returns 0 for
/// k < 0 or k > n.
double binomial(int n, int k);

/// Centralized delivery time at the cache grid point mu = t/K:
///
///   K(1 - t/K) / (K(1 - delta) + (1 + t) delta)
///
/// t is the per-file replication degree K*mu (an integer in [0, K]).
/// Returns 0 at t = K. Throws RangeError for t or delta out of range.
double gndt_centralized_grid(int K, int t, double delta);

/// Centralized delivery time for arbitrary mu in [0, 1], obtained by
/// memory-sharing: the grid closed form is convex in mu, so its lower
/// convex envelope is the piecewise-linear interpolation between the two
/// adjacent grid points.
double gndt_centralized(int K, double mu, double delta);

/// K / gndt_centralized. Throws DegenerateError when the delivery time is
/// zero (mu = 1). At integer grid points this equals the weighted-sum form
/// (1-delta) K/(1-mu) + delta (1+K mu)/(1-mu).
double gdof_centralized(int K, double mu, double delta);

/// Per-order weights b_0..b_{K-1} of the decentralized delivery-time sum,
///
///   b_m = K C(K-1, m) mu^m (1-mu)^{K-m} / (K (1-mu)),
///
/// which sum to 1 by the binomial identity. Defined for mu in [0, 1).
struct DecentralizedWeights {
  int K = 0;
  double mu = 0.0;
  std::vector<double> weights;  // size K, index m
};

DecentralizedWeights decentralized_weights(int K, double mu);

/// Decentralized delivery time,
///
///   K * sum_{m=0}^{K-1} C(K-1,m) mu^m (1-mu)^{K-m}
///                        / (K(1-delta) + (1+m) delta),
///
/// for mu in [0, 1]; returns 0 at mu = 1.
double gndt_decentralized(int K, double mu, double delta);

/// K / gndt_decentralized. Throws DegenerateError at mu = 1.
double gdof_decentralized(int K, double mu, double delta);

/// The effective multicast-order parameter u with
///
///   1 + u = K mu / (1 - (1-mu)^K),
///
/// equivalently u = K(1-mu)/gndt_decentralized(mu, 1) - 1. Returns 0 at
/// mu = 0 (the limit). Defined for mu in [0, 1); RangeError at mu = 1.
double u_param(int K, double mu);

/// Upper bound on the decentralized delivery time in centralized form,
///
///   K(1-mu) / (K(1-delta) + (1+u) delta),
///
/// with u = u_param(K, mu). Defined for mu in [0, 1).
double gndt_decentralized_ub(int K, double mu, double delta);

/// The K+1 centralized grid delivery times at mu = 0, 1/K, ..., 1 for a
/// fixed delta. grid_values[0] = K/(K(1-delta)+delta), grid_values[K] = 0,
/// and the sequence is convex (second differences >= 0 up to rounding),
/// which is what justifies piecewise-linear envelope evaluation.
struct EnvelopeTable {
  int K = 0;
  double delta = 0.0;
  std::vector<double> grid_values;  // size K+1, index t
};

EnvelopeTable envelope_table(int K, double delta);

}  // namespace cachebc

#endif  // CACHEBC_ANALYTICS_HPP
