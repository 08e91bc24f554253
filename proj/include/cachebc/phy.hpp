// SPDX-License-Identifier: Apache-2.0
//
// cachebc: delivery-time and GDoF analysis for the symmetric cache-aided
// MISO broadcast channel with partial CSIT.

#ifndef CACHEBC_PHY_HPP
#define CACHEBC_PHY_HPP

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "cachebc/errors.hpp"
#include "cachebc/rng.hpp"

namespace cachebc {

// Monte Carlo verification of the rate-splitting physical layer: a common
// codeword on a generic beam superposed over zero-forced private streams
// with power split P^(beta-alpha), decoded common-first by treating the
// private layer as noise. Regressing the SINR rates against log2 P must
// recover the GDoF pair (alpha-beta, 1-(alpha-beta)).

using Complex = std::complex<double>;

struct CMatrix {
  int n = 0;
  std::vector<Complex> a;  // row-major n x n
  explicit CMatrix(int size = 0) : n(size), a(size * size) {}
  Complex& at(int i, int j) { return a[i * n + j]; }
  const Complex& at(int i, int j) const { return a[i * n + j]; }
};

struct PhyConfig {
  int K = 2;
  double alpha = 1.0;
  double beta = 0.0;
  std::vector<double> snr_grid;  // ascending, spanning >= 3 decades
  int trials = 500;              // >= 100
  std::uint64_t seed = kDefaultSeed;
  double g_min = 0.5;  // channel magnitude support (bounded-density model)
  double g_max = 2.0;
  double zf_residual_tol = 1e-10;
  double singular_threshold = 1e-8;
  double fit_residual_threshold = 0.15;  // bits, RMS around the linear fit
};

/// P = 1e6 .. 1e11, one point per decade.
std::vector<double> default_snr_grid();

/// Throws RangeError when the configuration violates its invariants.
void check_config(const PhyConfig& config);

/// One channel draw: estimates G^, error terms G~ (both with magnitudes
/// uniform in [g_min, g_max] and uniform phase) and the composed true
/// channel G = G^ + P^{-beta/2} G~ entrywise.
struct ChannelRealization {
  int K = 0;
  CMatrix estimates;
  CMatrix errors;
  CMatrix true_channel;
};

ChannelRealization sample_channel(const PhyConfig& config, double P,
                                  std::uint64_t trial_seed);

/// Zero-forcing precoders from the channel estimates: precoder k is the
/// unit vector annihilating the K-1 estimated effective rows i != k, where
/// the effective row i carries P^{(1-alpha)/2} on its diagonal entry (the
/// direct link is stronger than the cross links by that factor). Throws
/// SingularError when the estimate rows are numerically rank-deficient;
/// the caller redraws the trial.
std::vector<std::vector<Complex>> zf_vectors(const CMatrix& estimates,
                                             double alpha, double P,
                                             double singular_threshold = 1e-8);

struct RateSample {
  double P = 0.0;
  double common_rate = 0.0;  // min over users, bits per channel use
  std::vector<double> private_rates;
  double interference_power = 0.0;        // mean over users, common decoding
  double cross_interference_power = 0.0;  // mean over users, after removal
  double zf_residual = 0.0;               // max |r^_i . v_k| over i != k
  double max_entry_power = 0.0;           // after normalization, must be <= 1
};

/// Builds the superposition (common power fraction 1 - P^{beta-alpha} on a
/// fixed generic unit beam, private fraction P^{beta-alpha} across the ZF
/// precoders, worst-entry power normalization), then evaluates SINR rates
/// against the true channel: common first treating private as noise, then
/// private after ideal common removal.
RateSample rate_sample(const ChannelRealization& realization,
                       const PhyConfig& config, double P);

struct SlopePoint {
  double P = 0.0;
  double mean_common_rate = 0.0;
  double mean_private_rate = 0.0;  // averaged over users and trials
  double mean_interference = 0.0;
  double mean_cross_interference = 0.0;
  double max_zf_residual = 0.0;
};

struct SlopeReport {
  int K = 0;
  double alpha = 0.0;
  double beta = 0.0;
  int trials = 0;
  std::uint64_t seed = 0;
  std::vector<SlopePoint> points;  // full grid, ascending P
  int discarded_points = 0;        // lowest-P points excluded from the fits
  double common_slope = 0.0;
  double private_slope = 0.0;
  double common_half_width = 0.0;  // 1.96 x slope standard error
  double private_half_width = 0.0;
  double common_residual_rms = 0.0;
  double private_residual_rms = 0.0;
  // measured exponents of the interference powers in P; the first must not
  // exceed 1 + beta - alpha (+ slack), the second must stay near 0
  double interference_exponent = 0.0;
  double cross_interference_exponent = 0.0;
};

/// Runs trials x grid rate samples (redrawing singular trials), averages
/// per P in fixed trial order, and fits mean rate against log2 P. When the
/// fit residual RMS exceeds the configured threshold, the lowest-P point
/// is discarded and the fit repeated while more than 3 points remain;
/// a FitError is thrown if the residual still exceeds the threshold.
SlopeReport estimate_slopes(const PhyConfig& config, int threads = 1);

nlohmann::ordered_json slope_report_to_json(const SlopeReport& report);
std::string slope_report_to_csv(const SlopeReport& report);

}  // namespace cachebc

#endif  // CACHEBC_PHY_HPP
