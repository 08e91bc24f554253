// SPDX-License-Identifier: Apache-2.0
//
// cachebc: delivery-time and GDoF analysis for the symmetric cache-aided
// MISO broadcast channel with partial CSIT.

#include "cachebc/phy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cachebc/format.hpp"
#include "cachebc/parallel.hpp"

namespace cachebc {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

using CVector = std::vector<Complex>;

Complex hdot(const CVector& a, const CVector& b) {
  Complex acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

double norm2(const CVector& a) {
  double acc = 0.0;
  for (const Complex& x : a) acc += std::norm(x);
  return acc;
}

void scale(CVector& a, double s) {
  for (Complex& x : a) x *= s;
}

// Project b onto the orthogonal complement of the orthonormal basis; two
// passes of classical projection keep the residual at machine precision.
void project_out(const std::vector<CVector>& basis, CVector& b) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const CVector& q : basis) {
      const Complex c = hdot(q, b);
      for (std::size_t i = 0; i < b.size(); ++i) b[i] -= c * q[i];
    }
  }
}

// Estimated effective row i: diagonal entry scaled by P^{(1-alpha)/2},
// off-diagonal entries as-is (common factor P^{alpha/2} dropped).
CVector effective_row(const CMatrix& estimates, double alpha, double P,
                      int i) {
  const int K = estimates.n;
  CVector row(K);
  const double diag_scale = std::pow(P, (1.0 - alpha) / 2.0);
  for (int j = 0; j < K; ++j) {
    row[j] = estimates.at(i, j) * (i == j ? diag_scale : 1.0);
  }
  return row;
}

// Fixed generic unit beam for the common codeword (phases stepped by the
// golden-ratio conjugate, so it is never aligned with a sampled channel).
CVector generic_beam(int K) {
  constexpr double kGolden = 0.61803398874989484820;
  CVector v(K);
  const double inv_sqrt_k = 1.0 / std::sqrt(static_cast<double>(K));
  for (int j = 0; j < K; ++j) {
    const double frac = (j + 1) * kGolden - std::floor((j + 1) * kGolden);
    v[j] = std::polar(inv_sqrt_k, kTwoPi * frac);
  }
  return v;
}

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual_rms = 0.0;
  double slope_half_width = 0.0;  // 1.96 x standard error
};

LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys,
                 std::size_t begin) {
  const std::size_t n = xs.size() - begin;
  LineFit fit;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = begin; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = begin; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = begin; i < xs.size(); ++i) {
    const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ss += r * r;
  }
  fit.residual_rms = std::sqrt(ss / n);
  if (n > 2) {
    fit.slope_half_width = 1.96 * std::sqrt(ss / (n - 2) / sxx);
  }
  return fit;
}

}  // namespace

std::vector<double> default_snr_grid() {
  return {1e6, 1e7, 1e8, 1e9, 1e10, 1e11};
}

void check_config(const PhyConfig& config) {
  if (config.K < 1) throw RangeError("K below 1");
  if (!(config.alpha >= 0.0 && config.alpha <= 1.0)) {
    throw RangeError("alpha outside [0,1]");
  }
  if (!(config.beta >= 0.0 && config.beta <= config.alpha)) {
    throw RangeError("beta outside [0,alpha]");
  }
  if (config.snr_grid.size() < 3) throw RangeError("snr grid below 3 points");
  for (std::size_t i = 0; i < config.snr_grid.size(); ++i) {
    if (!(config.snr_grid[i] >= 1.0)) throw RangeError("P below 1");
    if (i > 0 && config.snr_grid[i] <= config.snr_grid[i - 1]) {
      throw RangeError("snr grid not ascending");
    }
  }
  if (std::log10(config.snr_grid.back() / config.snr_grid.front()) <
      3.0 - 1e-9) {
    throw RangeError("snr grid spans less than 3 decades");
  }
  if (config.trials < 100) throw RangeError("trials below 100");
  if (!(config.g_min > 0.0 && config.g_min < config.g_max)) {
    throw RangeError("need 0 < g_min < g_max");
  }
}

ChannelRealization sample_channel(const PhyConfig& config, double P,
                                  std::uint64_t trial_seed) {
  if (!(P >= 1.0)) throw RangeError("P below 1");
  const int K = config.K;
  Xoshiro256ss rng(trial_seed);
  ChannelRealization ch;
  ch.K = K;
  ch.estimates = CMatrix(K);
  ch.errors = CMatrix(K);
  ch.true_channel = CMatrix(K);
  const auto draw = [&] {
    const double mag =
        config.g_min + rng.next_double() * (config.g_max - config.g_min);
    return std::polar(mag, kTwoPi * rng.next_double());
  };
  for (int i = 0; i < K; ++i) {
    for (int j = 0; j < K; ++j) ch.estimates.at(i, j) = draw();
  }
  for (int i = 0; i < K; ++i) {
    for (int j = 0; j < K; ++j) ch.errors.at(i, j) = draw();
  }
  const double err_scale = std::pow(P, -config.beta / 2.0);
  for (int i = 0; i < K; ++i) {
    for (int j = 0; j < K; ++j) {
      ch.true_channel.at(i, j) =
          ch.estimates.at(i, j) + err_scale * ch.errors.at(i, j);
    }
  }
  return ch;
}

std::vector<std::vector<Complex>> zf_vectors(const CMatrix& estimates,
                                             double alpha, double P,
                                             double singular_threshold) {
  const int K = estimates.n;
  if (K < 1) throw RangeError("empty estimate matrix");
  std::vector<CVector> precoders(K);
  if (K == 1) {
    precoders[0] = {Complex(1.0, 0.0)};
    return precoders;
  }

  // The zero-forcing condition sum_j row_i[j] v[j] = 0 is bilinear; it is
  // the Hermitian orthogonality of v to conj(row_i).
  std::vector<CVector> conj_rows(K);
  for (int i = 0; i < K; ++i) {
    conj_rows[i] = effective_row(estimates, alpha, P, i);
    for (Complex& x : conj_rows[i]) x = std::conj(x);
    scale(conj_rows[i], 1.0 / std::sqrt(norm2(conj_rows[i])));
  }

  for (int k = 0; k < K; ++k) {
    std::vector<CVector> basis;
    for (int i = 0; i < K; ++i) {
      if (i == k) continue;
      CVector v = conj_rows[i];
      project_out(basis, v);
      const double n2 = norm2(v);
      if (n2 < singular_threshold * singular_threshold) {
        throw SingularError("estimate rows numerically rank-deficient");
      }
      scale(v, 1.0 / std::sqrt(n2));
      basis.push_back(std::move(v));
    }
    // Best canonical direction orthogonal to all K-1 rows.
    CVector best;
    double best_n2 = -1.0;
    for (int c = 0; c < K; ++c) {
      CVector cand(K, Complex(0.0, 0.0));
      cand[c] = 1.0;
      project_out(basis, cand);
      const double n2 = norm2(cand);
      if (n2 > best_n2) {
        best_n2 = n2;
        best = std::move(cand);
      }
    }
    if (best_n2 < singular_threshold * singular_threshold) {
      throw SingularError("nullspace extraction failed");
    }
    scale(best, 1.0 / std::sqrt(best_n2));
    precoders[k] = std::move(best);
  }
  return precoders;
}

RateSample rate_sample(const ChannelRealization& realization,
                       const PhyConfig& config, double P) {
  const int K = realization.K;
  const auto precoders =
      zf_vectors(realization.estimates, config.alpha, P,
                 config.singular_threshold);
  const CVector beam = generic_beam(K);

  const double private_fraction = std::pow(P, config.beta - config.alpha);
  const double common_fraction = 1.0 - private_fraction;

  // Worst transmit entry normalization (D = d * I keeps zero-forcing
  // orthogonality intact).
  double max_entry = 0.0;
  for (int j = 0; j < K; ++j) {
    double pw = common_fraction * std::norm(beam[j]);
    for (int k = 0; k < K; ++k) pw += private_fraction * std::norm(precoders[k][j]);
    max_entry = std::max(max_entry, pw);
  }
  const double d = 1.0 / std::sqrt(max_entry);

  // True effective rows carry the strength pattern: sqrt(P) on the direct
  // link, P^{alpha/2} on cross links.
  const double cross_amp = std::pow(P, config.alpha / 2.0);
  const double direct_amp = std::sqrt(P);
  std::vector<CVector> rows(K, CVector(K));
  for (int i = 0; i < K; ++i) {
    for (int j = 0; j < K; ++j) {
      rows[i][j] =
          realization.true_channel.at(i, j) * (i == j ? direct_amp : cross_amp);
    }
  }

  RateSample sample;
  sample.P = P;
  sample.private_rates.resize(K);
  sample.max_entry_power = max_entry * d * d;

  const double common_amp = d * std::sqrt(common_fraction);
  const double private_amp = d * std::sqrt(private_fraction);

  double min_common_rate = std::numeric_limits<double>::infinity();
  double mean_interf = 0.0;
  double mean_cross = 0.0;
  for (int i = 0; i < K; ++i) {
    Complex h = 0.0;
    for (int j = 0; j < K; ++j) h += rows[i][j] * beam[j];
    const double common_power = std::norm(h) * common_amp * common_amp;

    double own_power = 0.0;
    double cross_power = 0.0;
    for (int k = 0; k < K; ++k) {
      Complex g = 0.0;
      for (int j = 0; j < K; ++j) g += rows[i][j] * precoders[k][j];
      const double pw = std::norm(g) * private_amp * private_amp;
      if (k == i) {
        own_power = pw;
      } else {
        cross_power += pw;
      }
    }
    const double interference = own_power + cross_power;
    min_common_rate = std::min(
        min_common_rate, std::log2(1.0 + common_power / (interference + 1.0)));
    sample.private_rates[i] = std::log2(1.0 + own_power / (cross_power + 1.0));
    mean_interf += interference;
    mean_cross += cross_power;
  }
  sample.common_rate = min_common_rate;
  sample.interference_power = mean_interf / K;
  sample.cross_interference_power = mean_cross / K;

  // Residual of the zero-forcing condition on the (normalized) estimated
  // effective rows.
  double residual = 0.0;
  for (int i = 0; i < K; ++i) {
    CVector row = effective_row(realization.estimates, config.alpha, P, i);
    scale(row, 1.0 / std::sqrt(norm2(row)));
    for (int k = 0; k < K; ++k) {
      if (k == i) continue;
      Complex acc = 0.0;
      for (int j = 0; j < K; ++j) acc += row[j] * precoders[k][j];
      residual = std::max(residual, std::abs(acc));
    }
  }
  sample.zf_residual = residual;
  return sample;
}

SlopeReport estimate_slopes(const PhyConfig& config, int threads) {
  check_config(config);
  const std::size_t n_points = config.snr_grid.size();
  const std::size_t n_trials = static_cast<std::size_t>(config.trials);

  std::vector<RateSample> samples(n_points * n_trials);
  parallel_for(samples.size(), threads, [&](std::size_t idx) {
    const std::size_t pi = idx / n_trials;
    const std::size_t trial = idx % n_trials;
    const double P = config.snr_grid[pi];
    for (std::uint64_t attempt = 0;; ++attempt) {
      const std::uint64_t trial_seed =
          mix_seed(mix_seed(mix_seed(config.seed, pi), trial), attempt);
      try {
        samples[idx] =
            rate_sample(sample_channel(config, P, trial_seed), config, P);
        return;
      } catch (const SingularError&) {
        if (attempt >= 64) throw;
      }
    }
  });

  SlopeReport report;
  report.K = config.K;
  report.alpha = config.alpha;
  report.beta = config.beta;
  report.trials = config.trials;
  report.seed = config.seed;
  report.points.resize(n_points);

  for (std::size_t pi = 0; pi < n_points; ++pi) {
    SlopePoint& pt = report.points[pi];
    pt.P = config.snr_grid[pi];
    // fixed trial-order reduction keeps the result thread-count independent
    for (std::size_t trial = 0; trial < n_trials; ++trial) {
      const RateSample& s = samples[pi * n_trials + trial];
      pt.mean_common_rate += s.common_rate;
      double priv = 0.0;
      for (double r : s.private_rates) priv += r;
      pt.mean_private_rate += priv / config.K;
      pt.mean_interference += s.interference_power;
      pt.mean_cross_interference += s.cross_interference_power;
      pt.max_zf_residual = std::max(pt.max_zf_residual, s.zf_residual);
    }
    pt.mean_common_rate /= n_trials;
    pt.mean_private_rate /= n_trials;
    pt.mean_interference /= n_trials;
    pt.mean_cross_interference /= n_trials;
  }

  std::vector<double> xs(n_points), common(n_points), priv(n_points);
  for (std::size_t pi = 0; pi < n_points; ++pi) {
    xs[pi] = std::log2(config.snr_grid[pi]);
    common[pi] = report.points[pi].mean_common_rate;
    priv[pi] = report.points[pi].mean_private_rate;
  }

  std::size_t begin = 0;
  LineFit cfit = fit_line(xs, common, begin);
  LineFit pfit = fit_line(xs, priv, begin);
  while (std::max(cfit.residual_rms, pfit.residual_rms) >
             config.fit_residual_threshold &&
         n_points - begin > 3) {
    ++begin;  // GDoF is asymptotic: drop the lowest SNR point and refit
    cfit = fit_line(xs, common, begin);
    pfit = fit_line(xs, priv, begin);
  }
  if (std::max(cfit.residual_rms, pfit.residual_rms) >
      config.fit_residual_threshold) {
    throw FitError("rate-vs-log P fit residual RMS " +
                   format_double(std::max(cfit.residual_rms,
                                          pfit.residual_rms)) +
                   " exceeds threshold " +
                   format_double(config.fit_residual_threshold) +
                   " even after discarding low-SNR points");
  }
  report.discarded_points = static_cast<int>(begin);
  report.common_slope = cfit.slope;
  report.private_slope = pfit.slope;
  report.common_half_width = cfit.slope_half_width;
  report.private_half_width = pfit.slope_half_width;
  report.common_residual_rms = cfit.residual_rms;
  report.private_residual_rms = pfit.residual_rms;

  // Interference power exponents over the retained points.
  {
    std::vector<double> li, lc;
    bool all_positive = true;
    for (std::size_t pi = begin; pi < n_points; ++pi) {
      if (report.points[pi].mean_interference <= 0.0 ||
          report.points[pi].mean_cross_interference < 0.0) {
        all_positive = false;
      }
    }
    if (all_positive) {
      std::vector<double> x2(xs.begin() + begin, xs.end());
      std::vector<double> yi, yc;
      bool cross_positive = true;
      for (std::size_t pi = begin; pi < n_points; ++pi) {
        yi.push_back(std::log2(report.points[pi].mean_interference));
        if (report.points[pi].mean_cross_interference > 0.0) {
          yc.push_back(std::log2(report.points[pi].mean_cross_interference));
        } else {
          cross_positive = false;
        }
      }
      report.interference_exponent = fit_line(x2, yi, 0).slope;
      report.cross_interference_exponent =
          cross_positive ? fit_line(x2, yc, 0).slope : 0.0;
    }
  }
  return report;
}

nlohmann::ordered_json slope_report_to_json(const SlopeReport& report) {
  nlohmann::ordered_json j;
  j["K"] = report.K;
  j["alpha"] = report.alpha;
  j["beta"] = report.beta;
  j["delta"] = report.alpha - report.beta;
  j["trials"] = report.trials;
  j["seed"] = report.seed;
  j["rng"] = kRngVersion;
  j["points"] = nlohmann::ordered_json::array();
  for (const SlopePoint& p : report.points) {
    nlohmann::ordered_json pj;
    pj["P"] = p.P;
    pj["mean_common_rate"] = p.mean_common_rate;
    pj["mean_private_rate"] = p.mean_private_rate;
    pj["mean_interference"] = p.mean_interference;
    pj["mean_cross_interference"] = p.mean_cross_interference;
    pj["max_zf_residual"] = p.max_zf_residual;
    j["points"].push_back(pj);
  }
  j["discarded_points"] = report.discarded_points;
  j["common_slope"] = report.common_slope;
  j["private_slope"] = report.private_slope;
  j["common_half_width"] = report.common_half_width;
  j["private_half_width"] = report.private_half_width;
  j["common_residual_rms"] = report.common_residual_rms;
  j["private_residual_rms"] = report.private_residual_rms;
  j["interference_exponent"] = report.interference_exponent;
  j["cross_interference_exponent"] = report.cross_interference_exponent;
  return j;
}

std::string slope_report_to_csv(const SlopeReport& report) {
  std::string csv =
      "P,mean_common_rate,mean_private_rate,mean_interference,"
      "mean_cross_interference,max_zf_residual\n";
  for (const SlopePoint& p : report.points) {
    csv += format_double(p.P) + ',' + format_double(p.mean_common_rate) + ',' +
           format_double(p.mean_private_rate) + ',' +
           format_double(p.mean_interference) + ',' +
           format_double(p.mean_cross_interference) + ',' +
           format_double(p.max_zf_residual) + '\n';
  }
  csv += "# discarded_points=" + std::to_string(report.discarded_points) +
         " common_slope=" + format_double(report.common_slope) +
         " private_slope=" + format_double(report.private_slope) +
         " common_half_width=" + format_double(report.common_half_width) +
         " private_half_width=" + format_double(report.private_half_width) +
         " common_residual_rms=" + format_double(report.common_residual_rms) +
         " private_residual_rms=" +
         format_double(report.private_residual_rms) + '\n';
  return csv;
}

}  // namespace cachebc
