// SPDX-License-Identifier: Apache-2.0
//
// cachebc: delivery-time and GDoF analysis for the symmetric cache-aided
// MISO broadcast channel with partial CSIT.

#ifndef CACHEBC_BOUNDS_HPP
#define CACHEBC_BOUNDS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cachebc/model.hpp"
#include "cachebc/rng.hpp"

namespace cachebc {

// Converse lower bound on the optimal delivery time, achievable-to-bound
// gap ratios, and the scans that reproduce the constants 12, 3.5 and 1.5.

/// Cut-set style lower bound for a fixed served-subset size s in [1, K]:
///
///   max(0, s / (1 + (s-1)(1-delta)) * (1 - M / floor(N/s))).
///
double gndt_lb_s(int K, int N, double M, double delta, int s);

struct LowerBound {
  double value = 0.0;
  int best_s = 1;  // argmax; smallest s on ties
};

/// Tightest lower bound: max of gndt_lb_s over s in [1, K].
LowerBound gndt_lb(int K, int N, double M, double delta);

/// GDoF upper bound K / gndt_lb. Throws DegenerateError when the lower
/// bound is 0 (no finite upper bound derivable).
double gdof_ub(int K, int N, double M, double delta);

enum class CacheScheme { Centralized, Decentralized };

const char* to_string(CacheScheme scheme);

/// One scanned grid point. When the lower bound is 0 while the achievable
/// time is positive, the record is flagged degenerate and its (infinite)
/// ratio is excluded from ratio statistics. When both sides are 0 (mu = 1)
/// the ratio is 1 by convention.
struct GapRecord {
  SystemParams params;
  CacheScheme scheme = CacheScheme::Centralized;
  double achievable = 0.0;
  double bound = 0.0;
  int best_s = 1;
  double ratio = 1.0;
  bool degenerate = false;
};

GapRecord gap_centralized(int K, int N, double M, double delta);
GapRecord gap_decentralized(int K, int N, double M, double delta);

/// gdof_centralized / gdof_decentralized = gndt_decentralized /
/// gndt_centralized; 1 by convention at mu = 1 where both times are 0.
double gap_cen_vs_decen(int K, double mu, double delta);

/// f(delta; K, mu, s) = (1 + (s-1)(1-delta)) / (K(1-delta) + (1+K mu) delta),
/// non-decreasing in delta whenever K >= s(1 + K mu).
double f_value(double delta, int K, double mu, int s);

/// Exhaustive scan specification: all K in [k_min, k_max], N in
/// [max(K, n_min), n_max], integer M in [0, N], delta over delta_grid.
struct ScanGrid {
  int k_min = 1;
  int k_max = 8;
  int n_min = 1;
  int n_max = 16;
  std::vector<double> delta_grid;  // must be non-empty
  bool centralized = true;
  bool decentralized = true;
};

/// Sampled scan specification, stratified over K: point i uses
/// K = 1 + (i mod k_max), then N ~ U{K..n_max}, M ~ U{0..N} and
/// delta ~ U[0,1), all drawn from a per-index substream of `seed` so the
/// result is independent of thread count.
struct ScanSample {
  int k_max = 100;
  int n_max = 500;
  std::size_t points = 100000;
  std::uint64_t seed = kDefaultSeed;
  bool centralized = true;
  bool decentralized = false;
};

struct ScanSummary {
  std::size_t n_records = 0;
  std::size_t n_degenerate = 0;
  double max_ratio = 0.0;               // over finite (non-degenerate) ratios
  std::optional<GapRecord> argmax;
  std::size_t violations_over_12 = 0;   // finite ratios above 12 + 1e-9
};

struct ScanResult {
  std::vector<GapRecord> records;
  ScanSummary summary;
};

ScanResult scan_exhaustive(const ScanGrid& grid, int threads = 1);
ScanResult scan_sampled(const ScanSample& sample, int threads = 1);

/// Centralized-vs-decentralized ratio scan (the 1.5 decentralization gap):
/// K in [1, k_max], mu and delta on inclusive uniform grids of the given
/// point counts over [0, 1].
struct CenDecenRecord {
  int K = 1;
  double mu = 0.0;
  double delta = 0.0;
  double ratio = 1.0;
};

struct CenDecenScanResult {
  std::vector<CenDecenRecord> records;
  double max_ratio = 0.0;
  CenDecenRecord argmax;
};

CenDecenScanResult scan_cen_vs_decen(int k_max, int mu_points,
                                     int delta_points, int threads = 1);

/// CSV with header K,N,M,alpha,beta,delta,scheme,achievable,bound,best_s,
/// ratio,flag; one GapRecord per row, flag is "ok" or "degenerate" and a
/// degenerate ratio prints as inf.
std::string scan_to_csv(const ScanResult& result);

/// JSON object {"records": [...], "summary": {...}}; degenerate ratios are
/// null.
nlohmann::ordered_json scan_to_json(const ScanResult& result);

std::string cen_decen_to_csv(const CenDecenScanResult& result);
nlohmann::ordered_json cen_decen_to_json(const CenDecenScanResult& result);

}  // namespace cachebc

#endif  // CACHEBC_BOUNDS_HPP
