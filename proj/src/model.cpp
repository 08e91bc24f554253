// SPDX-License-Identifier: Apache-2.0
//
// cachebc: delivery-time and GDoF analysis for the symmetric cache-aided
// MISO broadcast channel with partial CSIT.

#include "cachebc/model.hpp"

#include <cmath>
#include <string>

namespace cachebc {

SystemParams validate(int K, int N, double M, double alpha, double beta) {
  if (K < 1) throw RangeError("K below 1 (got " + std::to_string(K) + ")");
  if (N < K) {
    throw RangeError("N below K (N=" + std::to_string(N) +
                     ", K=" + std::to_string(K) + ")");
  }
  if (!(M >= 0.0)) throw RangeError("M negative or NaN");
  if (!(M <= static_cast<double>(N))) throw RangeError("M exceeds N");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw RangeError("alpha outside [0,1]");
  if (!(beta >= 0.0)) throw RangeError("beta negative or NaN");
  if (!(beta <= alpha)) throw RangeError("beta exceeds alpha");

  SystemParams p;
  p.K = K;
  p.N = N;
  p.M = M;
  p.alpha = alpha;
  p.beta = beta;
  p.mu = M / static_cast<double>(N);
  p.delta = alpha - beta;
  return p;
}

SystemParams validate_delta(int K, int N, double M, double delta) {
  if (!(delta >= 0.0 && delta <= 1.0)) throw RangeError("delta outside [0,1]");
  return validate(K, N, M, delta, 0.0);
}

GndtPoint make_gndt_point(const SystemParams& params, GndtKind kind,
                          double value) {
  if (!(value >= 0.0)) throw RangeError("delivery time negative or NaN");
  GndtPoint pt;
  pt.params = params;
  pt.kind = kind;
  pt.value = value;
  if (value > 0.0) pt.gdof = static_cast<double>(params.K) / value;
  return pt;
}

const char* to_string(GndtKind kind) {
  switch (kind) {
    case GndtKind::CentralizedAchievable: return "centralized";
    case GndtKind::DecentralizedAchievable: return "decentralized";
    case GndtKind::DecentralizedUpper: return "decentralized_upper";
    case GndtKind::LowerBound: return "lower_bound";
  }
  return "unknown";
}

}  // namespace cachebc
