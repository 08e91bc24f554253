// SPDX-License-Identifier: Apache-2.0
//
// cachebc: delivery-time and GDoF analysis for the symmetric cache-aided
// MISO broadcast channel with partial CSIT.

#ifndef CACHEBC_MODEL_HPP
#define CACHEBC_MODEL_HPP

#include <optional>

#include "cachebc/errors.hpp"

namespace cachebc {

/// The system parameter tuple shared by every other module.
///
/// K users are served by a K-antenna transmitter from a library of N >= K
/// files; each user caches M files' worth of bits (M may be fractional so
/// that normalized sweeps are smooth). alpha is the cross-link strength
/// level and beta the CSIT quality level, beta <= alpha <= 1.
///
/// mu = M/N and delta = alpha - beta are stored alongside the raw fields:
/// every delivery-time formula depends on (alpha, beta) only through the
/// difference, and keeping both avoids recomputation drift.
///
/// Immutable after construction; safe to share between threads.
struct SystemParams {
  int K = 0;
  int N = 0;
  double M = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double mu = 0.0;     // M / N
  double delta = 0.0;  // alpha - beta
};

/// Validates a raw parameter tuple and computes the derived fields.
/// Throws RangeError naming the violated constraint. Never aborts.
SystemParams validate(int K, int N, double M, double alpha, double beta);

/// Convenience for delta-parameterized call sites: realizes delta as
/// (alpha = delta, beta = 0), which is always an admissible pair.
SystemParams validate_delta(int K, int N, double M, double delta);

/// Provenance of an evaluated delivery-time value.
enum class GndtKind {
  CentralizedAchievable,
  DecentralizedAchievable,
  DecentralizedUpper,
  LowerBound,
};

/// One evaluated delivery-time point. `value` is in time-slots; `gdof`
/// is K/value and is absent when value == 0 (zero delivery time has no
/// finite files-per-slot rate).
struct GndtPoint {
  SystemParams params;
  GndtKind kind = GndtKind::CentralizedAchievable;
  double value = 0.0;
  std::optional<double> gdof;
};

/// Builds a GndtPoint, filling gdof = K/value when value > 0.
GndtPoint make_gndt_point(const SystemParams& params, GndtKind kind,
                          double value);

const char* to_string(GndtKind kind);

}  // namespace cachebc

#endif  // CACHEBC_MODEL_HPP
