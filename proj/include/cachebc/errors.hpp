// SPDX-License-Identifier: Apache-2.0
//
// cachebc: delivery-time and GDoF analysis for the symmetric cache-aided
// MISO broadcast channel with partial CSIT.

#ifndef CACHEBC_ERRORS_HPP
#define CACHEBC_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cachebc {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A parameter is outside its documented domain. The message names the
/// violated constraint.
class RangeError : public Error {
 public:
  explicit RangeError(const std::string& msg) : Error(msg) {}
};

/// A requested quantity is undefined at this point (e.g. GDoF when the
/// delivery time is zero, or a zero lower bound).
class DegenerateError : public Error {
 public:
  explicit DegenerateError(const std::string& msg) : Error(msg) {}
};

/// File size F is not divisible by the subpacketization count. Carries the
/// smallest admissible F at or above the requested one.
class DivisibilityError : public Error {
 public:
  DivisibilityError(const std::string& msg, std::int64_t suggested)
      : Error(msg), suggested_f(suggested) {}
  std::int64_t suggested_f;
};

/// Demand vector is malformed: wrong length, repeated file, or an index
/// outside the library.
class DemandError : public Error {
 public:
  explicit DemandError(const std::string& msg) : Error(msg) {}
};

/// A decoder could not reconstruct a file because a needed cached
/// constituent or multicast batch is missing; indicates a placement or
/// delivery bug, never a user error.
class ReconstructionError : public Error {
 public:
  explicit ReconstructionError(const std::string& msg) : Error(msg) {}
};

/// The sampled channel-estimate matrix is numerically rank-deficient; the
/// trial must be redrawn.
class SingularError : public Error {
 public:
  explicit SingularError(const std::string& msg) : Error(msg) {}
};

/// Rate-vs-SNR regression residuals exceed the configured threshold even
/// after the low-SNR discard policy; the sampled regime is not asymptotic.
class FitError : public Error {
 public:
  explicit FitError(const std::string& msg) : Error(msg) {}
};

}  // namespace cachebc

#endif  // CACHEBC_ERRORS_HPP
