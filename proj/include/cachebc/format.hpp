// SPDX-License-Identifier: Apache-2.0
//
// cachebc: delivery-time and GDoF analysis for the symmetric cache-aided
// MISO broadcast channel with partial CSIT.

#ifndef CACHEBC_FORMAT_HPP
#define CACHEBC_FORMAT_HPP

#include <cstdio>
#include <string>

namespace cachebc {

/// Fixed-format double for CSV output: printf %.12g. Used everywhere so
/// that reruns with identical inputs produce byte-identical text.
inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

}  // namespace cachebc

#endif  // CACHEBC_FORMAT_HPP
