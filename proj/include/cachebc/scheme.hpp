// SPDX-License-Identifier: Apache-2.0
//
// cachebc: delivery-time and GDoF analysis for the symmetric cache-aided
// MISO broadcast channel with partial CSIT.

#ifndef CACHEBC_SCHEME_HPP
#define CACHEBC_SCHEME_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <vector>

#include <json.hpp>

#include "cachebc/errors.hpp"

namespace cachebc {

// Bit-exact simulation of the placement and delivery phases: centralized
// subfile splitting with XOR multicasting, and decentralized random
// placement with K sequential delivery sub-phases. User indices are
// 1-based; user subsets are bitmasks with bit (u-1) set for user u, and
// every subset enumeration is in lexicographic order of the ascending
// index list (deterministic batch ordering).

/// One bit per element, values 0 or 1.
using BitBuffer = std::vector<std::uint8_t>;

// Substream tags run_centralized / run_decentralized use to derive the
// library and placement seeds from the run seed (mix_seed(seed, tag));
// callers that rebuild a run's artifacts must use the same tags.
inline constexpr std::uint64_t kLibrarySeedStream = 1;
inline constexpr std::uint64_t kPlacementSeedStream = 2;

/// All size-c subsets of {1..K} as bitmasks, in lexicographic order of the
/// ascending member list: {1,2} < {1,3} < ... < {2,3} < ...
std::vector<std::uint32_t> subsets_of_size(int K, int c);

struct Library {
  int N = 0;
  std::int64_t F = 0;
  std::vector<BitBuffer> files;  // N buffers of exactly F bits
};

/// Deterministic pseudorandom library content for the given seed.
Library make_library(int N, std::int64_t F, std::uint64_t seed);

/// Centralized cache of one user: subfile (file, subset) -> bits, holding
/// exactly the subfiles whose subset contains the user, for every file.
struct CentralizedCache {
  int user = 0;
  int t = 0;  // replication degree K*mu used at placement
  std::map<std::pair<int, std::uint32_t>, BitBuffer> entries;
  std::int64_t cached_bits() const;
};

/// Splits every file into C(K,t) equal subfiles indexed by the t-subsets
/// and fills each user's cache; per-user cached bits equal M*F exactly.
/// Throws DivisibilityError when F is not a multiple of C(K,t).
std::vector<CentralizedCache> place_centralized(int K, int t,
                                                const Library& lib);

/// Decentralized cache of one user: per file, the sorted cached bit
/// positions and their values.
struct DecentralizedCache {
  int user = 0;
  std::vector<std::vector<std::int64_t>> positions;  // per file, ascending
  std::vector<BitBuffer> values;                     // parallel to positions
  std::int64_t cached_bits() const;
};

/// Each user independently caches a uniform random floor(mu*F)-subset of
/// every file's bit positions; deterministic given the seed.
std::vector<DecentralizedCache> place_decentralized(int K, double mu,
                                                    const Library& lib,
                                                    std::uint64_t seed);

/// File splitting ratio between the common (multicast) and private
/// (zero-forced) layers for multicast order 1+m:
///
///   q = (1+m) delta / (K(1-delta) + (1+m) delta)
///
/// q = 0 at delta = 0 and q = 1 at delta = 1.
double split_ratio_q(int K, int m, double delta);

struct MulticastBatch {
  std::uint32_t subset = 0;  // target users, |subset| = 1+m
  BitBuffer payload;         // XOR of constituent common mini-subfiles
};

/// One delivery sub-phase: multicast order parameter m, the XOR batches in
/// lexicographic subset order, and the per-user private payloads. The
/// centralized scheme is a single sub-phase with m = t; the decentralized
/// scheme has sub-phases m = 0..K-1 run sequentially.
struct SubPhase {
  int m = 0;
  std::vector<MulticastBatch> batches;
  std::vector<BitBuffer> private_payloads;  // index user-1
  std::int64_t common_bits() const;
  std::int64_t max_private_bits() const;
};

enum class DeliveryMode { Centralized, Decentralized };

struct TransmissionLog {
  DeliveryMode mode = DeliveryMode::Centralized;
  int K = 0;
  int N = 0;
  std::int64_t F = 0;
  double delta = 0.0;
  double mu = 0.0;  // t/K for centralized runs
  int t = 0;        // meaningful for centralized runs only
  std::vector<int> demands;
  std::vector<SubPhase> phases;
  // Decentralized side information (metadata, not counted as transmitted
  // bits): per demanded file, the caching-user mask of every bit position.
  std::map<int, std::vector<std::uint32_t>> position_owners;
};

/// Centralized delivery: splits every needed subfile by the ratio q,
/// combines common parts into C(K, t+1) XOR batches and logs private
/// remainders per user. Demands must be K distinct files (worst case).
TransmissionLog deliver_centralized(const std::vector<CentralizedCache>& caches,
                                    const Library& lib,
                                    const std::vector<int>& demands,
                                    double delta);

/// Decentralized delivery over K sub-phases; within a batch, constituent
/// common parts are zero-padded to the longest one in that batch.
TransmissionLog deliver_decentralized(
    const std::vector<DecentralizedCache>& caches, const Library& lib,
    const std::vector<int>& demands, double delta);

/// Reconstructs user's requested file from its cache and the log alone.
/// Throws ReconstructionError when a needed cached constituent, batch or
/// private bit is absent (a placement/delivery bug, not a user error).
BitBuffer decode(int user, const CentralizedCache& cache,
                 const TransmissionLog& log, const std::vector<int>& demands);
BitBuffer decode(int user, const DecentralizedCache& cache,
                 const TransmissionLog& log, const std::vector<int>& demands);

struct PhaseTiming {
  int m = 0;
  std::int64_t common_bits = 0;
  std::int64_t max_private_bits = 0;
  double common_time = 0.0;
  double private_time = 0.0;
  double time = 0.0;  // max of the two layers
};

struct DeliveryReport {
  DeliveryMode mode = DeliveryMode::Centralized;
  int K = 0;
  int N = 0;
  std::int64_t F = 0;
  double delta = 0.0;
  double mu = 0.0;
  int t = 0;
  std::vector<int> demands;
  std::uint64_t seed = 0;
  double measured_gndt = 0.0;
  double analytic_gndt = 0.0;
  double common_time = 0.0;   // summed over sub-phases
  double private_time = 0.0;  // summed over sub-phases
  bool recovery_ok = false;
  std::vector<PhaseTiming> phases;
};

/// Delivery-time accounting. The common layer carries delta files per
/// time-slot and each private stream 1 - delta; a sub-phase takes the max
/// of its two layer times and sub-phases add up. Throws DegenerateError
/// when a layer holds bits but has zero rate (a splitting bug).
DeliveryReport measured_gndt(const TransmissionLog& log, std::int64_t F,
                             double delta);

/// Placement + delivery + decode-verify + timing in one call. An empty
/// demand vector defaults to (1, 2, ..., K).
DeliveryReport run_centralized(int K, int t, int N, std::int64_t F,
                               double delta, std::vector<int> demands,
                               std::uint64_t seed);
DeliveryReport run_decentralized(int K, double mu, int N, std::int64_t F,
                                 double delta, std::vector<int> demands,
                                 std::uint64_t seed);

nlohmann::ordered_json report_to_json(const DeliveryReport& report);

/// Binary debug dump. Little-endian throughout:
///   "CBL1", u8 mode, u32 K, u32 N, u64 F, f64 delta, f64 mu, i32 t,
///   u32 n_demands, u32 demand...,
///   u32 n_phases, then per phase:
///     u32 m, u32 n_batches,
///     per batch: u8 subset size, u8 ascending 1-based user index...,
///                u64 payload bit count, payload packed MSB-first,
///     u32 K, per user: u64 private bit count, bits packed MSB-first.
void dump_log(const TransmissionLog& log, std::ostream& os);

}  // namespace cachebc

#endif  // CACHEBC_SCHEME_HPP
