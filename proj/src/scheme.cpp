// SPDX-License-Identifier: Apache-2.0
//
// cachebc: delivery-time and GDoF analysis for the symmetric cache-aided
// MISO broadcast channel with partial CSIT.

#include "cachebc/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <ostream>
#include <string>
#include <unordered_map>

#include "cachebc/analytics.hpp"
#include "cachebc/rng.hpp"

namespace cachebc {

namespace {

// Subset masks are uint32; K is also capped well below that so that
// C(K, t) stays a small exact integer.
constexpr int kMaxSchemeUsers = 24;

std::int64_t int_binomial(int n, int k) {
  const double b = binomial(n, k);
  return static_cast<std::int64_t>(b + 0.5);
}

// floor with a tiny guard so that mathematically integral products of
// doubles (e.g. q = 1 exactly) never land one below.
std::int64_t floor_bits(double x) {
  return static_cast<std::int64_t>(std::floor(x + 1e-9));
}

void check_users(int K) {
  if (K < 1) throw RangeError("K below 1");
  if (K > kMaxSchemeUsers) throw RangeError("K above simulator limit 24");
}

void check_demands(int K, int N, const std::vector<int>& demands) {
  if (static_cast<int>(demands.size()) != K) {
    throw DemandError("demand vector must list exactly K files");
  }
  std::vector<int> sorted = demands;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] < 1 || sorted[i] > N) {
      throw DemandError("demand " + std::to_string(sorted[i]) +
                        " outside library [1," + std::to_string(N) + "]");
    }
    if (i > 0 && sorted[i] == sorted[i - 1]) {
      throw DemandError("repeated demand " + std::to_string(sorted[i]) +
                        " (worst-case distinct demands required)");
    }
  }
}

void xor_into(BitBuffer& dst, const std::uint8_t* src, std::int64_t n) {
  for (std::int64_t i = 0; i < n; ++i) dst[i] ^= src[i];
}

std::vector<int> mask_members(std::uint32_t mask) {
  std::vector<int> users;
  for (int u = 1; mask != 0; ++u, mask >>= 1) {
    if (mask & 1u) users.push_back(u);
  }
  return users;
}

// Little-endian primitive writers for the binary log dump.
void put_u8(std::ostream& os, std::uint8_t v) {
  os.put(static_cast<char>(v));
}
void put_u32(std::ostream& os, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) put_u8(os, (v >> (8 * i)) & 0xff);
}
void put_u64(std::ostream& os, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) put_u8(os, (v >> (8 * i)) & 0xff);
}
void put_f64(std::ostream& os, double v) {
  std::uint64_t bits;
  static_assert(sizeof(bits) == sizeof(v));
  std::memcpy(&bits, &v, sizeof(bits));
  put_u64(os, bits);
}
void put_bits_msb_first(std::ostream& os, const BitBuffer& bits) {
  std::uint8_t acc = 0;
  int fill = 0;
  for (std::uint8_t b : bits) {
    acc = static_cast<std::uint8_t>((acc << 1) | (b & 1));
    if (++fill == 8) {
      put_u8(os, acc);
      acc = 0;
      fill = 0;
    }
  }
  if (fill > 0) put_u8(os, static_cast<std::uint8_t>(acc << (8 - fill)));
}

}  // namespace

std::vector<std::uint32_t> subsets_of_size(int K, int c) {
  check_users(K);
  if (c < 0 || c > K) return {};
  if (c == 0) return {0u};
  std::vector<int> idx(c);
  for (int i = 0; i < c; ++i) idx[i] = i + 1;
  std::vector<std::uint32_t> out;
  for (;;) {
    std::uint32_t mask = 0;
    for (int u : idx) mask |= 1u << (u - 1);
    out.push_back(mask);
    // advance to the next combination in lexicographic order
    int i = c - 1;
    while (i >= 0 && idx[i] == K - (c - 1 - i)) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < c; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

Library make_library(int N, std::int64_t F, std::uint64_t seed) {
  if (N < 1) throw RangeError("N below 1");
  if (F < 1) throw RangeError("F below 1");
  Library lib;
  lib.N = N;
  lib.F = F;
  lib.files.resize(N);
  for (int l = 0; l < N; ++l) {
    Xoshiro256ss rng(mix_seed(seed, static_cast<std::uint64_t>(l)));
    BitBuffer& file = lib.files[l];
    file.resize(F);
    std::uint64_t word = 0;
    int left = 0;
    for (std::int64_t p = 0; p < F; ++p) {
      if (left == 0) {
        word = rng.next();
        left = 64;
      }
      file[p] = static_cast<std::uint8_t>(word & 1);
      word >>= 1;
      --left;
    }
  }
  return lib;
}

std::int64_t CentralizedCache::cached_bits() const {
  std::int64_t total = 0;
  for (const auto& [key, bits] : entries) total += bits.size();
  return total;
}

std::vector<CentralizedCache> place_centralized(int K, int t,
                                                const Library& lib) {
  check_users(K);
  if (t < 0 || t > K) throw RangeError("t outside [0,K]");
  if (lib.N < K) throw RangeError("N below K");
  const std::int64_t n_subfiles = int_binomial(K, t);
  if (lib.F % n_subfiles != 0) {
    const std::int64_t suggested =
        (lib.F + n_subfiles - 1) / n_subfiles * n_subfiles;
    throw DivisibilityError(
        "F=" + std::to_string(lib.F) + " not divisible by C(K,t)=" +
            std::to_string(n_subfiles) + "; smallest admissible F is " +
            std::to_string(suggested),
        suggested);
  }
  const std::int64_t chunk = lib.F / n_subfiles;
  const std::vector<std::uint32_t> subsets = subsets_of_size(K, t);

  std::vector<CentralizedCache> caches(K);
  for (int i = 1; i <= K; ++i) {
    CentralizedCache& cache = caches[i - 1];
    cache.user = i;
    cache.t = t;
    for (int l = 1; l <= lib.N; ++l) {
      const BitBuffer& file = lib.files[l - 1];
      for (std::size_t j = 0; j < subsets.size(); ++j) {
        if (!(subsets[j] & (1u << (i - 1)))) continue;
        const auto begin = file.begin() + j * chunk;
        cache.entries[{l, subsets[j]}] = BitBuffer(begin, begin + chunk);
      }
    }
  }
  return caches;
}

std::int64_t DecentralizedCache::cached_bits() const {
  std::int64_t total = 0;
  for (const auto& pos : positions) total += pos.size();
  return total;
}

std::vector<DecentralizedCache> place_decentralized(int K, double mu,
                                                    const Library& lib,
                                                    std::uint64_t seed) {
  check_users(K);
  if (!(mu >= 0.0 && mu <= 1.0)) throw RangeError("mu outside [0,1]");
  if (lib.N < K) throw RangeError("N below K");
  const std::int64_t per_file =
      std::min<std::int64_t>(lib.F, floor_bits(mu * lib.F));

  std::vector<DecentralizedCache> caches(K);
  std::vector<std::int64_t> idx(lib.F);
  for (int i = 1; i <= K; ++i) {
    DecentralizedCache& cache = caches[i - 1];
    cache.user = i;
    cache.positions.resize(lib.N);
    cache.values.resize(lib.N);
    Xoshiro256ss rng(mix_seed(seed, static_cast<std::uint64_t>(i)));
    for (int l = 0; l < lib.N; ++l) {
      for (std::int64_t p = 0; p < lib.F; ++p) idx[p] = p;
      // partial Fisher-Yates: the first per_file entries are a uniform
      // random subset of positions
      for (std::int64_t j = 0; j < per_file; ++j) {
        const std::int64_t swap_with =
            j + static_cast<std::int64_t>(rng.next_below(lib.F - j));
        std::swap(idx[j], idx[swap_with]);
      }
      auto& pos = cache.positions[l];
      pos.assign(idx.begin(), idx.begin() + per_file);
      std::sort(pos.begin(), pos.end());
      auto& val = cache.values[l];
      val.resize(per_file);
      for (std::int64_t j = 0; j < per_file; ++j) {
        val[j] = lib.files[l][pos[j]];
      }
    }
  }
  return caches;
}

double split_ratio_q(int K, int m, double delta) {
  check_users(K);
  if (m < 0 || m > K - 1) throw RangeError("m outside [0,K-1]");
  if (!(delta >= 0.0 && delta <= 1.0)) throw RangeError("delta outside [0,1]");
  if (delta == 0.0) return 0.0;
  return (1.0 + m) * delta / (K * (1.0 - delta) + (1.0 + m) * delta);
}

std::int64_t SubPhase::common_bits() const {
  std::int64_t total = 0;
  for (const auto& b : batches) total += b.payload.size();
  return total;
}

std::int64_t SubPhase::max_private_bits() const {
  std::int64_t mx = 0;
  for (const auto& p : private_payloads) {
    mx = std::max<std::int64_t>(mx, p.size());
  }
  return mx;
}

TransmissionLog deliver_centralized(const std::vector<CentralizedCache>& caches,
                                    const Library& lib,
                                    const std::vector<int>& demands,
                                    double delta) {
  const int K = static_cast<int>(caches.size());
  check_users(K);
  check_demands(K, lib.N, demands);
  const int t = caches.front().t;
  for (const auto& c : caches) {
    if (c.t != t) throw RangeError("inconsistent placement parameter t");
  }

  const std::int64_t n_subfiles = int_binomial(K, t);
  const std::int64_t chunk = lib.F / n_subfiles;
  const double q = t == K ? 0.0 : split_ratio_q(K, t, delta);
  const std::int64_t common_len = floor_bits(q * static_cast<double>(chunk));

  const std::vector<std::uint32_t> subsets = subsets_of_size(K, t);
  std::unordered_map<std::uint32_t, std::size_t> subset_index;
  for (std::size_t j = 0; j < subsets.size(); ++j) subset_index[subsets[j]] = j;

  TransmissionLog log;
  log.mode = DeliveryMode::Centralized;
  log.K = K;
  log.N = lib.N;
  log.F = lib.F;
  log.delta = delta;
  log.t = t;
  log.mu = static_cast<double>(t) / K;
  log.demands = demands;
  log.phases.resize(1);
  SubPhase& phase = log.phases.front();
  phase.m = t;
  phase.private_payloads.resize(K);

  if (t < K && common_len > 0) {
    for (std::uint32_t S : subsets_of_size(K, t + 1)) {
      MulticastBatch batch;
      batch.subset = S;
      batch.payload.assign(common_len, 0);
      for (int i : mask_members(S)) {
        const std::uint32_t T = S & ~(1u << (i - 1));
        const std::size_t j = subset_index.at(T);
        const BitBuffer& file = lib.files[demands[i - 1] - 1];
        xor_into(batch.payload, file.data() + j * chunk, common_len);
      }
      phase.batches.push_back(std::move(batch));
    }
  }

  for (int i = 1; i <= K; ++i) {
    BitBuffer& priv = phase.private_payloads[i - 1];
    const BitBuffer& file = lib.files[demands[i - 1] - 1];
    for (std::size_t j = 0; j < subsets.size(); ++j) {
      if (subsets[j] & (1u << (i - 1))) continue;
      const auto begin = file.begin() + j * chunk + common_len;
      priv.insert(priv.end(), begin, file.begin() + (j + 1) * chunk);
    }
  }
  return log;
}

BitBuffer decode(int user, const CentralizedCache& cache,
                 const TransmissionLog& log, const std::vector<int>& demands) {
  const int K = log.K;
  if (user < 1 || user > K) throw RangeError("user outside [1,K]");
  check_demands(K, log.N, demands);
  const int t = log.t;
  const std::int64_t chunk = log.F / int_binomial(K, t);
  const double q = t == K ? 0.0 : split_ratio_q(K, t, log.delta);
  const std::int64_t common_len = floor_bits(q * static_cast<double>(chunk));
  const std::vector<std::uint32_t> subsets = subsets_of_size(K, t);
  const int demand = demands[user - 1];

  std::unordered_map<std::uint32_t, const MulticastBatch*> batch_by_subset;
  for (const auto& b : log.phases.front().batches) {
    batch_by_subset[b.subset] = &b;
  }

  const BitBuffer& priv = log.phases.front().private_payloads[user - 1];
  std::size_t priv_cursor = 0;
  BitBuffer out(log.F, 0);

  for (std::size_t j = 0; j < subsets.size(); ++j) {
    const std::uint32_t T = subsets[j];
    std::uint8_t* slice = out.data() + j * chunk;
    if (T & (1u << (user - 1))) {
      const auto it = cache.entries.find({demand, T});
      if (it == cache.entries.end() ||
          static_cast<std::int64_t>(it->second.size()) != chunk) {
        throw ReconstructionError("cached subfile missing for own demand");
      }
      std::copy(it->second.begin(), it->second.end(), slice);
      continue;
    }
    if (common_len > 0) {
      const std::uint32_t S = T | (1u << (user - 1));
      const auto bit = batch_by_subset.find(S);
      if (bit == batch_by_subset.end() ||
          static_cast<std::int64_t>(bit->second->payload.size()) !=
              common_len) {
        throw ReconstructionError("multicast batch missing or short");
      }
      BitBuffer tmp = bit->second->payload;
      for (int k : mask_members(T)) {
        const std::uint32_t Tk = S & ~(1u << (k - 1));
        const auto it = cache.entries.find({demands[k - 1], Tk});
        if (it == cache.entries.end()) {
          throw ReconstructionError("cached constituent missing for XOR");
        }
        xor_into(tmp, it->second.data(), common_len);
      }
      std::copy(tmp.begin(), tmp.end(), slice);
    }
    const std::int64_t priv_len = chunk - common_len;
    if (priv_cursor + priv_len > priv.size()) {
      throw ReconstructionError("private payload exhausted");
    }
    std::copy(priv.begin() + priv_cursor, priv.begin() + priv_cursor + priv_len,
              slice + common_len);
    priv_cursor += priv_len;
  }
  return out;
}

namespace {

// Per-file map: caching-user mask -> ascending bit positions.
using BucketMap =
    std::unordered_map<std::uint32_t, std::vector<std::int64_t>>;

BucketMap bucket_positions(const std::vector<std::uint32_t>& owners) {
  BucketMap buckets;
  for (std::int64_t p = 0; p < static_cast<std::int64_t>(owners.size()); ++p) {
    buckets[owners[p]].push_back(p);
  }
  return buckets;
}

const std::vector<std::int64_t>* find_bucket(const BucketMap& buckets,
                                             std::uint32_t mask) {
  static const std::vector<std::int64_t> kEmpty;
  const auto it = buckets.find(mask);
  return it == buckets.end() ? &kEmpty : &it->second;
}

}  // namespace

TransmissionLog deliver_decentralized(
    const std::vector<DecentralizedCache>& caches, const Library& lib,
    const std::vector<int>& demands, double delta) {
  const int K = static_cast<int>(caches.size());
  check_users(K);
  check_demands(K, lib.N, demands);

  TransmissionLog log;
  log.mode = DeliveryMode::Decentralized;
  log.K = K;
  log.N = lib.N;
  log.F = lib.F;
  log.delta = delta;
  log.t = 0;
  {
    std::int64_t cached = lib.F > 0 ? caches.front().positions.front().size()
                                    : 0;
    log.mu = static_cast<double>(cached) / static_cast<double>(lib.F);
  }
  log.demands = demands;

  // Ownership map per demanded file: which users cached each bit position.
  for (int d : demands) {
    std::vector<std::uint32_t>& owners = log.position_owners[d];
    owners.assign(lib.F, 0);
    for (const auto& cache : caches) {
      for (std::int64_t p : cache.positions[d - 1]) {
        owners[p] |= 1u << (cache.user - 1);
      }
    }
  }

  // Per user: positions of its demanded file grouped by caching subset.
  std::vector<BucketMap> buckets(K);
  for (int i = 1; i <= K; ++i) {
    buckets[i - 1] = bucket_positions(log.position_owners.at(demands[i - 1]));
  }

  log.phases.resize(K);
  for (int m = 0; m < K; ++m) {
    SubPhase& phase = log.phases[m];
    phase.m = m;
    phase.private_payloads.resize(K);
    const double q = split_ratio_q(K, m, delta);

    for (std::uint32_t S : subsets_of_size(K, m + 1)) {
      std::int64_t payload_len = 0;
      for (int i : mask_members(S)) {
        const std::uint32_t T = S & ~(1u << (i - 1));
        const auto* bucket = find_bucket(buckets[i - 1], T);
        payload_len = std::max(
            payload_len,
            floor_bits(q * static_cast<double>(bucket->size())));
      }
      if (payload_len == 0) continue;
      MulticastBatch batch;
      batch.subset = S;
      batch.payload.assign(payload_len, 0);  // zero-padding baseline
      for (int i : mask_members(S)) {
        const std::uint32_t T = S & ~(1u << (i - 1));
        const auto* bucket = find_bucket(buckets[i - 1], T);
        const std::int64_t len =
            floor_bits(q * static_cast<double>(bucket->size()));
        const BitBuffer& file = lib.files[demands[i - 1] - 1];
        for (std::int64_t j = 0; j < len; ++j) {
          batch.payload[j] ^= file[(*bucket)[j]];
        }
      }
      phase.batches.push_back(std::move(batch));
    }

    for (int i = 1; i <= K; ++i) {
      BitBuffer& priv = phase.private_payloads[i - 1];
      const BitBuffer& file = lib.files[demands[i - 1] - 1];
      for (std::uint32_t T : subsets_of_size(K, m)) {
        if (T & (1u << (i - 1))) continue;
        const auto* bucket = find_bucket(buckets[i - 1], T);
        const std::int64_t len =
            floor_bits(q * static_cast<double>(bucket->size()));
        for (std::size_t j = len; j < bucket->size(); ++j) {
          priv.push_back(file[(*bucket)[j]]);
        }
      }
    }
  }
  return log;
}

namespace {

// Binary search a user's sorted cached positions for one bit value.
std::uint8_t cached_bit_at(const DecentralizedCache& cache, int file,
                           std::int64_t position) {
  const auto& pos = cache.positions[file - 1];
  const auto it = std::lower_bound(pos.begin(), pos.end(), position);
  if (it == pos.end() || *it != position) {
    throw ReconstructionError("needed cached bit absent from cache");
  }
  return cache.values[file - 1][it - pos.begin()];
}

}  // namespace

BitBuffer decode(int user, const DecentralizedCache& cache,
                 const TransmissionLog& log, const std::vector<int>& demands) {
  const int K = log.K;
  if (user < 1 || user > K) throw RangeError("user outside [1,K]");
  check_demands(K, log.N, demands);
  const int demand = demands[user - 1];
  const auto owners_it = log.position_owners.find(demand);
  if (owners_it == log.position_owners.end()) {
    throw ReconstructionError("position ownership map missing for demand");
  }
  const std::vector<std::uint32_t>& owners = owners_it->second;
  const std::uint32_t self = 1u << (user - 1);

  BitBuffer out(log.F, 0);

  // Own cached bits first.
  {
    const auto& pos = cache.positions[demand - 1];
    const auto& val = cache.values[demand - 1];
    for (std::size_t j = 0; j < pos.size(); ++j) {
      if (!(owners[pos[j]] & self)) {
        throw ReconstructionError("ownership map disagrees with own cache");
      }
      out[pos[j]] = val[j];
    }
  }

  // Buckets for every demanded file (needed to XOR out other users'
  // constituents from the multicast batches).
  std::map<int, BucketMap> buckets;
  for (const auto& [file, file_owners] : log.position_owners) {
    buckets[file] = bucket_positions(file_owners);
  }
  const BucketMap& own_buckets = buckets.at(demand);

  for (int m = 0; m < K; ++m) {
    const SubPhase& phase = log.phases[m];
    const double q = split_ratio_q(K, m, log.delta);
    std::unordered_map<std::uint32_t, const MulticastBatch*> batch_by_subset;
    for (const auto& b : phase.batches) batch_by_subset[b.subset] = &b;

    const BitBuffer& priv = phase.private_payloads[user - 1];
    std::size_t priv_cursor = 0;

    for (std::uint32_t T : subsets_of_size(K, m)) {
      if (T & self) continue;
      const auto* bucket = find_bucket(own_buckets, T);
      if (bucket->empty()) continue;
      const std::int64_t n = static_cast<std::int64_t>(bucket->size());
      const std::int64_t c = floor_bits(q * static_cast<double>(n));
      if (c > 0) {
        const std::uint32_t S = T | self;
        const auto bit = batch_by_subset.find(S);
        if (bit == batch_by_subset.end() ||
            static_cast<std::int64_t>(bit->second->payload.size()) < c) {
          throw ReconstructionError("multicast batch missing or short");
        }
        BitBuffer tmp(bit->second->payload.begin(),
                      bit->second->payload.begin() + c);
        for (int k : mask_members(T)) {
          const std::uint32_t Tk = (T & ~(1u << (k - 1))) | self;
          const auto* kbucket = find_bucket(buckets.at(demands[k - 1]), Tk);
          const std::int64_t klen =
              floor_bits(q * static_cast<double>(kbucket->size()));
          const std::int64_t overlap = std::min(klen, c);
          for (std::int64_t j = 0; j < overlap; ++j) {
            tmp[j] ^= cached_bit_at(cache, demands[k - 1], (*kbucket)[j]);
          }
        }
        for (std::int64_t j = 0; j < c; ++j) out[(*bucket)[j]] = tmp[j];
      }
      const std::int64_t priv_len = n - c;
      if (priv_cursor + priv_len > priv.size()) {
        throw ReconstructionError("private payload exhausted");
      }
      for (std::int64_t j = 0; j < priv_len; ++j) {
        out[(*bucket)[c + j]] = priv[priv_cursor + j];
      }
      priv_cursor += priv_len;
    }
  }
  return out;
}

DeliveryReport measured_gndt(const TransmissionLog& log, std::int64_t F,
                             double delta) {
  if (F < 1) throw RangeError("F below 1");
  DeliveryReport report;
  report.mode = log.mode;
  report.K = log.K;
  report.N = log.N;
  report.F = F;
  report.delta = delta;
  report.mu = log.mu;
  report.t = log.t;
  report.demands = log.demands;

  const double Fd = static_cast<double>(F);
  for (const SubPhase& phase : log.phases) {
    PhaseTiming timing;
    timing.m = phase.m;
    timing.common_bits = phase.common_bits();
    timing.max_private_bits = phase.max_private_bits();
    if (timing.common_bits > 0) {
      if (delta == 0.0) {
        throw DegenerateError("common bits present with zero common rate");
      }
      timing.common_time = static_cast<double>(timing.common_bits) /
                           (Fd * delta);
    }
    if (timing.max_private_bits > 0) {
      if (delta == 1.0) {
        throw DegenerateError("private bits present with zero private rate");
      }
      timing.private_time = static_cast<double>(timing.max_private_bits) /
                            (Fd * (1.0 - delta));
    }
    timing.time = std::max(timing.common_time, timing.private_time);
    report.common_time += timing.common_time;
    report.private_time += timing.private_time;
    report.measured_gndt += timing.time;
    report.phases.push_back(timing);
  }
  report.analytic_gndt =
      log.mode == DeliveryMode::Centralized
          ? gndt_centralized(log.K, static_cast<double>(log.t) / log.K, delta)
          : gndt_decentralized(log.K, log.mu, delta);
  return report;
}

namespace {

std::vector<int> default_demands(int K, std::vector<int> demands) {
  if (demands.empty()) {
    demands.resize(K);
    for (int i = 0; i < K; ++i) demands[i] = i + 1;
  }
  return demands;
}

}  // namespace

DeliveryReport run_centralized(int K, int t, int N, std::int64_t F,
                               double delta, std::vector<int> demands,
                               std::uint64_t seed) {
  demands = default_demands(K, std::move(demands));
  const Library lib = make_library(N, F, mix_seed(seed, kLibrarySeedStream));
  const auto caches = place_centralized(K, t, lib);
  const TransmissionLog log = deliver_centralized(caches, lib, demands, delta);
  DeliveryReport report = measured_gndt(log, F, delta);
  report.seed = seed;
  report.recovery_ok = true;
  for (int i = 1; i <= K; ++i) {
    if (decode(i, caches[i - 1], log, demands) !=
        lib.files[demands[i - 1] - 1]) {
      report.recovery_ok = false;
    }
  }
  return report;
}

DeliveryReport run_decentralized(int K, double mu, int N, std::int64_t F,
                                 double delta, std::vector<int> demands,
                                 std::uint64_t seed) {
  demands = default_demands(K, std::move(demands));
  const Library lib = make_library(N, F, mix_seed(seed, kLibrarySeedStream));
  const auto caches =
      place_decentralized(K, mu, lib, mix_seed(seed, kPlacementSeedStream));
  const TransmissionLog log =
      deliver_decentralized(caches, lib, demands, delta);
  DeliveryReport report = measured_gndt(log, F, delta);
  report.mu = mu;  // report the requested mu, not the floor-quantized one
  report.analytic_gndt = gndt_decentralized(K, mu, delta);
  report.seed = seed;
  report.recovery_ok = true;
  for (int i = 1; i <= K; ++i) {
    if (decode(i, caches[i - 1], log, demands) !=
        lib.files[demands[i - 1] - 1]) {
      report.recovery_ok = false;
    }
  }
  return report;
}

nlohmann::ordered_json report_to_json(const DeliveryReport& report) {
  nlohmann::ordered_json j;
  j["mode"] = report.mode == DeliveryMode::Centralized ? "centralized"
                                                       : "decentralized";
  j["K"] = report.K;
  j["N"] = report.N;
  j["F"] = report.F;
  j["delta"] = report.delta;
  j["mu"] = report.mu;
  if (report.mode == DeliveryMode::Centralized) j["t"] = report.t;
  j["demands"] = report.demands;
  j["seed"] = report.seed;
  j["rng"] = kRngVersion;
  j["measured_gndt"] = report.measured_gndt;
  j["analytic_gndt"] = report.analytic_gndt;
  j["common_time"] = report.common_time;
  j["private_time"] = report.private_time;
  j["recovery_ok"] = report.recovery_ok;
  j["phases"] = nlohmann::ordered_json::array();
  for (const PhaseTiming& p : report.phases) {
    nlohmann::ordered_json pj;
    pj["m"] = p.m;
    pj["common_bits"] = p.common_bits;
    pj["max_private_bits"] = p.max_private_bits;
    pj["common_time"] = p.common_time;
    pj["private_time"] = p.private_time;
    pj["time"] = p.time;
    j["phases"].push_back(pj);
  }
  return j;
}

void dump_log(const TransmissionLog& log, std::ostream& os) {
  os.write("CBL1", 4);
  put_u8(os, log.mode == DeliveryMode::Centralized ? 0 : 1);
  put_u32(os, static_cast<std::uint32_t>(log.K));
  put_u32(os, static_cast<std::uint32_t>(log.N));
  put_u64(os, static_cast<std::uint64_t>(log.F));
  put_f64(os, log.delta);
  put_f64(os, log.mu);
  put_u32(os, static_cast<std::uint32_t>(log.t));
  put_u32(os, static_cast<std::uint32_t>(log.demands.size()));
  for (int d : log.demands) put_u32(os, static_cast<std::uint32_t>(d));
  put_u32(os, static_cast<std::uint32_t>(log.phases.size()));
  for (const SubPhase& phase : log.phases) {
    put_u32(os, static_cast<std::uint32_t>(phase.m));
    put_u32(os, static_cast<std::uint32_t>(phase.batches.size()));
    for (const MulticastBatch& b : phase.batches) {
      const std::vector<int> members = mask_members(b.subset);
      put_u8(os, static_cast<std::uint8_t>(members.size()));
      for (int u : members) put_u8(os, static_cast<std::uint8_t>(u));
      put_u64(os, b.payload.size());
      put_bits_msb_first(os, b.payload);
    }
    put_u32(os, static_cast<std::uint32_t>(phase.private_payloads.size()));
    for (const BitBuffer& p : phase.private_payloads) {
      put_u64(os, p.size());
      put_bits_msb_first(os, p);
    }
  }
}

}  // namespace cachebc
