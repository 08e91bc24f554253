// SPDX-License-Identifier: Apache-2.0
//
// cachebc: delivery-time and GDoF analysis for the symmetric cache-aided
// MISO broadcast channel with partial CSIT.

#include "cachebc/bounds.hpp"

#include <cmath>
#include <limits>

#include "cachebc/analytics.hpp"
#include "cachebc/format.hpp"
#include "cachebc/parallel.hpp"

namespace cachebc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

GapRecord make_gap(const SystemParams& p, CacheScheme scheme,
                   double achievable) {
  const LowerBound lb = gndt_lb(p.K, p.N, p.M, p.delta);
  GapRecord rec;
  rec.params = p;
  rec.scheme = scheme;
  rec.achievable = achievable;
  rec.bound = lb.value;
  rec.best_s = lb.best_s;
  if (lb.value > 0.0) {
    rec.ratio = achievable / lb.value;
  } else if (achievable > 0.0) {
    rec.ratio = kInf;
    rec.degenerate = true;
  } else {
    rec.ratio = 1.0;  // both sides zero (mu = 1)
  }
  return rec;
}

void fold_into_summary(ScanSummary& summary, const GapRecord& rec) {
  ++summary.n_records;
  if (rec.degenerate) {
    ++summary.n_degenerate;
    return;
  }
  if (rec.ratio > 12.0 + 1e-9) ++summary.violations_over_12;
  if (!summary.argmax || rec.ratio > summary.max_ratio) {
    summary.max_ratio = rec.ratio;
    summary.argmax = rec;
  }
}

}  // namespace

double gndt_lb_s(int K, int N, double M, double delta, int s) {
  if (s < 1 || s > K) throw RangeError("s outside [1,K]");
  if (!(delta >= 0.0 && delta <= 1.0)) throw RangeError("delta outside [0,1]");
  const double files_each = std::floor(static_cast<double>(N) / s);
  if (files_each < 1.0) throw RangeError("floor(N/s) below 1");
  const double v =
      s / (1.0 + (s - 1) * (1.0 - delta)) * (1.0 - M / files_each);
  return v > 0.0 ? v : 0.0;
}

LowerBound gndt_lb(int K, int N, double M, double delta) {
  LowerBound best;
  best.value = -1.0;
  for (int s = 1; s <= K; ++s) {
    const double v = gndt_lb_s(K, N, M, delta, s);
    if (v > best.value) {
      best.value = v;
      best.best_s = s;
    }
  }
  return best;
}

double gdof_ub(int K, int N, double M, double delta) {
  const LowerBound lb = gndt_lb(K, N, M, delta);
  if (lb.value <= 0.0) {
    throw DegenerateError("lower bound is zero; no finite GDoF upper bound");
  }
  return K / lb.value;
}

const char* to_string(CacheScheme scheme) {
  return scheme == CacheScheme::Centralized ? "centralized" : "decentralized";
}

GapRecord gap_centralized(int K, int N, double M, double delta) {
  const SystemParams p = validate_delta(K, N, M, delta);
  return make_gap(p, CacheScheme::Centralized,
                  gndt_centralized(K, p.mu, delta));
}

GapRecord gap_decentralized(int K, int N, double M, double delta) {
  const SystemParams p = validate_delta(K, N, M, delta);
  return make_gap(p, CacheScheme::Decentralized,
                  gndt_decentralized(K, p.mu, delta));
}

double gap_cen_vs_decen(int K, double mu, double delta) {
  if (!(mu >= 0.0 && mu <= 1.0)) throw RangeError("mu outside [0,1]");
  if (mu == 1.0) return 1.0;  // both delivery times are zero
  return gndt_decentralized(K, mu, delta) / gndt_centralized(K, mu, delta);
}

double f_value(double delta, int K, double mu, int s) {
  if (!(delta >= 0.0 && delta <= 1.0)) throw RangeError("delta outside [0,1]");
  if (K < 1) throw RangeError("K below 1");
  if (s < 1 || s > K) throw RangeError("s outside [1,K]");
  if (!(mu >= 0.0 && mu <= 1.0)) throw RangeError("mu outside [0,1]");
  return (1.0 + (s - 1) * (1.0 - delta)) /
         (K * (1.0 - delta) + (1.0 + K * mu) * delta);
}

ScanResult scan_exhaustive(const ScanGrid& grid, int threads) {
  if (grid.delta_grid.empty()) throw RangeError("empty delta grid");
  if (grid.k_min < 1 || grid.k_max < grid.k_min) {
    throw RangeError("bad K range");
  }
  if (grid.n_max < grid.k_min) throw RangeError("n_max below k_min");
  if (!grid.centralized && !grid.decentralized) {
    throw RangeError("no scheme selected");
  }

  struct Task {
    int K, N, M;
    double delta;
  };
  std::vector<Task> tasks;
  for (int K = grid.k_min; K <= grid.k_max; ++K) {
    for (int N = std::max(K, grid.n_min); N <= grid.n_max; ++N) {
      for (int M = 0; M <= N; ++M) {
        for (double delta : grid.delta_grid) {
          tasks.push_back({K, N, M, delta});
        }
      }
    }
  }

  const int per_point = (grid.centralized ? 1 : 0) +
                        (grid.decentralized ? 1 : 0);
  ScanResult out;
  out.records.resize(tasks.size() * per_point);
  parallel_for(tasks.size(), threads, [&](std::size_t i) {
    const Task& t = tasks[i];
    std::size_t j = i * per_point;
    if (grid.centralized) {
      out.records[j++] = gap_centralized(t.K, t.N, t.M, t.delta);
    }
    if (grid.decentralized) {
      out.records[j] = gap_decentralized(t.K, t.N, t.M, t.delta);
    }
  });
  for (const GapRecord& rec : out.records) {
    fold_into_summary(out.summary, rec);
  }
  return out;
}

ScanResult scan_sampled(const ScanSample& sample, int threads) {
  if (sample.k_max < 1 || sample.n_max < sample.k_max) {
    throw RangeError("bad sampled-scan ranges");
  }
  if (sample.points == 0) throw RangeError("zero sample points");
  if (!sample.centralized && !sample.decentralized) {
    throw RangeError("no scheme selected");
  }
  const int per_point = (sample.centralized ? 1 : 0) +
                        (sample.decentralized ? 1 : 0);
  ScanResult out;
  out.records.resize(sample.points * per_point);
  parallel_for(sample.points, threads, [&](std::size_t i) {
    Xoshiro256ss rng(mix_seed(sample.seed, i));
    const int K = 1 + static_cast<int>(i % sample.k_max);
    const int N =
        K + static_cast<int>(rng.next_below(sample.n_max - K + 1));
    const int M = static_cast<int>(rng.next_below(N + 1));
    const double delta = rng.next_double();
    std::size_t j = i * per_point;
    if (sample.centralized) {
      out.records[j++] = gap_centralized(K, N, M, delta);
    }
    if (sample.decentralized) {
      out.records[j] = gap_decentralized(K, N, M, delta);
    }
  });
  for (const GapRecord& rec : out.records) {
    fold_into_summary(out.summary, rec);
  }
  return out;
}

CenDecenScanResult scan_cen_vs_decen(int k_max, int mu_points,
                                     int delta_points, int threads) {
  if (k_max < 1) throw RangeError("k_max below 1");
  if (mu_points < 2 || delta_points < 2) throw RangeError("grid too small");

  const std::size_t per_k =
      static_cast<std::size_t>(mu_points) * delta_points;
  CenDecenScanResult out;
  out.records.resize(static_cast<std::size_t>(k_max) * per_k);
  parallel_for(out.records.size(), threads, [&](std::size_t i) {
    const int K = 1 + static_cast<int>(i / per_k);
    const std::size_t r = i % per_k;
    const double mu =
        static_cast<double>(r / delta_points) / (mu_points - 1);
    const double delta =
        static_cast<double>(r % delta_points) / (delta_points - 1);
    out.records[i] = {K, mu, delta, gap_cen_vs_decen(K, mu, delta)};
  });
  out.argmax = out.records.front();
  out.max_ratio = out.argmax.ratio;
  for (const CenDecenRecord& rec : out.records) {
    if (rec.ratio > out.max_ratio) {
      out.max_ratio = rec.ratio;
      out.argmax = rec;
    }
  }
  return out;
}

std::string scan_to_csv(const ScanResult& result) {
  std::string csv =
      "K,N,M,alpha,beta,delta,scheme,achievable,bound,best_s,ratio,flag\n";
  for (const GapRecord& r : result.records) {
    csv += std::to_string(r.params.K) + ',' + std::to_string(r.params.N) +
           ',' + format_double(r.params.M) + ',' +
           format_double(r.params.alpha) + ',' +
           format_double(r.params.beta) + ',' +
           format_double(r.params.delta) + ',' + to_string(r.scheme) + ',' +
           format_double(r.achievable) + ',' + format_double(r.bound) + ',' +
           std::to_string(r.best_s) + ',' + format_double(r.ratio) + ',' +
           (r.degenerate ? "degenerate" : "ok") + '\n';
  }
  return csv;
}

namespace {

nlohmann::ordered_json gap_record_to_json(const GapRecord& r) {
  nlohmann::ordered_json j;
  j["K"] = r.params.K;
  j["N"] = r.params.N;
  j["M"] = r.params.M;
  j["alpha"] = r.params.alpha;
  j["beta"] = r.params.beta;
  j["delta"] = r.params.delta;
  j["scheme"] = to_string(r.scheme);
  j["achievable"] = r.achievable;
  j["bound"] = r.bound;
  j["best_s"] = r.best_s;
  if (r.degenerate) {
    j["ratio"] = nullptr;
  } else {
    j["ratio"] = r.ratio;
  }
  j["degenerate"] = r.degenerate;
  return j;
}

}  // namespace

nlohmann::ordered_json scan_to_json(const ScanResult& result) {
  nlohmann::ordered_json j;
  j["records"] = nlohmann::ordered_json::array();
  for (const GapRecord& r : result.records) {
    j["records"].push_back(gap_record_to_json(r));
  }
  nlohmann::ordered_json s;
  s["n_records"] = result.summary.n_records;
  s["n_degenerate"] = result.summary.n_degenerate;
  s["max_ratio"] = result.summary.max_ratio;
  s["violations_over_12"] = result.summary.violations_over_12;
  if (result.summary.argmax) {
    s["argmax"] = gap_record_to_json(*result.summary.argmax);
  } else {
    s["argmax"] = nullptr;
  }
  j["summary"] = s;
  return j;
}

std::string cen_decen_to_csv(const CenDecenScanResult& result) {
  std::string csv = "K,mu,delta,ratio\n";
  for (const CenDecenRecord& r : result.records) {
    csv += std::to_string(r.K) + ',' + format_double(r.mu) + ',' +
           format_double(r.delta) + ',' + format_double(r.ratio) + '\n';
  }
  return csv;
}

nlohmann::ordered_json cen_decen_to_json(const CenDecenScanResult& result) {
  nlohmann::ordered_json j;
  j["records"] = nlohmann::ordered_json::array();
  for (const CenDecenRecord& r : result.records) {
    nlohmann::ordered_json row;
    row["K"] = r.K;
    row["mu"] = r.mu;
    row["delta"] = r.delta;
    row["ratio"] = r.ratio;
    j["records"].push_back(row);
  }
  nlohmann::ordered_json s;
  s["max_ratio"] = result.max_ratio;
  nlohmann::ordered_json arg;
  arg["K"] = result.argmax.K;
  arg["mu"] = result.argmax.mu;
  arg["delta"] = result.argmax.delta;
  arg["ratio"] = result.argmax.ratio;
  s["argmax"] = arg;
  j["summary"] = s;
  return j;
}

}  // namespace cachebc
