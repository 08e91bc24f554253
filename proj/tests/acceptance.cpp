// SPDX-License-Identifier: Apache-2.0
//
// cachebc: delivery-time and GDoF analysis for the symmetric cache-aided
// MISO broadcast channel with partial CSIT.
//
// Acceptance suite. Runs every release criterion at its stated tolerance
// and prints one pass/fail line per criterion; exits nonzero when any
// criterion fails. Heavier than the unit tests by design.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cachebc/analytics.hpp"
#include "cachebc/bounds.hpp"
#include "cachebc/format.hpp"
#include "cachebc/parallel.hpp"
#include "cachebc/phy.hpp"
#include "cachebc/rng.hpp"
#include "cachebc/scheme.hpp"

using namespace cachebc;

namespace {

class Failure : public std::runtime_error {
 public:
  explicit Failure(const std::string& msg) : std::runtime_error(msg) {}
};

void require(bool cond, const std::string& msg) {
  if (!cond) throw Failure(msg);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

// ------------------------------------------------------------ criterion 1

std::string c1_gap_constant_12() {
  const auto start = std::chrono::steady_clock::now();
  ScanGrid grid;
  grid.k_max = 8;
  grid.n_max = 16;
  for (int j = 0; j <= 20; ++j) grid.delta_grid.push_back(j / 20.0);
  const ScanResult result = scan_exhaustive(grid, default_threads());
  require(result.summary.violations_over_12 == 0,
          "ratio above 12 in the exhaustive scan");
  require(result.summary.n_degenerate == 0, "flagged degenerate records");
  require(result.summary.max_ratio <= 12.0, "max ratio above 12");
  const double elapsed = seconds_since(start);
  require(elapsed < 60.0, "runtime above 60 s");
  return "max ratio " + format_double(result.summary.max_ratio) + " over " +
         std::to_string(result.summary.n_records) + " records, " +
         format_double(elapsed) + " s";
}

// ------------------------------------------------------------ criterion 2

std::string c2_numerical_gap_3_5() {
  const auto start = std::chrono::steady_clock::now();
  ScanSample spec;  // K <= 100, N <= 500, 1e5 points, default seed
  const ScanResult result = scan_sampled(spec, default_threads());
  require(result.records.size() >= 100000, "fewer than 1e5 sampled points");
  require(result.summary.max_ratio <= 3.5, "max centralized ratio above 3.5");
  require(result.summary.n_degenerate == 0, "flagged degenerate records");
  const double elapsed = seconds_since(start);
  require(elapsed < 300.0, "runtime above 5 minutes");
  return "max ratio " + format_double(result.summary.max_ratio) + " over " +
         std::to_string(result.records.size()) + " samples, " +
         format_double(elapsed) + " s";
}

// ------------------------------------------------------------ criterion 3

std::string c3_cen_decen_gap_1_5() {
  const CenDecenScanResult result =
      scan_cen_vs_decen(32, 101, 101, default_threads());
  require(result.max_ratio <= 1.5 + 1e-9, "ratio above 1.5");
  const double witness = gap_cen_vs_decen(2, 0.5, 1.0);
  require(std::abs(witness - 1.5) <= 1e-9, "witness (2, 0.5, 1) off 1.5");
  require(result.argmax.K == 2 && std::abs(result.argmax.mu - 0.5) < 1e-12 &&
              std::abs(result.argmax.delta - 1.0) < 1e-12,
          "argmax is not the witness point");
  return "max ratio " + format_double(result.max_ratio) + " at (K=2, mu=0.5, "
         "delta=1)";
}

// ------------------------------------------------------------ criterion 4

std::string c4_sandwich() {
  for (int K = 1; K <= 32; ++K) {
    for (int i = 0; i <= 100; ++i) {
      const double mu = i / 100.0;
      for (int j = 0; j <= 100; ++j) {
        const double delta = j / 100.0;
        const double d = gndt_decentralized(K, mu, delta);
        if (i == 100) {
          require(d == 0.0, "nonzero delivery time at mu = 1");
          continue;
        }
        const double ub = gndt_decentralized_ub(K, mu, delta);
        require(d <= ub + 1e-9, "binomial sum above its upper bound");
        if (j == 0 || j == 100) {
          require(std::abs(d - ub) <= 1e-9,
                  "endpoint equality broken at delta in {0,1}");
        }
      }
    }
  }
  return "K <= 32 over the 101x101 grid";
}

// ------------------------------------------------------------ criterion 5

std::string c5_u_bound() {
  for (int K = 1; K <= 64; ++K) {
    for (int i = 1; i <= 999; ++i) {
      const double mu = i / 1000.0;
      const double u = u_param(K, mu);
      require(u <= K * mu + 1e-10, "u above K mu");
      require(u >= -1e-12, "negative u");
    }
  }
  return "u <= K mu for K <= 64 on the 999-point grid";
}

// ------------------------------------------------------------ criterion 6

std::string c6_f_monotone() {
  std::size_t checked = 0;
  for (int K = 1; K <= 32; ++K) {
    for (int s = 1; s <= K; ++s) {
      for (int i = 0; i <= 100; ++i) {
        const double mu = i / 100.0;
        if (K < s * (1.0 + K * mu)) continue;
        double prev = f_value(0.0, K, mu, s);
        for (int j = 1; j <= 100; ++j) {
          const double cur = f_value(j / 100.0, K, mu, s);
          require(cur >= prev - 1e-12, "f decreased in delta");
          prev = cur;
          ++checked;
        }
      }
    }
  }
  return std::to_string(checked) + " monotonicity steps, zero violations";
}

// ------------------------------------------------------------ criterion 7

void check_centralized_instance(int K, int t, const Library& lib,
                                const std::vector<CentralizedCache>& caches,
                                const std::vector<int>& demands, double delta) {
  const TransmissionLog log = deliver_centralized(caches, lib, demands, delta);
  for (int i = 1; i <= K; ++i) {
    require(decode(i, caches[i - 1], log, demands) ==
                lib.files[demands[i - 1] - 1],
            "centralized decode mismatch at K=" + std::to_string(K) +
                " t=" + std::to_string(t));
  }
}

std::string c7_scheme_correctness() {
  const auto start = std::chrono::steady_clock::now();
  std::size_t instances = 0;

  // exhaustive: all distinct-demand vectors for K <= 3, N <= 4
  for (int K = 1; K <= 3; ++K) {
    for (int N = K; N <= 4; ++N) {
      const Library lib = make_library(N, 12, 400 + 10 * K + N);
      for (int t = 0; t <= K; ++t) {
        const auto caches = place_centralized(K, t, lib);
        for (double delta : {0.0, 0.5, 1.0}) {
          std::vector<int> demands(K);
          std::vector<bool> used(N + 1, false);
          std::function<void(int)> rec = [&](int depth) {
            if (depth == K) {
              check_centralized_instance(K, t, lib, caches, demands, delta);
              ++instances;
              return;
            }
            for (int d = 1; d <= N; ++d) {
              if (used[d]) continue;
              used[d] = true;
              demands[depth] = d;
              rec(depth + 1);
              used[d] = false;
            }
          };
          rec(0);
        }
      }
    }
  }

  // randomized: 100 centralized instances each for K in {4,5,6}
  for (int K = 4; K <= 6; ++K) {
    Xoshiro256ss rng(mix_seed(2718, K));
    for (int inst = 0; inst < 100; ++inst) {
      const int t = static_cast<int>(rng.next_below(K + 1));
      const int N = K + static_cast<int>(rng.next_below(3));
      const std::int64_t F = 120;  // divisible by C(K,t) for all K <= 6
      double delta = rng.next_double();
      if (inst % 10 == 0) delta = 0.0;
      if (inst % 10 == 1) delta = 1.0;
      const Library lib = make_library(N, F, rng.next());
      const auto caches = place_centralized(K, t, lib);
      std::vector<int> pool(N);
      for (int i = 0; i < N; ++i) pool[i] = i + 1;
      for (int i = 0; i < K; ++i) {
        std::swap(pool[i], pool[i + rng.next_below(N - i)]);
      }
      const std::vector<int> demands(pool.begin(), pool.begin() + K);
      check_centralized_instance(K, t, lib, caches, demands, delta);
      ++instances;
    }
  }

  // randomized decentralized coverage for K in {4,5,6}
  for (int K = 4; K <= 6; ++K) {
    Xoshiro256ss rng(mix_seed(3141, K));
    for (int inst = 0; inst < 30; ++inst) {
      const int N = K;
      const double mu = rng.next_double();
      const double delta = rng.next_double();
      const Library lib = make_library(N, 600, rng.next());
      const auto caches = place_decentralized(K, mu, lib, rng.next());
      std::vector<int> demands(K);
      for (int i = 0; i < K; ++i) demands[i] = i + 1;
      const TransmissionLog log =
          deliver_decentralized(caches, lib, demands, delta);
      for (int i = 1; i <= K; ++i) {
        require(decode(i, caches[i - 1], log, demands) ==
                    lib.files[demands[i - 1] - 1],
                "decentralized decode mismatch at K=" + std::to_string(K));
      }
      ++instances;
    }
  }

  const double elapsed = seconds_since(start);
  require(elapsed < 120.0, "runtime above 2 minutes");
  return std::to_string(instances) + " instances bit-exact, " +
         format_double(elapsed) + " s";
}

// ------------------------------------------------------------ criterion 8

std::string c8_measured_vs_analytic() {
  const auto start = std::chrono::steady_clock::now();
  // centralized: within 1% for F = 1e4 C(K,t)
  for (int K = 1; K <= 6; ++K) {
    for (int t = 0; t <= K; ++t) {
      const std::int64_t F =
          10000 * static_cast<std::int64_t>(binomial(K, t) + 0.5);
      for (double delta : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const DeliveryReport report =
            run_centralized(K, t, K, F, delta, {}, 5150);
        require(report.recovery_ok, "centralized recovery failed");
        if (report.analytic_gndt > 0.0) {
          require(std::abs(report.measured_gndt - report.analytic_gndt) <=
                      0.01 * report.analytic_gndt,
                  "centralized measured time off by more than 1% at K=" +
                      std::to_string(K) + " t=" + std::to_string(t) +
                      " delta=" + format_double(delta));
        } else {
          require(report.measured_gndt == 0.0, "nonzero time at mu = 1");
        }
      }
    }
  }
  // decentralized: mean over 30 seeds within 2% for F = 1e5
  for (int K = 1; K <= 4; ++K) {
    for (double mu : {0.25, 0.5}) {
      for (double delta : {0.0, 0.5, 1.0}) {
        double mean = 0.0;
        for (std::uint64_t seed = 1; seed <= 30; ++seed) {
          const DeliveryReport report =
              run_decentralized(K, mu, K, 100000, delta, {}, seed);
          require(report.recovery_ok, "decentralized recovery failed");
          mean += report.measured_gndt;
        }
        mean /= 30.0;
        const double analytic = gndt_decentralized(K, mu, delta);
        require(std::abs(mean - analytic) <= 0.02 * analytic,
                "decentralized mean off by more than 2% at K=" +
                    std::to_string(K) + " mu=" + format_double(mu) +
                    " delta=" + format_double(delta) + " (mean " +
                    format_double(mean) + " vs " + format_double(analytic) +
                    ")");
      }
    }
  }
  return "centralized within 1%, decentralized means within 2%, " +
         format_double(seconds_since(start)) + " s";
}

// ------------------------------------------------------------ criterion 9

std::string c9_phy_slopes() {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<std::pair<double, double>> levels = {
      {1.0, 0.0}, {0.8, 0.4}, {0.5, 0.5}, {0.6, 0.0}};
  double worst_dev = 0.0;
  for (int K : {2, 3, 4}) {
    for (const auto& [alpha, beta] : levels) {
      PhyConfig cfg;
      cfg.K = K;
      cfg.alpha = alpha;
      cfg.beta = beta;
      cfg.trials = 500;
      cfg.snr_grid = default_snr_grid();
      const SlopeReport report = estimate_slopes(cfg, default_threads());
      const double delta = alpha - beta;
      const double dc = std::abs(report.common_slope - delta);
      const double dp = std::abs(report.private_slope - (1.0 - delta));
      worst_dev = std::max(worst_dev, std::max(dc, dp));
      require(dc <= 0.05, "common slope off by " + format_double(dc) +
                              " at K=" + std::to_string(K) + " alpha=" +
                              format_double(alpha) + " beta=" +
                              format_double(beta));
      require(dp <= 0.05, "private slope off by " + format_double(dp) +
                              " at K=" + std::to_string(K) + " alpha=" +
                              format_double(alpha) + " beta=" +
                              format_double(beta));
      for (const SlopePoint& pt : report.points) {
        require(pt.max_zf_residual <= 1e-10,
                "zero-forcing residual above 1e-10");
      }
    }
  }
  const double elapsed = seconds_since(start);
  require(elapsed < 300.0, "runtime above 5 minutes");
  return "worst slope deviation " + format_double(worst_dev) + ", " +
         format_double(elapsed) + " s";
}

// ----------------------------------------------------------- criterion 10

std::string c10_closed_forms() {
  for (int K = 1; K <= 64; ++K) {
    for (int i = 1; i <= 99; ++i) {
      const double mu = i / 100.0;
      const double closed = (1.0 - mu) / mu * (1.0 - std::pow(1.0 - mu, K));
      const double sum = gndt_decentralized(K, mu, 1.0);
      require(std::abs(sum - closed) <= 1e-10 * std::max(1.0, closed),
              "binomial sum differs from the closed form at K=" +
                  std::to_string(K));
      const DecentralizedWeights w = decentralized_weights(K, mu);
      double total = 0.0;
      for (double b : w.weights) total += b;
      require(std::abs(total - 1.0) <= 1e-10, "weights do not sum to 1");
    }
    for (int i = 0; i <= 100; ++i) {
      const double mu = i / 100.0;
      require(std::abs(gndt_centralized(K, mu, 0.0) - (1.0 - mu)) <= 1e-12,
              "centralized delta=0 time is not 1 - mu");
      require(std::abs(gndt_decentralized(K, mu, 0.0) - (1.0 - mu)) <= 1e-12,
              "decentralized delta=0 time is not 1 - mu");
    }
  }
  return "closed forms agree for K <= 64";
}

// ----------------------------------------------------------- criterion 11

std::string run_cli_capture(const std::string& args, int* exit_code) {
  static int counter = 0;
  const std::string path = "acceptance_cli_" + std::to_string(counter++);
  const std::string cmd = std::string(CACHEBC_CLI_PATH) + " " + args + " > " +
                          path + " 2> " + path + ".err";
  const int status = std::system(cmd.c_str());
  *exit_code = WEXITSTATUS(status);
  std::ifstream file(path, std::ios::binary);
  std::ostringstream buf;
  buf << file.rdbuf();
  std::remove(path.c_str());
  std::remove((path + ".err").c_str());
  return buf.str();
}

std::string c11_cli_determinism() {
  const std::vector<std::string> invocations = {
      "analyze --K 2:6:1 --mu 0:1:0.1 --delta 0:1:0.2",
      "analyze --K 4 --mu 0:1:0.25 --delta 1 --format json",
      "bounds --K 4 --N 4:16:2 --M 0:4:0.5 --delta 0.85",
      "bounds --K 3 --N 6 --M 2 --alpha 0.9 --beta 0.2 --format json",
      "gap-scan --kmax 4 --nmax 8",
      "gap-scan --sampled --points 2000 --kmax 20 --nmax 60 --format json",
      "gap-scan --check-cen-decen --kmax 4 --mu-points 21 --delta-points 21",
      "simulate --mode centralized --K 4 --t 2 --F 240 --delta 0.5",
      "simulate --mode decentralized --K 3 --mu 0.4 --F 5000 --delta 0.6 "
      "--seed 9",
      "phy-slope --K 2 --alpha 0.8 --beta 0.4 --trials 100",
      "phy-slope --K 3 --alpha 1 --beta 0 --trials 100 --format json",
  };
  for (const std::string& args : invocations) {
    int code_a = 0, code_b = 0;
    const std::string a = run_cli_capture(args, &code_a);
    const std::string b = run_cli_capture(args, &code_b);
    require(code_a == code_b, "exit codes differ for: " + args);
    require(!a.empty(), "empty output for: " + args);
    require(a == b, "reruns differ byte-wise for: " + args);
  }
  return std::to_string(invocations.size()) + " invocations byte-identical";
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<std::string()> body;
  };
  const std::vector<Criterion> criteria = {
      {"gap constant <= 12 (exhaustive scan)", c1_gap_constant_12},
      {"numerical gap <= 3.5 (sampled K<=100, N<=500)", c2_numerical_gap_3_5},
      {"centralized/decentralized gap <= 1.5 with tight witness",
       c3_cen_decen_gap_1_5},
      {"decentralized time sandwiched by its upper bound", c4_sandwich},
      {"u <= K mu", c5_u_bound},
      {"f non-decreasing in delta under K >= s(1+K mu)", c6_f_monotone},
      {"bit-exact scheme recovery", c7_scheme_correctness},
      {"measured delivery time matches the closed forms",
       c8_measured_vs_analytic},
      {"physical-layer slopes within +/-0.05", c9_phy_slopes},
      {"closed-form cross-checks", c10_closed_forms},
      {"CLI determinism", c11_cli_determinism},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    try {
      const std::string detail = criteria[i].body();
      std::printf("[PASS] %2zu. %s: %s\n", i + 1, criteria[i].name,
                  detail.c_str());
    } catch (const std::exception& e) {
      ++failures;
      std::printf("[FAIL] %2zu. %s: %s\n", i + 1, criteria[i].name, e.what());
    }
    std::fflush(stdout);
  }
  std::printf("acceptance: %zu/%zu criteria passed\n",
              criteria.size() - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
