// Copyright 2026 The tomoray Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tomo/experiments.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "tomo/log.hpp"
#include "tomo/rank.hpp"
#include "tomo/reduction.hpp"
#include "tomo/version.hpp"

namespace tomo {

const char* to_string(SignalKind s) {
  return s == SignalKind::kBinary ? "binary" : "nonneg_multiplicity";
}

const char* to_string(MatrixVariant v) {
  return v == MatrixVariant::kPerturbed ? "perturbed" : "unperturbed";
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Unbiased integer in [0, n) by rejection; uniform_int_distribution would
// not reproduce across standard libraries.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = ~0ull - ~0ull % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

const char* to_string(ColumnNormalization n) {
  switch (n) {
    case ColumnNormalization::kEuclidean: return "euclidean";
    case ColumnNormalization::kSum: return "sum";
    default: return "none";
  }
}

ColumnNormalization normalization_from_string(const std::string& s) {
  if (s == "none") return ColumnNormalization::kNone;
  if (s == "euclidean") return ColumnNormalization::kEuclidean;
  if (s == "sum") return ColumnNormalization::kSum;
  throw std::invalid_argument("unknown normalization: " + s);
}

MatrixVariant variant_from_string(const std::string& s) {
  if (s == "unperturbed") return MatrixVariant::kUnperturbed;
  if (s == "perturbed") return MatrixVariant::kPerturbed;
  throw std::invalid_argument("unknown matrix variant: " + s);
}

SignalKind signal_from_string(const std::string& s) {
  if (s == "nonneg_multiplicity") return SignalKind::kNonnegMultiplicity;
  if (s == "binary") return SignalKind::kBinary;
  throw std::invalid_argument("unknown signal kind: " + s);
}

}  // namespace

Eigen::VectorXd sample_sparse_signal(const Geometry& g, int k, SignalKind kind,
                                     std::mt19937_64& rng) {
  const int n = g.cells();
  if (k < 0) throw std::invalid_argument("signal: k must be nonnegative");
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  if (kind == SignalKind::kNonnegMultiplicity) {
    for (int i = 0; i < k; ++i)
      x[static_cast<int>(bounded(rng, static_cast<std::uint64_t>(n)))] += 1.0;
  } else {
    if (k > n) throw std::invalid_argument("signal: k exceeds the cell count");
    // Partial Fisher-Yates: the first k slots end up a uniform k-subset.
    std::vector<int> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), 0);
    for (int i = 0; i < k; ++i) {
      const int j =
          i + static_cast<int>(bounded(rng, static_cast<std::uint64_t>(n - i)));
      std::swap(idx[static_cast<std::size_t>(i)],
                idx[static_cast<std::size_t>(j)]);
      x[idx[static_cast<std::size_t>(i)]] = 1.0;
    }
  }
  return x;
}

std::uint64_t trial_seed(std::uint64_t master, int d, int k, int variant,
                         int signal, int trial) {
  std::uint64_t h = splitmix64(master);
  for (const std::uint64_t v :
       {static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(k),
        static_cast<std::uint64_t>(variant), static_cast<std::uint64_t>(signal),
        static_cast<std::uint64_t>(trial)})
    h = splitmix64(h ^ (v + 0x9e3779b97f4a7c15ull));
  return h;
}

TrialRecord run_trial(const Geometry& g, const SparseMatrix& base, int k,
                      const TrialConfig& config, std::uint64_t seed) {
  TrialRecord rec;
  rec.d = g.d();
  rec.k = k;
  rec.variant = config.variant;
  rec.signal = config.signal;
  rec.seed = seed;

  // Independent sub-streams so adding probes never shifts the signal draw.
  const std::uint64_t matrix_seed = splitmix64(seed ^ 0x6d61747269786dull);
  const std::uint64_t signal_seed = splitmix64(seed ^ 0x7369676e616c73ull);
  const std::uint64_t verify_seed = splitmix64(seed ^ 0x76657269667973ull);

  const SparseMatrix a =
      config.variant == MatrixVariant::kPerturbed
          ? perturb(base, config.epsilon, config.normalization, matrix_seed)
          : base;

  std::mt19937_64 srng(signal_seed);
  const Eigen::VectorXd x = sample_sparse_signal(g, k, config.signal, srng);
  const Eigen::VectorXd b = a * x;

  const ReducedSystem r = reduce(a, b);
  rec.m_reduced = r.ray_count();
  rec.n_reduced = r.cell_count();
  rec.expansion_ratio = r.cell_count() > 0
                            ? expansion_ratio(r, g.column_degree())
                            : std::numeric_limits<double>::quiet_NaN();
  rec.overdetermined_fullrank =
      r.cell_count() == 0 || (r.ray_count() >= r.cell_count() &&
                              numeric_rank(r.a) == r.cell_count());

  VerifyOptions vo;
  vo.probes = config.probes;
  vo.seed = verify_seed;
  rec.unique_nonneg = verify_unique_nonneg(a, b, x, vo).verdict;
  if (config.signal == SignalKind::kBinary) {
    VerifyOptions vb = vo;
    vb.seed = splitmix64(verify_seed ^ 0x626f78ull);
    rec.unique_box = verify_unique_box(a, x, vb).verdict;
  }
  return rec;
}

namespace {

struct CellPlan {
  int d = 0;
  int k = 0;
  double rho = 0.0;
  MatrixVariant variant = MatrixVariant::kUnperturbed;
  const Geometry* g = nullptr;
  const SparseMatrix* base = nullptr;
};

}  // namespace

PhaseGrid run_grid(const GridConfig& config) {
  if (config.dim != 2 && config.dim != 3)
    throw std::invalid_argument("grid: dim must be 2 or 3");
  if (config.d_values.empty())
    throw std::invalid_argument("grid: no grid sizes given");
  if (config.rho_values.empty() == config.k_values.empty())
    throw std::invalid_argument("grid: give exactly one of rho or k values");
  if (config.trials < 1)
    throw std::invalid_argument("grid: trials must be positive");
  if (config.variants.empty())
    throw std::invalid_argument("grid: no matrix variants given");

  // One geometry and one base matrix per distinct d, shared by all workers.
  std::map<int, std::pair<std::unique_ptr<Geometry>, std::unique_ptr<SparseMatrix>>>
      shared;
  for (const int d : config.d_values) {
    if (shared.count(d)) continue;
    auto g = std::make_unique<Geometry>(config.dim, d);
    auto base = std::make_unique<SparseMatrix>(measurement_matrix(*g));
    shared.emplace(d, std::make_pair(std::move(g), std::move(base)));
  }

  std::vector<CellPlan> plan;
  for (const int d : config.d_values) {
    const auto& ctx = shared.at(d);
    const double block = std::pow(static_cast<double>(d), config.dim - 1);
    for (const MatrixVariant variant : config.variants) {
      const std::size_t axis = config.k_values.empty() ? config.rho_values.size()
                                                       : config.k_values.size();
      for (std::size_t i = 0; i < axis; ++i) {
        CellPlan c;
        c.d = d;
        c.variant = variant;
        if (config.k_values.empty()) {
          c.rho = config.rho_values[i];
          c.k = static_cast<int>(std::lround(c.rho * block));
        } else {
          c.k = config.k_values[i];
          c.rho = static_cast<double>(c.k) / block;
        }
        if (c.k < 0) throw std::invalid_argument("grid: negative k");
        c.g = ctx.first.get();
        c.base = ctx.second.get();
        plan.push_back(c);
      }
    }
  }

  const std::size_t total =
      plan.size() * static_cast<std::size_t>(config.trials);
  std::vector<TrialRecord> records(total);

  int jobs = config.jobs > 0
                 ? config.jobs
                 : static_cast<int>(std::thread::hardware_concurrency());
  if (jobs < 1) jobs = 1;
  jobs = static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(jobs), total));

  std::atomic<std::size_t> next{0};
  std::mutex err_mutex;
  std::exception_ptr first_error;

  const auto worker = [&]() {
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= total) return;
      const CellPlan& c = plan[idx / static_cast<std::size_t>(config.trials)];
      const int trial = static_cast<int>(idx % static_cast<std::size_t>(config.trials));
      try {
        TrialConfig tc;
        tc.variant = c.variant;
        tc.signal = config.signal;
        tc.epsilon = config.epsilon;
        tc.normalization = config.normalization;
        tc.probes = config.probes;
        const std::uint64_t seed = trial_seed(
            config.master_seed, c.d, c.k, static_cast<int>(c.variant),
            static_cast<int>(config.signal), trial);
        records[idx] = run_trial(*c.g, *c.base, c.k, tc, seed);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
        next.store(total);
        return;
      }
    }
  };

  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(jobs));
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  PhaseGrid grid;
  grid.config = config;
  grid.cells.reserve(plan.size());
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t ci = 0; ci < plan.size(); ++ci) {
    const CellPlan& c = plan[ci];
    CellStats s;
    s.d = c.d;
    s.k = c.k;
    s.rho = c.rho;
    s.variant = c.variant;
    s.trials = config.trials;
    double sum_m = 0, sum_n = 0, sum_ratio = 0, sum_exp = 0;
    int ratio_count = 0, n_fullrank = 0, n_unique = 0, n_box = 0, n_inc = 0;
    for (int t = 0; t < config.trials; ++t) {
      const TrialRecord& rec =
          records[ci * static_cast<std::size_t>(config.trials) +
                  static_cast<std::size_t>(t)];
      sum_m += rec.m_reduced;
      sum_n += rec.n_reduced;
      if (rec.n_reduced > 0) {
        sum_ratio += static_cast<double>(rec.m_reduced) / rec.n_reduced;
        sum_exp += rec.expansion_ratio;
        ++ratio_count;
      }
      if (rec.overdetermined_fullrank) ++n_fullrank;
      if (rec.unique_nonneg == Verdict::kUnique) ++n_unique;
      bool inconclusive = rec.unique_nonneg == Verdict::kInconclusive;
      if (rec.unique_box) {
        if (*rec.unique_box == Verdict::kUnique) ++n_box;
        inconclusive = inconclusive || *rec.unique_box == Verdict::kInconclusive;
      }
      if (inconclusive) ++n_inc;
    }
    const double nt = static_cast<double>(config.trials);
    s.m_reduced_mean = sum_m / nt;
    s.n_reduced_mean = sum_n / nt;
    s.ratio_mean = ratio_count > 0 ? sum_ratio / ratio_count : nan;
    s.expansion_ratio_mean = ratio_count > 0 ? sum_exp / ratio_count : nan;
    s.p_overdetermined_fullrank = n_fullrank / nt;
    s.p_unique_nonneg = n_unique / nt;
    s.p_unique_box = config.signal == SignalKind::kBinary ? n_box / nt : nan;
    s.p_inconclusive = n_inc / nt;
    grid.cells.push_back(s);
  }
  return grid;
}

void write_grid_csv(std::ostream& out, const PhaseGrid& grid) {
  const auto num = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::string(buf);
  };
  out << "d,k,rho,variant,trials,m_reduced_mean,n_reduced_mean,ratio_mean,"
         "expansion_ratio_mean,p_overdetermined_fullrank,p_unique_nonneg,"
         "p_unique_box,p_inconclusive\n";
  for (const CellStats& s : grid.cells) {
    out << s.d << ',' << s.k << ',' << num(s.rho) << ',' << to_string(s.variant)
        << ',' << s.trials << ',' << num(s.m_reduced_mean) << ','
        << num(s.n_reduced_mean) << ',' << num(s.ratio_mean) << ','
        << num(s.expansion_ratio_mean) << ','
        << num(s.p_overdetermined_fullrank) << ',' << num(s.p_unique_nonneg)
        << ',' << num(s.p_unique_box) << ',' << num(s.p_inconclusive) << '\n';
  }
}

std::string grid_manifest(const PhaseGrid& grid) {
  const GridConfig& c = grid.config;
  nlohmann::json j;
  j["tool"] = kToolName;
  j["version"] = kVersion;
  j["kind"] = "phase_grid";
  nlohmann::json cfg;
  cfg["dim"] = c.dim;
  cfg["d_values"] = c.d_values;
  cfg["rho_values"] = c.rho_values;
  cfg["k_values"] = c.k_values;
  cfg["trials"] = c.trials;
  std::vector<std::string> variants;
  for (const MatrixVariant v : c.variants) variants.emplace_back(to_string(v));
  cfg["variants"] = variants;
  cfg["signal"] = to_string(c.signal);
  cfg["epsilon"] = c.epsilon;
  cfg["normalization"] = to_string(c.normalization);
  cfg["probes"] = c.probes;
  cfg["master_seed"] = c.master_seed;
  cfg["jobs"] = c.jobs;
  j["config"] = cfg;
  j["cells"] = grid.cells.size();
  return j.dump();
}

GridConfig grid_config_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  const nlohmann::json& cfg = j.contains("config") ? j.at("config") : j;
  GridConfig c;
  c.dim = cfg.value("dim", c.dim);
  c.d_values = cfg.value("d_values", c.d_values);
  c.rho_values = cfg.value("rho_values", c.rho_values);
  c.k_values = cfg.value("k_values", c.k_values);
  c.trials = cfg.value("trials", c.trials);
  if (cfg.contains("variants")) {
    c.variants.clear();
    for (const auto& v : cfg.at("variants"))
      c.variants.push_back(variant_from_string(v.get<std::string>()));
  }
  if (cfg.contains("signal"))
    c.signal = signal_from_string(cfg.at("signal").get<std::string>());
  c.epsilon = cfg.value("epsilon", c.epsilon);
  if (cfg.contains("normalization"))
    c.normalization =
        normalization_from_string(cfg.at("normalization").get<std::string>());
  c.probes = cfg.value("probes", c.probes);
  c.master_seed = cfg.value("master_seed", c.master_seed);
  c.jobs = cfg.value("jobs", c.jobs);
  return c;
}

}  // namespace tomo
