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
//
// tomoray: discrete-tomography measurement matrices, average-case recovery
// tables, and LP-based uniqueness experiments from one binary.
//
// Every run prints a one-line JSON manifest (tool, version, resolved
// configuration) to standard output before the results; results go to --out
// when given, otherwise follow on standard output.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tomo/analysis.hpp"
#include "tomo/experiments.hpp"
#include "tomo/geometry.hpp"
#include "tomo/matrix_market.hpp"
#include "tomo/reduction.hpp"
#include "tomo/uniqueness.hpp"
#include "tomo/version.hpp"

namespace {

using nlohmann::json;

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void print_manifest(const std::string& command, json config) {
  json j;
  j["tool"] = tomo::kToolName;
  j["version"] = tomo::kVersion;
  j["command"] = command;
  j["config"] = std::move(config);
  std::cout << j.dump() << "\n";
}

// Results sink: --out file when given, standard output otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

const char* variant_name(tomo::MatrixVariant v) { return tomo::to_string(v); }

tomo::ColumnNormalization parse_normalization(const std::string& s) {
  if (s == "none") return tomo::ColumnNormalization::kNone;
  if (s == "euclidean") return tomo::ColumnNormalization::kEuclidean;
  if (s == "sum") return tomo::ColumnNormalization::kSum;
  throw CLI::ValidationError("--normalize", "unknown normalization: " + s);
}

json verdict_json(const tomo::UniquenessResult& r) {
  json j;
  j["verdict"] = tomo::to_string(r.verdict);
  j["fast_path"] = r.fast_path;
  j["probes_used"] = r.probes_used;
  if (r.witness.size() > 0) j["witness_distance"] = r.witness_distance;
  return j;
}

// ---------------------------------------------------------------------------
// gen-matrix / nullspace

struct GenArgs {
  int dim = 2;
  int d = 3;
  double epsilon = 0.0;  // 0: unperturbed
  std::string normalize = "none";
  std::uint64_t seed = 1;
  std::string out;
};

void run_gen_matrix(const GenArgs& a) {
  tomo::Geometry g(a.dim, a.d);
  tomo::SparseMatrix m = tomo::measurement_matrix(g);
  if (a.epsilon > 0.0)
    m = tomo::perturb(m, a.epsilon, parse_normalization(a.normalize), a.seed);
  print_manifest("gen-matrix", json{{"dim", a.dim},
                                    {"d", a.d},
                                    {"rows", m.rows()},
                                    {"cols", m.cols()},
                                    {"epsilon", a.epsilon},
                                    {"normalize", a.normalize},
                                    {"seed", a.seed},
                                    {"format", "mm"},
                                    {"out", a.out}});
  Output out(a.out);
  tomo::write_matrix_market(out.stream(), m);
}

void run_nullspace(const GenArgs& a) {
  tomo::Geometry g(a.dim, a.d);
  const tomo::SparseMatrix b = tomo::nullspace_basis(g);
  print_manifest("nullspace", json{{"dim", a.dim},
                                   {"d", a.d},
                                   {"rows", b.rows()},
                                   {"cols", b.cols()},
                                   {"format", "mm"},
                                   {"out", a.out}});
  Output out(a.out);
  tomo::write_matrix_market(out.stream(), b);
}

// ---------------------------------------------------------------------------
// thresholds / curves / tail-bound / wendel

void run_thresholds(int dim, int d, double delta, const std::string& out_path) {
  tomo::Geometry g(dim, d);
  const tomo::ThresholdReport r = tomo::threshold_report(g, delta);
  print_manifest("thresholds",
                 json{{"dim", dim}, {"d", d}, {"delta", delta}, {"out", out_path}});
  json j;
  j["dim"] = dim;
  j["d"] = d;
  j["delta"] = r.delta;
  j["k_delta"] = static_cast<long long>(std::floor(r.k_delta));
  j["k_crit"] = static_cast<long long>(std::floor(r.k_crit));
  j["k_tilde_max"] = static_cast<long long>(std::floor(r.k_tilde_max));
  j["k_max"] = static_cast<long long>(std::floor(r.k_max));
  j["k_opt"] = static_cast<long long>(std::floor(r.k_opt));
  j["continuous"] = json{{"k_delta_root", r.k_delta_root},
                         {"k_delta", r.k_delta},
                         {"k_crit", r.k_crit},
                         {"k_tilde_max", r.k_tilde_max},
                         {"k_max", r.k_max},
                         {"k_opt", r.k_opt}};
  Output out(out_path);
  out.stream() << j.dump(2) << "\n";
}

void run_curves(int dim, int d, int k_max, const std::string& format,
                const std::string& out_path) {
  tomo::Geometry g(dim, d);
  print_manifest("curves", json{{"dim", dim},
                                {"d", d},
                                {"k_max", k_max},
                                {"format", format},
                                {"out", out_path}});
  Output out(out_path);
  if (format == "json") {
    json rows = json::array();
    for (int k = 1; k <= k_max; ++k) {
      const tomo::ExpectedDims e = tomo::expected_dims(g, k);
      rows.push_back(json{{"k", k},
                          {"expected_rays", e.rays},
                          {"expected_zero_rays", e.zero_rays},
                          {"expected_cells", e.cells},
                          {"expected_expansion",
                           e.rays / (g.column_degree() * e.cells)}});
    }
    out.stream() << rows.dump(2) << "\n";
    return;
  }
  out.stream()
      << "k,expected_rays,expected_zero_rays,expected_cells,expected_expansion\n";
  for (int k = 1; k <= k_max; ++k) {
    const tomo::ExpectedDims e = tomo::expected_dims(g, k);
    out.stream() << k << ',' << fmt12(e.rays) << ',' << fmt12(e.zero_rays)
                 << ',' << fmt12(e.cells) << ','
                 << fmt12(e.rays / (g.column_degree() * e.cells)) << '\n';
  }
}

void run_tail_bound(int dim, int d, double k, double deviation,
                    const std::string& out_path) {
  tomo::Geometry g(dim, d);
  print_manifest("tail-bound", json{{"dim", dim},
                                    {"d", d},
                                    {"k", k},
                                    {"deviation", deviation},
                                    {"out", out_path}});
  json j;
  j["dim"] = dim;
  j["d"] = d;
  j["k"] = k;
  j["deviation"] = deviation;
  j["bound"] = tomo::deviation_bound(g, k, deviation);
  j["bound_limit"] = tomo::deviation_bound_limit(g, k, deviation);
  Output out(out_path);
  out.stream() << j.dump(2) << "\n";
}

void run_wendel(int n, int m, const std::string& format,
                const std::string& out_path) {
  const double p = tomo::wendel_probability(n, m);
  print_manifest("wendel",
                 json{{"n", n}, {"m", m}, {"format", format}, {"out", out_path}});
  Output out(out_path);
  if (format == "json") {
    const tomo::WendelExact e = tomo::wendel_exact(n, m);
    json j;
    j["n"] = n;
    j["m"] = m;
    j["probability"] = p;
    j["denominator_log2"] = e.denominator_log2;
    j["numerator_bits"] = e.numerator.bit_length();
    out.stream() << j.dump(2) << "\n";
    return;
  }
  out.stream() << fmt12(p) << "\n";
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
  std::string matrix_path;
  std::string signal_path;
  bool certificate = false;
  bool force_probing = false;
  int probes = 5;
  std::uint64_t seed = 1;
  std::string out;
};

// Signal file: a JSON array of cell indices (a support list, giving a binary
// vector), or an object {"support": [...]} or {"values": [...]}.
Eigen::VectorXd read_signal(const std::string& path, int cells, bool* binary) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open signal file: " + path);
  json j;
  in >> j;
  *binary = true;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(cells);
  const auto fill_support = [&](const json& arr) {
    for (const auto& v : arr) {
      const long long i = v.get<long long>();
      if (i < 0 || i >= cells)
        throw std::runtime_error("signal: cell index out of range");
      x[static_cast<int>(i)] = 1.0;
    }
  };
  if (j.is_array()) {
    fill_support(j);
  } else if (j.contains("support")) {
    fill_support(j.at("support"));
  } else if (j.contains("values")) {
    const auto& vals = j.at("values");
    if (static_cast<int>(vals.size()) != cells)
      throw std::runtime_error("signal: values length mismatch");
    *binary = true;
    for (int i = 0; i < cells; ++i) {
      x[i] = vals[static_cast<std::size_t>(i)].get<double>();
      if (x[i] != 0.0 && x[i] != 1.0) *binary = false;
    }
  } else {
    throw std::runtime_error("signal: expected an index array, 'support', or 'values'");
  }
  return x;
}

void run_verify(const VerifyArgs& a) {
  const tomo::SparseMatrix m = tomo::read_matrix_market_file(a.matrix_path);
  bool binary = false;
  const Eigen::VectorXd x = read_signal(a.signal_path, m.cols(), &binary);
  print_manifest("verify", json{{"matrix", a.matrix_path},
                                {"signal", a.signal_path},
                                {"probes", a.probes},
                                {"seed", a.seed},
                                {"certificate", a.certificate},
                                {"out", a.out}});

  tomo::VerifyOptions vo;
  vo.probes = a.probes;
  vo.seed = a.seed;
  vo.force_probing = a.force_probing;

  const Eigen::VectorXd b = m * x;
  json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  j["support_size"] = static_cast<long long>((x.array() != 0.0).count());
  const tomo::ReducedSystem r = tomo::reduce(m, b);
  j["m_reduced"] = r.ray_count();
  j["n_reduced"] = r.cell_count();
  j["nonneg"] = verdict_json(tomo::verify_unique_nonneg(m, b, x, vo));
  if (binary) {
    tomo::VerifyOptions vb = vo;
    vb.seed = vo.seed + 1;
    j["box"] = verdict_json(tomo::verify_unique_box(m, x, vb));
    if (a.certificate) {
      const tomo::Certificate c = tomo::separating_certificate(m, x);
      json cj;
      cj["solved"] = c.solved;
      cj["found"] = c.found;
      if (c.solved) cj["margin"] = c.margin;
      j["certificate"] = cj;
    }
  }
  Output out(a.out);
  out.stream() << j.dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// trial / grid

struct TrialArgs {
  int dim = 3;
  int d = 10;
  int k = 10;
  std::string variant = "unperturbed";
  std::string signal = "nonneg_multiplicity";
  double epsilon = 0.1;
  std::string normalize = "none";
  int probes = 5;
  std::uint64_t seed = 1;
  std::string out;
};

json record_json(const tomo::TrialRecord& rec) {
  json j;
  j["d"] = rec.d;
  j["k"] = rec.k;
  j["variant"] = variant_name(rec.variant);
  j["signal"] = tomo::to_string(rec.signal);
  j["seed"] = rec.seed;
  j["m_reduced"] = rec.m_reduced;
  j["n_reduced"] = rec.n_reduced;
  if (std::isfinite(rec.expansion_ratio))
    j["expansion_ratio"] = rec.expansion_ratio;
  j["overdetermined_fullrank"] = rec.overdetermined_fullrank;
  j["unique_nonneg"] = tomo::to_string(rec.unique_nonneg);
  if (rec.unique_box) j["unique_box"] = tomo::to_string(*rec.unique_box);
  return j;
}

void run_trial_cmd(const TrialArgs& a) {
  tomo::Geometry g(a.dim, a.d);
  const tomo::SparseMatrix base = tomo::measurement_matrix(g);
  tomo::TrialConfig tc;
  tc.variant = a.variant == "perturbed" ? tomo::MatrixVariant::kPerturbed
                                        : tomo::MatrixVariant::kUnperturbed;
  tc.signal = a.signal == "binary" ? tomo::SignalKind::kBinary
                                   : tomo::SignalKind::kNonnegMultiplicity;
  tc.epsilon = a.epsilon;
  tc.normalization = parse_normalization(a.normalize);
  tc.probes = a.probes;
  print_manifest("trial", json{{"dim", a.dim},
                               {"d", a.d},
                               {"k", a.k},
                               {"variant", a.variant},
                               {"signal", a.signal},
                               {"epsilon", a.epsilon},
                               {"probes", a.probes},
                               {"seed", a.seed},
                               {"out", a.out}});
  const tomo::TrialRecord rec = tomo::run_trial(g, base, a.k, tc, a.seed);
  Output out(a.out);
  out.stream() << record_json(rec).dump(2) << "\n";
}

struct GridArgs {
  std::string config_path;
  int dim = 0;  // 0: keep the config file / default value
  std::vector<int> d_values;
  std::vector<double> rho_values;
  std::vector<int> k_values;
  int trials = -1;
  std::vector<std::string> variants;
  std::string signal;
  double epsilon = -1.0;
  int probes = -1;
  std::uint64_t seed = 0;
  bool seed_given = false;
  int jobs = -1;
  std::string out;
};

void run_grid_cmd(const GridArgs& a) {
  tomo::GridConfig cfg;
  if (!a.config_path.empty()) {
    std::ifstream in(a.config_path);
    if (!in) throw std::runtime_error("cannot open config: " + a.config_path);
    std::ostringstream ss;
    ss << in.rdbuf();
    cfg = tomo::grid_config_from_json(ss.str());
  } else {
    // Desk-scale defaults: the d-range of the published tables with a rho
    // sweep past the weak-recovery knee.
    cfg.d_values = {10, 15, 20, 25, 30};
    cfg.rho_values = {0.05, 0.1, 0.2, 0.3, 0.45, 0.66, 1.0, 1.4};
  }
  if (a.dim > 0) cfg.dim = a.dim;
  if (!a.d_values.empty()) cfg.d_values = a.d_values;
  if (!a.rho_values.empty()) {
    cfg.rho_values = a.rho_values;
    cfg.k_values.clear();
  }
  if (!a.k_values.empty()) {
    cfg.k_values = a.k_values;
    cfg.rho_values.clear();
  }
  if (a.trials >= 0) cfg.trials = a.trials;
  if (!a.variants.empty()) {
    cfg.variants.clear();
    for (const std::string& v : a.variants) {
      if (v == "unperturbed")
        cfg.variants.push_back(tomo::MatrixVariant::kUnperturbed);
      else if (v == "perturbed")
        cfg.variants.push_back(tomo::MatrixVariant::kPerturbed);
      else
        throw CLI::ValidationError("--variant", "unknown variant: " + v);
    }
  }
  if (!a.signal.empty())
    cfg.signal = a.signal == "binary" ? tomo::SignalKind::kBinary
                                      : tomo::SignalKind::kNonnegMultiplicity;
  if (a.epsilon >= 0.0) cfg.epsilon = a.epsilon;
  if (a.probes >= 0) cfg.probes = a.probes;
  if (a.seed_given) cfg.master_seed = a.seed;
  if (a.jobs >= 0) cfg.jobs = a.jobs;

  const auto t0 = std::chrono::steady_clock::now();
  const tomo::PhaseGrid grid = tomo::run_grid(cfg);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  json manifest = json::parse(tomo::grid_manifest(grid));
  manifest["command"] = "grid";
  manifest["wall_time_s"] = wall;
  manifest["out"] = a.out;
  std::cout << manifest.dump() << "\n";

  Output out(a.out);
  tomo::write_grid_csv(out.stream(), grid);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sparse binary ray transforms and LP uniqueness experiments"};
  app.require_subcommand(1);

  std::string format_mm = "mm";
  std::string format_csv = "csv";
  std::string format_json = "json";

  GenArgs gen;
  CLI::App* cmd_gen = app.add_subcommand(
      "gen-matrix", "write the measurement matrix in Matrix Market form");
  cmd_gen->add_option("--dim", gen.dim, "grid dimension")
      ->check(CLI::IsMember({2, 3}));
  cmd_gen->add_option("--d", gen.d, "grid side length")->required();
  cmd_gen->add_option("--perturb", gen.epsilon,
                      "entry jitter half-width (0: exact 0/1 matrix)");
  cmd_gen->add_option("--normalize", gen.normalize, "column normalization")
      ->check(CLI::IsMember({"none", "euclidean", "sum"}));
  cmd_gen->add_option("--seed", gen.seed, "perturbation seed");
  cmd_gen->add_option("--out", gen.out, "output file (default: stdout)");
  cmd_gen->add_option("--format", format_mm, "output format")
      ->check(CLI::IsMember({"mm"}));
  cmd_gen->callback([&gen] { run_gen_matrix(gen); });

  GenArgs nul;
  CLI::App* cmd_nul = app.add_subcommand(
      "nullspace", "write the kernel basis in Matrix Market form");
  cmd_nul->add_option("--dim", nul.dim, "grid dimension")
      ->check(CLI::IsMember({2, 3}));
  cmd_nul->add_option("--d", nul.d, "grid side length")->required();
  cmd_nul->add_option("--out", nul.out, "output file (default: stdout)");
  cmd_nul->add_option("--format", format_mm, "output format")
      ->check(CLI::IsMember({"mm"}));
  cmd_nul->callback([&nul] { run_nullspace(nul); });

  int th_dim = 3, th_d = 10;
  double th_delta = tomo::expansion_delta_unperturbed();
  std::string th_out;
  CLI::App* cmd_th = app.add_subcommand(
      "thresholds", "sparsity thresholds of the average-case analysis");
  cmd_th->add_option("--dim", th_dim, "grid dimension")
      ->check(CLI::IsMember({2, 3}));
  cmd_th->add_option("--d", th_d, "grid side length")->required();
  cmd_th->add_option("--delta", th_delta, "expansion level");
  cmd_th->add_option("--out", th_out, "output file (default: stdout)");
  cmd_th->add_option("--format", format_json, "output format")
      ->check(CLI::IsMember({"json"}));
  cmd_th->callback([&] { run_thresholds(th_dim, th_d, th_delta, th_out); });

  int cu_dim = 3, cu_d = 10, cu_kmax = 200;
  std::string cu_format = "csv", cu_out;
  CLI::App* cmd_cu = app.add_subcommand(
      "curves", "expected reduced dimensions for k = 1..k-max");
  cmd_cu->add_option("--dim", cu_dim, "grid dimension")
      ->check(CLI::IsMember({2, 3}));
  cmd_cu->add_option("--d", cu_d, "grid side length")->required();
  cmd_cu->add_option("--k-max", cu_kmax, "largest sparsity level");
  cmd_cu->add_option("--format", cu_format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd_cu->add_option("--out", cu_out, "output file (default: stdout)");
  cmd_cu->callback([&] { run_curves(cu_dim, cu_d, cu_kmax, cu_format, cu_out); });

  int tb_dim = 3, tb_d = 10;
  double tb_k = 10, tb_dev = 1;
  std::string tb_out;
  CLI::App* cmd_tb = app.add_subcommand(
      "tail-bound", "concentration bound on the nonzero-ray count");
  cmd_tb->add_option("--dim", tb_dim, "grid dimension")
      ->check(CLI::IsMember({2, 3}));
  cmd_tb->add_option("--d", tb_d, "grid side length")->required();
  cmd_tb->add_option("--k", tb_k, "sparsity level")->required();
  cmd_tb->add_option("--deviation", tb_dev, "absolute deviation")->required();
  cmd_tb->add_option("--out", tb_out, "output file (default: stdout)");
  cmd_tb->callback([&] { run_tail_bound(tb_dim, tb_d, tb_k, tb_dev, tb_out); });

  int we_n = 0, we_m = 0;
  std::string we_format = "text", we_out;
  CLI::App* cmd_we = app.add_subcommand(
      "wendel", "probability that n symmetric points share a half-space");
  cmd_we->add_option("--n", we_n, "number of points")->required();
  cmd_we->add_option("--m", we_m, "ambient dimension")->required();
  cmd_we->add_option("--format", we_format, "output format")
      ->check(CLI::IsMember({"text", "json"}));
  cmd_we->add_option("--out", we_out, "output file (default: stdout)");
  cmd_we->callback([&] { run_wendel(we_n, we_m, we_format, we_out); });

  VerifyArgs ver;
  CLI::App* cmd_ver = app.add_subcommand(
      "verify", "uniqueness verdicts for a planted signal");
  cmd_ver->add_option("--matrix", ver.matrix_path, "Matrix Market file")
      ->required();
  cmd_ver->add_option("--signal", ver.signal_path,
                      "JSON support list or {\"values\": [...]}")
      ->required();
  cmd_ver->add_flag("--certificate", ver.certificate,
                    "also search for a separating certificate");
  cmd_ver->add_flag("--force-probing", ver.force_probing,
                    "probe even when the rank shortcut applies");
  cmd_ver->add_option("--probes", ver.probes, "random objectives per verdict");
  cmd_ver->add_option("--seed", ver.seed, "probe seed");
  cmd_ver->add_option("--out", ver.out, "output file (default: stdout)");
  cmd_ver->callback([&ver] { run_verify(ver); });

  TrialArgs tr;
  CLI::App* cmd_tr = app.add_subcommand(
      "trial", "one seeded draw-measure-reduce-verify cycle");
  cmd_tr->add_option("--dim", tr.dim, "grid dimension")
      ->check(CLI::IsMember({2, 3}));
  cmd_tr->add_option("--d", tr.d, "grid side length")->required();
  cmd_tr->add_option("--k", tr.k, "sparsity level")->required();
  cmd_tr->add_option("--variant", tr.variant, "matrix variant")
      ->check(CLI::IsMember({"unperturbed", "perturbed"}));
  cmd_tr->add_option("--signal", tr.signal, "signal model")
      ->check(CLI::IsMember({"nonneg_multiplicity", "binary"}));
  cmd_tr->add_option("--epsilon", tr.epsilon, "perturbation half-width");
  cmd_tr->add_option("--normalize", tr.normalize, "column normalization")
      ->check(CLI::IsMember({"none", "euclidean", "sum"}));
  cmd_tr->add_option("--probes", tr.probes, "random objectives per verdict");
  cmd_tr->add_option("--seed", tr.seed, "trial seed");
  cmd_tr->add_option("--out", tr.out, "output file (default: stdout)");
  cmd_tr->callback([&tr] { run_trial_cmd(tr); });

  GridArgs gr;
  CLI::App* cmd_gr = app.add_subcommand(
      "grid", "Monte Carlo phase grid over (d, k) cells");
  cmd_gr->add_option("--config", gr.config_path, "JSON config file");
  cmd_gr->add_option("--dim", gr.dim, "grid dimension")
      ->check(CLI::IsMember({2, 3}));
  cmd_gr->add_option("--d", gr.d_values, "grid side lengths");
  cmd_gr->add_option("--rho", gr.rho_values, "relative sparsity levels");
  cmd_gr->add_option("--k", gr.k_values, "absolute sparsity levels");
  cmd_gr->add_option("--trials", gr.trials, "trials per cell");
  cmd_gr->add_option("--variant", gr.variants, "matrix variants")
      ->check(CLI::IsMember({"unperturbed", "perturbed"}));
  cmd_gr->add_option("--signal", gr.signal, "signal model")
      ->check(CLI::IsMember({"nonneg_multiplicity", "binary"}));
  cmd_gr->add_option("--epsilon", gr.epsilon, "perturbation half-width");
  cmd_gr->add_option("--probes", gr.probes, "random objectives per verdict");
  cmd_gr->add_option("--seed", gr.seed, "master seed")
      ->each([&gr](const std::string&) { gr.seed_given = true; });
  cmd_gr->add_option("--jobs", gr.jobs, "worker threads (0: all cores)");
  cmd_gr->add_option("--out", gr.out, "CSV output file (default: stdout)");
  cmd_gr->callback([&gr] { run_grid_cmd(gr); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
