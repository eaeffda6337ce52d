/*
 *  Copyright 2026 the netinf authors
 *
 *  Licensed under the Apache License, Version 2.0 (the "License");
 *  you may not use this file except in compliance with the License.
 *  You may obtain a copy of the License at
 *
 *       http://www.apache.org/licenses/LICENSE-2.0
 *
 *  Unless required by applicable law or agreed to in writing, software
 *  distributed under the License is distributed on an "AS IS" BASIS,
 *  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *  See the License for the specific language governing permissions and
 *  limitations under the License.
 */
#include "netinf/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "netinf/dataset_io.hpp"
#include "netinf/em.hpp"
#include "netinf/errors.hpp"
#include "netinf/model_io.hpp"
#include "netinf/netgraph.hpp"
#include "netinf/report.hpp"
#include "netinf/selection.hpp"
#include "netinf/simulate.hpp"
#include "netinf/text.hpp"

namespace netinf {

namespace {

namespace fs = std::filesystem;

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cli: cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw DataError("cli: write to '" + path.string() + "' failed");
}

fs::path prepare_out_dir(const std::string& dir) {
  const fs::path path(dir);
  std::error_code ec;
  fs::create_directories(path, ec);
  if (ec)
    throw DataError("cli: cannot create output directory '" + dir +
                    "': " + ec.message());
  return path;
}

struct ConfigUsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string trim_ws(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::pair<std::string, std::string>> read_flat_config(
    const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigUsageError("cannot open config file '" + path + "'");
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  long row = 0;
  while (std::getline(in, line)) {
    ++row;
    const std::string text = trim_ws(line);
    if (text.empty() || text[0] == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos)
      throw ConfigUsageError("config '" + path + "' line " +
                             std::to_string(row) + " is not key=value");
    entries.emplace_back(trim_ws(text.substr(0, eq)),
                         trim_ws(text.substr(eq + 1)));
  }
  return entries;
}

/// Expands a subcommand's --config file into ordinary flags. Keys use the
/// long option name without dashes; flags given on the command line win;
/// unknown keys are usage errors.
void apply_flat_config(const CLI::App& app, std::vector<std::string>& args) {
  if (args.empty() || args.front().empty() || args.front()[0] == '-') return;
  const CLI::App* sub = nullptr;
  for (const CLI::App* cand :
       app.get_subcommands([](const CLI::App*) { return true; }))
    if (cand->check_name(args.front())) {
      sub = cand;
      break;
    }
  if (sub == nullptr) return;

  std::string config_path;
  std::vector<std::string> rest;
  for (std::size_t i = 1; i < args.size(); ++i) {
    const std::string& arg = args[i];
    if (arg == "--config") {
      if (i + 1 >= args.size())
        throw ConfigUsageError("--config needs a file argument");
      config_path = args[++i];
    } else if (arg.rfind("--config=", 0) == 0) {
      config_path = arg.substr(9);
    } else {
      rest.push_back(arg);
    }
  }
  if (config_path.empty()) return;

  const auto given = [&rest](const std::string& name) {
    for (const std::string& arg : rest)
      if (arg == name || arg.rfind(name + "=", 0) == 0) return true;
    return false;
  };

  std::vector<std::string> expanded;
  expanded.push_back(args.front());
  for (const auto& [key, value] : read_flat_config(config_path)) {
    const std::string name = "--" + key;
    const CLI::Option* opt = sub->get_option_no_throw(name);
    if (opt == nullptr)
      throw ConfigUsageError("unknown config key '" + key +
                             "' for subcommand '" + sub->get_name() + "'");
    if (given(name)) continue;
    if (opt->get_expected_min() == 0) {
      if (value == "true" || value == "1" || value == "yes" || value.empty())
        expanded.push_back(name);
      else if (value != "false" && value != "0" && value != "no")
        throw ConfigUsageError("config key '" + key +
                               "' is a flag; got value '" + value + "'");
    } else {
      expanded.push_back(name);
      expanded.push_back(value);
    }
  }
  expanded.insert(expanded.end(), rest.begin(), rest.end());
  args = std::move(expanded);
}

std::string trace_csv(const std::vector<double>& trace) {
  std::string out = "iteration,loglik\n";
  for (std::size_t i = 0; i < trace.size(); ++i)
    out += std::to_string(i) + ',' + fmt_g17(trace[i]) + '\n';
  return out;
}

std::vector<double> parse_trace_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cli: cannot open trace file '" + path + "'");
  std::string line;
  if (!std::getline(in, line) || line.rfind("iteration,loglik", 0) != 0)
    throw DataError("cli: '" + path + "' is not a loglik trace CSV");
  std::vector<double> trace;
  long row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw DataError("cli: trace row " + std::to_string(row) +
                      " is malformed");
    trace.push_back(std::strtod(line.c_str() + comma + 1, nullptr));
  }
  return trace;
}

SelectionTable parse_selection_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cli: cannot open selection file '" + path + "'");
  std::string line;
  if (!std::getline(in, line) ||
      line.rfind("s_Z,s_B,s_F,s_A,k,loglik,P_eff,N,aicc,converged", 0) != 0)
    throw DataError("cli: '" + path + "' is not a selection table CSV");
  SelectionTable table;
  long row_no = 1;
  while (std::getline(in, line)) {
    ++row_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 10)
      throw DataError("cli: selection row " + std::to_string(row_no) +
                      " is malformed");
    SelectionRow row;
    row.s_Z = std::strtod(fields[0].c_str(), nullptr);
    row.s_B = std::strtod(fields[1].c_str(), nullptr);
    row.s_F = std::strtod(fields[2].c_str(), nullptr);
    row.s_A = std::strtod(fields[3].c_str(), nullptr);
    row.k = std::atoi(fields[4].c_str());
    row.loglik = std::strtod(fields[5].c_str(), nullptr);
    row.p_eff = std::strtoll(fields[6].c_str(), nullptr, 10);
    row.n_obs = std::strtoll(fields[7].c_str(), nullptr, 10);
    row.aicc = std::strtod(fields[8].c_str(), nullptr);
    row.converged = fields[9] == "true";
    table.rows.push_back(row);
  }
  table.best_index = best_row(table.rows);
  return table;
}

struct CommonFitOptions {
  std::string data_path;
  int hidden = 0;
  bool no_center = false;
  std::string init_kind = "data";
  std::string init_model;
  std::uint64_t seed = 0;
  double rel_tol = 1e-6;
  int max_iter = 500;
  int inner_sweeps = 1;
  double threshold = 1e-8;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--data", data_path, "input dataset CSV")->required();
    cmd->add_option("--hidden", hidden, "hidden state dimension k")
        ->required();
    cmd->add_flag("--no-center", no_center,
                  "skip per-gene grand-mean centering");
    cmd->add_option("--init", init_kind,
                    "initialization: data, random, or model")
        ->check(CLI::IsMember({"data", "random", "model"}));
    cmd->add_option("--init-model", init_model,
                    "model JSON for --init model");
    cmd->add_option("--seed", seed, "seed for --init random");
    cmd->add_option("--rel-tol", rel_tol, "EM relative tolerance");
    cmd->add_option("--max-iter", max_iter, "EM iteration cap");
    cmd->add_option("--inner-sweeps", inner_sweeps,
                    "M-step sweeps per iteration");
    cmd->add_option("--threshold", threshold,
                    "edge magnitude threshold for reports and graphs");
  }

  Dataset load() const { return load_dataset(data_path, !no_center); }

  InitSpec init(const Dataset& data, int k) const {
    if (init_kind == "random") return InitSpec::randomInit(seed);
    if (init_kind == "model") {
      if (init_model.empty())
        throw DataError("cli: --init model requires --init-model");
      LoadedModel loaded = load_model(init_model);
      if (loaded.params.obs_dim() != data.dims.p ||
          loaded.params.state_dim() != k)
        throw DataError("cli: --init-model dimensions do not match");
      return InitSpec::explicitInit(std::move(loaded.params));
    }
    return InitSpec::dataDriven();
  }

  ConvergenceOpts convergence() const {
    ConvergenceOpts opts;
    opts.rel_tol = rel_tol;
    opts.max_iter = max_iter;
    opts.inner_sweeps = inner_sweeps;
    return opts;
  }
};

void print_fit_header(const Dims& dims, const FitResult& fit) {
  std::cout << "genes: " << dims.p << "  hidden regulators: " << dims.k
            << '\n'
            << "dense parameter count: " << param_count(dims) << '\n'
            << "observations: " << observation_count(dims) << '\n'
            << "converged: " << (fit.converged ? "true" : "false")
            << "  iterations: " << fit.n_iter << '\n'
            << "final loglik: " << fmt_g(fit.loglik(), 10) << '\n';
}

int dispatch(int argc, const char* const* argv) {
  CLI::App app{
      "netinf: sparse dynamic gene interaction networks from replicated "
      "expression time series"};
  app.require_subcommand(1);
  std::string config_sink;

  // ---- simulate ----
  auto* sim = app.add_subcommand(
      "simulate", "draw a synthetic dataset and its ground-truth model");
  struct {
    int genes = 10;
    int hidden = 2;
    int times = 10;
    int replicates = 5;
    double density = 0.1;
    double scale = 0.5;
    std::uint64_t seed = 0;
    std::string out;
  } sim_opt;
  sim->add_option("--genes", sim_opt.genes, "observed gene count p");
  sim->add_option("--hidden", sim_opt.hidden, "hidden state dimension k");
  sim->add_option("--times", sim_opt.times, "time points per replicate");
  sim->add_option("--replicates", sim_opt.replicates, "replicate count");
  sim->add_option("--density", sim_opt.density,
                  "nonzero probability per truth entry");
  sim->add_option("--scale", sim_opt.scale, "truth entry magnitude bound");
  sim->add_option("--seed", sim_opt.seed, "RNG seed");
  sim->add_option("--out", sim_opt.out, "output directory")->required();
  sim->add_option("--config", config_sink,
                  "flat key=value config file; flags override config");
  sim->callback([&] {
    const Dims dims{sim_opt.genes, sim_opt.hidden, sim_opt.times,
                    sim_opt.replicates};
    const ModelParams truth = random_sparse_params(
        dims, sim_opt.density, sim_opt.scale, sim_opt.seed);
    const SimResult result = simulate(truth, dims, sim_opt.seed);
    const fs::path out = prepare_out_dir(sim_opt.out);
    save_dataset_csv(result.data, (out / "data.csv").string());
    save_model(truth, (out / "truth.json").string(),
               result.data.gene_names);
    std::cout << "wrote " << (out / "data.csv").string() << " and "
              << (out / "truth.json").string() << '\n';
  });

  // ---- fit ----
  auto* fit_cmd =
      app.add_subcommand("fit", "penalized EM fit at one budget tuple");
  CommonFitOptions fit_common;
  struct {
    double s_Z = 0.2, s_B = 0.2, s_F = 0.2, s_A = 0.2;
    std::string mode = "fraction";
    std::string out;
  } fit_opt;
  fit_common.add_to(fit_cmd);
  fit_cmd->add_option("--s-z", fit_opt.s_Z, "L1 budget for Z");
  fit_cmd->add_option("--s-b", fit_opt.s_B, "L1 budget for B");
  fit_cmd->add_option("--s-f", fit_opt.s_F, "L1 budget for F");
  fit_cmd->add_option("--s-a", fit_opt.s_A, "L1 budget for A");
  fit_cmd->add_option("--mode", fit_opt.mode, "budget mode")
      ->check(CLI::IsMember({"fraction", "absolute"}));
  fit_cmd->add_option("--out", fit_opt.out, "output directory")->required();
  fit_cmd->add_option("--config", config_sink,
                  "flat key=value config file; flags override config");
  fit_cmd->callback([&] {
    const Dataset data = fit_common.load();
    Dims dims = data.dims;
    dims.k = fit_common.hidden;
    Penalties pen;
    pen.s_Z = fit_opt.s_Z;
    pen.s_B = fit_opt.s_B;
    pen.s_F = fit_opt.s_F;
    pen.s_A = fit_opt.s_A;
    pen.mode = fit_opt.mode == "absolute" ? BudgetMode::absolute
                                          : BudgetMode::fraction;
    const FitResult fit =
        em_fit(data, dims, pen, fit_common.init(data, dims.k),
               fit_common.convergence());
    const fs::path out = prepare_out_dir(fit_opt.out);
    save_model(fit.params, (out / "model.json").string(), data.gene_names);
    write_file(out / "loglik_trace.csv", trace_csv(fit.loglik_trace));
    ReportInputs report;
    report.params = fit.params;
    report.gene_names = data.gene_names;
    report.threshold = fit_common.threshold;
    report.data_dims = dims;
    report.loglik_trace = fit.loglik_trace;
    write_file(out / "report.txt", render_report(report));
    print_fit_header(dims, fit);
    std::cout << "wrote model.json, loglik_trace.csv, report.txt under "
              << out.string() << '\n';
  });

  // ---- select ----
  auto* sel_cmd = app.add_subcommand(
      "select", "penalty-grid search with AICc model selection");
  CommonFitOptions sel_common;
  struct {
    std::vector<double> grid_z, grid_b, grid_f, grid_a;
    std::vector<int> k_grid;
    std::string search = "cd";
    std::string mode = "fraction";
    std::vector<std::string> hubs_in, hubs_out;
    int top_n = 10;
    std::string out;
  } sel_opt;
  sel_common.add_to(sel_cmd);
  sel_cmd->add_option("--grid-z", sel_opt.grid_z, "budget axis for Z")
      ->delimiter(',');
  sel_cmd->add_option("--grid-b", sel_opt.grid_b, "budget axis for B")
      ->delimiter(',');
  sel_cmd->add_option("--grid-f", sel_opt.grid_f, "budget axis for F")
      ->delimiter(',');
  sel_cmd->add_option("--grid-a", sel_opt.grid_a, "budget axis for A")
      ->delimiter(',');
  sel_cmd->add_option("--k-grid", sel_opt.k_grid,
                      "hidden dimensions to search")
      ->delimiter(',');
  sel_cmd->add_option("--search", sel_opt.search, "grid search strategy")
      ->check(CLI::IsMember({"cd", "full"}));
  sel_cmd->add_option("--mode", sel_opt.mode, "budget mode")
      ->check(CLI::IsMember({"fraction", "absolute"}));
  sel_cmd->add_option("--hubs-in", sel_opt.hubs_in,
                      "reference genes for the in-degree hub comparison")
      ->delimiter(',');
  sel_cmd->add_option("--hubs-out", sel_opt.hubs_out,
                      "reference genes for the out-degree hub comparison")
      ->delimiter(',');
  sel_cmd->add_option("--top", sel_opt.top_n, "list length in the report");
  sel_cmd->add_option("--out", sel_opt.out, "output directory")->required();
  sel_cmd->add_option("--config", config_sink,
                  "flat key=value config file; flags override config");
  sel_cmd->callback([&] {
    const Dataset data = sel_common.load();
    Dims dims = data.dims;
    dims.k = sel_common.hidden;
    GridSpec grid = GridSpec::default_grid({});
    if (!sel_opt.grid_z.empty()) grid.s_Z = sel_opt.grid_z;
    if (!sel_opt.grid_b.empty()) grid.s_B = sel_opt.grid_b;
    if (!sel_opt.grid_f.empty()) grid.s_F = sel_opt.grid_f;
    if (!sel_opt.grid_a.empty()) grid.s_A = sel_opt.grid_a;
    grid.k_values = sel_opt.k_grid;
    grid.search = sel_opt.search == "full"
                      ? GridSpec::Search::full_cross
                      : GridSpec::Search::coordinate_descent;
    grid.mode = sel_opt.mode == "absolute" ? BudgetMode::absolute
                                           : BudgetMode::fraction;
    const fs::path out = prepare_out_dir(sel_opt.out);
    SelectionResult result;
    try {
      result = select_model(data, dims, grid,
                            sel_common.init(data, dims.k),
                            sel_common.convergence());
    } catch (const SelectionError& e) {
      write_file(out / "selection.csv", e.table().to_csv());
      throw;
    }
    write_file(out / "selection.csv", result.table.to_csv());
    save_model(result.best_fit.params, (out / "model.json").string(),
               data.gene_names);
    write_file(out / "loglik_trace.csv",
               trace_csv(result.best_fit.loglik_trace));
    ReportInputs report;
    report.params = result.best_fit.params;
    report.gene_names = data.gene_names;
    report.threshold = sel_common.threshold;
    report.top_n = sel_opt.top_n;
    Dims best_dims = dims;
    best_dims.k = result.table.best().k;
    report.data_dims = best_dims;
    report.loglik_trace = result.best_fit.loglik_trace;
    report.selection = result.table;
    report.ref_hubs_in = sel_opt.hubs_in;
    report.ref_hubs_out = sel_opt.hubs_out;
    write_file(out / "report.txt", render_report(report));
    print_fit_header(best_dims, result.best_fit);
    std::cout << "candidates evaluated: " << result.table.rows.size() << '\n'
              << "wrote selection.csv, model.json, loglik_trace.csv, "
                 "report.txt under "
              << out.string() << '\n';
  });

  // ---- export-graph ----
  auto* exp_cmd = app.add_subcommand(
      "export-graph", "render a fitted model as dot, edge CSV, or JSON");
  struct {
    std::string model;
    std::string format = "dot";
    double threshold = 1e-8;
    std::string gene;
    std::string out;
  } exp_opt;
  exp_cmd->add_option("--model", exp_opt.model, "model JSON path")
      ->required();
  exp_cmd->add_option("--format", exp_opt.format, "output format")
      ->check(CLI::IsMember({"dot", "edge-csv", "json"}));
  exp_cmd->add_option("--threshold", exp_opt.threshold,
                      "edge magnitude threshold");
  exp_cmd->add_option("--gene", exp_opt.gene,
                      "restrict to the radius-1 neighborhood of this node");
  exp_cmd->add_option("--out", exp_opt.out, "output directory")->required();
  exp_cmd->add_option("--config", config_sink,
                  "flat key=value config file; flags override config");
  exp_cmd->callback([&] {
    const LoadedModel loaded = load_model(exp_opt.model);
    std::vector<std::string> names = loaded.gene_names;
    if (names.empty()) {
      for (int j = 0; j < loaded.params.obs_dim(); ++j)
        names.push_back("g" + std::to_string(j + 1));
    }
    InteractionGraph graph =
        assemble_graph(loaded.params, names, exp_opt.threshold);
    if (!exp_opt.gene.empty()) {
      const auto it =
          std::find(graph.nodes.begin(), graph.nodes.end(), exp_opt.gene);
      if (it == graph.nodes.end())
        throw DataError("cli: node '" + exp_opt.gene +
                        "' is not in the model");
      graph = neighborhood(graph,
                           static_cast<int>(it - graph.nodes.begin()));
    }
    const fs::path out = prepare_out_dir(exp_opt.out);
    fs::path file;
    GraphFormat format = GraphFormat::dot;
    if (exp_opt.format == "dot") {
      file = out / "graph.dot";
    } else if (exp_opt.format == "edge-csv") {
      format = GraphFormat::edge_csv;
      file = out / "graph.csv";
    } else {
      format = GraphFormat::json;
      file = out / "graph.json";
    }
    write_file(file, export_graph(graph, format));
    std::cout << "wrote " << file.string() << '\n';
  });

  // ---- report ----
  auto* rep_cmd = app.add_subcommand(
      "report", "render a plain-text summary from saved artifacts");
  struct {
    std::string model;
    std::string selection;
    std::string trace;
    double threshold = 1e-8;
    int top_n = 10;
    std::vector<std::string> hubs_in, hubs_out;
    std::string out;
  } rep_opt;
  rep_cmd->add_option("--model", rep_opt.model, "model JSON path")
      ->required();
  rep_cmd->add_option("--selection", rep_opt.selection,
                      "selection table CSV from a select run");
  rep_cmd->add_option("--trace", rep_opt.trace,
                      "loglik trace CSV from a fit or select run");
  rep_cmd->add_option("--threshold", rep_opt.threshold,
                      "edge magnitude threshold");
  rep_cmd->add_option("--top", rep_opt.top_n, "list length in the report");
  rep_cmd->add_option("--hubs-in", rep_opt.hubs_in,
                      "reference genes for the in-degree hub comparison")
      ->delimiter(',');
  rep_cmd->add_option("--hubs-out", rep_opt.hubs_out,
                      "reference genes for the out-degree hub comparison")
      ->delimiter(',');
  rep_cmd->add_option("--out", rep_opt.out, "output directory")->required();
  rep_cmd->add_option("--config", config_sink,
                  "flat key=value config file; flags override config");
  rep_cmd->callback([&] {
    const LoadedModel loaded = load_model(rep_opt.model);
    ReportInputs report;
    report.params = loaded.params;
    report.gene_names = loaded.gene_names;
    if (report.gene_names.empty()) {
      for (int j = 0; j < loaded.params.obs_dim(); ++j)
        report.gene_names.push_back("g" + std::to_string(j + 1));
    }
    report.threshold = rep_opt.threshold;
    report.top_n = rep_opt.top_n;
    report.ref_hubs_in = rep_opt.hubs_in;
    report.ref_hubs_out = rep_opt.hubs_out;
    const fs::path out = prepare_out_dir(rep_opt.out);
    if (!rep_opt.trace.empty()) {
      report.loglik_trace = parse_trace_csv(rep_opt.trace);
      write_file(out / "loglik_trace.csv", trace_csv(report.loglik_trace));
    }
    if (!rep_opt.selection.empty())
      report.selection = parse_selection_csv(rep_opt.selection);
    write_file(out / "report.txt", render_report(report));
    std::cout << "wrote " << (out / "report.txt").string() << '\n';
  });

  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    apply_flat_config(app, args);
  } catch (const ConfigUsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  }
  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  try {
    return dispatch(argc, argv);
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return 2;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return 3;
  } catch (const SelectionError& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace netinf
