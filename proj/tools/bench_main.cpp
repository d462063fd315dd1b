// SPDX-License-Identifier: Apache-2.0

//
// Four-way benchmark harness: solve the same regularized complex
// least-squares problem with the real-lifted and complex-native solver
// families, with operators given either as precomputed matrices or as
// blackbox function calls, and write per-iteration metrics as CSV.
//

#include <cstdint>
#include <cstdio>
#include <exception>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rlops/bench.hpp"
#include "rlops/core.hpp"

namespace {

using rlops::Index;
using namespace rlops::bench;

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream stream(csv);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

struct Dims {
  Index n = 0, m1 = 0, m2 = 0, p = 0;
};

Dims parse_dims(const std::string& csv) {
  const auto parts = split_list(csv);
  if (parts.size() != 4) throw CLI::ValidationError("--dims", "expected N,M1,M2,P");
  Dims d;
  d.n = std::stoll(parts[0]);
  d.m1 = std::stoll(parts[1]);
  d.m2 = std::stoll(parts[2]);
  d.p = std::stoll(parts[3]);
  return d;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Benchmark of real-lifted vs complex-native iterative least-squares solvers\n"
      "on problems mixing linear and antilinear (conjugating) operators."};

  std::uint64_t seed = 1;
  std::string scale = "desk";
  std::string dims_csv;
  double lambda = 1e-3;
  std::string solvers_csv = "landweber,cg,lsqr";
  std::string approaches_csv = "real-matrix,complex-matrix,real-funcall,complex-funcall";
  int iters_landweber = 50;
  int iters_krylov = 15;
  int timing_repeats = 3;
  std::string out_path = "metrics.csv";
  bool validate = false;

  app.add_option("--seed", seed, "Problem seed (bit-reproducible regeneration)")
      ->capture_default_str();
  app.add_option("--scale", scale, "Problem size: paper, desk, or custom")
      ->check(CLI::IsMember({"paper", "desk", "custom"}))
      ->capture_default_str();
  app.add_option("--dims", dims_csv, "Custom dimensions N,M1,M2,P (with --scale custom)");
  app.add_option("--lambda", lambda, "Regularization weight")->capture_default_str();
  app.add_option("--solvers", solvers_csv, "Comma list from: landweber,cg,lsqr")
      ->capture_default_str();
  app.add_option("--approaches", approaches_csv,
                 "Comma list from: real-matrix,complex-matrix,real-funcall,complex-funcall")
      ->capture_default_str();
  app.add_option("--iters-landweber", iters_landweber, "Landweber iterations")
      ->capture_default_str();
  app.add_option("--iters-krylov", iters_krylov, "CG/LSQR iterations")->capture_default_str();
  app.add_option("--timing-repeats", timing_repeats,
                 "Timed repeats per (approach, solver); 0 keeps the metric pass's times")
      ->capture_default_str();
  app.add_option("--out", out_path, "Output CSV path")->capture_default_str();
  app.add_flag("--validate", validate,
               "Solve the dense closed form and fail if the final CG/LSQR solutions "
               "deviate by more than 1e-4 relative");

  CLI11_PARSE(app, argc, argv);

  try {
    Dims dims;
    if (scale == "paper") {
      dims = {1000, 20000, 30000, 2000};
    } else if (scale == "desk") {
      dims = {100, 2000, 3000, 200};
    } else {
      if (dims_csv.empty())
        throw std::invalid_argument("--scale custom requires --dims N,M1,M2,P");
      dims = parse_dims(dims_csv);
    }

    BenchOptions options;
    options.approaches.clear();
    for (const auto& name : split_list(approaches_csv))
      options.approaches.push_back(approach_from_name(name));
    options.solvers.clear();
    for (const auto& name : split_list(solvers_csv))
      options.solvers.push_back(solver_from_name(name));
    options.iters_landweber = iters_landweber;
    options.iters_krylov = iters_krylov;
    options.timing_repeats = timing_repeats;

    std::cout << "generating problem: N=" << dims.n << " M1=" << dims.m1 << " M2=" << dims.m2
              << " P=" << dims.p << " lambda=" << lambda << " seed=" << seed << "\n";
    const BenchProblem problem =
        generate_problem(seed, dims.n, dims.m1, dims.m2, dims.p, lambda);

    std::cout << "running " << options.approaches.size() << " approaches x "
              << options.solvers.size() << " solvers"
              << " (landweber " << iters_landweber << " iters, krylov " << iters_krylov
              << " iters, " << timing_repeats << " timing repeats)\n";
    const std::vector<MetricsRow> rows = run_benchmark(problem, options);
    write_metrics(rows, out_path);
    std::cout << "wrote " << rows.size() << " rows to " << out_path << "\n";

    // Final-iteration summary per (approach, solver).
    std::map<std::pair<std::string, std::string>, MetricsRow> final_rows;
    for (const MetricsRow& row : rows) {
      auto& slot = final_rows[{row.solver, row.approach}];
      if (slot.approach.empty() || row.iteration > slot.iteration) slot = row;
    }
    std::printf("\n%-10s %-16s %6s %16s %14s %12s %12s\n", "solver", "approach", "iters",
                "real mults", "cost", "seconds", "rel diff");
    for (const auto& [key, row] : final_rows) {
      std::printf("%-10s %-16s %6d %16llu %14.6e %12.4e %12.4e\n", row.solver.c_str(),
                  row.approach.c_str(), row.iteration,
                  static_cast<unsigned long long>(row.cum_real_mults), row.cost,
                  row.elapsed_seconds, row.rel_diff);
    }

    if (validate) {
      std::cout << "\nvalidating against the dense closed-form solution...\n";
      const ValidationReport report = validate_against_oracle(problem, options);
      std::printf("%-10s %-16s %14s\n", "solver", "approach", "rel deviation");
      for (const ValidationRow& row : report.rows)
        std::printf("%-10s %-16s %14.6e\n", row.solver.c_str(), row.approach.c_str(),
                    row.rel_deviation);
      std::printf("max CG/LSQR deviation: %.6e (threshold 1e-4)\n",
                  report.max_krylov_deviation);
      if (!report.krylov_within_threshold) {
        std::cerr << "error: validation failed\n";
        return 1;
      }
      std::cout << "validation passed\n";
    }
    return 0;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
}
