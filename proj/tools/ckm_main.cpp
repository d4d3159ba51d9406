#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ckm/ckl.hpp"
#include "ckm/generator.hpp"
#include "ckm/io.hpp"
#include "ckm/lp.hpp"
#include "ckm/oracle.hpp"
#include "ckm/pipeline.hpp"
#include "ckm/trace.hpp"
#include "ckm/verify.hpp"

namespace {

// Exit codes: 0 success, 1 usage, 2 invalid instance, 3 infeasible,
// 4 verifier failure, 5 numerical-margin abort.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitVerify = 4;
constexpr int kExitNumerical = 5;

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::filesystem::path trace_path(const std::filesystem::path& solution_path) {
  std::filesystem::path p = solution_path;
  p.replace_extension();
  p += ".trace.txt";
  return p;
}

int report_validation(const std::vector<std::string>& report) {
  bool only_demand = true;
  for (const auto& line : report) {
    std::cerr << "invalid instance: " << line << "\n";
    if (line.find("total demand") == std::string::npos) only_demand = false;
  }
  return only_demand ? kExitInfeasible : kExitInvalid;
}

int run_solve_ckm(const std::filesystem::path& instance_path,
                  const std::filesystem::path& output, double alpha, bool trace) {
  const ckm::Instance inst = ckm::read_instance(instance_path);
  const auto report = ckm::validate_instance(inst);
  if (!report.empty()) return report_validation(report);

  ckm::PipelineOptions options;
  options.strict_checks = true;
  options.refine_cost = true;
  options.collect_trace = trace;
  const ckm::PipelineResult result = ckm::solve_ckm(inst, alpha, options);

  ckm::write_solution(output, result.solution, alpha, result.path);

  std::cout << "instance: " << instance_path.string() << " (n=" << inst.n
            << ", k=" << inst.k << ", M=" << inst.capacity << ")\n";
  std::cout << "alpha: " << alpha << "\n";
  std::cout << "path: " << result.path << "\n";
  std::cout << "C_LP: " << result.report.c_lp << "\n";
  std::cout << "cost: " << result.report.cost << " (" << result.report.cost_ratio
            << " x C_LP, bound factor " << result.report.cost_bound_factor << ")\n";
  std::cout << "centers opened: " << result.report.centers_open << " of k=" << inst.k << "\n";
  std::cout << "max load ratio: " << result.report.max_load_ratio << " (bound "
            << result.report.load_bound << ")\n";
  if (result.refined_cost) {
    std::cout << "refined cost (transportation re-solve): " << *result.refined_cost << "\n";
  }
  std::cout << "solution written to " << output.string() << "\n";
  if (trace && result.trace) {
    const auto tp = trace_path(output);
    std::ofstream out(tp);
    out << ckm::render_trace(*result.trace);
    std::cout << "trace written to " << tp.string() << "\n";
  }
  if (!result.report.all_ok()) {
    std::cerr << "verifier failure on " << instance_path.string() << "\n";
    return kExitVerify;
  }
  return kExitOk;
}

int run_solve_ckl(const std::filesystem::path& instance_path,
                  const std::filesystem::path& output, double alpha, bool trace) {
  const ckm::CklInstance inst = ckm::read_ckl_instance(instance_path);
  const auto report = ckm::validate_ckl_instance(inst);
  if (!report.empty()) return report_validation(report);

  const ckm::CklReduction red = ckm::reduce_to_ckm(inst);
  ckm::PipelineOptions options;
  options.strict_checks = true;
  options.collect_trace = trace;
  const ckm::PipelineResult inner = ckm::solve_ckm(red.ckm, alpha, options);
  const ckm::CklSolution sol = ckm::compose_back(inst, inner.solution, red.x0);

  ckm::write_ckl_solution(output, sol, alpha, inner.path);

  std::cout << "instance: " << instance_path.string() << " (|F|=" << inst.f
            << ", |D|=" << inst.m << ", k=" << inst.k << ", M=" << inst.capacity << ")\n";
  std::cout << "alpha: " << alpha << "\n";
  std::cout << "path: " << inner.path << " (induced location instance)\n";
  std::cout << "fractional cost of the relaxation: " << red.cost0 << "\n";
  std::cout << "induced-instance C_LP: " << inner.report.c_lp << "\n";
  std::cout << "composed cost: " << sol.cost << "\n";
  std::cout << "centers opened: " << inner.report.centers_open << " of k=" << inst.k << "\n";
  std::cout << "max facility load ratio: " << sol.max_load_ratio << " (bound "
            << 2.0 + 2.0 / alpha << ")\n";
  std::cout << "solution written to " << output.string() << "\n";
  if (trace && inner.trace) {
    const auto tp = trace_path(output);
    std::ofstream out(tp);
    out << ckm::render_trace(*inner.trace);
    std::cout << "trace written to " << tp.string() << "\n";
  }

  const double load_bound = (2.0 + 2.0 / alpha) * inst.capacity;
  bool ok = inner.report.centers_ok;
  for (int j = 0; j < inst.m; ++j) {
    double col = 0.0;
    for (int i = 0; i < inst.f; ++i) col += sol.assign(i, j);
    if (std::abs(col - 1.0) > ckm::kTol) ok = false;
  }
  if (sol.max_load_ratio * inst.capacity > load_bound + ckm::kTol) ok = false;
  if (!ok) {
    std::cerr << "verifier failure on " << instance_path.string() << "\n";
    return kExitVerify;
  }
  return kExitOk;
}

int run_gen(const std::filesystem::path& output, const ckm::GenParams& params) {
  const ckm::Instance inst = ckm::generate_instance(params);
  const auto report = ckm::validate_instance(inst);
  if (!report.empty()) return report_validation(report);
  ckm::write_instance(output, inst);
  std::cout << "instance written to " << output.string() << " (n=" << inst.n
            << ", k=" << inst.k << ", M=" << inst.capacity << ")\n";
  return kExitOk;
}

struct BenchParams {
  int count = 10;
  int n_lo = 6;
  int n_hi = 12;
  std::vector<double> alphas;
  std::uint64_t seed = 1;
  std::string output;
};

int run_bench(const BenchParams& bench) {
  std::ostringstream csv;
  csv << "seed,n,alpha,C_LP,OPT?,rounded cost,ratio-vs-LP,centers,max-load-ratio,"
         "easy-case?\n";

  std::uint64_t stream = bench.seed;
  for (int idx = 0; idx < bench.count; ++idx) {
    ckm::GenParams params;
    const std::uint64_t inst_seed = splitmix64(stream);
    params.seed = inst_seed;
    params.n = bench.n_lo +
               static_cast<int>(splitmix64(stream) %
                                static_cast<std::uint64_t>(bench.n_hi - bench.n_lo + 1));
    params.k = 2 + static_cast<int>(splitmix64(stream) %
                                    static_cast<std::uint64_t>(std::max(1, params.n / 2)));
    params.utilization =
        0.7 + 0.3 * (static_cast<double>(splitmix64(stream) >> 11) * 0x1.0p-53);
    const ckm::Instance inst = ckm::generate_instance(params);

    const ckm::FractionalSolution frac = ckm::solve_ckm_fractional(inst);
    std::optional<double> opt_cost;
    if (inst.n <= 12) {
      const auto opt = ckm::exact_opt(inst, 1.0);
      if (opt) opt_cost = opt->cost;
    }

    for (const double alpha : bench.alphas) {
      ckm::PipelineOptions options;
      options.strict_checks = true;
      const ckm::PipelineResult result =
          ckm::solve_ckm_with_fractional(inst, frac, alpha, options);
      if (!result.report.all_ok()) {
        std::cerr << "verifier failure at seed " << inst_seed << " (n=" << inst.n
                  << ", alpha=" << alpha << ")\n";
        return kExitVerify;
      }
      csv << inst_seed << "," << inst.n << "," << ckm::format_double(alpha) << ","
          << ckm::format_double(result.report.c_lp) << ","
          << (opt_cost ? ckm::format_double(*opt_cost) : "") << ","
          << ckm::format_double(result.report.cost) << ","
          << ckm::format_double(result.report.cost_ratio) << ","
          << result.report.centers_open << ","
          << ckm::format_double(result.report.max_load_ratio) << ","
          << (result.path == "easy" ? 1 : 0) << "\n";
    }
  }

  if (bench.output.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream out(bench.output);
    if (!out) {
      std::cerr << "cannot write " << bench.output << "\n";
      return kExitUsage;
    }
    out << csv.str();
    std::cout << "benchmark written to " << bench.output << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"capacitated k-median rounding toolkit"};
  app.require_subcommand(1);

  std::string instance_path;
  std::string output = "solution.json";
  double alpha = 4.0;
  std::string model = "ckm";
  bool trace = false;
  auto* solve = app.add_subcommand("solve", "solve an instance file");
  solve->add_option("instance", instance_path, "instance JSON file")->required();
  solve->add_option("-o,--output", output, "solution output path");
  solve->add_option("--alpha", alpha, "rounding parameter (>= 4)");
  solve->add_option("--model", model, "ckm | ckl")
      ->check(CLI::IsMember({"ckm", "ckl"}));
  solve->add_flag("--trace", trace, "write a per-step trace next to the solution");

  ckm::GenParams gen_params;
  std::string gen_output = "instance.json";
  std::string geometry = "plane";
  double gen_capacity = -1.0;
  int gen_k = -1;
  auto* gen = app.add_subcommand("gen", "generate a random instance");
  gen->add_option("--n", gen_params.n, "number of locations")->required();
  gen->add_option("--seed", gen_params.seed, "random seed")->required();
  gen->add_option("--demand-max", gen_params.demand_max, "demand upper bound");
  gen->add_option("--capacity", gen_capacity, "uniform capacity M");
  gen->add_option("--k", gen_k, "center budget");
  gen->add_option("--geometry", geometry, "plane | uniform-matrix")
      ->check(CLI::IsMember({"plane", "uniform-matrix"}));
  gen->add_option("-o,--output", gen_output, "instance output path");

  BenchParams bench;
  std::string n_range = "6..12";
  std::string alpha_list = "4";
  auto* bench_cmd = app.add_subcommand("bench", "run the benchmark harness");
  bench_cmd->add_option("--count", bench.count, "number of instances")->required();
  bench_cmd->add_option("--n-range", n_range, "instance size range LO..HI");
  bench_cmd->add_option("--alpha-list", alpha_list, "comma-separated alphas");
  bench_cmd->add_option("--seed", bench.seed, "base seed");
  bench_cmd->add_option("-o,--output", bench.output, "CSV output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (solve->parsed()) {
      if (alpha < 4.0) {
        std::cerr << "alpha must be >= 4\n";
        return kExitUsage;
      }
      return model == "ckl" ? run_solve_ckl(instance_path, output, alpha, trace)
                            : run_solve_ckm(instance_path, output, alpha, trace);
    }
    if (gen->parsed()) {
      if (gen_capacity > 0.0) gen_params.capacity = gen_capacity;
      if (gen_k > 0) gen_params.k = gen_k;
      gen_params.geometry =
          geometry == "plane" ? ckm::GenGeometry::Plane : ckm::GenGeometry::UniformMatrix;
      return run_gen(gen_output, gen_params);
    }
    if (bench_cmd->parsed()) {
      const auto sep = n_range.find("..");
      if (sep == std::string::npos) {
        std::cerr << "--n-range must look like LO..HI\n";
        return kExitUsage;
      }
      bench.n_lo = std::stoi(n_range.substr(0, sep));
      bench.n_hi = std::stoi(n_range.substr(sep + 2));
      if (bench.n_lo < 1 || bench.n_hi < bench.n_lo) {
        std::cerr << "--n-range must satisfy 1 <= LO <= HI\n";
        return kExitUsage;
      }
      std::stringstream ss(alpha_list);
      std::string tok;
      while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) bench.alphas.push_back(std::stod(tok));
      }
      if (bench.alphas.empty()) {
        std::cerr << "--alpha-list must contain at least one value\n";
        return kExitUsage;
      }
      for (const double a : bench.alphas) {
        if (a < 4.0) {
          std::cerr << "alpha must be >= 4\n";
          return kExitUsage;
        }
      }
      return run_bench(bench);
    }
  } catch (const ckm::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitInvalid;
  } catch (const ckm::InfeasibleError& e) {
    std::cerr << e.what() << "\n";
    return kExitInfeasible;
  } catch (const ckm::NumericalMarginError& e) {
    std::cerr << "numerical-margin abort: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const ckm::IterationLimitError& e) {
    std::cerr << "numerical-margin abort: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}
