#pragma once

#include <filesystem>
#include <string>
#include <tuple>
#include <vector>

#include "ckm/ckl.hpp"
#include "ckm/model.hpp"

namespace ckm {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Instance file: JSON object {n, cost, demand, capacity, k}; the CKL variant
// adds "facilities" and shapes cost as f x (f + |D|). Numbers are serialized
// with round-trip precision, so write/read is lossless and deterministic.
Instance read_instance(const std::filesystem::path& file);
void write_instance(const std::filesystem::path& file, const Instance& inst);
CklInstance read_ckl_instance(const std::filesystem::path& file);
void write_ckl_instance(const std::filesystem::path& file, const CklInstance& inst);

// Solution file: {open, assign (sparse [center, location, fraction] rows),
// cost, max_load_ratio, alpha, path}.
struct SolutionFile {
  std::vector<int> open;
  std::vector<std::tuple<int, int, double>> assign;
  double cost = 0.0;
  double max_load_ratio = 0.0;
  double alpha = 0.0;
  std::string path;
};

void write_solution(const std::filesystem::path& file, const IntegralSolution& sol,
                    double alpha, const std::string& path_label);
void write_ckl_solution(const std::filesystem::path& file, const CklSolution& sol,
                        double alpha, const std::string& path_label);
SolutionFile read_solution(const std::filesystem::path& file);

// Rebuilds the dense assignment from a parsed solution file.
IntegralSolution to_integral(const SolutionFile& parsed, int n);

// Shortest-round-trip decimal rendering used for CSV output.
std::string format_double(double v);

}  // namespace ckm
