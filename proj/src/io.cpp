#include "ckm/io.hpp"

#include <charconv>
#include <fstream>

#include <json.hpp>

namespace ckm {

namespace {

using nlohmann::json;

json load_json(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ParseError("cannot open " + file.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError("invalid JSON in " + file.string() + ": " + e.what());
  }
  return j;
}

void dump_json(const std::filesystem::path& file, const json& j) {
  std::ofstream out(file);
  if (!out) throw ParseError("cannot write " + file.string());
  out << j.dump(2) << "\n";
}

Matrix matrix_from_json(const json& j, std::size_t rows, std::size_t cols) {
  if (!j.is_array() || j.size() != rows) throw ParseError("cost matrix has wrong row count");
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) {
      throw ParseError("cost matrix has wrong column count");
    }
    for (std::size_t jj = 0; jj < cols; ++jj) m(i, jj) = j[i][jj].get<double>();
  }
  return m;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json solution_to_json(const std::vector<int>& open, const Matrix& assign, double cost,
                      double max_load_ratio, double alpha, const std::string& path_label) {
  json j;
  j["open"] = open;
  json sparse = json::array();
  for (std::size_t i = 0; i < assign.rows(); ++i) {
    for (std::size_t jj = 0; jj < assign.cols(); ++jj) {
      if (assign(i, jj) > 0.0) {
        sparse.push_back(json::array({i, jj, assign(i, jj)}));
      }
    }
  }
  j["assign"] = std::move(sparse);
  j["cost"] = cost;
  j["max_load_ratio"] = max_load_ratio;
  j["alpha"] = alpha;
  j["path"] = path_label;
  return j;
}

}  // namespace

Instance read_instance(const std::filesystem::path& file) {
  const json j = load_json(file);
  try {
    Instance inst;
    inst.n = j.at("n").get<int>();
    if (inst.n < 1) throw ParseError("n must be >= 1");
    const std::size_t n = static_cast<std::size_t>(inst.n);
    inst.cost = matrix_from_json(j.at("cost"), n, n);
    inst.demand = j.at("demand").get<std::vector<double>>();
    if (inst.demand.size() != n) throw ParseError("demand length must equal n");
    inst.capacity = j.at("capacity").get<double>();
    inst.k = j.at("k").get<int>();
    return inst;
  } catch (const json::exception& e) {
    throw ParseError("malformed instance file: " + std::string(e.what()));
  }
}

void write_instance(const std::filesystem::path& file, const Instance& inst) {
  json j;
  j["n"] = inst.n;
  j["cost"] = matrix_to_json(inst.cost);
  j["demand"] = inst.demand;
  j["capacity"] = inst.capacity;
  j["k"] = inst.k;
  dump_json(file, j);
}

CklInstance read_ckl_instance(const std::filesystem::path& file) {
  const json j = load_json(file);
  try {
    CklInstance inst;
    inst.f = j.at("facilities").get<int>();
    if (inst.f < 1) throw ParseError("facilities must be >= 1");
    inst.demand = j.at("demand").get<std::vector<double>>();
    inst.m = static_cast<int>(inst.demand.size());
    if (inst.m < 1) throw ParseError("at least one client demand required");
    inst.cost = matrix_from_json(j.at("cost"), static_cast<std::size_t>(inst.f),
                                 static_cast<std::size_t>(inst.f + inst.m));
    inst.capacity = j.at("capacity").get<double>();
    inst.k = j.at("k").get<int>();
    return inst;
  } catch (const json::exception& e) {
    throw ParseError("malformed CKL instance file: " + std::string(e.what()));
  }
}

void write_ckl_instance(const std::filesystem::path& file, const CklInstance& inst) {
  json j;
  j["facilities"] = inst.f;
  j["cost"] = matrix_to_json(inst.cost);
  j["demand"] = inst.demand;
  j["capacity"] = inst.capacity;
  j["k"] = inst.k;
  dump_json(file, j);
}

void write_solution(const std::filesystem::path& file, const IntegralSolution& sol,
                    double alpha, const std::string& path_label) {
  dump_json(file, solution_to_json(sol.open, sol.assign, sol.cost, sol.max_load_ratio,
                                   alpha, path_label));
}

void write_ckl_solution(const std::filesystem::path& file, const CklSolution& sol,
                        double alpha, const std::string& path_label) {
  dump_json(file, solution_to_json(sol.open, sol.assign, sol.cost, sol.max_load_ratio,
                                   alpha, path_label));
}

SolutionFile read_solution(const std::filesystem::path& file) {
  const json j = load_json(file);
  try {
    SolutionFile s;
    s.open = j.at("open").get<std::vector<int>>();
    for (const auto& entry : j.at("assign")) {
      s.assign.emplace_back(entry.at(0).get<int>(), entry.at(1).get<int>(),
                            entry.at(2).get<double>());
    }
    s.cost = j.at("cost").get<double>();
    s.max_load_ratio = j.at("max_load_ratio").get<double>();
    s.alpha = j.at("alpha").get<double>();
    s.path = j.at("path").get<std::string>();
    return s;
  } catch (const json::exception& e) {
    throw ParseError("malformed solution file: " + std::string(e.what()));
  }
}

IntegralSolution to_integral(const SolutionFile& parsed, int n) {
  IntegralSolution sol;
  sol.open = parsed.open;
  sol.open.resize(n, 0);
  sol.assign = Matrix(n, n);
  for (const auto& [center, location, fraction] : parsed.assign) {
    if (center < 0 || center >= n || location < 0 || location >= n) {
      throw ParseError("assignment entry out of range");
    }
    sol.assign(center, location) = fraction;
  }
  sol.cost = parsed.cost;
  sol.max_load_ratio = parsed.max_load_ratio;
  return sol;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace ckm
