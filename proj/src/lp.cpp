#include "ckm/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

namespace ckm {

namespace {

constexpr double kReducedCostEps = 1e-9;
constexpr double kPivotEps = 1e-7;      // preferred minimum pivot magnitude
constexpr double kPivotEpsWeak = 1e-9;  // fallback when no solid pivot exists
constexpr double kRatioTieEps = 1e-9;

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Solves B z = b in place via LU with partial pivoting. Returns false when B
// is numerically singular.
bool lu_solve(std::vector<double>& B, std::vector<double>& b, int m) {
  std::vector<int> perm(m);
  for (int i = 0; i < m; ++i) perm[i] = i;
  for (int col = 0; col < m; ++col) {
    int piv = col;
    for (int r = col + 1; r < m; ++r) {
      if (std::abs(B[static_cast<std::size_t>(r) * m + col]) >
          std::abs(B[static_cast<std::size_t>(piv) * m + col])) {
        piv = r;
      }
    }
    if (std::abs(B[static_cast<std::size_t>(piv) * m + col]) < 1e-12) return false;
    if (piv != col) {
      for (int j = 0; j < m; ++j) {
        std::swap(B[static_cast<std::size_t>(piv) * m + j],
                  B[static_cast<std::size_t>(col) * m + j]);
      }
      std::swap(b[piv], b[col]);
    }
    const double d = B[static_cast<std::size_t>(col) * m + col];
    for (int r = col + 1; r < m; ++r) {
      const double f = B[static_cast<std::size_t>(r) * m + col] / d;
      if (f == 0.0) continue;
      B[static_cast<std::size_t>(r) * m + col] = 0.0;
      for (int j = col + 1; j < m; ++j) {
        B[static_cast<std::size_t>(r) * m + j] -= f * B[static_cast<std::size_t>(col) * m + j];
      }
      b[r] -= f * b[col];
    }
  }
  for (int r = m - 1; r >= 0; --r) {
    double v = b[r];
    for (int j = r + 1; j < m; ++j) v -= B[static_cast<std::size_t>(r) * m + j] * b[j];
    b[r] = v / B[static_cast<std::size_t>(r) * m + r];
  }
  return true;
}

// Two-phase dense-tableau simplex for min c*x, Ax {<=,=} b, x >= 0.
// Rows must arrive with rhs >= 0 (the caller normalizes signs).
class SimplexTableau {
 public:
  SimplexTableau(const LpProblem& p, const std::vector<LpRow>& rows)
      : nvars_(p.num_vars), m_(static_cast<int>(rows.size())) {
    nslack_ = 0;
    nart_ = 0;
    for (const auto& r : rows) {
      if (r.sense == RowSense::LessEq) {
        ++nslack_;
      } else {
        ++nart_;
      }
    }
    ncols_ = nvars_ + nslack_ + nart_;
    width_ = ncols_ + 1;  // + rhs
    tab_.assign(static_cast<std::size_t>(m_ + 2) * width_, 0.0);
    basis_.assign(m_, -1);

    int slack_next = nvars_;
    int art_next = nvars_ + nslack_;
    art_begin_ = art_next;
    for (int r = 0; r < m_; ++r) {
      double* row = row_ptr(r);
      for (const auto& [j, v] : rows[r].coeffs) row[j] += v;
      row[ncols_] = rows[r].rhs;
      if (rows[r].sense == RowSense::LessEq) {
        row[slack_next] = 1.0;
        basis_[r] = slack_next++;
      } else {
        row[art_next] = 1.0;
        basis_[r] = art_next++;
      }
    }
    // Pristine copy of the constraint rows; the final basic values are
    // re-solved against it so hundreds of pivots cannot smear feasibility.
    original_.assign(tab_.begin(), tab_.begin() + static_cast<std::size_t>(m_) * width_);

    // Phase-2 reduced costs (basis costs are all zero initially).
    double* z2 = row_ptr(m_);
    for (int j = 0; j < nvars_; ++j) z2[j] = p.objective[j];

    // Phase-1 reduced costs: cost 1 on artificials, priced out against the
    // artificial starting basis.
    double* z1 = row_ptr(m_ + 1);
    for (int j = art_begin_; j < ncols_; ++j) z1[j] = 1.0;
    for (int r = 0; r < m_; ++r) {
      if (basis_[r] >= art_begin_) {
        const double* row = row_ptr(r);
        for (int j = 0; j <= ncols_; ++j) z1[j] -= row[j];
      }
    }
  }

  LpResult solve(const LpProblem& p) {
    LpResult res;
    const long cap = 2000 + 200L * (m_ + ncols_);

    if (nart_ > 0) {
      if (!optimize(m_ + 1, cap)) throw IterationLimitError("simplex iteration cap exceeded in phase 1");
      const double phase1 = -row_ptr(m_ + 1)[ncols_];
      if (phase1 > 1e-7) {
        res.status = LpStatus::Infeasible;
        res.iterations = iterations_;
        return res;
      }
      drive_out_artificials();
    }
    phase1_done_ = true;
    if (!optimize(m_, cap)) throw IterationLimitError("simplex iteration cap exceeded in phase 2");
    if (unbounded_) {
      res.status = LpStatus::Unbounded;
      res.iterations = iterations_;
      return res;
    }

    res.status = LpStatus::Optimal;
    res.x.assign(nvars_, 0.0);
    refine_basic_values();
    for (int r = 0; r < m_; ++r) {
      if (basis_[r] < nvars_) res.x[basis_[r]] = row_ptr(r)[ncols_];
    }
    for (double& v : res.x) {
      if (v < 0.0 && v > -1e-9) v = 0.0;
    }
    res.objective = std::inner_product(res.x.begin(), res.x.end(), p.objective.begin(), 0.0);
    res.iterations = iterations_;
    return res;
  }

 private:
  double* row_ptr(int r) { return tab_.data() + static_cast<std::size_t>(r) * width_; }
  const double* row_ptr(int r) const { return tab_.data() + static_cast<std::size_t>(r) * width_; }

  bool column_allowed(int j) const {
    // Artificials may never re-enter; in phase 2 they are priced out entirely.
    return j < art_begin_;
  }

  int pick_entering(const double* z, bool bland) const {
    int best = -1;
    double best_val = -kReducedCostEps;
    for (int j = 0; j < ncols_; ++j) {
      if (!column_allowed(j)) continue;
      if (z[j] < best_val) {
        if (bland) return j;
        best_val = z[j];
        best = j;
      }
    }
    return best;
  }

  // Min-ratio test with the ratio clamped at zero (tiny negative rhs from
  // rounding must not produce negative ratios, which would derail the walk).
  // Ties go to the row whose basic variable has the lowest index, the
  // Bland-compatible rule; among equal-basic candidates the larger pivot wins
  // via the scan order. Rows with only sub-threshold pivots are considered
  // in a second pass so near-singular columns do not masquerade as unbounded.
  int pick_leaving(int e) const {
    for (const double eps : {kPivotEps, kPivotEpsWeak}) {
      int best_row = -1;
      double best_ratio = 0.0;
      for (int r = 0; r < m_; ++r) {
        const double a = row_ptr(r)[e];
        if (a <= eps) continue;
        const double ratio = std::max(row_ptr(r)[ncols_], 0.0) / a;
        if (best_row < 0 || ratio < best_ratio - kRatioTieEps * (1.0 + best_ratio)) {
          best_row = r;
          best_ratio = ratio;
        } else if (ratio <= best_ratio + kRatioTieEps * (1.0 + best_ratio) &&
                   basis_[r] < basis_[best_row]) {
          best_row = r;
        }
      }
      if (best_row >= 0) return best_row;
    }
    return -1;
  }

  void pivot(int r, int e) {
    double* prow = row_ptr(r);
    const double pv = prow[e];
    for (int j = 0; j <= ncols_; ++j) prow[j] /= pv;
    prow[e] = 1.0;
    const int last_row = phase1_done_ ? m_ : m_ + 1;
    for (int rr = 0; rr <= last_row; ++rr) {
      if (rr == r) continue;
      double* row = row_ptr(rr);
      const double f = row[e];
      if (f == 0.0) continue;
      for (int j = 0; j <= ncols_; ++j) row[j] -= f * prow[j];
      row[e] = 0.0;
    }
    basis_[r] = e;
    // Rounding can leave a basic value a hair below zero; clamp it so later
    // ratio tests keep a feasible basis. Anything materially negative means
    // the walk has gone wrong.
    for (int rr = 0; rr < m_; ++rr) {
      double& rhs = row_ptr(rr)[ncols_];
      if (rhs < 0.0) {
        if (rhs < -1e-6) {
          throw IterationLimitError("simplex lost primal feasibility");
        }
        rhs = 0.0;
      }
    }
  }

  // Runs pivots until the z-row at `zrow` has no negative reduced cost.
  // Dantzig's rule drives progress; after a degenerate stall the walk switches
  // permanently to Bland's rule, which cannot cycle. Returns false on the
  // iteration cap.
  bool optimize(int zrow, long cap) {
    bool bland = false;
    long stall = 0;
    const long stall_limit = 20 + m_ + ncols_;
    double last_obj = row_ptr(zrow)[ncols_];
    while (true) {
      const int e = pick_entering(row_ptr(zrow), bland);
      if (e < 0) return true;
      const int r = pick_leaving(e);
      if (r < 0) {
        unbounded_ = true;
        return true;
      }
      pivot(r, e);
      if (++iterations_ > cap) return false;
      // The z-row rhs is nondecreasing on a feasible basis (the objective is
      // its negation); count iterations without a strict increase as a stall.
      const double obj = row_ptr(zrow)[ncols_];
      if (obj <= last_obj + 1e-12 * (1.0 + std::abs(last_obj))) {
        if (++stall > stall_limit) bland = true;
      } else {
        stall = 0;
      }
      last_obj = obj;
    }
  }

  // Recomputes the basic values from the untouched constraint copy: with the
  // final basis fixed, B z = b solved fresh removes the drift accumulated by
  // the pivot updates.
  void refine_basic_values() {
    std::vector<double> B(static_cast<std::size_t>(m_) * m_, 0.0);
    std::vector<double> b(m_);
    for (int r = 0; r < m_; ++r) {
      const double* orig = original_.data() + static_cast<std::size_t>(r) * width_;
      b[r] = orig[ncols_];
      for (int i = 0; i < m_; ++i) B[static_cast<std::size_t>(r) * m_ + i] = orig[basis_[i]];
    }
    if (!lu_solve(B, b, m_)) return;  // singular: keep the tableau values
    for (int r = 0; r < m_; ++r) {
      row_ptr(r)[ncols_] = b[r] < 0.0 && b[r] > -1e-9 ? 0.0 : b[r];
    }
  }

  // After phase 1, pivot basic artificials (all at value 0) out of the basis
  // where possible. Rows with no eligible pivot column are redundant and keep
  // their zero-valued artificial, which is harmless since artificials never
  // re-enter.
  void drive_out_artificials() {
    for (int r = 0; r < m_; ++r) {
      if (basis_[r] < art_begin_) continue;
      const double* row = row_ptr(r);
      int e = -1;
      for (int j = 0; j < art_begin_; ++j) {
        if (std::abs(row[j]) > 1e-7) {
          e = j;
          break;
        }
      }
      if (e >= 0) pivot(r, e);
    }
  }

  int nvars_, m_, nslack_ = 0, nart_ = 0, ncols_ = 0, width_ = 0, art_begin_ = 0;
  std::vector<double> tab_;
  std::vector<double> original_;
  std::vector<int> basis_;
  long iterations_ = 0;
  bool unbounded_ = false;
  bool phase1_done_ = false;
};

// Expands finite upper bounds into explicit rows. All LPs built in this
// project have non-negative rhs, which the tableau construction relies on.
std::vector<LpRow> normalized_rows(const LpProblem& p) {
  std::vector<LpRow> rows = p.rows;
  for (int j = 0; j < p.num_vars; ++j) {
    const double ub = p.upper.empty() ? kInf : p.upper[j];
    if (ub < kInf) {
      rows.push_back(LpRow{{{j, 1.0}}, RowSense::LessEq, ub});
    }
  }
  for (const auto& r : rows) {
    if (r.rhs < 0.0) throw std::invalid_argument("solve_lp requires non-negative rhs");
  }
  return rows;
}

}  // namespace

LpProblem build_capacitated_assignment_lp(int nc, int m, const Matrix& cost,
                                          const std::vector<double>& demand,
                                          double capacity, int k) {
  LpProblem p;
  p.num_vars = nc * m + nc;
  p.objective.assign(p.num_vars, 0.0);
  p.upper.assign(p.num_vars, kInf);
  const auto xvar = [m](int i, int j) { return i * m + j; };
  const int ybase = nc * m;

  for (int i = 0; i < nc; ++i) {
    p.upper[ybase + i] = 1.0;
    for (int j = 0; j < m; ++j) p.objective[xvar(i, j)] = demand[j] * cost(i, j);
  }

  for (int j = 0; j < m; ++j) {
    LpRow row;
    row.sense = RowSense::Eq;
    row.rhs = 1.0;
    for (int i = 0; i < nc; ++i) row.coeffs.emplace_back(xvar(i, j), 1.0);
    p.rows.push_back(std::move(row));
  }
  for (int i = 0; i < nc; ++i) {
    LpRow row;
    row.sense = RowSense::LessEq;
    row.rhs = 0.0;
    for (int j = 0; j < m; ++j) {
      if (demand[j] != 0.0) row.coeffs.emplace_back(xvar(i, j), demand[j]);
    }
    row.coeffs.emplace_back(ybase + i, -capacity);
    p.rows.push_back(std::move(row));
  }
  {
    LpRow row;
    row.sense = RowSense::LessEq;
    row.rhs = static_cast<double>(k);
    for (int i = 0; i < nc; ++i) row.coeffs.emplace_back(ybase + i, 1.0);
    p.rows.push_back(std::move(row));
  }
  for (int i = 0; i < nc; ++i) {
    for (int j = 0; j < m; ++j) {
      p.rows.push_back(LpRow{{{xvar(i, j), 1.0}, {ybase + i, -1.0}}, RowSense::LessEq, 0.0});
    }
  }
  return p;
}

LpProblem build_ckm_lp(const Instance& inst) {
  return build_capacitated_assignment_lp(inst.n, inst.n, inst.cost, inst.demand,
                                         inst.capacity, inst.k);
}

LpResult solve_lp(const LpProblem& p) {
  SimplexTableau tableau(p, normalized_rows(p));
  return tableau.solve(p);
}

FractionalSolution solve_ckm_fractional(const Instance& inst) {
  const LpProblem p = build_ckm_lp(inst);
  const LpResult r = solve_lp(p);
  if (r.status == LpStatus::Infeasible) {
    throw InfeasibleError("CKM LP relaxation is infeasible (total demand exceeds k*M)");
  }
  if (r.status != LpStatus::Optimal) {
    throw NumericalMarginError("CKM LP relaxation did not reach an optimum");
  }

  const int n = inst.n;
  FractionalSolution f;
  f.x = Matrix(n, n);
  f.y.assign(n, 0.0);
  const auto snap = [](double v) {
    if (std::abs(v) <= kTol) return 0.0;
    if (std::abs(v - 1.0) <= kTol) return 1.0;
    return v;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) f.x(i, j) = snap(r.x[i * n + j]);
    f.y[i] = snap(r.x[n * n + i]);
  }
  for (int j = 0; j < n; ++j) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += f.x(i, j);
    if (std::abs(s - 1.0) > 1e-6) {
      throw NumericalMarginError("LP assignment column deviates from 1 beyond repair");
    }
    if (s != 1.0) {
      for (int i = 0; i < n; ++i) f.x(i, j) /= s;
    }
  }

  f.conn_cost.assign(n, 0.0);
  for (int j = 0; j < n; ++j) {
    double cj = 0.0;
    for (int i = 0; i < n; ++i) cj += inst.cost(i, j) * f.x(i, j);
    f.conn_cost[j] = cj;
  }
  f.objective = 0.0;
  for (int j = 0; j < n; ++j) f.objective += inst.demand[j] * f.conn_cost[j];

  if (std::abs(f.objective - r.objective) > 1e-6 * (1.0 + std::abs(r.objective))) {
    throw NumericalMarginError("recomputed LP objective disagrees with solver objective");
  }
  return f;
}

LpProblem permute_lp(const LpProblem& p, std::uint64_t seed) {
  std::vector<int> var_perm(p.num_vars);
  std::iota(var_perm.begin(), var_perm.end(), 0);
  std::uint64_t state = seed;
  for (int i = p.num_vars - 1; i > 0; --i) {
    const int j = static_cast<int>(splitmix64(state) % static_cast<std::uint64_t>(i + 1));
    std::swap(var_perm[i], var_perm[j]);
  }
  std::vector<int> row_perm(p.rows.size());
  std::iota(row_perm.begin(), row_perm.end(), 0);
  for (int i = static_cast<int>(p.rows.size()) - 1; i > 0; --i) {
    const int j = static_cast<int>(splitmix64(state) % static_cast<std::uint64_t>(i + 1));
    std::swap(row_perm[i], row_perm[j]);
  }

  LpProblem q;
  q.num_vars = p.num_vars;
  q.objective.assign(p.num_vars, 0.0);
  q.upper.assign(p.num_vars, kInf);
  for (int j = 0; j < p.num_vars; ++j) {
    q.objective[var_perm[j]] = p.objective[j];
    if (!p.upper.empty()) q.upper[var_perm[j]] = p.upper[j];
  }
  q.rows.resize(p.rows.size());
  for (std::size_t r = 0; r < p.rows.size(); ++r) {
    LpRow row = p.rows[r];
    for (auto& [idx, v] : row.coeffs) idx = var_perm[idx];
    std::sort(row.coeffs.begin(), row.coeffs.end());
    q.rows[row_perm[r]] = std::move(row);
  }
  return q;
}

}  // namespace ckm
