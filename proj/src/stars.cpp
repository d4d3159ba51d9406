#include "ckm/stars.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace ckm {

namespace {

bool is_fractional_opening(double v) { return v > kTol && v < 1.0 - kTol; }

std::vector<int> alive_tree_nodes(const NnForest& forest, int root,
                                  const std::vector<char>& alive) {
  std::vector<int> nodes;
  std::deque<int> queue{root};
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    if (!alive[v]) continue;
    nodes.push_back(v);
    for (const int c : forest.children[v]) queue.push_back(c);
  }
  return nodes;
}

}  // namespace

NnForest build_forest(const RedistributedSolution& red, double alpha) {
  (void)alpha;
  const int n = static_cast<int>(red.yhat.size());
  NnForest forest;
  forest.parent.assign(n, -1);
  forest.children.assign(n, {});

  std::vector<char> frac(n, 0);
  for (int i = 0; i < n; ++i) {
    if (red.yhat[i] >= 1.0 - kTol && red.yhat[i] < 2.0) {
      forest.n1hat.push_back(i);
    } else if (is_fractional_opening(red.yhat[i])) {
      forest.n2hat.push_back(i);
      frac[i] = 1;
    }
  }

  // Out-degree-1 walk with visitation stamps; each cycle is broken at its
  // lowest-index node.
  std::vector<int> stamp(n, -1);
  std::vector<char> resolved(n, 0);
  for (const int start : forest.n2hat) {
    if (resolved[start]) continue;
    std::vector<int> path;
    int v = start;
    while (v >= 0 && frac[v] && !resolved[v] && stamp[v] != start) {
      stamp[v] = start;
      path.push_back(v);
      v = red.s_map[v];
    }
    std::size_t cycle_begin = path.size();
    if (v >= 0 && frac[v] && !resolved[v] && stamp[v] == start) {
      cycle_begin = std::find(path.begin(), path.end(), v) - path.begin();
      int root = path[cycle_begin];
      for (std::size_t t = cycle_begin; t < path.size(); ++t) root = std::min(root, path[t]);
      for (std::size_t t = cycle_begin; t < path.size(); ++t) {
        const int u = path[t];
        forest.parent[u] = u == root ? -1 : red.s_map[u];
        resolved[u] = 1;
      }
    }
    for (std::size_t t = 0; t < cycle_begin; ++t) {
      forest.parent[path[t]] = red.s_map[path[t]];
      resolved[path[t]] = 1;
    }
  }

  for (int i = 0; i < n; ++i) {
    if (forest.parent[i] >= 0) forest.children[forest.parent[i]].push_back(i);
  }
  for (auto& c : forest.children) std::sort(c.begin(), c.end());

  for (const int i : forest.n1hat) forest.roots.push_back(i);
  for (const int i : forest.n2hat) {
    if (forest.parent[i] < 0) forest.roots.push_back(i);
  }
  std::sort(forest.roots.begin(), forest.roots.end());
  return forest;
}

StarDecomposition decompose_to_stars(const Instance& inst, const NnForest& forest,
                                     const RedistributedSolution& red) {
  StarDecomposition decomp;
  const int n = inst.n;
  std::vector<char> frac(n, 0);
  for (const int i : forest.n2hat) frac[i] = 1;

  const auto child_order = [&](int root) {
    return [&, root](int a, int b) {
      if (inst.cost(root, a) != inst.cost(root, b)) {
        return inst.cost(root, a) < inst.cost(root, b);
      }
      return a < b;
    };
  };

  for (const int root : forest.roots) {
    std::vector<char> alive(n, 0);
    {
      std::deque<int> queue{root};
      while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        alive[v] = 1;
        for (const int c : forest.children[v]) queue.push_back(c);
      }
    }

    while (true) {
      const auto nodes = alive_tree_nodes(forest, root, alive);
      if (nodes.size() < 2) {
        if (nodes.size() == 1) {
          const int leftover = nodes.front();
          if (!frac[leftover]) {
            decomp.isolated.push_back(leftover);
          } else {
            const int target = red.s_map[leftover];
            auto it = std::find_if(decomp.stars.begin(), decomp.stars.end(),
                                   [&](const Star& s) { return s.root == target; });
            if (it == decomp.stars.end()) {
              throw std::logic_error(
                  "decompose_to_stars: leftover node's nearest neighbor roots no star");
            }
            it->children.push_back(leftover);
            std::sort(it->children.begin(), it->children.end(), child_order(it->root));
          }
        }
        break;
      }

      // Depths of alive nodes below this root.
      std::vector<int> depth(n, -1);
      depth[root] = 0;
      std::deque<int> queue{root};
      while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        for (const int c : forest.children[v]) {
          if (alive[c]) {
            depth[c] = depth[v] + 1;
            queue.push_back(c);
          }
        }
      }
      int leaf = -1;
      for (const int v : nodes) {
        bool has_child = false;
        for (const int c : forest.children[v]) {
          if (alive[c]) {
            has_child = true;
            break;
          }
        }
        if (has_child) continue;
        if (leaf < 0 || depth[v] > depth[leaf] || (depth[v] == depth[leaf] && v < leaf)) {
          leaf = v;
        }
      }
      const int p = forest.parent[leaf];
      Star star;
      star.root = p;
      for (const int c : forest.children[p]) {
        if (alive[c]) star.children.push_back(c);
      }
      std::sort(star.children.begin(), star.children.end(), child_order(p));
      alive[p] = 0;
      for (const int c : star.children) alive[c] = 0;
      decomp.stars.push_back(std::move(star));
    }
  }

  std::sort(decomp.isolated.begin(), decomp.isolated.end());
  for (auto& star : decomp.stars) {
    star.mass = red.yhat[star.root];
    for (const int c : star.children) star.mass += red.yhat[c];
  }
  return decomp;
}

StarRounding round_star(const Star& star, const RedistributedSolution& red, double alpha) {
  const int m = static_cast<int>(star.children.size());
  const double yt = red.yhat[star.root];
  const bool fractional_root = is_fractional_opening(yt);
  if (m == 0) {
    throw std::logic_error("round_star: star without children (forest bug)");
  }

  StarRounding rounding;
  const auto& ch = star.children;
  if (m % 2 == 0) {
    const int q = m / 2;
    if (!fractional_root) {
      rounding.case_label = 1;
      rounding.opened.push_back(star.root);
      for (int r = 1; r <= q; ++r) {
        rounding.opened.push_back(ch[2 * r - 2]);
        rounding.reassigned.emplace_back(ch[2 * r - 1], ch[2 * r - 2]);
      }
    } else {
      rounding.case_label = 2;
      rounding.opened.push_back(star.root);
      rounding.reassigned.emplace_back(ch[0], star.root);
      for (int r = 1; r <= q; ++r) rounding.opened.push_back(ch[2 * r - 1]);
      for (int r = 1; r <= q - 1; ++r) rounding.reassigned.emplace_back(ch[2 * r], ch[2 * r - 1]);
    }
  } else {
    const int q = (m - 1) / 2;
    const bool tall_root = !fractional_root && yt >= 1.0 + 2.0 / alpha - kTol;
    if (tall_root) {
      rounding.case_label = 3;
      rounding.opened.push_back(star.root);
      for (int r = 0; r <= q; ++r) rounding.opened.push_back(ch[2 * r]);
      for (int r = 1; r <= q; ++r) rounding.reassigned.emplace_back(ch[2 * r - 1], ch[2 * r - 2]);
    } else {
      rounding.case_label = 4;
      rounding.opened.push_back(star.root);
      rounding.reassigned.emplace_back(ch[0], star.root);
      for (int r = 1; r <= q; ++r) {
        rounding.opened.push_back(ch[2 * r - 1]);
        rounding.reassigned.emplace_back(ch[2 * r], ch[2 * r - 1]);
      }
    }
  }
  return rounding;
}

IntegralSolution assemble_integral(const Instance& inst, const ConcentratedSolution& conc,
                                   const StarDecomposition& decomp,
                                   const std::vector<StarRounding>& roundings) {
  const int n = inst.n;
  std::vector<int> final_server(n, -1);
  IntegralSolution sol;
  sol.open.assign(n, 0);

  for (const int i : decomp.isolated) {
    sol.open[i] = 1;
    final_server[i] = i;
  }
  for (const auto& rounding : roundings) {
    for (const int i : rounding.opened) {
      sol.open[i] = 1;
      final_server[i] = i;
    }
    for (const auto& [closed, server] : rounding.reassigned) final_server[closed] = server;
  }

  sol.assign = Matrix(n, n);
  for (int i = 0; i < n; ++i) {
    if (conc.yprime[i] <= kTol) continue;
    const int server = final_server[i];
    if (server < 0) {
      throw std::logic_error("assemble_integral: location with opening mass not covered");
    }
    for (int j = 0; j < n; ++j) {
      if (conc.xprime(i, j) != 0.0) sol.assign(server, j) += conc.xprime(i, j);
    }
  }

  sol.cost = solution_cost(inst, sol.assign);
  const auto loads = center_loads(inst, sol.assign);
  for (int i = 0; i < n; ++i) {
    sol.max_load_ratio = std::max(sol.max_load_ratio, loads[i] / inst.capacity);
  }
  return sol;
}

std::vector<PropertyCheck> check_star_properties(const Instance& inst,
                                                 const ConcentratedSolution& conc,
                                                 const RedistributedSolution& red,
                                                 const StarDecomposition& decomp,
                                                 const std::vector<StarRounding>& roundings,
                                                 double alpha, int k) {
  std::vector<PropertyCheck> checks;
  std::vector<char> frac(red.yhat.size(), 0);
  for (std::size_t i = 0; i < red.yhat.size(); ++i) {
    frac[i] = is_fractional_opening(red.yhat[i]) ? 1 : 0;
  }

  for (const auto& star : decomp.stars) {
    double frac_mass = frac[star.root] ? red.yhat[star.root] : 0.0;
    int frac_count = frac[star.root] ? 1 : 0;
    for (const int c : star.children) {
      if (frac[c]) {
        frac_mass += red.yhat[c];
        ++frac_count;
      }
    }
    if (frac_count >= 2) {
      std::ostringstream label;
      const int q = frac_count / 2;
      const double bound = frac_count % 2 == 0 ? q : q + 1;
      label << "star " << star.root << ": fractional mass > "
            << (frac_count % 2 == 0 ? "q" : "q+1");
      checks.push_back({label.str(), frac_mass, bound, ">", frac_mass > bound - kTol});
    }
  }

  double floor_sum = 0.0;
  for (std::size_t s = 0; s < decomp.stars.size(); ++s) {
    const auto& star = decomp.stars[s];
    const auto& rounding = roundings[s];
    const double rt_floor = std::floor(star.mass + kTol);
    floor_sum += rt_floor;
    std::ostringstream label;
    label << "star " << star.root << ": opened <= floor(R_t)";
    checks.push_back({label.str(), static_cast<double>(rounding.opened.size()), rt_floor,
                      "<=", static_cast<double>(rounding.opened.size()) <= rt_floor});
  }
  for (const int i : decomp.isolated) floor_sum += std::floor(red.yhat[i] + kTol);
  double yhat_total = 0.0;
  for (const double h : red.yhat) yhat_total += h;
  checks.push_back({"sum of per-star floors <= floor(sum yhat)", floor_sum,
                    std::floor(yhat_total + kTol), "<=",
                    floor_sum <= std::floor(yhat_total + kTol)});
  checks.push_back({"floor(sum yhat) <= k", std::floor(yhat_total + kTol),
                    static_cast<double>(k), "<=",
                    std::floor(yhat_total + kTol) <= static_cast<double>(k) + kTol});

  const double load_bound = (2.0 + 2.0 / alpha) * inst.capacity;
  for (const auto& rounding : roundings) {
    std::vector<std::pair<int, double>> loads;
    for (const int c : rounding.opened) loads.emplace_back(c, conc.dprime[c]);
    for (const auto& [closed, server] : rounding.reassigned) {
      for (auto& [c, load] : loads) {
        if (c == server) load += conc.dprime[closed];
      }
    }
    for (const auto& [c, load] : loads) {
      std::ostringstream label;
      label << "center " << c << ": d' load <= (2+2/a)M";
      checks.push_back({label.str(), load, load_bound, "<=",
                        load <= load_bound + kTol * (1.0 + load_bound)});
    }
  }

  for (const auto& rounding : roundings) {
    for (const auto& [closed, server] : rounding.reassigned) {
      std::ostringstream label;
      label << "reassignment c(" << server << "," << closed << ") <= 2 c(s(i),i)";
      const double bound = 2.0 * inst.cost(red.s_map[closed], closed);
      checks.push_back({label.str(), inst.cost(server, closed), bound, "<=",
                        inst.cost(server, closed) <= bound + kTol});
    }
  }
  return checks;
}

}  // namespace ckm
