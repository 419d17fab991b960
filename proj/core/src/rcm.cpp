#include "stabsel/rcm.hpp"

#include <algorithm>
#include <utility>

namespace stabsel {

namespace {

using Graph = std::vector<std::vector<Index>>;

Graph symmetric_pattern(const SparseMatrixCSR& a) {
  const Index d = a.dim();
  Graph g(d);
  const auto rp = a.row_ptr();
  const auto ci = a.col_idx();
  for (Index i = 0; i < d; ++i) {
    for (Index p = rp[i]; p < rp[i + 1]; ++p) {
      const Index j = ci[p];
      if (j == i) continue;
      g[i].push_back(j);
      g[j].push_back(i);
    }
  }
  for (auto& nbrs : g) {
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
  }
  return g;
}

struct LevelInfo {
  Index eccentricity = 0;
  std::vector<Index> last_level;
};

// BFS restricted to vertices with mark[v] == component. `scratch` holds -1 for
// unseen vertices on entry and is restored before return.
LevelInfo level_structure(const Graph& g, Index root, std::vector<Index>& scratch) {
  LevelInfo info;
  std::vector<Index> current{root};
  std::vector<Index> touched{root};
  scratch[root] = 0;
  Index depth = 0;
  while (true) {
    std::vector<Index> next;
    for (Index v : current) {
      for (Index w : g[v]) {
        if (scratch[w] == -1) {
          scratch[w] = depth + 1;
          next.push_back(w);
          touched.push_back(w);
        }
      }
    }
    if (next.empty()) break;
    current = std::move(next);
    ++depth;
  }
  info.eccentricity = depth;
  info.last_level = std::move(current);
  for (Index v : touched) scratch[v] = -1;
  return info;
}

Index min_degree_vertex(const Graph& g, const std::vector<Index>& vertices) {
  Index best = vertices.front();
  for (Index v : vertices) {
    const auto dv = g[v].size();
    const auto db = g[best].size();
    if (dv < db || (dv == db && v < best)) best = v;
  }
  return best;
}

Index pseudo_peripheral(const Graph& g, const std::vector<Index>& component,
                        std::vector<Index>& scratch) {
  Index root = min_degree_vertex(g, component);
  LevelInfo info = level_structure(g, root, scratch);
  for (std::size_t sweep = 0; sweep < component.size(); ++sweep) {
    const Index candidate = min_degree_vertex(g, info.last_level);
    LevelInfo cand_info = level_structure(g, candidate, scratch);
    if (cand_info.eccentricity <= info.eccentricity) break;
    root = candidate;
    info = std::move(cand_info);
  }
  return root;
}

}  // namespace

std::vector<Index> rcm_ordering(const SparseMatrixCSR& a) {
  const Index d = a.dim();
  const Graph g = symmetric_pattern(a);
  std::vector<char> placed(d, 0);
  std::vector<Index> scratch(d, -1);
  std::vector<char> in_comp(d, 0);
  std::vector<Index> order;
  order.reserve(d);

  for (Index seed = 0; seed < d; ++seed) {
    if (placed[seed]) continue;

    // Collect the component containing `seed`.
    std::vector<Index> component{seed};
    in_comp[seed] = 1;
    for (std::size_t head = 0; head < component.size(); ++head) {
      for (Index w : g[component[head]]) {
        if (!in_comp[w]) {
          in_comp[w] = 1;
          component.push_back(w);
        }
      }
    }

    const Index start = pseudo_peripheral(g, component, scratch);

    // Cuthill-McKee breadth-first numbering.
    const std::size_t first = order.size();
    order.push_back(start);
    placed[start] = 1;
    std::vector<Index> nbrs;
    for (std::size_t head = first; head < order.size(); ++head) {
      nbrs.clear();
      for (Index w : g[order[head]]) {
        if (!placed[w]) nbrs.push_back(w);
      }
      std::sort(nbrs.begin(), nbrs.end(), [&](Index x, Index y) {
        return g[x].size() != g[y].size() ? g[x].size() < g[y].size() : x < y;
      });
      for (Index w : nbrs) {
        placed[w] = 1;
        order.push_back(w);
      }
    }
  }

  std::reverse(order.begin(), order.end());
  return order;
}

}  // namespace stabsel
