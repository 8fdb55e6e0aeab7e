#pragma once

// Fomin-Zelevinsky seed mutation (trivial coefficients), seed-graph
// enumeration, and propagation of exchange matrices along exchange graphs of
// tilting sets.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tilt/errors.hpp"
#include "tilt/exchange_graph.hpp"
#include "tilt/laurent.hpp"
#include "tilt/rigid_set.hpp"

namespace tilt {

using ExchangeMatrix = std::vector<std::vector<int>>;

/// Throws domain_error unless b is square and skew-symmetric.
inline void validate_exchange_matrix(const ExchangeMatrix& b) {
  for (const auto& row : b)
    if (row.size() != b.size()) throw domain_error("exchange matrix is not square");
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      if (b[i][j] != -b[j][i]) throw domain_error("exchange matrix is not skew-symmetric");
}

inline std::string to_string(const ExchangeMatrix& b) {
  std::string s = "[";
  for (std::size_t i = 0; i < b.size(); ++i) {
    s += i ? ",[" : "[";
    for (std::size_t j = 0; j < b[i].size(); ++j) s += (j ? "," : "") + std::to_string(b[i][j]);
    s += "]";
  }
  return s + "]";
}

inline ExchangeMatrix mutate_matrix(const ExchangeMatrix& b, std::size_t k) {
  if (k >= b.size()) throw domain_error("mutation index out of range");
  ExchangeMatrix r = b;
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (i == k || j == k)
        r[i][j] = -b[i][j];
      else if (b[i][k] > 0 && b[k][j] > 0)
        r[i][j] = b[i][j] + b[i][k] * b[k][j];
      else if (b[i][k] < 0 && b[k][j] < 0)
        r[i][j] = b[i][j] - b[i][k] * b[k][j];
    }
  return r;
}

/// Simultaneous permutation: result[i][j] = b[perm[i]][perm[j]].
inline ExchangeMatrix permute(const ExchangeMatrix& b, const std::vector<std::size_t>& perm) {
  ExchangeMatrix r(b.size(), std::vector<int>(b.size()));
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i][j] = b[perm[i]][perm[j]];
  return r;
}

struct Seed {
  ExchangeMatrix b;
  std::vector<LaurentPoly> cluster;

  friend bool operator==(const Seed&, const Seed&) = default;
};

inline Seed initial_seed(const ExchangeMatrix& b) {
  validate_exchange_matrix(b);
  Seed s{b, {}};
  for (std::size_t i = 0; i < b.size(); ++i) s.cluster.push_back(LaurentPoly::variable(b.size(), i));
  return s;
}

/// Exchange relation x_k x_k' = prod x_i^[b_ik]+ + prod x_i^[-b_ik]+.
inline Seed mutate_seed(const Seed& s, std::size_t k) {
  const std::size_t n = s.b.size();
  if (k >= n) throw domain_error("mutation index out of range");
  LaurentPoly plus = LaurentPoly::constant(n, 1), minus = LaurentPoly::constant(n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (int e = 0; e < s.b[i][k]; ++e) plus = plus * s.cluster[i];
    for (int e = 0; e < -s.b[i][k]; ++e) minus = minus * s.cluster[i];
  }
  Seed r{mutate_matrix(s.b, k), s.cluster};
  r.cluster[k] = exact_divide(plus + minus, s.cluster[k]);
  return r;
}

/// Canonical form: variables sorted, B permuted to match. Variables within a
/// cluster are distinct, so the permutation is unique.
inline Seed canonical_form(const Seed& s) {
  std::vector<std::size_t> perm(s.cluster.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return s.cluster[a] < s.cluster[b]; });
  Seed r{permute(s.b, perm), {}};
  for (auto p : perm) r.cluster.push_back(s.cluster[p]);
  return r;
}

inline std::string seed_key(const Seed& s) {
  Seed c = canonical_form(s);
  std::string key;
  for (const auto& x : c.cluster) key += x.to_string() + " | ";
  return key + to_string(c.b);
}

struct SeedGraph {
  std::map<std::string, Seed> nodes;
  std::set<std::pair<std::string, std::string>> edges;
  std::set<std::string> frontier;
};

/// Breadth-first closure of seeds under mutation, at most max_nodes seeds.
/// Seeds are identified up to simultaneous permutation of cluster and B.
inline SeedGraph seed_explore(const Seed& initial, std::size_t max_nodes = std::numeric_limits<std::size_t>::max()) {
  SeedGraph g;
  if (max_nodes == 0) return g;
  const std::string root = seed_key(initial);
  g.nodes.emplace(root, canonical_form(initial));
  std::deque<std::string> queue{root};
  while (!queue.empty()) {
    std::string key = queue.front();
    queue.pop_front();
    const Seed s = g.nodes.at(key);
    bool complete = true;
    for (std::size_t k = 0; k < s.cluster.size(); ++k) {
      Seed m = mutate_seed(s, k);
      std::string mk = seed_key(m);
      if (!g.nodes.count(mk)) {
        if (g.nodes.size() >= max_nodes) {
          complete = false;
          continue;
        }
        g.nodes.emplace(mk, canonical_form(m));
        queue.push_back(mk);
      }
      g.edges.insert(std::minmax(key, mk));
    }
    if (!complete) g.frontier.insert(key);
  }
  return g;
}

inline std::set<LaurentPoly> cluster_variables(const SeedGraph& g) {
  std::set<LaurentPoly> vars;
  for (const auto& [_, s] : g.nodes) vars.insert(s.cluster.begin(), s.cluster.end());
  return vars;
}

/// Exchange matrix of the shifted projectives of a Dynkin quiver, indexed like
/// canonical_tilting: P_i[1] carries vertex i.
inline ExchangeMatrix initial_matrix(const DynkinBackend& b) { return b.quiver().exchange_matrix(); }

/// Exchange matrix of the canonical tilting set {O, O(a x_i), O(c)}, indexed
/// like canonical_tilting. Arms 0 -> x_i -> ... -> (p_i - 1) x_i -> c for each
/// weight p_i >= 2; weight-1 arms give arrows 0 -> c and each of the t - 2
/// canonical relations gives an arrow c -> 0, so b(0, c) = 2 - #{p_i >= 2}.
inline ExchangeMatrix initial_matrix(const CohBackend& b) {
  const WeightType& w = b.weight();
  const auto set = canonical_tilting(b);
  const std::size_t n = set.size();
  ExchangeMatrix m(n, std::vector<int>(n, 0));
  auto idx = [&](const LElement& x) { return *set.index_of(Sheaf::line(x)); };
  auto arrow = [&](std::size_t from, std::size_t to, int count) {
    m[from][to] += count;
    m[to][from] -= count;
  };
  const LElement zero = LElement::zero(w), c = LElement::canonical(w);
  int arms = 0;
  for (std::size_t i = 0; i < w.t(); ++i) {
    if (w.p(i) < 2) continue;
    ++arms;
    LElement prev = zero;
    for (int a = 1; a <= w.p(i); ++a) {
      LElement next = a * LElement::generator(w, i);
      arrow(idx(prev), idx(next), 1);
      prev = next;
    }
  }
  arrow(idx(zero), idx(c), 2 - arms);
  return m;
}

template <class Object>
struct Propagation {
  bool consistent = true;
  std::map<std::string, ExchangeMatrix> matrices;
  /// Spanning-tree edges (parent, child) in BFS order.
  std::vector<std::pair<std::string, std::string>> tree_edges;
  /// On inconsistency: closed walk v0, v1, ..., v0 through the failing edge.
  std::vector<std::string> witness_cycle;
};

namespace detail {

/// Matrix at `to` obtained by mutating `from`'s matrix at `out` and relabeling
/// by the sorted elements of `to`. nullopt when the labels do not align.
template <class Object>
std::optional<ExchangeMatrix> carry(const RigidSet<Object>& from, const ExchangeMatrix& b, const RigidSet<Object>& to,
                                    const Object& out, const Object& in) {
  auto k = from.index_of(out);
  if (!k || !to.contains(in) || from.contains(in) || to.contains(out)) return std::nullopt;
  ExchangeMatrix mutated = mutate_matrix(b, *k);
  // Element carried by row r of `mutated`.
  std::vector<Object> labels = from.elements();
  labels[*k] = in;
  std::vector<std::size_t> perm(to.size());
  for (std::size_t i = 0; i < to.size(); ++i) {
    auto it = std::find(labels.begin(), labels.end(), to[i]);
    if (it == labels.end()) return std::nullopt;
    perm[i] = static_cast<std::size_t>(it - labels.begin());
  }
  return permute(mutated, perm);
}

}  // namespace detail

/// Assigns matrices along a BFS spanning tree from `root` and checks every
/// remaining edge. Matrix rows follow the sorted elements of each node.
template <class Object>
Propagation<Object> propagate_quiver(const ExchangeGraph<Object>& g, const std::string& root, const ExchangeMatrix& b) {
  if (!g.contains(root)) throw domain_error("root is not a node of the graph: " + root);
  validate_exchange_matrix(b);
  if (b.size() != g.nodes.at(root).size()) throw mismatch_error("matrix size does not match the root set");
  Propagation<Object> p;
  std::map<std::string, std::string> parent;
  p.matrices.emplace(root, b);

  // Directed view of each edge: (neighbor, out, in) as seen from a node.
  struct Step {
    std::string to;
    Object out, in;
  };
  std::map<std::string, std::vector<Step>> adj;
  for (const auto& [ab, e] : g.edges) {
    adj[e.a].push_back({e.b, e.out, e.in});
    adj[e.b].push_back({e.a, e.in, e.out});
  }

  auto path_to_root = [&](std::string v) {
    std::vector<std::string> path{v};
    while (v != root) path.push_back(v = parent.at(v));
    return path;
  };
  auto fail = [&](const std::string& u, const std::string& v) {
    p.consistent = false;
    auto pu = path_to_root(u), pv = path_to_root(v);
    // Trim the common tail above the lowest common ancestor.
    while (pu.size() > 1 && pv.size() > 1 && pu[pu.size() - 2] == pv[pv.size() - 2]) pu.pop_back(), pv.pop_back();
    std::vector<std::string> cycle(pu.begin(), pu.end());  // u ... lca
    for (auto it = pv.rbegin() + 1; it != pv.rend(); ++it) cycle.push_back(*it);  // ... v
    cycle.push_back(u);
    p.witness_cycle = std::move(cycle);
    return p;
  };

  std::deque<std::string> queue{root};
  while (!queue.empty()) {
    std::string u = queue.front();
    queue.pop_front();
    for (const auto& step : adj[u]) {
      if (p.matrices.count(step.to)) continue;
      auto carried = detail::carry(g.nodes.at(u), p.matrices.at(u), g.nodes.at(step.to), step.out, step.in);
      if (!carried) {
        parent[step.to] = u;
        return fail(u, step.to);
      }
      p.matrices.emplace(step.to, std::move(*carried));
      parent[step.to] = u;
      p.tree_edges.emplace_back(u, step.to);
      queue.push_back(step.to);
    }
  }
  if (p.matrices.size() != g.nodes.size()) throw domain_error("graph is not connected");
  for (const auto& [ab, e] : g.edges) {
    auto carried = detail::carry(g.nodes.at(e.a), p.matrices.at(e.a), g.nodes.at(e.b), e.out, e.in);
    if (!carried || *carried != p.matrices.at(e.b)) return fail(e.a, e.b);
  }
  return p;
}

}  // namespace tilt
