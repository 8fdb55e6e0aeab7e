#pragma once

// Exchange graphs of (cluster-)tilting sets: breadth-first exploration by
// mutation, mutation paths, restriction to the sets containing a fixed
// summand, and reachability certificates between exceptional objects.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tilt/rigid_set.hpp"

namespace tilt {

template <class Object>
struct Edge {
  /// Endpoint keys with a < b.
  std::string a, b;
  /// Summand of a missing from b, and summand of b missing from a.
  Object out, in;
  friend bool operator==(const Edge&, const Edge&) = default;
};

template <class Object>
struct ExchangeGraph {
  std::map<std::string, RigidSet<Object>> nodes;
  /// Keyed by (a, b), a < b.
  std::map<std::pair<std::string, std::string>, Edge<Object>> edges;
  /// Nodes whose neighborhoods are incomplete (unexpanded, truncated, or failed).
  std::set<std::string> frontier;
  /// Mutation failures per node.
  std::map<std::string, std::string> errors;

  std::size_t node_count() const { return nodes.size(); }
  std::size_t edge_count() const { return edges.size(); }
  bool empty() const { return nodes.empty(); }
  bool contains(const std::string& key) const { return nodes.count(key) != 0; }

  std::vector<std::string> neighbors(const std::string& key) const {
    std::vector<std::string> out;
    for (const auto& [ab, e] : edges) {
      if (ab.first == key) out.push_back(ab.second);
      if (ab.second == key) out.push_back(ab.first);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::map<std::string, std::vector<std::string>> adjacency() const {
    std::map<std::string, std::vector<std::string>> adj;
    for (const auto& [k, _] : nodes) adj[k];
    for (const auto& [ab, e] : edges) {
      adj[ab.first].push_back(ab.second);
      adj[ab.second].push_back(ab.first);
    }
    for (auto& [_, v] : adj) std::sort(v.begin(), v.end());
    return adj;
  }

  bool connected() const {
    if (nodes.empty()) return true;
    auto adj = adjacency();
    std::set<std::string> seen{nodes.begin()->first};
    std::deque<std::string> queue{nodes.begin()->first};
    while (!queue.empty()) {
      auto k = queue.front();
      queue.pop_front();
      for (const auto& n : adj[k])
        if (seen.insert(n).second) queue.push_back(n);
    }
    return seen.size() == nodes.size();
  }

  void add_edge(const std::string& from, const std::string& to, const Object& out, const Object& in) {
    if (from < to)
      edges.try_emplace({from, to}, Edge<Object>{from, to, out, in});
    else
      edges.try_emplace({to, from}, Edge<Object>{to, from, in, out});
  }

  friend bool operator==(const ExchangeGraph&, const ExchangeGraph&) = default;
};

struct ExploreLimits {
  std::size_t max_nodes = std::numeric_limits<std::size_t>::max();
  std::size_t max_depth = std::numeric_limits<std::size_t>::max();

  static ExploreLimits nodes(std::size_t n) { return {n, std::numeric_limits<std::size_t>::max()}; }
  static ExploreLimits depth(std::size_t d) { return {std::numeric_limits<std::size_t>::max(), d}; }
};

/// Breadth-first closure under mutation. Levels are processed in key order and
/// a level that would exceed max_nodes is truncated in key order, so the
/// result depends only on the start set and the limits. Mutation failures are
/// recorded per node and mark it as frontier.
template <ExchangeBackend B>
ExchangeGraph<typename B::object_type> explore(const B& b, const SetOf<B>& start, ExploreLimits limits = {},
                                               const SearchWindow& window = SearchWindow::automatic()) {
  using Object = typename B::object_type;
  if (!is_tilting(b, start)) throw not_tilting("start is not tilting: " + start.key());
  ExchangeGraph<Object> g;
  if (limits.max_nodes == 0) return g;
  g.nodes.emplace(start.key(), start);
  std::vector<std::string> level{start.key()};
  // Neighbors found per expanded node; edges are added once both ends are in.
  std::map<std::string, std::vector<std::pair<std::string, Mutation<Object>>>> found;
  std::size_t depth = 0;
  while (!level.empty()) {
    if (depth >= limits.max_depth) break;
    std::set<std::string> next_keys;
    std::map<std::string, RigidSet<Object>> next_sets;
    for (const auto& key : level) {
      const auto& set = g.nodes.at(key);
      auto& out = found[key];
      for (std::size_t k = 0; k < set.size(); ++k) {
        try {
          auto m = mutate(b, set, k, window);
          std::string nk = m.result.key();
          if (!g.contains(nk) && next_keys.insert(nk).second) next_sets.emplace(nk, m.result);
          out.emplace_back(std::move(nk), std::move(m));
        } catch (const complement_not_in_window& e) {
          g.errors[key] += (g.errors[key].empty() ? "" : "; ") + std::string(e.what());
        }
      }
    }
    std::vector<std::string> admitted;
    for (const auto& nk : next_keys) {
      if (g.nodes.size() >= limits.max_nodes) break;
      g.nodes.emplace(nk, next_sets.at(nk));
      admitted.push_back(nk);
    }
    level = std::move(admitted);
    ++depth;
  }
  for (const auto& [key, muts] : found) {
    bool complete = !g.errors.count(key);
    for (const auto& [nk, m] : muts) {
      if (g.contains(nk))
        g.add_edge(key, nk, m.out, m.in);
      else
        complete = false;
    }
    if (!complete) g.frontier.insert(key);
  }
  for (const auto& [key, _] : g.nodes)
    if (!found.count(key)) g.frontier.insert(key);
  return g;
}

template <class Object>
struct PathStep {
  Object out;
  Object in;
  friend bool operator==(const PathStep&, const PathStep&) = default;
};

/// Applies a mutation path, checking that every step exchanges the recorded
/// summands.
template <ExchangeBackend B>
SetOf<B> replay(const B& b, const SetOf<B>& start, const std::vector<PathStep<typename B::object_type>>& path,
                const SearchWindow& window = SearchWindow::automatic()) {
  SetOf<B> cur = start;
  for (const auto& step : path) {
    auto k = cur.index_of(step.out);
    if (!k) throw domain_error("path step removes " + step.out.to_string() + " which is not in " + cur.key());
    auto m = mutate(b, cur, *k, window);
    if (!(m.in == step.in)) throw domain_error("path step expected " + step.in.to_string() + " but mutation gave " + m.in.to_string());
    cur = std::move(m.result);
  }
  return cur;
}

/// Bidirectional breadth-first search for a mutation path from `from` to
/// `to`. The budget counts node expansions on both sides together.
template <ExchangeBackend B>
std::vector<PathStep<typename B::object_type>> find_path(const B& b, const SetOf<B>& from, const SetOf<B>& to,
                                                         const SearchWindow& window = SearchWindow::automatic(),
                                                         std::size_t budget = 100000) {
  using Object = typename B::object_type;
  if (!is_tilting(b, from)) throw not_tilting("not tilting: " + from.key());
  if (!is_tilting(b, to)) throw not_tilting("not tilting: " + to.key());
  if (from == to) return {};

  struct Parent {
    std::string key;
    Object out, in;  // mutation parent -> this node
  };
  struct Side {
    std::unordered_map<std::string, std::optional<Parent>> parent;
    std::map<std::string, SetOf<B>> level;
  };
  Side fwd, bwd;
  fwd.parent.emplace(from.key(), std::nullopt);
  fwd.level.emplace(from.key(), from);
  bwd.parent.emplace(to.key(), std::nullopt);
  bwd.level.emplace(to.key(), to);

  auto chain = [](const Side& side, std::string key) {
    std::vector<PathStep<Object>> steps;  // from key back toward the side's root
    while (const auto& p = side.parent.at(key)) {
      steps.push_back({p->in, p->out});
      key = p->key;
    }
    return steps;
  };

  std::size_t expanded = 0;
  while (!fwd.level.empty() && !bwd.level.empty()) {
    bool forward = fwd.level.size() <= bwd.level.size();
    Side& side = forward ? fwd : bwd;
    Side& other = forward ? bwd : fwd;
    std::map<std::string, SetOf<B>> next;
    for (const auto& [key, set] : side.level) {
      if (expanded++ >= budget) throw not_found_within_budget("no mutation path found within " + std::to_string(budget) + " expansions");
      for (std::size_t k = 0; k < set.size(); ++k) {
        std::optional<Mutation<Object>> m;
        try {
          m = mutate(b, set, k, window);
        } catch (const complement_not_in_window&) {
          continue;
        }
        std::string nk = m->result.key();
        if (side.parent.count(nk)) continue;
        side.parent.emplace(nk, Parent{key, m->out, m->in});
        if (other.parent.count(nk)) {
          auto head = chain(fwd, nk);  // steps walking back toward `from`, reversed below
          std::vector<PathStep<Object>> path;
          for (auto it = head.rbegin(); it != head.rend(); ++it) path.push_back({it->in, it->out});
          for (const auto& s : chain(bwd, nk)) path.push_back(s);
          return path;
        }
        next.emplace(nk, std::move(m->result));
      }
    }
    side.level = std::move(next);
  }
  throw not_found_within_budget("exploration exhausted without reaching the target");
}

/// Induced subgraph on the sets containing `pinned`.
template <ExchangeBackend B>
ExchangeGraph<typename B::object_type> restrict_to(const B& b, const ExchangeGraph<typename B::object_type>& g,
                                                   const typename B::object_type& pinned) {
  b.check(pinned);
  if (!b.is_rigid(pinned)) throw not_rigid("pinned object is not rigid: " + pinned.to_string());
  ExchangeGraph<typename B::object_type> r;
  for (const auto& [k, s] : g.nodes)
    if (s.contains(pinned)) r.nodes.emplace(k, s);
  for (const auto& [ab, e] : g.edges)
    if (r.contains(ab.first) && r.contains(ab.second) && !(e.out == pinned) && !(e.in == pinned)) r.edges.emplace(ab, e);
  for (const auto& k : g.frontier)
    if (r.contains(k)) r.frontier.insert(k);
  for (const auto& [k, msg] : g.errors)
    if (r.contains(k)) r.errors.emplace(k, msg);
  return r;
}

template <class Object>
struct ReachCertificate {
  /// X_0 = M, ..., X_{s+1} = N with X_i + X_{i+1} rigid.
  std::vector<Object> chain;
};

/// Every object rigid and every consecutive pair compatible.
template <ExchangeBackend B>
bool verify_certificate(const B& b, const ReachCertificate<typename B::object_type>& cert) {
  if (cert.chain.empty()) return false;
  for (const auto& o : cert.chain)
    if (!b.is_rigid(o)) return false;
  for (std::size_t i = 0; i + 1 < cert.chain.size(); ++i)
    if (b.ext1(cert.chain[i], cert.chain[i + 1]) != 0 || b.ext1(cert.chain[i + 1], cert.chain[i]) != 0) return false;
  return true;
}

namespace detail {

template <class Object>
std::vector<Object> drop_cycles(const std::vector<Object>& chain) {
  std::vector<Object> out;
  for (const auto& o : chain) {
    auto it = std::find(out.begin(), out.end(), o);
    if (it != out.end())
      out.erase(it + 1, out.end());
    else
      out.push_back(o);
  }
  return out;
}

/// Shortest chain in the compatibility graph on `universe`.
template <ExchangeBackend B>
std::optional<std::vector<typename B::object_type>> bfs_chain(const B& b, const typename B::object_type& m,
                                                              const typename B::object_type& n,
                                                              std::vector<typename B::object_type> universe) {
  using Object = typename B::object_type;
  universe.push_back(m);
  universe.push_back(n);
  std::sort(universe.begin(), universe.end());
  universe.erase(std::unique(universe.begin(), universe.end()), universe.end());
  std::erase_if(universe, [&](const Object& o) { return !b.is_rigid(o); });
  auto index = [&](const Object& o) { return static_cast<std::size_t>(std::lower_bound(universe.begin(), universe.end(), o) - universe.begin()); };
  const std::size_t src = index(m), dst = index(n);
  std::vector<std::size_t> parent(universe.size(), universe.size());
  parent[src] = src;
  std::deque<std::size_t> queue{src};
  while (!queue.empty()) {
    std::size_t u = queue.front();
    queue.pop_front();
    if (u == dst) break;
    for (std::size_t v = 0; v < universe.size(); ++v)
      if (parent[v] == universe.size() && b.compatible(universe[u], universe[v])) {
        parent[v] = u;
        queue.push_back(v);
      }
  }
  if (parent[dst] == universe.size()) return std::nullopt;
  std::vector<Object> chain;
  for (std::size_t v = dst;; v = parent[v]) {
    chain.push_back(universe[v]);
    if (v == src) break;
  }
  std::reverse(chain.begin(), chain.end());
  return chain;
}

}  // namespace detail

/// Constructive chain from an exceptional sheaf to O: line bundles move by c
/// until the c-coefficient is 0 and then shed one x_i at a time; a rigid
/// torsion sheaf passes through its socle S_{i,j} and then the line bundle
/// O(-(j-1) omega) = tau^{-(j-1)} O.
inline std::vector<Sheaf> chain_to_structure_sheaf(const Sheaf& e) {
  const WeightType& w = e.weight();
  std::vector<Sheaf> chain{e};
  LElement x;
  if (e.is_line()) {
    x = e.degree();
  } else {
    const auto& t = e.torsion_data();
    if (t.tube.is_homogeneous() || t.length >= e.tube_rank()) throw not_rigid("not exceptional: " + e.to_string());
    if (t.length > 1) chain.push_back(Sheaf::simple(w, t.tube.index, t.socle));
    x = -(static_cast<std::int64_t>(t.socle) - 1) * LElement::omega(w);
    chain.push_back(Sheaf::line(x));
  }
  const LElement c = LElement::canonical(w);
  while (x.l() > 0) chain.push_back(Sheaf::line(x = x - c));
  while (x.l() < 0) chain.push_back(Sheaf::line(x = x + c));
  for (std::size_t i = 0; i < w.t(); ++i)
    while (x.li(i) > 0) chain.push_back(Sheaf::line(x = x - LElement::generator(w, i)));
  return detail::drop_cycles(chain);
}

/// Reachability certificate between exceptional objects of coh X. Tries the
/// constructive chain through O and falls back to breadth-first search in the
/// compatibility graph of exceptional objects with c-coefficient in the
/// window.
inline ReachCertificate<Sheaf> reach(const CohBackend& b, const Sheaf& m, const Sheaf& n,
                                     const SearchWindow& window = SearchWindow::automatic()) {
  b.check(m);
  b.check(n);
  if (!b.is_rigid(m)) throw not_rigid("not exceptional: " + m.to_string());
  if (!b.is_rigid(n)) throw not_rigid("not exceptional: " + n.to_string());
  if (m == n) return {{m}};
  if (b.compatible(m, n)) return {{m, n}};
  auto head = chain_to_structure_sheaf(m);
  auto tail = chain_to_structure_sheaf(n);
  head.insert(head.end(), tail.rbegin() + 1, tail.rend());
  ReachCertificate<Sheaf> cert{detail::drop_cycles(head)};
  if (verify_certificate(b, cert)) return cert;

  std::int64_t lo, hi;
  if (window.is_explicit()) {
    lo = *window.lo;
    hi = *window.hi;
  } else {
    std::vector<Sheaf> ends{m, n};
    auto r = b.line_range(std::span<const Sheaf>(ends));
    lo = (r ? std::min<std::int64_t>(r->first, 0) : 0) - 4;
    hi = (r ? std::max<std::int64_t>(r->second, 0) : 0) + 4;
  }
  if (auto chain = detail::bfs_chain(b, m, n, b.exceptional_objects(lo, hi))) return {*chain};
  throw not_found_within_budget("no reachability chain from " + m.to_string() + " to " + n.to_string() + " in window");
}

/// Reachability certificate in the cluster category of a Dynkin quiver:
/// shortest path in the compatibility graph of all indecomposables.
inline ReachCertificate<DynkinObject> reach(const DynkinBackend& b, const DynkinObject& m, const DynkinObject& n,
                                            const SearchWindow& = SearchWindow::automatic()) {
  b.check(m);
  b.check(n);
  if (m == n) return {{m}};
  if (auto chain = detail::bfs_chain(b, m, n, b.exceptional_objects())) return {*chain};
  throw not_found_within_budget("no reachability chain from " + m.to_string() + " to " + n.to_string());
}

/// DOT rendering: node labels are canonical keys, edge labels "out -> in".
template <class Object>
std::string to_dot(const ExchangeGraph<Object>& g) {
  auto quote = [](const std::string& s) {
    std::string q = "\"";
    for (char ch : s) {
      if (ch == '"' || ch == '\\') q += '\\';
      q += ch;
    }
    return q + "\"";
  };
  std::ostringstream os;
  os << "graph exchange {\n";
  for (const auto& [k, _] : g.nodes) {
    os << "  " << quote(k);
    if (g.frontier.count(k)) os << " [style=dashed]";
    os << ";\n";
  }
  for (const auto& [ab, e] : g.edges)
    os << "  " << quote(ab.first) << " -- " << quote(ab.second) << " [label=" << quote(e.out.to_string() + " -> " + e.in.to_string()) << "];\n";
  os << "}\n";
  return os.str();
}

/// JSON rendering {nodes:[{key, elements}], edges:[{a, b, out, in}], frontier:[key]}.
template <class Object>
nlohmann::json to_json(const ExchangeGraph<Object>& g) {
  nlohmann::json nodes = nlohmann::json::array(), edges = nlohmann::json::array(), frontier = nlohmann::json::array();
  for (const auto& [k, s] : g.nodes) {
    nlohmann::json elems = nlohmann::json::array();
    for (const auto& o : s) elems.push_back(o.to_string());
    nodes.push_back({{"key", k}, {"elements", elems}});
  }
  for (const auto& [ab, e] : g.edges)
    edges.push_back({{"a", ab.first}, {"b", ab.second}, {"out", e.out.to_string()}, {"in", e.in.to_string()}});
  for (const auto& k : g.frontier) frontier.push_back(k);
  return {{"nodes", nodes}, {"edges", edges}, {"frontier", frontier}};
}

template <ExchangeBackend B>
ExchangeGraph<typename B::object_type> graph_from_json(const B& b, const nlohmann::json& j) {
  using Object = typename B::object_type;
  ExchangeGraph<Object> g;
  try {
    for (const auto& n : j.at("nodes")) {
      std::vector<Object> elems;
      for (const auto& e : n.at("elements")) elems.push_back(b.parse(e.get<std::string>()));
      RigidSet<Object> s(std::move(elems));
      if (s.key() != n.at("key").get<std::string>()) throw parse_error("node key does not match its elements: " + s.key());
      g.nodes.emplace(s.key(), std::move(s));
    }
    for (const auto& e : j.at("edges")) {
      auto a = e.at("a").get<std::string>(), bk = e.at("b").get<std::string>();
      if (!g.contains(a) || !g.contains(bk)) throw parse_error("edge references unknown node");
      g.add_edge(a, bk, b.parse(e.at("out").get<std::string>()), b.parse(e.at("in").get<std::string>()));
    }
    for (const auto& k : j.at("frontier")) g.frontier.insert(k.get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("malformed graph JSON: ") + e.what());
  }
  return g;
}

}  // namespace tilt
