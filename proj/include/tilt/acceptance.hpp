#pragma once

// Acceptance criteria 1-13 as runnable checks, grouped into named suites.
// Shared by the acceptance test binary and `tiltwb verify`.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "tilt/coh.hpp"
#include "tilt/dynkin.hpp"
#include "tilt/exchange_graph.hpp"
#include "tilt/lattice.hpp"
#include "tilt/oracle/cyclic_quiver.hpp"
#include "tilt/rigid_set.hpp"
#include "tilt/seeds.hpp"

namespace tilt::acceptance {

struct Options {
  std::uint64_t seed = 20240601;
};

struct Result {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
  /// Wall-clock limit in seconds, if the criterion has one.
  std::optional<double> limit;
};

inline std::string format_line(const Result& r) {
  std::ostringstream os;
  os << (r.passed ? "PASS" : "FAIL") << "  " << r.id << ". " << r.name << ": " << r.detail;
  os.setf(std::ios::fixed);
  os.precision(3);
  os << " (" << r.seconds << " s";
  if (r.limit) os << ", limit " << *r.limit << " s";
  os << ")";
  return os.str();
}

namespace detail {

using Check = std::function<std::pair<bool, std::string>()>;

inline Result timed(int id, std::string name, std::optional<double> limit, const Check& check) {
  Result r{id, std::move(name), false, "", 0, limit};
  const auto start = std::chrono::steady_clock::now();
  try {
    std::tie(r.passed, r.detail) = check();
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit && r.seconds > *limit) {
    r.passed = false;
    r.detail += " [time limit exceeded]";
  }
  return r;
}

inline const std::vector<std::vector<int>>& weight_types() {
  static const std::vector<std::vector<int>> types = {{1, 1}, {2, 3}, {2, 2, 2}, {2, 3, 5}, {2, 3, 6}, {2, 3, 7}, {2, 2, 2, 2}};
  return types;
}

inline LElement random_element(const WeightType& w, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> coef(-20, 20);
  Coeffs raw(w.t());
  for (auto& r : raw) r = coef(rng);
  return LElement::normal_form(w, raw, coef(rng));
}

inline std::string plural(std::size_t n, const char* what) { return std::to_string(n) + " " + what; }

/// Seeded-random tilting set: shuffled exceptional objects of the window,
/// greedily completed; retried until the completion is tilting.
inline RigidSet<Sheaf> random_tilting(const CohBackend& b, std::int64_t lo, std::int64_t hi, std::mt19937_64& rng) {
  auto pool = b.exceptional_objects(lo, hi);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::shuffle(pool.begin(), pool.end(), rng);
    auto s = greedy_completion(b, RigidSet<Sheaf>{}, std::span<const Sheaf>(pool));
    if (is_tilting(b, s)) return s;
  }
  throw internal_error("no random tilting set found in window");
}

}  // namespace detail

inline Result criterion_1(const Options& o) {
  return detail::timed(1, "lattice trichotomy", 1.0, [&] {
    std::mt19937_64 rng(o.seed);
    std::size_t checked = 0, bad = 0;
    for (const auto& p : detail::weight_types()) {
      WeightType w(p);
      const LElement bound = LElement::canonical(w) + LElement::omega(w);
      for (int n = 0; n < 1000; ++n, ++checked) {
        auto x = detail::random_element(w, rng);
        if (is_effective(x) == leq(x, bound)) ++bad;
      }
    }
    return std::pair{bad == 0, detail::plural(checked, "elements") + ", " + detail::plural(bad, "violations")};
  });
}

inline Result criterion_2(const Options&) {
  return detail::timed(2, "graded dimensions vs monomial oracle", 10.0, [&] {
    std::size_t checked = 0, bad = 0;
    for (const auto& p : detail::weight_types()) {
      WeightType w(p);
      Coeffs li(w.t(), 0);
      for (std::int64_t l = -6; l <= 6; ++l) {
        std::fill(li.begin(), li.end(), 0);
        while (true) {
          auto x = LElement::normal_form(w, li, l);
          if (graded_dim(x) != graded_dim_oracle(x)) ++bad;
          ++checked;
          std::size_t k = 0;
          while (k < li.size() && ++li[k] == w.p(k)) li[k++] = 0;
          if (k == li.size()) break;
        }
      }
    }
    return std::pair{bad == 0, detail::plural(checked, "elements") + ", " + detail::plural(bad, "mismatches")};
  });
}

inline Result criterion_3(const Options&) {
  return detail::timed(3, "tube Homs vs cyclic-quiver oracle", 10.0, [&] {
    std::size_t checked = 0, bad = 0;
    for (int d = 2; d <= 5; ++d) {
      // A weight type whose first tube has rank d.
      WeightType w({d, 1});
      for (int j = 0; j < d; ++j)
        for (int a = 1; a <= 2 * d; ++a)
          for (int j2 = 0; j2 < d; ++j2)
            for (int b = 1; b <= 2 * d; ++b) {
              auto m = Sheaf::torsion(w, TubeId{0}, j, a), n = Sheaf::torsion(w, TubeId{0}, j2, b);
              if (hom_dim(m, n) != oracle::hom_dimension(oracle::uniserial(d, j, a), oracle::uniserial(d, j2, b))) ++bad;
              ++checked;
            }
    }
    return std::pair{bad == 0, detail::plural(checked, "pairs") + ", " + detail::plural(bad, "mismatches")};
  });
}

inline Result criterion_4(const Options&) {
  return detail::timed(4, "simple-sheaf extensions", std::nullopt, [&] {
    std::size_t checked = 0, bad = 0;
    for (const auto& p : detail::weight_types()) {
      WeightType w(p);
      for (std::size_t i = 0; i < w.t(); ++i) {
        const int pi = w.p(i);
        if (pi < 2) continue;  // weight 1: an ordinary point, handled below
        for (int j = 0; j < pi; ++j)
          for (int j2 = 0; j2 < pi; ++j2) {
            const std::int64_t expect = floor_mod(j - j2, pi) == 1 ? 1 : 0;
            if (ext1_dim(Sheaf::simple(w, static_cast<int>(i), j), Sheaf::simple(w, static_cast<int>(i), j2)) != expect) ++bad;
            ++checked;
          }
      }
      auto s = Sheaf::ordinary_simple(w);
      if (ext1_dim(s, s) != 1) ++bad;
      ++checked;
    }
    return std::pair{bad == 0, detail::plural(checked, "pairs") + ", " + detail::plural(bad, "mismatches")};
  });
}

inline Result criterion_5(const Options&) {
  return detail::timed(5, "rigidity boundary in tubes", std::nullopt, [&] {
    std::size_t checked = 0, bad = 0;
    for (const auto& p : detail::weight_types()) {
      WeightType w(p);
      for (int i = -1; i < static_cast<int>(w.t()); ++i) {
        TubeId tube{i};
        const int d = Sheaf::tube_rank(w, tube);
        for (int j = 0; j < d; ++j)
          for (int len = 1; len <= 3 * d; ++len) {
            if (is_rigid(Sheaf::torsion(w, tube, j, len)) != (len < d)) ++bad;
            ++checked;
          }
      }
    }
    return std::pair{bad == 0, detail::plural(checked, "torsion sheaves") + ", " + detail::plural(bad, "mismatches")};
  });
}

inline Result criterion_6(const Options&) {
  return detail::timed(6, "canonical tilting {O(x): 0 <= x <= c}", std::nullopt, [&] {
    std::ostringstream os;
    bool ok = true;
    for (const auto& p : detail::weight_types()) {
      CohBackend b{WeightType(p)};
      const WeightType& w = b.weight();
      // Enumerate the interval directly from the order: 0 <= x <= c forces l(x) in {0, 1}.
      std::vector<Sheaf> elems;
      for (const auto& s : b.line_bundles(-1, 2))
        if (is_effective(s.degree()) && leq(s.degree(), LElement::canonical(w))) elems.push_back(s);
      RigidSet<Sheaf> set(elems);
      const bool good = is_tilting(b, set) && set.size() == static_cast<std::size_t>(rank_g0(w)) && set == canonical_tilting(b);
      ok = ok && good;
      os << (os.tellp() ? ", " : "") << w.to_string() << ":" << set.size();
    }
    return std::pair{ok, os.str()};
  });
}

inline Result criterion_7(const Options&) {
  return detail::timed(7, "Dynkin cluster-tilting counts", 60.0, [&] {
    struct Case { const char* type; std::vector<const char*> orientations; std::size_t count; };
    std::ostringstream os;
    bool ok = true;
    for (const auto& c : {Case{"A2", {"A2", "A2-rev"}, 5}, Case{"A3", {"A3", "A3-rev", "A3-alt"}, 14},
                          Case{"D4", {"D4", "D4-alt", "D4-rev"}, 50}}) {
      std::size_t seen = 0;
      for (const char* q : c.orientations) {
        DynkinBackend b(AcyclicQuiver::parse(q));
        auto g = explore(b, canonical_tilting(b));
        const std::size_t n = b.quiver().n();
        bool regular = true;
        for (const auto& [_, adj] : g.adjacency()) regular = regular && adj.size() == n;
        ok = ok && g.node_count() == c.count && regular && g.connected() && g.frontier.empty();
        seen = g.node_count();
      }
      os << (os.tellp() ? ", " : "") << c.type << ":" << seen;
    }
    return std::pair{ok, os.str()};
  });
}

inline Result criterion_8(const Options&) {
  return detail::timed(8, "cluster variables vs indecomposables", 60.0, [&] {
    struct Case { const char* q; std::size_t indec, seeds; };
    std::ostringstream os;
    bool ok = true;
    for (const auto& c : {Case{"A2", 5, 5}, Case{"A3", 9, 14}, Case{"D4", 16, 50}}) {
      DynkinBackend b(AcyclicQuiver::parse(c.q));
      auto g = seed_explore(initial_seed(initial_matrix(b)));
      auto vars = cluster_variables(g);
      ok = ok && vars.size() == c.indec && b.exceptional_objects().size() == c.indec && g.nodes.size() == c.seeds &&
           g.frontier.empty();
      os << (os.tellp() ? ", " : "") << c.q << ": " << vars.size() << " variables / " << g.nodes.size() << " seeds";
    }
    return std::pair{ok, os.str()};
  });
}

inline Result criterion_9(const Options&) {
  return detail::timed(9, "quiver propagation over the A3 exchange graph", 5.0, [&] {
    DynkinBackend b(AcyclicQuiver::parse("A3"));
    auto g = explore(b, canonical_tilting(b));
    auto p = propagate_quiver(g, canonical_tilting(b).key(), initial_matrix(b));
    const std::size_t cycles = g.edge_count() - p.tree_edges.size();
    return std::pair{p.consistent && cycles == 8, detail::plural(g.edge_count(), "edges") + ", " +
                                                      detail::plural(cycles, "independent cycles") +
                                                      (p.consistent ? ", consistent" : ", inconsistent")};
  });
}

inline Result criterion_10(const Options&) {
  return detail::timed(10, "A3 restriction to each indecomposable", 5.0, [&] {
    DynkinBackend b(AcyclicQuiver::parse("A3"));
    auto g = explore(b, canonical_tilting(b));
    bool ok = true;
    std::size_t pins = 0;
    for (const auto& x : b.exceptional_objects()) {
      auto r = restrict_to(b, g, x);
      std::size_t containing = 0;
      for (const auto& [_, s] : g.nodes) containing += s.contains(x);
      bool regular = true;
      for (const auto& [_, adj] : r.adjacency()) regular = regular && adj.size() == 2;
      ok = ok && r.connected() && regular && r.node_count() == containing;
      ++pins;
    }
    return std::pair{ok, detail::plural(pins, "pinned summands")};
  });
}

/// Criterion 11 for the given weight types.
inline Result criterion_11(const Options& o, std::vector<std::vector<int>> types = {{1, 1}, {2, 3}}) {
  std::string name = "coh connectivity";
  for (const auto& t : types) name += " " + WeightType(t).to_string();
  return detail::timed(11, name, 60.0, [&] {
    std::mt19937_64 rng(o.seed);
    std::ostringstream os;
    bool ok = true;
    for (const auto& t : types) {
      CohBackend b{WeightType(t)};
      const auto target = canonical_tilting(b);
      std::size_t found = 0;
      for (int n = 0; n < 50; ++n) {
        auto s = detail::random_tilting(b, -6, 6, rng);
        try {
          auto path = find_path(b, s, target);
          if (replay(b, s, path) == target) ++found;
        } catch (const not_found_within_budget&) {
        }
      }
      ok = ok && found == 50;
      os << (os.tellp() ? ", " : "") << b.name() << ": " << found << "/50 paths found";
    }
    return std::pair{ok, os.str()};
  });
}

inline Result criterion_12(const Options& o) {
  return detail::timed(12, "reachability certificates", 30.0, [&] {
    std::mt19937_64 rng(o.seed);
    std::ostringstream os;
    bool ok = true;
    for (const auto& t : std::vector<std::vector<int>>{{2, 2, 2}, {2, 3, 6}}) {
      CohBackend b{WeightType(t)};
      auto pool = b.exceptional_objects(-4, 4);
      const Sheaf o_sheaf = Sheaf::line(LElement::zero(b.weight()));
      std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
      std::size_t verified = 0;
      for (int n = 0; n < 20; ++n) {
        const auto& e = pool[pick(rng)];
        auto cert = reach(b, e, o_sheaf);
        if (verify_certificate(b, cert) && cert.chain.front() == e && cert.chain.back() == o_sheaf) ++verified;
      }
      ok = ok && verified == 20;
      os << (os.tellp() ? ", " : "") << b.name() << ": " << verified << "/20";
    }
    for (const char* q : {"A2", "A3"}) {
      DynkinBackend b(AcyclicQuiver::parse(q));
      std::size_t pairs = 0, verified = 0;
      for (const auto& m : b.exceptional_objects())
        for (const auto& n : b.exceptional_objects()) {
          ++pairs;
          auto cert = reach(b, m, n);
          if (verify_certificate(b, cert) && cert.chain.front() == m && cert.chain.back() == n) ++verified;
        }
      ok = ok && verified == pairs;
      os << ", " << q << ": " << verified << "/" << pairs << " pairs";
    }
    return std::pair{ok, os.str()};
  });
}

inline Result criterion_13(const Options& o) {
  return detail::timed(13, "mutation involution and unique other complement", std::nullopt, [&] {
    std::mt19937_64 rng(o.seed);
    std::ostringstream os;
    bool ok = true;
    auto run = [&](const auto& b, const std::string& label) {
      auto s = canonical_tilting(b);
      std::size_t good = 0;
      for (int n = 0; n < 100; ++n) {
        // Walk a few random steps to reach a fresh set, then test one index.
        std::uniform_int_distribution<std::size_t> pick(0, s.size() - 1);
        for (int step = 0; step < 3; ++step) s = mutate(b, s, pick(rng)).result;
        const std::size_t k = pick(rng);
        auto there = mutate(b, s, k);
        auto back = mutate(b, there.result, there.new_index);
        auto search = complements(b, s, k);
        if (back.result == s && search.found.size() == 1 && search.exhaustive) ++good;
      }
      ok = ok && good == 100;
      os << (os.tellp() ? ", " : "") << label << ": " << good << "/100";
    };
    run(CohBackend(WeightType({2, 3})), "coh (2,3)");
    run(DynkinBackend(AcyclicQuiver::parse("D4")), "Dynkin D4");
    return std::pair{ok, os.str()};
  });
}

inline Result run_criterion(int id, const Options& o) {
  switch (id) {
    case 1: return criterion_1(o);
    case 2: return criterion_2(o);
    case 3: return criterion_3(o);
    case 4: return criterion_4(o);
    case 5: return criterion_5(o);
    case 6: return criterion_6(o);
    case 7: return criterion_7(o);
    case 8: return criterion_8(o);
    case 9: return criterion_9(o);
    case 10: return criterion_10(o);
    case 11: return criterion_11(o);
    case 12: return criterion_12(o);
    case 13: return criterion_13(o);
    default: throw domain_error("no criterion " + std::to_string(id));
  }
}

/// Suite name -> runner. "all" runs 1..13.
inline const std::map<std::string, std::function<std::vector<Result>(const Options&)>>& suites() {
  using Runner = std::function<std::vector<Result>(const Options&)>;
  static const std::map<std::string, Runner> table = [] {
    std::map<std::string, Runner> t;
    auto ids = [](std::vector<int> v) {
      return Runner([v](const Options& o) {
        std::vector<Result> out;
        for (int id : v) out.push_back(run_criterion(id, o));
        return out;
      });
    };
    t["all"] = ids({1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13});
    t["lattice"] = ids({1, 2});
    t["graded-dim"] = ids({2});
    t["tube-oracle"] = ids({3});
    t["simple-ext"] = ids({4});
    t["rigidity"] = ids({5});
    t["canonical-tilting"] = ids({6});
    t["dynkin-counts"] = ids({7});
    t["seeds"] = ids({8});
    t["propagation"] = ids({9});
    t["restriction"] = ids({10});
    t["connectivity"] = ids({11});
    t["connectivity-(1,1)"] = [](const Options& o) { return std::vector<Result>{criterion_11(o, {{1, 1}})}; };
    t["connectivity-(2,3)"] = [](const Options& o) { return std::vector<Result>{criterion_11(o, {{2, 3}})}; };
    t["reach"] = ids({12});
    t["involution"] = ids({13});
    return t;
  }();
  return table;
}

inline std::vector<Result> run_suite(const std::string& name, const Options& o = {}) {
  auto it = suites().find(name);
  if (it == suites().end()) throw domain_error("unknown suite '" + name + "'");
  return it->second(o);
}

}  // namespace tilt::acceptance
