#pragma once

// Cluster categories of Dynkin quivers, modeled through dimension vectors.
// Indecomposables are the positive roots (modules) together with the shifted
// projectives; Ext^1 in the cluster category comes from the Euler form and
// the directedness of Dynkin module categories.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "tilt/errors.hpp"
#include "tilt/lattice.hpp"

namespace tilt {

using DimVector = boost::container::small_vector<int, 8>;

/// Finite quiver without oriented cycles; vertices 0..n-1.
class AcyclicQuiver {
 public:
  AcyclicQuiver() = default;
  AcyclicQuiver(int n, std::vector<std::pair<int, int>> arrows) : n_(n), arrows_(std::move(arrows)) {
    if (n < 1) throw domain_error("quiver needs at least one vertex");
    for (auto [i, j] : arrows_) {
      if (i < 0 || j < 0 || i >= n || j >= n) throw domain_error("arrow endpoint out of range");
      if (i == j) throw domain_error("quiver has a loop");
    }
    if (!acyclic()) throw domain_error("quiver has an oriented cycle");
    std::sort(arrows_.begin(), arrows_.end());
  }

  int n() const { return n_; }
  const std::vector<std::pair<int, int>>& arrows() const { return arrows_; }

  friend bool operator==(const AcyclicQuiver&, const AcyclicQuiver&) = default;

  /// "n; i->j; i->j; ..." with 1-based vertices.
  std::string to_string() const {
    std::string s = std::to_string(n_);
    for (auto [i, j] : arrows_) s += "; " + std::to_string(i + 1) + "->" + std::to_string(j + 1);
    return s;
  }

  /// Accepts "n; i->j; ..." or a preset name: A<n>, D<n> (n >= 4), E6, E7, E8,
  /// optionally suffixed by an orientation "-lin" (default, i -> i+1),
  /// "-rev" or "-alt" (alternating sinks and sources).
  static AcyclicQuiver parse(std::string_view text);

  /// Skew-symmetric exchange matrix b_ij = #(i->j) - #(j->i).
  std::vector<std::vector<int>> exchange_matrix() const {
    std::vector<std::vector<int>> b(n_, std::vector<int>(n_, 0));
    for (auto [i, j] : arrows_) {
      ++b[i][j];
      --b[j][i];
    }
    return b;
  }

  /// Tits form positive definite, i.e. every component is of ADE type.
  bool is_dynkin() const {
    // Gaussian elimination on the symmetrized Tits matrix; positive definite
    // iff every pivot is positive.
    std::vector<std::vector<Rational>> m(n_, std::vector<Rational>(n_, Rational(0)));
    for (int i = 0; i < n_; ++i) m[i][i] = 2;
    for (auto [i, j] : arrows_) {
      m[i][j] -= 1;
      m[j][i] -= 1;
    }
    for (int k = 0; k < n_; ++k) {
      if (m[k][k] <= Rational(0)) return false;
      for (int i = k + 1; i < n_; ++i) {
        Rational f = m[i][k] / m[k][k];
        for (int j = k; j < n_; ++j) m[i][j] -= f * m[k][j];
      }
    }
    return true;
  }

 private:
  bool acyclic() const {
    std::vector<int> indeg(n_, 0);
    for (auto [i, j] : arrows_) ++indeg[j];
    std::vector<int> ready;
    for (int v = 0; v < n_; ++v)
      if (!indeg[v]) ready.push_back(v);
    int seen = 0;
    while (!ready.empty()) {
      int v = ready.back();
      ready.pop_back();
      ++seen;
      for (auto [i, j] : arrows_)
        if (i == v && --indeg[j] == 0) ready.push_back(j);
    }
    return seen == n_;
  }

  int n_ = 0;
  std::vector<std::pair<int, int>> arrows_;
};

inline AcyclicQuiver AcyclicQuiver::parse(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw parse_error("empty quiver");
  try {
    if (std::isalpha(static_cast<unsigned char>(s[0]))) {
      std::string orient = "lin";
      if (auto dash = s.find_first_of("-:"); dash != std::string::npos) {
        orient = s.substr(dash + 1);
        s = s.substr(0, dash);
      }
      char type = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
      std::string digits = s.substr(1);
      if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw parse_error("bad preset '" + std::string(text) + "'");
      int n = std::stoi(digits);
      // Underlying edges, listed so that "lin" orients each as first -> second.
      std::vector<std::pair<int, int>> edges;
      if (type == 'A' && n >= 1) {
        for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
      } else if (type == 'D' && n >= 4) {
        for (int i = 0; i + 2 < n; ++i) edges.emplace_back(i, i + 1);
        edges.emplace_back(n - 1, n - 3);
      } else if (type == 'E' && n >= 6 && n <= 8) {
        for (int i = 0; i + 2 < n; ++i) edges.emplace_back(i, i + 1);
        edges.emplace_back(n - 1, 2);
      } else {
        throw parse_error("unknown preset '" + std::string(text) + "'");
      }
      if (orient == "rev") {
        for (auto& e : edges) std::swap(e.first, e.second);
      } else if (orient == "alt") {
        // Bipartite orientation: arrows from even-colored to odd-colored vertices.
        std::vector<int> color(n, -1);
        color[0] = 0;
        for (bool changed = true; changed;) {
          changed = false;
          for (auto [a, b] : edges) {
            if (color[a] >= 0 && color[b] < 0) color[b] = 1 - color[a], changed = true;
            if (color[b] >= 0 && color[a] < 0) color[a] = 1 - color[b], changed = true;
          }
        }
        for (auto& e : edges)
          if (color[e.first] != 0) std::swap(e.first, e.second);
      } else if (orient != "lin") {
        throw parse_error("unknown orientation '" + orient + "'");
      }
      return AcyclicQuiver(n, std::move(edges));
    }
    std::vector<std::string> fields;
    std::size_t pos = 0;
    while (pos <= s.size()) {
      std::size_t semi = s.find(';', pos);
      if (semi == std::string::npos) semi = s.size();
      fields.push_back(s.substr(pos, semi - pos));
      pos = semi + 1;
    }
    if (!fields.empty() && fields.back().empty()) fields.pop_back();
    std::size_t used = 0;
    int n = std::stoi(fields.at(0), &used);
    if (used != fields[0].size()) throw parse_error("bad vertex count");
    std::vector<std::pair<int, int>> arrows;
    for (std::size_t k = 1; k < fields.size(); ++k) {
      const std::string& f = fields[k];
      auto arrow = f.find("->");
      if (arrow == std::string::npos) throw parse_error("bad arrow '" + f + "'");
      std::size_t u1 = 0, u2 = 0;
      int i = std::stoi(f.substr(0, arrow), &u1);
      int j = std::stoi(f.substr(arrow + 2), &u2);
      if (u1 != arrow || u2 != f.size() - arrow - 2) throw parse_error("bad arrow '" + f + "'");
      arrows.emplace_back(i - 1, j - 1);
    }
    return AcyclicQuiver(n, std::move(arrows));
  } catch (const parse_error&) {
    throw;
  } catch (const domain_error& e) {
    throw parse_error(std::string("invalid quiver '") + std::string(text) + "': " + e.what());
  } catch (const std::exception&) {
    throw parse_error("malformed quiver '" + std::string(text) + "'");
  }
}

/// Euler form <d,e> = sum d_i e_i - sum_{i->j} d_i e_j.
inline int euler_form(const AcyclicQuiver& q, std::span<const int> d, std::span<const int> e) {
  if (d.size() != static_cast<std::size_t>(q.n()) || e.size() != static_cast<std::size_t>(q.n()))
    throw mismatch_error("dimension vector length does not match the quiver");
  int v = 0;
  for (int i = 0; i < q.n(); ++i) v += d[i] * e[i];
  for (auto [i, j] : q.arrows()) v -= d[i] * e[j];
  return v;
}
inline int euler_form(const AcyclicQuiver& q, const DimVector& d, const DimVector& e) {
  return euler_form(q, std::span<const int>(d.data(), d.size()), std::span<const int>(e.data(), e.size()));
}

namespace detail {
inline std::vector<DimVector> roots_with_bound(const AcyclicQuiver& q, int bound) {
  std::vector<DimVector> out;
  DimVector d(q.n(), 0);
  while (true) {
    std::size_t k = 0;
    while (k < d.size() && ++d[k] > bound) d[k++] = 0;
    if (k == d.size()) break;
    if (euler_form(q, d, d) == 1) out.push_back(d);
  }
  std::sort(out.begin(), out.end());
  return out;
}
}  // namespace detail

/// Positive roots of a Dynkin quiver, sorted lexicographically.
///
/// Exhaustive search over coefficients in [0, 6] (the largest coefficient of
/// any ADE highest root); the bound is confirmed by rerunning with bound 7.
/// Also asserts directedness: no two roots d != e with both <d,e> < 0 and
/// <e,d> < 0.
inline std::vector<DimVector> positive_roots(const AcyclicQuiver& q) {
  if (!q.is_dynkin()) throw domain_error("quiver is not of Dynkin type: " + q.to_string());
  constexpr int bound = 6;
  auto roots = detail::roots_with_bound(q, bound);
  if (detail::roots_with_bound(q, bound + 1) != roots) throw internal_error("root bound not confirmed");
  for (std::size_t a = 0; a < roots.size(); ++a)
    for (std::size_t b = a + 1; b < roots.size(); ++b)
      if (euler_form(q, roots[a], roots[b]) < 0 && euler_form(q, roots[b], roots[a]) < 0)
        throw internal_error("directedness violated");
  return roots;
}

/// Indecomposable of the cluster category: a module (positive root) or a
/// shifted projective.
class DynkinObject {
 public:
  DynkinObject() = default;
  static DynkinObject module(DimVector d) {
    DynkinObject o;
    o.dim_ = std::move(d);
    return o;
  }
  static DynkinObject shifted_projective(int vertex) {
    DynkinObject o;
    o.vertex_ = vertex;
    return o;
  }

  bool is_module() const { return vertex_ < 0; }
  bool is_shifted_projective() const { return vertex_ >= 0; }
  const DimVector& dim() const { return dim_; }
  int vertex() const { return vertex_; }

  friend bool operator==(const DynkinObject&, const DynkinObject&) = default;
  /// Shifted projectives (by vertex) before modules (lexicographic).
  friend bool operator<(const DynkinObject& a, const DynkinObject& b) {
    if (a.is_module() != b.is_module()) return b.is_module();
    if (a.is_shifted_projective()) return a.vertex_ < b.vertex_;
    return a.dim_ < b.dim_;
  }

  /// "M(d1,...,dn)" or "P<i>[1]", vertices 1-based.
  std::string to_string() const {
    if (is_shifted_projective()) return "P" + std::to_string(vertex_ + 1) + "[1]";
    std::string s = "M(";
    for (std::size_t i = 0; i < dim_.size(); ++i) s += (i ? "," : "") + std::to_string(dim_[i]);
    return s + ")";
  }

 private:
  DimVector dim_;
  int vertex_ = -1;
};

inline std::ostream& operator<<(std::ostream& os, const DynkinObject& o) { return os << o.to_string(); }

/// The cluster category C(kQ) of a Dynkin quiver Q.
class DynkinCategory {
 public:
  explicit DynkinCategory(AcyclicQuiver q) : quiver_(std::move(q)), roots_(positive_roots(quiver_)) {
    for (int i = 0; i < quiver_.n(); ++i) universe_.push_back(DynkinObject::shifted_projective(i));
    for (const auto& r : roots_) universe_.push_back(DynkinObject::module(r));
    std::sort(universe_.begin(), universe_.end());
  }

  const AcyclicQuiver& quiver() const { return quiver_; }
  const std::vector<DimVector>& roots() const { return roots_; }
  /// Modules for every positive root plus one shifted projective per vertex.
  const std::vector<DynkinObject>& indecomposables() const { return universe_; }

  /// dim Ext^1 in the cluster category.
  int ext1_c(const DynkinObject& a, const DynkinObject& b) const {
    check(a);
    check(b);
    if (a.is_shifted_projective() && b.is_shifted_projective()) return 0;
    if (a.is_shifted_projective()) return b.dim()[a.vertex()];
    if (b.is_shifted_projective()) return a.dim()[b.vertex()];
    return std::max(-euler_form(quiver_, a.dim(), b.dim()), 0) + std::max(-euler_form(quiver_, b.dim(), a.dim()), 0);
  }

  DynkinObject parse(std::string_view text) const {
    std::string s;
    for (char ch : text)
      if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    DynkinObject o;
    try {
      if (s.size() > 4 && s[0] == 'P' && s.ends_with("[1]")) {
        std::string num = s.substr(1, s.size() - 4);
        std::size_t used = 0;
        int v = std::stoi(num, &used);
        if (used != num.size()) throw parse_error("");
        o = DynkinObject::shifted_projective(v - 1);
      } else if (s.size() > 3 && s[0] == 'M' && s[1] == '(' && s.back() == ')') {
        DimVector d;
        std::string body = s.substr(2, s.size() - 3);
        std::size_t pos = 0;
        while (pos <= body.size()) {
          std::size_t comma = body.find(',', pos);
          if (comma == std::string::npos) comma = body.size();
          std::string tok = body.substr(pos, comma - pos);
          std::size_t used = 0;
          d.push_back(std::stoi(tok, &used));
          if (used != tok.size()) throw parse_error("");
          pos = comma + 1;
        }
        o = DynkinObject::module(std::move(d));
      } else {
        throw parse_error("");
      }
    } catch (const std::exception&) {
      throw parse_error("bad Dynkin object literal '" + std::string(text) + "'");
    }
    try {
      check(o);
    } catch (const error& e) {
      throw parse_error(e.what());
    }
    return o;
  }

 private:
  void check(const DynkinObject& o) const {
    if (o.is_shifted_projective()) {
      if (o.vertex() >= quiver_.n()) throw mismatch_error("vertex out of range for quiver");
    } else {
      if (o.dim().size() != static_cast<std::size_t>(quiver_.n())) throw mismatch_error("dimension vector length does not match the quiver");
      if (!std::binary_search(roots_.begin(), roots_.end(), o.dim())) throw domain_error("not a positive root: " + o.to_string());
    }
  }

  AcyclicQuiver quiver_;
  std::vector<DimVector> roots_;
  std::vector<DynkinObject> universe_;
};

}  // namespace tilt
