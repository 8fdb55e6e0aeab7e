#pragma once

// Verification oracle for morphisms in a standard tube of rank d: the tube is
// the category of nilpotent representations of the cyclic quiver
// 0 <- 1 <- ... <- d-1 <- 0, and Hom spaces are computed as the kernel of the
// explicit intertwining system over Q. Shares no code with coh.hpp.

#include <cstdint>
#include <vector>

#include "tilt/lattice.hpp"

namespace tilt::oracle {

/// Representation of the cyclic quiver with arrows v -> v-1 (mod d): a vector
/// space per vertex and one matrix per arrow.
struct CyclicRep {
  int d = 1;
  std::vector<int> dims;
  /// arrow[v] has dims[(v-1) mod d] rows and dims[v] columns.
  std::vector<std::vector<std::vector<Rational>>> arrow;
};

/// Uniserial representation with socle at vertex `socle` and `length`
/// composition factors: basis e_0..e_{length-1}, e_k at vertex socle + k,
/// arrows e_k -> e_{k-1}, e_0 -> 0.
inline CyclicRep uniserial(int d, int socle, int length) {
  CyclicRep r;
  r.d = d;
  r.dims.assign(d, 0);
  std::vector<int> vertex(length), local(length);
  for (int k = 0; k < length; ++k) {
    vertex[k] = static_cast<int>(floor_mod(socle + k, d));
    local[k] = r.dims[vertex[k]]++;
  }
  r.arrow.resize(d);
  for (int v = 0; v < d; ++v) {
    int target = static_cast<int>(floor_mod(v - 1, d));
    r.arrow[v].assign(r.dims[target], std::vector<Rational>(r.dims[v], Rational(0)));
  }
  for (int k = 1; k < length; ++k) r.arrow[vertex[k]][local[k - 1]][local[k]] = 1;
  return r;
}

inline std::size_t rank_of(std::vector<std::vector<Rational>> m) {
  std::size_t rank = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < m.size() && m[pivot][c] == Rational(0)) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][c] == Rational(0)) continue;
      Rational f = m[r][c] / m[rank][c];
      for (std::size_t j = c; j < cols; ++j) m[r][j] -= f * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

/// dim Hom(M, N): families f_v : M_v -> N_v with N_a f_v = f_{v-1} M_a for
/// every arrow a : v -> v-1.
inline std::int64_t hom_dimension(const CyclicRep& m, const CyclicRep& n) {
  const int d = m.d;
  std::vector<std::size_t> offset(d + 1, 0);
  for (int v = 0; v < d; ++v) offset[v + 1] = offset[v] + static_cast<std::size_t>(n.dims[v]) * m.dims[v];
  const std::size_t unknowns = offset[d];
  if (unknowns == 0) return 0;
  auto var = [&](int v, int row, int col) { return offset[v] + static_cast<std::size_t>(row) * m.dims[v] + col; };

  std::vector<std::vector<Rational>> system;
  for (int v = 0; v < d; ++v) {
    const int w = static_cast<int>(floor_mod(v - 1, d));
    // Entry (i, j) of N_a f_v - f_w M_a, a map M_v -> N_w.
    for (int i = 0; i < n.dims[w]; ++i) {
      for (int j = 0; j < m.dims[v]; ++j) {
        std::vector<Rational> eq(unknowns, Rational(0));
        for (int k = 0; k < n.dims[v]; ++k) eq[var(v, k, j)] += n.arrow[v][i][k];
        for (int k = 0; k < m.dims[w]; ++k) eq[var(w, i, k)] -= m.arrow[v][k][j];
        system.push_back(std::move(eq));
      }
    }
  }
  return static_cast<std::int64_t>(unknowns - rank_of(std::move(system)));
}

}  // namespace tilt::oracle
