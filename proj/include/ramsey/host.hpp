#pragma once

// Host instance description: the graph being coloured (K_n or K_{n,n})
// together with the block-design parameters derived from (k, ell) — block
// shape, structured palette size, and the expected block degree d kept as an
// exact rational.
//
// Vertex ids are global: complete hosts use 0..n-1; bipartite hosts use
// 0..n-1 for the X side and n..2n-1 for the Y side.

#include <cmath>
#include <utility>

#include "util.hpp"

namespace ramsey {

enum class Mode { complete, bipartite };

inline const char* mode_name(Mode m) { return m == Mode::complete ? "complete" : "bipartite"; }

struct BlockShape {
  int total = 0;      // vertices per block
  int sideSmall = 0;  // bipartite: C(k,2); unused in complete mode
  int sideLarge = 0;  // bipartite: C(k+1,2)
  bool operator==(const BlockShape&) const = default;
};

struct HostSpec {
  Mode mode = Mode::complete;
  int n = 0;    // complete: vertex count; bipartite: vertices per side
  int k = 0;
  int ell = 0;
  double eps = 0;       // boundedness exponent (defaulted by build_host)
  int paletteSize = 0;  // structured colours, ids 1..paletteSize
  Rational d;           // expected block degree
  BlockShape shape;

  bool operator==(const HostSpec&) const = default;

  int num_vertices() const { return mode == Mode::complete ? n : 2 * n; }

  std::int64_t num_edges() const {
    return mode == Mode::complete ? static_cast<std::int64_t>(n) * (n - 1) / 2
                                  : static_cast<std::int64_t>(n) * n;
  }

  // shortest cycle length that must receive >= 3 colours
  int cycle_low() const { return mode == Mode::complete ? k : k * k - k + 2; }

  bool is_x(int v) const { return v < n; }

  bool is_host_edge(int u, int v) const {
    if (u == v) return false;
    if (mode == Mode::complete) return u >= 0 && v >= 0 && u < n && v < n;
    if (u > v) std::swap(u, v);
    return u >= 0 && u < n && v >= n && v < 2 * n;
  }

  // dense index of a host edge; complete: unordered pair of vertices,
  // bipartite: (x, y) cross pair
  std::int64_t edge_index(int u, int v) const {
    if (!is_host_edge(u, v)) throw Error("edge_index: not a host edge");
    if (u > v) std::swap(u, v);
    if (mode == Mode::complete) return static_cast<std::int64_t>(v) * (v - 1) / 2 + u;
    return static_cast<std::int64_t>(u) * n + (v - n);
  }

  std::pair<int, int> edge_vertices(std::int64_t idx) const {
    if (idx < 0 || idx >= num_edges()) throw Error("edge_vertices: index out of range");
    if (mode == Mode::bipartite)
      return {static_cast<int>(idx / n), static_cast<int>(idx % n) + n};
    int v = static_cast<int>((1.0 + std::sqrt(8.0 * static_cast<double>(idx) + 1.0)) / 2.0);
    while (static_cast<std::int64_t>(v) * (v - 1) / 2 > idx) --v;
    while (static_cast<std::int64_t>(v + 1) * v / 2 <= idx) ++v;
    return {static_cast<int>(idx - static_cast<std::int64_t>(v) * (v - 1) / 2), v};
  }

  // number of distinct block placements (vertex sets, both orientations in
  // bipartite mode); the hypergraph census is this times paletteSize
  std::int64_t block_placements() const {
    if (mode == Mode::complete) return binom(n, k - 1);
    return checked_mul(2, checked_mul(binom(n, shape.sideSmall), binom(n, shape.sideLarge)));
  }
};

// Validates parameters and fills in every derived quantity.
//
// complete:  k >= 3, ell >= k, n >= k-2 (else the palette would be empty);
//            blocks are cliques on k-1 vertices, palette floor(n/(k-2)),
//            d = n^(k-2)/(k-2)!.
// bipartite: k >= 2, ell even and >= k^2-k+2, 2n >= k^2-1; blocks are
//            complete bipartite K_{C(k,2),C(k+1,2)} in either orientation,
//            palette floor(2n/(k^2-1)), d = k^2 n^(k^2-1)/(C(k,2)! C(k+1,2)!).
// eps defaults to half its admissible upper bound when not supplied.
inline HostSpec build_host(Mode mode, int n, int k, int ell, double eps = -1.0) {
  HostSpec h;
  h.mode = mode;
  h.n = n;
  h.k = k;
  h.ell = ell;
  if (mode == Mode::complete) {
    if (k < 3) throw Error("build_host: complete mode requires k >= 3");
    if (ell < k) throw Error("build_host: ell must be at least k");
    if (n < k - 2) throw Error("build_host: n < k-2 leaves no structured colours");
    double epsCap = 1.0 / (k - 2);
    h.eps = eps < 0 ? epsCap / 2 : eps;
    if (h.eps <= 0 || h.eps >= epsCap) throw Error("build_host: eps outside (0, 1/(k-2))");
    h.paletteSize = n / (k - 2);
    h.d = Rational(checked_pow(n, k - 2), factorial(k - 2));
    h.shape = BlockShape{k - 1, 0, 0};
  } else {
    if (k < 2) throw Error("build_host: bipartite mode requires k >= 2");
    if (ell % 2 != 0) throw Error("build_host: bipartite ell must be even");
    if (ell < k * k - k + 2) throw Error("build_host: ell must be at least k^2-k+2");
    if (2 * n < k * k - 1) throw Error("build_host: 2n < k^2-1 leaves no structured colours");
    double epsCap = 1.0 / (k * k - 1);
    h.eps = eps < 0 ? epsCap / 2 : eps;
    if (h.eps <= 0 || h.eps >= epsCap) throw Error("build_host: eps outside (0, 1/(k^2-1))");
    h.paletteSize = 2 * n / (k * k - 1);
    int sideSmall = k * (k - 1) / 2;
    int sideLarge = k * (k + 1) / 2;
    h.d = Rational(checked_mul(static_cast<std::int64_t>(k) * k, checked_pow(n, k * k - 1)),
                   checked_mul(factorial(sideSmall), factorial(sideLarge)));
    h.shape = BlockShape{k * k, sideSmall, sideLarge};
  }
  return h;
}

}  // namespace ramsey
