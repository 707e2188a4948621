#pragma once

// Exact counts of the role-ordered block-path systems P and T, together with
// the leading-term formulas they converge to.
//
// P(u,v,m): sets of m pairwise-disjoint blocks of one structured colour with
//   u in the first block and v in the last.
// T(u,v,m): a P-structure plus one extra block in a second colour that avoids
//   u and v, meets every path block at most once, meets the first block
//   exactly once, and meets a designatable second block exactly once (the
//   last block when m = 2, some middle block when m >= 3).
//
// Counts factor through vertex-transitivity: the number of structures per
// (first, last) block pair depends only on sizes, so the role-bearing parts
// are counted in closed form and the constrained middle sets by short exact
// recursions. Bipartite variants carry side flags: a and b fix the X-side
// size of the first block and the Y-side size of the last block, c fixes the
// X-side size of the designated middle block; the extra block then meets the
// first block in a Y-vertex and the designated block in an X-vertex.

#include "host.hpp"

namespace ramsey {
namespace detail {

// exact division helper for ordered-to-unordered conversion
inline std::int64_t divide_exact(std::int64_t value, std::int64_t by) {
  if (by == 0 || value % by != 0) throw Error("internal: inexact division in counting");
  return value / by;
}

// unordered sets of t pairwise-disjoint r-subsets drawn from a pool of s free
// vertices
inline std::int64_t disjoint_sets_free(int s, int r, int t) {
  std::int64_t ordered = 1;
  for (int i = 0; i < t; ++i) ordered = checked_mul(ordered, binom(s - i * r, r));
  return divide_exact(ordered, factorial(t));
}

// unordered sets of t pairwise-disjoint (k-1)-subsets over a pool holding q
// marked vertices and f free ones, where every subset takes at most one mark
inline std::int64_t disjoint_sets_mark_le1(int q, int f, int k, int t) {
  struct Rec {
    int k;
    std::int64_t run(int q, int f, int t) const {
      if (t == 0) return 1;
      std::int64_t total = checked_mul(binom(f, k - 1), run(q, f - (k - 1), t - 1));
      if (q > 0)
        total += checked_mul(q, checked_mul(binom(f, k - 2), run(q - 1, f - (k - 2), t - 1)));
      return total;
    }
  };
  return divide_exact(Rec{k}.run(q, f, t), factorial(t));
}

// ordered sequences of t pairwise-disjoint bipartite blocks over pools of
// (bx, by) marked and (gx, gy) free X/Y vertices; every block takes at most
// one mark. With requireHit >= 0, sequences where no block of X-side size
// sideX[requireHit] takes an X-mark are counted instead (used subtractively).
struct BipMiddleCounter {
  int sx0, sy0, sx1, sy1;  // orientation side sizes: (X,Y) for flag 0 and 1
  int skipOrient = -1;      // orientation whose X-hit branch is excluded

  std::int64_t ordered(int bx, int by, int gx, int gy, int t) const {
    if (t == 0) return 1;
    std::int64_t total = 0;
    for (int o = 0; o < 2; ++o) {
      int xs = o == 0 ? sx0 : sx1, ys = o == 0 ? sy0 : sy1;
      total += checked_mul(checked_mul(binom(gx, xs), binom(gy, ys)),
                           ordered(bx, by, gx - xs, gy - ys, t - 1));
      if (bx > 0 && o != skipOrient)
        total += checked_mul(
            checked_mul(bx, checked_mul(binom(gx, xs - 1), binom(gy, ys))),
            ordered(bx - 1, by, gx - (xs - 1), gy - ys, t - 1));
      if (by > 0)
        total += checked_mul(
            checked_mul(by, checked_mul(binom(gx, xs), binom(gy, ys - 1))),
            ordered(bx, by - 1, gx - xs, gy - (ys - 1), t - 1));
    }
    return total;
  }
};

// unordered sets of t disjoint bipartite blocks from free pools (fx, fy)
inline std::int64_t bip_disjoint_sets_free(const HostSpec& host, int fx, int fy, int t) {
  BipMiddleCounter c{host.shape.sideSmall, host.shape.sideLarge,
                     host.shape.sideLarge, host.shape.sideSmall, -1};
  return divide_exact(c.ordered(0, 0, fx, fy, t), factorial(t));
}

inline int side_size(const HostSpec& host, int flag) {
  return flag == 0 ? host.shape.sideSmall : host.shape.sideLarge;
}

inline void check_m_range(const HostSpec& host, int m) {
  if (m < 2 || m > host.ell / 2)
    throw Error("path-system order m must lie in [2, ell/2]");
}

inline void check_complete(const HostSpec& host, int u, int v, int m) {
  if (host.mode != Mode::complete)
    throw Error("this count takes side flags in bipartite mode");
  check_m_range(host, m);
  if (u == v || u < 0 || v < 0 || u >= host.n || v >= host.n)
    throw Error("u and v must be distinct host vertices");
}

inline void check_bipartite(const HostSpec& host, int x, int y, int m, int a, int b) {
  if (host.mode != Mode::bipartite)
    throw Error("side flags are only meaningful in bipartite mode");
  check_m_range(host, m);
  if (!(x >= 0 && host.is_x(x)) || !(y >= host.n && y < 2 * host.n))
    throw Error("x must lie on the X side and y on the Y side");
  if ((a != 0 && a != 1) || (b != 0 && b != 1)) throw Error("side flags must be 0 or 1");
}

}  // namespace detail

// -------- complete host --------

inline std::int64_t count_P(const HostSpec& host, int u, int v, int m) {
  detail::check_complete(host, u, v, m);
  const int k = host.k, n = host.n;
  std::int64_t first = binom(n - 2, k - 2);   // rest of the u-block, avoiding v
  std::int64_t last = binom(n - k, k - 2);    // rest of the v-block, avoiding the u-block
  std::int64_t mids = detail::disjoint_sets_free(n - 2 * (k - 1), k - 1, m - 2);
  return checked_mul(host.paletteSize, checked_mul(first, checked_mul(last, mids)));
}

inline double formula_P(const HostSpec& host, int m) {
  if (host.mode != Mode::complete) throw Error("bipartite formula takes side flags");
  detail::check_m_range(host, m);
  const int k = host.k;
  double d = host.d.value(), n = host.n;
  return std::pow(d, m) * std::pow(n, m - 1) /
         (static_cast<double>(factorial(m - 2)) * (k - 2) * std::pow(k - 1, m - 2));
}

inline std::int64_t count_T(const HostSpec& host, int u, int v, int m) {
  detail::check_complete(host, u, v, m);
  const int k = host.k, n = host.n;
  if (host.paletteSize < 2) return 0;  // the extra block needs a second colour
  std::int64_t pairs = checked_mul(binom(n - 2, k - 2), binom(n - k, k - 2));
  const int pool = n - 2 * (k - 1);
  std::int64_t perPair = 0;
  if (m == 2) {
    // extra block = one vertex of the u-block (not u), one of the v-block
    // (not v), rest free
    perPair = checked_mul(static_cast<std::int64_t>(k - 2) * (k - 2), binom(pool, k - 3));
  } else {
    // extra block meets the u-block once; it may also meet the v-block once;
    // middle sets must include at least one block meeting the extra block
    for (int hit = 0; hit <= 1; ++hit) {
      std::int64_t hitWays = hit == 0 ? 1 : k - 2;  // a vertex of the v-block, not v
      int rest = k - 2 - hit;                       // extra-block vertices in the free pool
      if (rest < 0) continue;
      std::int64_t qualified =
          detail::disjoint_sets_mark_le1(rest, pool - rest, k, m - 2) -
          detail::disjoint_sets_free(pool - rest, k - 1, m - 2);
      perPair += checked_mul(static_cast<std::int64_t>(k - 2),
                             checked_mul(hitWays, checked_mul(binom(pool, rest), qualified)));
    }
  }
  std::int64_t colours = checked_mul(host.paletteSize, host.paletteSize - 1);
  return checked_mul(colours, checked_mul(pairs, perPair));
}

inline double formula_T(const HostSpec& host, int m) {
  if (host.mode != Mode::complete) throw Error("bipartite formula takes side flags");
  detail::check_m_range(host, m);
  const int k = host.k;
  double a = m == 2 ? static_cast<double>(k - 2) * (k - 2)
                    : static_cast<double>(m - 2) * (k - 1) * (k - 2);
  double d = host.d.value(), n = host.n;
  return a * std::pow(d, m + 1) * std::pow(n, m - 1) /
         (static_cast<double>(factorial(m - 2)) * (k - 2) * std::pow(k - 1, m - 2));
}

// -------- bipartite host --------

namespace detail {

struct BipRoleCounts {
  std::int64_t firstBlocks, lastBlocks;  // placements of the x-block and y-block
  int fx, fy;                            // free pool sizes after both
};

inline BipRoleCounts bip_roles(const HostSpec& host, int a, int b) {
  const int n = host.n;
  int xa = side_size(host, a);       // X side of the first block (contains x)
  int ya = side_size(host, 1 - a);   // Y side of the first block
  int yb = side_size(host, b);       // Y side of the last block (contains y)
  int xb = side_size(host, 1 - b);   // X side of the last block
  BipRoleCounts r;
  r.firstBlocks = checked_mul(binom(n - 1, xa - 1), binom(n - 1, ya));
  r.lastBlocks = checked_mul(binom(n - xa, xb), binom(n - 1 - ya, yb - 1));
  r.fx = n - xa - xb;
  r.fy = n - ya - yb;
  return r;
}

}  // namespace detail

inline std::int64_t count_P(const HostSpec& host, int x, int y, int m, int a, int b) {
  detail::check_bipartite(host, x, y, m, a, b);
  auto roles = detail::bip_roles(host, a, b);
  std::int64_t mids = detail::bip_disjoint_sets_free(host, roles.fx, roles.fy, m - 2);
  return checked_mul(host.paletteSize,
                     checked_mul(roles.firstBlocks, checked_mul(roles.lastBlocks, mids)));
}

inline double formula_P(const HostSpec& host, int m, int a, int b) {
  if (host.mode != Mode::bipartite) throw Error("side flags are bipartite-only");
  detail::check_m_range(host, m);
  if ((a != 0 && a != 1) || (b != 0 && b != 1)) throw Error("side flags must be 0 or 1");
  const int k = host.k;
  double d = host.d.value(), n = host.n;
  double ca = binom(k + a, 2), cb = binom(k + b, 2);
  return std::pow(2.0, m - 1) * ca * cb * std::pow(d, m) * std::pow(n, m - 1) /
         (std::pow(k, 2 * m) * (static_cast<double>(k) * k - 1) * factorial(m - 2));
}

inline std::int64_t count_T(const HostSpec& host, int x, int y, int m, int a, int b, int c) {
  detail::check_bipartite(host, x, y, m, a, b);
  if (c != 0 && c != 1) throw Error("side flags must be 0 or 1");
  if (host.paletteSize < 2) return 0;
  auto roles = detail::bip_roles(host, a, b);
  int ya = detail::side_size(host, 1 - a);  // Y side of the first block
  int yb = detail::side_size(host, b);      // Y side of the last block
  int xb = detail::side_size(host, 1 - b);  // X side of the last block
  std::int64_t perPair = 0;
  if (m == 2) {
    // the designated block is the last one; its X side must match flag c
    if (c != 1 - b) return 0;
    std::int64_t links = checked_mul(static_cast<std::int64_t>(ya), xb);
    std::int64_t shapes = 0;
    for (int o = 0; o < 2; ++o) {
      int xs = detail::side_size(host, o), ys = detail::side_size(host, 1 - o);
      shapes += checked_mul(binom(roles.fx, xs - 1), binom(roles.fy, ys - 1));
    }
    perPair = checked_mul(links, shapes);
  } else {
    detail::BipMiddleCounter all{host.shape.sideSmall, host.shape.sideLarge,
                                 host.shape.sideLarge, host.shape.sideSmall, -1};
    detail::BipMiddleCounter missed = all;
    // orientation index o has X side size side_size(o); flag c names the
    // orientation whose X-hit makes a middle block designatable
    missed.skipOrient = c;
    for (int o = 0; o < 2; ++o) {
      int xs = detail::side_size(host, o), ys = detail::side_size(host, 1 - o);
      // extra-block contact with the last block: none, an X vertex, or a
      // Y vertex other than y
      const std::int64_t hitWays[3] = {1, xb, yb - 1};
      const int hitX[3] = {0, 1, 0}, hitY[3] = {0, 0, 1};
      for (int h = 0; h < 3; ++h) {
        int bx = xs - hitX[h];          // extra-block X vertices in the free pool
        int by = ys - 1 - hitY[h];      // minus the contact vertex in the first block
        if (bx < 0 || by < 0) continue;
        std::int64_t place = checked_mul(binom(roles.fx, bx), binom(roles.fy, by));
        if (place == 0) continue;
        int gx = roles.fx - bx, gy = roles.fy - by;
        std::int64_t qualified =
            detail::divide_exact(all.ordered(bx, by, gx, gy, m - 2), factorial(m - 2)) -
            detail::divide_exact(missed.ordered(bx, by, gx, gy, m - 2), factorial(m - 2));
        perPair += checked_mul(static_cast<std::int64_t>(ya),
                               checked_mul(hitWays[h], checked_mul(place, qualified)));
      }
    }
  }
  std::int64_t colours = checked_mul(host.paletteSize, host.paletteSize - 1);
  return checked_mul(colours,
                     checked_mul(roles.firstBlocks, checked_mul(roles.lastBlocks, perPair)));
}

inline double formula_T(const HostSpec& host, int m, int a, int b, int c) {
  if (host.mode != Mode::bipartite) throw Error("side flags are bipartite-only");
  detail::check_m_range(host, m);
  if ((a != 0 && a != 1) || (b != 0 && b != 1) || (c != 0 && c != 1))
    throw Error("side flags must be 0 or 1");
  (void)a;  // the leading term depends only on b and c
  double z = m == 2 ? 1.0 : (m - 2) / 2.0;
  double d = host.d.value(), n = host.n;
  const int k = host.k;
  double cc = binom(k + c, 2), cb = binom(k + b, 2);
  return std::pow(2.0, m - 3) * cc * cb * z * std::pow(d, m + 1) * std::pow(n, m - 1) /
         (std::pow(k, 2 * m - 2) * factorial(m - 2));
}

}  // namespace ramsey
