#pragma once

// Independent reference implementations used only by the tests. Everything
// here recomputes quantities from first principles, by brute force where
// possible, so that library results are checked against a second opinion
// rather than against themselves.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "ramsey/block.hpp"
#include "ramsey/colouring.hpp"
#include "ramsey/hypergraph.hpp"

namespace oracle {

// Pascal's triangle; independent of the library's multiplicative formula.
inline std::int64_t binom_recurrence(int n, int r) {
  if (r < 0 || r > n || n < 0) return 0;
  std::vector<std::int64_t> row(static_cast<std::size_t>(n) + 1, 0);
  row[0] = 1;
  for (int i = 1; i <= n; ++i)
    for (int j = i; j >= 1; --j) row[static_cast<std::size_t>(j)] += row[static_cast<std::size_t>(j - 1)];
  return row[static_cast<std::size_t>(r)];
}

// All r-subsets of [0, n) as sorted vectors.
inline std::vector<std::vector<int>> all_subsets(int n, int r) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int next) -> void {
    if (static_cast<int>(cur.size()) == r) {
      out.push_back(cur);
      return;
    }
    for (int v = next; v < n; ++v) {
      cur.push_back(v);
      self(self, v + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

// Pairwise H-compatibility check written directly from the definition:
// same colour -> disjoint, different colours -> at most one shared vertex.
inline bool blocks_compatible(const ramsey::Block& a, const ramsey::Block& b) {
  int shared = ramsey::shared_count(a.vertices, b.vertices);
  if (a.colour == b.colour) return shared == 0;
  return shared <= 1;
}

inline bool matching_valid(const std::vector<ramsey::Block>& blocks) {
  for (std::size_t i = 0; i < blocks.size(); ++i)
    for (std::size_t j = i + 1; j < blocks.size(); ++j)
      if (!blocks_compatible(blocks[i], blocks[j])) return false;
  return true;
}

// Blocks containing a fixed vertex pair (any colour): the degree of a
// pair-type H-vertex, counted straight off the block list.
inline std::int64_t degree_of_pair(const std::vector<ramsey::Block>& blocks, int u, int v) {
  std::int64_t count = 0;
  for (const auto& b : blocks)
    if (b.contains(u) && b.contains(v)) ++count;
  return count;
}

inline std::int64_t degree_of_vertex_colour(const std::vector<ramsey::Block>& blocks, int v,
                                            int colour) {
  std::int64_t count = 0;
  for (const auto& b : blocks)
    if (b.colour == colour && b.contains(v)) ++count;
  return count;
}

// Ordered alternating cycles of a given length, counted by extending ordered
// block tuples one position at a time with every defining condition checked
// in place: two alternating colours, consecutive blocks sharing exactly one
// vertex, all shared vertices distinct, all pairs compatible. Every rotation
// and direction of a cycle is counted separately.
inline std::int64_t ordered_alternating_cycles(
    const ramsey::ExplicitHypergraph& h, int length,
    std::set<std::vector<int>>* sets = nullptr) {
  const int blockCount = static_cast<int>(h.blocks.size());
  std::int64_t total = 0;
  std::vector<int> path, links;
  std::vector<char> used(static_cast<std::size_t>(blockCount), 0);
  auto rec = [&](auto&& self) -> void {
    int pos = static_cast<int>(path.size());
    if (pos == length) {
      const auto& last = h.blocks[path.back()];
      const auto& first = h.blocks[path.front()];
      int w = ramsey::single_shared_vertex(last.vertices, first.vertices);
      if (w < 0) return;
      for (int l : links)
        if (l == w) return;
      ++total;
      if (sets) {
        std::vector<int> ids = path;
        std::sort(ids.begin(), ids.end());
        sets->insert(std::move(ids));
      }
      return;
    }
    for (int cand = 0; cand < blockCount; ++cand) {
      if (used[cand]) continue;
      const auto& cb = h.blocks[cand];
      if (pos >= 1) {
        int want = pos % 2 == 1 ? -1 : h.blocks[path[0]].colour;
        if (pos % 2 == 1 && pos >= 3) want = h.blocks[path[1]].colour;
        if (pos == 1) {
          if (cb.colour == h.blocks[path[0]].colour) continue;
        } else if (cb.colour != want) {
          continue;
        }
        const auto& prev = h.blocks[path.back()];
        int link = ramsey::single_shared_vertex(prev.vertices, cb.vertices);
        if (link < 0) continue;
        bool fresh = true;
        for (int l : links) fresh = fresh && l != link;
        if (!fresh) continue;
        bool compatible = true;
        for (int q = 0; q + 1 < pos && compatible; ++q)
          compatible = blocks_compatible(h.blocks[path[q]], cb);
        if (!compatible) continue;
        links.push_back(link);
        path.push_back(cand);
        used[cand] = 1;
        self(self);
        used[cand] = 0;
        path.pop_back();
        links.pop_back();
      } else {
        path.push_back(cand);
        used[cand] = 1;
        self(self);
        used[cand] = 0;
        path.pop_back();
      }
    }
  };
  rec(rec);
  return total;
}

// All sets of m pairwise-disjoint blocks of one colour, visited once each.
template <typename Fn>
inline void for_each_disjoint_colour_set(const std::vector<ramsey::Block>& blocks, int colour,
                                         int m, Fn fn) {
  std::vector<int> chosen;
  auto rec = [&](auto&& self, int next) -> void {
    if (static_cast<int>(chosen.size()) == m) {
      fn(chosen);
      return;
    }
    for (int i = next; i < static_cast<int>(blocks.size()); ++i) {
      if (blocks[i].colour != colour) continue;
      bool disjoint = true;
      for (int j : chosen)
        disjoint = disjoint && ramsey::shared_count(blocks[i].vertices, blocks[j].vertices) == 0;
      if (!disjoint) continue;
      chosen.push_back(i);
      self(self, i + 1);
      chosen.pop_back();
    }
  };
  rec(rec, 0);
}

// Finds the one block of the set containing v; -1 if none.
inline int set_member_containing(const std::vector<ramsey::Block>& blocks,
                                 const std::vector<int>& set, int v) {
  for (int i : set)
    if (blocks[i].contains(v)) return i;
  return -1;
}

// onlyColour > 0 restricts the path colour (the full count is palette times
// the restricted one by colour symmetry; small hosts check that factor with
// the unrestricted call).
inline std::int64_t count_sets_P(const ramsey::ExplicitHypergraph& h, int u, int v, int m,
                                 int onlyColour = -1) {
  std::int64_t total = 0;
  for (int colour = 1; colour <= h.host.paletteSize; ++colour) {
    if (onlyColour > 0 && colour != onlyColour) continue;
    for_each_disjoint_colour_set(h.blocks, colour, m, [&](const std::vector<int>& set) {
      int bu = set_member_containing(h.blocks, set, u);
      int bv = set_member_containing(h.blocks, set, v);
      if (bu >= 0 && bv >= 0 && bu != bv) ++total;
    });
  }
  return total;
}

inline int shared_with(const ramsey::Block& a, const ramsey::Block& b) {
  return ramsey::shared_count(a.vertices, b.vertices);
}

inline std::int64_t count_sets_T(const ramsey::ExplicitHypergraph& h, int u, int v, int m,
                                 int onlyI = -1, int onlyJ = -1) {
  std::int64_t total = 0;
  for (int colour = 1; colour <= h.host.paletteSize; ++colour) {
    if (onlyI > 0 && colour != onlyI) continue;
    for_each_disjoint_colour_set(h.blocks, colour, m, [&](const std::vector<int>& set) {
      int bu = set_member_containing(h.blocks, set, u);
      int bv = set_member_containing(h.blocks, set, v);
      if (bu < 0 || bv < 0 || bu == bv) return;
      for (const auto& extra : h.blocks) {
        if (extra.colour == colour) continue;
        if (onlyJ > 0 && extra.colour != onlyJ) continue;
        if (extra.contains(u) || extra.contains(v)) continue;
        bool within = true;
        for (int i : set) within = within && shared_with(extra, h.blocks[i]) <= 1;
        if (!within || shared_with(extra, h.blocks[bu]) != 1) continue;
        if (m == 2) {
          if (shared_with(extra, h.blocks[bv]) == 1) ++total;
        } else {
          bool middleHit = false;
          for (int i : set)
            if (i != bu && i != bv && shared_with(extra, h.blocks[i]) == 1) middleHit = true;
          if (middleHit) ++total;
        }
      }
    });
  }
  return total;
}

// Bipartite variants carry the side flags: |A_1 ∩ X| and |A_m ∩ Y| are pinned
// by a and b, the extra block meets A_1 in a Y vertex and the designated
// block (X-side size pinned by c) in an X vertex.
inline int x_side_count(const ramsey::HostSpec& host, const ramsey::Block& b) {
  return b.x_count(host);
}

inline std::int64_t count_sets_P_bip(const ramsey::ExplicitHypergraph& h, int x, int y, int m,
                                     int a, int b, int onlyColour = -1) {
  const auto& host = h.host;
  std::int64_t sx = ramsey::binom(host.k + a, 2), sy = ramsey::binom(host.k + b, 2);
  std::int64_t total = 0;
  for (int colour = 1; colour <= host.paletteSize; ++colour) {
    if (onlyColour > 0 && colour != onlyColour) continue;
    for_each_disjoint_colour_set(h.blocks, colour, m, [&](const std::vector<int>& set) {
      int bx = set_member_containing(h.blocks, set, x);
      int by = set_member_containing(h.blocks, set, y);
      if (bx < 0 || by < 0 || bx == by) return;
      if (x_side_count(host, h.blocks[bx]) != sx) return;
      int yCount = host.shape.total - x_side_count(host, h.blocks[by]);
      if (yCount != sy) return;
      ++total;
    });
  }
  return total;
}

inline std::int64_t count_sets_T_bip(const ramsey::ExplicitHypergraph& h, int x, int y, int m,
                                     int a, int b, int c, int onlyI = -1, int onlyJ = -1) {
  const auto& host = h.host;
  std::int64_t sx = ramsey::binom(host.k + a, 2), sy = ramsey::binom(host.k + b, 2);
  std::int64_t scx = ramsey::binom(host.k + c, 2);
  std::int64_t total = 0;
  auto sharedX = [&](const ramsey::Block& p, const ramsey::Block& q) {
    int count = 0;
    for (int vv : p.vertices)
      if (host.is_x(vv) && q.contains(vv)) ++count;
    return count;
  };
  for (int colour = 1; colour <= host.paletteSize; ++colour) {
    if (onlyI > 0 && colour != onlyI) continue;
    for_each_disjoint_colour_set(h.blocks, colour, m, [&](const std::vector<int>& set) {
      int bx = set_member_containing(h.blocks, set, x);
      int by = set_member_containing(h.blocks, set, y);
      if (bx < 0 || by < 0 || bx == by) return;
      if (x_side_count(host, h.blocks[bx]) != sx) return;
      if (host.shape.total - x_side_count(host, h.blocks[by]) != sy) return;
      for (const auto& extra : h.blocks) {
        if (extra.colour == colour) continue;
        if (onlyJ > 0 && extra.colour != onlyJ) continue;
        if (extra.contains(x) || extra.contains(y)) continue;
        bool within = true;
        for (int i : set) within = within && shared_with(extra, h.blocks[i]) <= 1;
        if (!within) continue;
        int hitFirst = shared_with(extra, h.blocks[bx]);
        if (hitFirst != 1 || sharedX(extra, h.blocks[bx]) != 0) continue;
        if (m == 2) {
          if (x_side_count(host, h.blocks[by]) == scx &&
              shared_with(extra, h.blocks[by]) == 1 && sharedX(extra, h.blocks[by]) == 1)
            ++total;
        } else {
          bool middleHit = false;
          for (int i : set) {
            if (i == bx || i == by) continue;
            if (x_side_count(host, h.blocks[i]) == scx && shared_with(extra, h.blocks[i]) == 1 &&
                sharedX(extra, h.blocks[i]) == 1)
              middleHit = true;
          }
          if (middleHit) ++total;
        }
      }
    });
  }
  return total;
}

// ---------------------------------------------------------------------------
// second-stage event detectors, written independently of the library search

// unordered pairs of fresh edges sharing a vertex with equal colour, as
// sorted scope pairs
inline std::vector<std::vector<std::pair<int, int>>> fresh_adjacent_pairs(
    const ramsey::Colouring& c) {
  const ramsey::HostSpec& host = c.host();
  std::vector<std::pair<std::pair<int, int>, int>> edges;  // ((u,v), colour)
  for (std::int64_t e = 0; e < host.num_edges(); ++e) {
    ramsey::EdgeColour col = c.at_index(e);
    if (col.tag != ramsey::Paint::fresh) continue;
    edges.push_back({host.edge_vertices(e), col.id});
  }
  std::vector<std::vector<std::pair<int, int>>> out;
  for (std::size_t i = 0; i < edges.size(); ++i)
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      if (edges[i].second != edges[j].second) continue;
      auto [a, b] = edges[i].first;
      auto [x, y] = edges[j].first;
      if (a != x && a != y && b != x && b != y) continue;
      std::vector<std::pair<int, int>> scope{edges[i].first, edges[j].first};
      std::sort(scope.begin(), scope.end());
      out.push_back(std::move(scope));
    }
  std::sort(out.begin(), out.end());
  return out;
}

// ordered closed walks through distinct vertices in the fresh graph whose
// edge colours make a proper two-colouring; every rotation and direction
// counts, so the canonical count is this divided by 2 * length
inline std::int64_t ordered_two_coloured_cycles(const ramsey::Colouring& c, int length,
                                                std::set<std::vector<int>>* sets = nullptr) {
  const ramsey::HostSpec& host = c.host();
  const int n = host.num_vertices();
  std::vector<int> path;
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  std::int64_t count = 0;
  auto freshAt = [&](int u, int v) -> int {
    if (!host.is_host_edge(u, v)) return 0;
    ramsey::EdgeColour col = c.at(u, v);
    return col.tag == ramsey::Paint::fresh ? col.id : 0;
  };
  auto rec = [&](auto&& self, int depth) -> void {
    if (depth == length) {
      int closing = freshAt(path.back(), path.front());
      if (closing == 0) return;
      std::vector<int> colours;
      for (int t = 0; t < length; ++t)
        colours.push_back(freshAt(path[static_cast<std::size_t>(t)],
                                  path[static_cast<std::size_t>((t + 1) % length)]));
      std::set<int> distinct(colours.begin(), colours.end());
      if (distinct.size() != 2) return;
      for (int t = 0; t < length; ++t)
        if (colours[static_cast<std::size_t>(t)] ==
            colours[static_cast<std::size_t>((t + 1) % length)])
          return;
      ++count;
      if (sets) {
        std::vector<int> key = path;
        std::sort(key.begin(), key.end());
        sets->insert(key);
      }
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (used[static_cast<std::size_t>(v)]) continue;
      if (depth > 0 && freshAt(path.back(), v) == 0) continue;
      used[static_cast<std::size_t>(v)] = 1;
      path.push_back(v);
      self(self, depth + 1);
      path.pop_back();
      used[static_cast<std::size_t>(v)] = 0;
    }
  };
  rec(rec, 0);
  return count;
}

// ordered representations of mixed cycles u1 v1 ... um vm: block edges at
// even positions (all blocks one structured colour, pairwise distinct),
// fresh edges of one colour at odd positions. Starting vertex and direction
// both free subject to the block edge coming first, giving 2m ordered
// representations per event.
inline std::int64_t ordered_mixed_cycles(const ramsey::Colouring& c,
                                         const ramsey::BlockMatching& matching, int m,
                                         std::set<std::vector<int>>* sets = nullptr) {
  const ramsey::HostSpec& host = c.host();
  const int n = host.num_vertices();
  const int length = 2 * m;
  std::vector<int> path;
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  std::int64_t count = 0;
  auto freshAt = [&](int u, int v) -> int {
    if (!host.is_host_edge(u, v)) return 0;
    ramsey::EdgeColour col = c.at(u, v);
    return col.tag == ramsey::Paint::fresh ? col.id : 0;
  };
  auto blockOf = [&](int u, int v) -> int {  // block containing edge u--v, or -1
    for (int i = 0; i < matching.size(); ++i)
      if (matching[i].contains(u) && matching[i].contains(v)) return i;
    return -1;
  };
  auto rec = [&](auto&& self, int depth) -> void {
    if (depth == length) {
      if (freshAt(path.back(), path.front()) == 0) return;
      // all fresh edges one colour
      int j = freshAt(path[1], path[2 % length]);
      for (int t = 1; t < length; t += 2)
        if (freshAt(path[static_cast<std::size_t>(t)],
                    path[static_cast<std::size_t>((t + 1) % length)]) != j)
          return;
      // block edges at even positions: one structured colour, distinct blocks
      std::vector<int> blocks;
      for (int t = 0; t < length; t += 2) {
        int b = blockOf(path[static_cast<std::size_t>(t)], path[static_cast<std::size_t>(t + 1)]);
        if (b < 0) return;
        blocks.push_back(b);
      }
      for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (matching[blocks[i]].colour != matching[blocks[0]].colour) return;
        for (std::size_t q = i + 1; q < blocks.size(); ++q)
          if (blocks[i] == blocks[q]) return;
      }
      ++count;
      if (sets) {
        std::vector<int> key = path;
        std::sort(key.begin(), key.end());
        sets->insert(key);
      }
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (used[static_cast<std::size_t>(v)]) continue;
      if (depth > 0) {
        int prev = path.back();
        if (depth % 2 == 1) {  // block edge prev--v
          int b = blockOf(prev, v);
          if (b < 0 || !host.is_host_edge(prev, v)) continue;
        } else {  // fresh edge prev--v
          if (freshAt(prev, v) == 0) continue;
        }
      }
      used[static_cast<std::size_t>(v)] = 1;
      path.push_back(v);
      self(self, depth + 1);
      path.pop_back();
      used[static_cast<std::size_t>(v)] = 0;
    }
  };
  rec(rec, 0);
  return count;
}

// Ordered distinct-vertex closed walks of a given length through host edges.
// Returns the tuple count; when violating is supplied it also counts the
// tuples whose edge-colour multiset has at most two distinct colours.  Every
// canonical cycle corresponds to exactly 2*length ordered tuples.
inline std::int64_t ordered_host_cycles(const ramsey::Colouring& c, int length,
                                        std::int64_t* violating = nullptr) {
  const ramsey::HostSpec& host = c.host();
  const int n = host.num_vertices();
  std::int64_t total = 0, bad = 0;
  std::vector<int> path;
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  auto rec = [&](auto&& self) -> void {
    if (static_cast<int>(path.size()) == length) {
      if (!host.is_host_edge(path.back(), path.front())) return;
      ++total;
      if (violating) {
        std::set<ramsey::EdgeColour> seen;
        for (int t = 0; t < length; ++t)
          seen.insert(c.at(path[static_cast<std::size_t>(t)],
                           path[static_cast<std::size_t>((t + 1) % length)]));
        if (static_cast<int>(seen.size()) <= 2) ++bad;
      }
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (used[static_cast<std::size_t>(v)]) continue;
      if (!path.empty() && !host.is_host_edge(path.back(), v)) continue;
      used[static_cast<std::size_t>(v)] = 1;
      path.push_back(v);
      self(self);
      path.pop_back();
      used[static_cast<std::size_t>(v)] = 0;
    }
  };
  rec(rec);
  if (violating) *violating = bad;
  return total;
}

}  // namespace oracle
