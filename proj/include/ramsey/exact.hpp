#pragma once

// Exact minimum colour counts on tiny hosts by backtracking, plus the
// closed-form lower/upper bound calculators. The solver assigns edge colours
// in the host's edge-index order, optionally restricts the next colour to one
// above the maximum already used (a canonical form that skips colour
// permutations), and prunes as soon as any fully-coloured cycle in the target
// length range has fewer than q distinct colours. Minimality is proved by
// exhausting the search at every smaller colour count; the witness is
// re-checked by the ground-truth verifier before it is returned.

#include <vector>

#include "verify.hpp"

namespace ramsey {

struct ExactOptions {
  bool canonicalColours = true;
  int completeCap = 8;   // largest complete host to attempt
  int bipartiteCap = 5;  // largest per-side bipartite host
};

struct ExactResult {
  int value = 0;
  Colouring witness;
  std::int64_t nodesExplored = 0;
  std::vector<int> exhaustedColourCounts;  // proven impossible, ascending
};

struct BoundsReport {
  Mode mode = Mode::complete;
  int n = 0;
  int k = 0;
  std::int64_t lowerBound = 0;
  Rational pathExtremal;        // the ex(...) value in the denominator
  int t = 0;                    // bipartite block parameter, 0 otherwise
  Rational upperCoefficient;    // bipartite: 2/(t^2-1)
};

namespace detail {

// a host record carrying only the graph structure; the solver never uses the
// block-design fields, so they stay at defaults
inline HostSpec tiny_host(Mode mode, int n, int kLow, int kHigh) {
  HostSpec h;
  h.mode = mode;
  h.n = n;
  h.k = kLow;
  h.ell = kHigh;
  return h;
}

struct CycleTable {
  std::vector<std::vector<std::int64_t>> cycles;  // edge indices per cycle
  std::vector<std::vector<int>> byEdge;           // edge index -> cycle ids
};

inline CycleTable enumerate_cycles(const HostSpec& host, int kLow, int kHigh) {
  CycleTable table;
  table.byEdge.resize(static_cast<std::size_t>(host.num_edges()));
  std::vector<int> path;
  std::vector<char> used(static_cast<std::size_t>(host.num_vertices()), 0);
  auto emit = [&]() {
    std::vector<std::int64_t> edges;
    for (std::size_t t = 0; t < path.size(); ++t)
      edges.push_back(host.edge_index(path[t], path[(t + 1) % path.size()]));
    int id = static_cast<int>(table.cycles.size());
    for (std::int64_t e : edges) table.byEdge[static_cast<std::size_t>(e)].push_back(id);
    table.cycles.push_back(std::move(edges));
  };
  auto rec = [&](auto&& self, int length) -> void {
    const int s = path.front(), cur = path.back();
    if (static_cast<int>(path.size()) == length) {
      if (host.is_host_edge(cur, s) && path[1] < cur) emit();
      return;
    }
    for (int v = s + 1; v < host.num_vertices(); ++v) {
      if (used[static_cast<std::size_t>(v)] || !host.is_host_edge(cur, v)) continue;
      used[static_cast<std::size_t>(v)] = 1;
      path.push_back(v);
      self(self, length);
      path.pop_back();
      used[static_cast<std::size_t>(v)] = 0;
    }
  };
  for (int length = kLow; length <= kHigh; ++length)
    for (int s = 0; s + 1 < host.num_vertices(); ++s)
      for (int t = s + 1; t < host.num_vertices(); ++t) {
        if (!host.is_host_edge(s, t)) continue;
        path = {s, t};
        used.assign(static_cast<std::size_t>(host.num_vertices()), 0);
        used[static_cast<std::size_t>(s)] = used[static_cast<std::size_t>(t)] = 1;
        rec(rec, length);
      }
  return table;
}

struct ExactSearch {
  const CycleTable& table;
  int colours;
  int q;
  bool canonical;
  std::vector<int> assignment;  // per edge, 0 = unassigned
  std::vector<int> remaining;   // per cycle, unassigned edge count
  std::int64_t nodes = 0;

  bool violates(int cid) const {
    std::vector<int> seen;
    for (std::int64_t e : table.cycles[static_cast<std::size_t>(cid)]) {
      int col = assignment[static_cast<std::size_t>(e)];
      if (std::find(seen.begin(), seen.end(), col) == seen.end()) seen.push_back(col);
      if (static_cast<int>(seen.size()) >= q) return false;
    }
    return true;
  }

  bool solve(std::size_t e, int maxUsed) {
    if (e == assignment.size()) return true;
    const auto& touching = table.byEdge[e];
    for (int cid : touching) --remaining[static_cast<std::size_t>(cid)];
    const int limit = canonical ? std::min(colours, maxUsed + 1) : colours;
    bool found = false;
    for (int col = 1; col <= limit && !found; ++col) {
      assignment[e] = col;
      ++nodes;
      bool ok = true;
      for (int cid : touching)
        if (remaining[static_cast<std::size_t>(cid)] == 0 && violates(cid)) {
          ok = false;
          break;
        }
      if (ok) found = solve(e + 1, std::max(maxUsed, col));
    }
    if (!found) {
      assignment[e] = 0;
      for (int cid : touching) ++remaining[static_cast<std::size_t>(cid)];
    }
    return found;
  }
};

}  // namespace detail

// Minimum number of colours so that every host cycle with length in
// [kLow, kHigh] receives at least q distinct colours. Works on both host
// shapes behind small size caps; throws when no colouring can succeed (q
// larger than the shortest constrained cycle).
inline ExactResult exact_ramsey(Mode mode, int n, int kLow, int kHigh, int q = 3,
                                const ExactOptions& opts = {}) {
  if (n < 1) throw Error("exact_ramsey: n must be positive");
  if (kLow < 3) throw Error("exact_ramsey: cycle lengths start at 3");
  if (kHigh < kLow) throw Error("exact_ramsey: empty cycle-length range");
  if (q < 1) throw Error("exact_ramsey: q must be positive");
  const int cap = mode == Mode::complete ? opts.completeCap : opts.bipartiteCap;
  if (n > cap) throw Error("exact_ramsey: host size exceeds the solver cap");

  const HostSpec host = detail::tiny_host(mode, n, kLow, kHigh);
  if (host.num_edges() == 0) return {0, Colouring(host), 0, {}};
  const detail::CycleTable table = detail::enumerate_cycles(host, kLow, kHigh);

  ExactResult result{0, Colouring(host), 0, {}};
  for (int c = 1; c <= static_cast<int>(host.num_edges()); ++c) {
    detail::ExactSearch search{table, c, q, opts.canonicalColours, {}, {}, 0};
    search.assignment.assign(static_cast<std::size_t>(host.num_edges()), 0);
    search.remaining.resize(table.cycles.size());
    for (std::size_t cid = 0; cid < table.cycles.size(); ++cid)
      search.remaining[cid] = static_cast<int>(table.cycles[cid].size());
    const bool sat = search.solve(0, 0);
    result.nodesExplored += search.nodes;
    if (!sat) {
      result.exhaustedColourCounts.push_back(c);
      continue;
    }
    result.value = c;
    for (std::int64_t e = 0; e < host.num_edges(); ++e)
      result.witness.set_index(e, fresh(search.assignment[static_cast<std::size_t>(e)]));
    VerifyOptions vo;
    for (int h = kLow; h <= kHigh; ++h) vo.lengths.push_back(h);
    if (q >= 3 && !verify_colouring(result.witness, vo).certified())
      throw Error("exact_ramsey: witness failed its ground-truth check");
    return result;
  }
  throw Error("exact_ramsey: no colouring meets the requirement");
}

// ceil(a / b) for positive b
inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
  if (b <= 0) throw Error("ceil_div: denominator must be positive");
  return (a + b - 1) / b;
}

// Lower bound for the complete host: C(n,2) edges over the path extremal
// bound ex(n, P_k) <= (k-2)n/2, which simplifies to ceil((n-1)/(k-2)).
inline BoundsReport lower_bound_complete(int n, int k) {
  if (k < 3) throw Error("lower_bound_complete: k must be at least 3");
  if (n < k) throw Error("lower_bound_complete: n must be at least k");
  BoundsReport report;
  report.mode = Mode::complete;
  report.n = n;
  report.k = k;
  report.pathExtremal = Rational(static_cast<std::int64_t>(k - 2) * n, 2);
  report.lowerBound = ceil_div(n - 1, k - 2);
  return report;
}

// Extremal number for even paths on 2(k+1) vertices inside K_{m,n}, m <= n:
// mn when the small side is tiny, nk in the middle range, (m+n-2k)k beyond.
inline std::int64_t ex_path_bipartite(int m, int n, int k) {
  if (k < 1) throw Error("ex_path_bipartite: k must be positive");
  if (m < 0 || m > n) throw Error("ex_path_bipartite: need 0 <= m <= n");
  if (m <= k) return static_cast<std::int64_t>(m) * n;
  if (m < 2 * k) return static_cast<std::int64_t>(n) * k;
  return static_cast<std::int64_t>(m + n - 2 * k) * k;
}

// Bipartite bounds for an even cycle range floor k >= 4: the lower bound
// divides the n^2 edges by the path extremal number (paths on k vertices, so
// the path parameter is k/2 - 1), and the upper coefficient is 2/(t^2-1)
// where t is the largest integer with t^2-t+2 <= k, found by integer scan.
inline BoundsReport bipartite_bounds(int n, int k) {
  if (k < 4 || k % 2 != 0) throw Error("bipartite_bounds: k must be even and at least 4");
  if (n < 1) throw Error("bipartite_bounds: n must be positive");
  BoundsReport report;
  report.mode = Mode::bipartite;
  report.n = n;
  report.k = k;
  int t = 1;
  while (static_cast<std::int64_t>(t + 1) * (t + 1) - (t + 1) + 2 <= k) ++t;
  report.t = t;
  report.upperCoefficient = Rational(2, static_cast<std::int64_t>(t) * t - 1);
  std::int64_t ex = ex_path_bipartite(n, n, k / 2 - 1);
  report.pathExtremal = Rational(ex);
  report.lowerBound = ceil_div(static_cast<std::int64_t>(n) * n, ex);
  return report;
}

}  // namespace ramsey
