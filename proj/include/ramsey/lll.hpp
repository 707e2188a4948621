#pragma once

// Second-stage recolouring. The leftover graph gets an independent uniform
// colour from a fresh palette of size r = ceil(n^(1-alpha)) per edge; three
// families of bad events are then hunted down by a resampling loop that
// stops once none remain.
//
//   A: two leftover edges sharing a vertex carry the same fresh colour.
//   B: a leftover cycle is properly coloured with exactly two fresh colours.
//   C: a cycle alternating block edges and leftover edges, the blocks all of
//      one structured colour and pairwise distinct, the leftover edges all of
//      one fresh colour.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "certificate.hpp"
#include "colouring.hpp"

namespace ramsey {

// ---------------------------------------------------------------------------
// events

enum class EventKind { A, B, C };

inline const char* event_kind_name(EventKind k) {
  switch (k) {
    case EventKind::A: return "A";
    case EventKind::B: return "B";
    case EventKind::C: return "C";
  }
  return "?";
}

struct BadEvent {
  EventKind kind = EventKind::A;
  std::vector<std::pair<int, int>> scope;  // leftover edges to resample, (min,max)
  int sharedVertex = -1;                   // A: the common endpoint
  int freshColour = 0;                     // A: the repeated colour; C: the colour j
  std::vector<int> cycle;                  // B, C: canonical vertex cycle
  std::vector<Block> blocks;               // C: the blocks, traversal order
};

// Probability of the event under an independent uniform fresh colouring with
// palette size r: exact for A (r^-2) and C (r^-m), upper bound for B
// (r(r-1)/r^(2m) <= r^-(2m-2)).
inline double event_probability_bound(const BadEvent& e, int r) {
  if (r < 1) throw Error("event_probability_bound: palette size must be positive");
  switch (e.kind) {
    case EventKind::A: return std::pow(r, -2.0);
    case EventKind::B: return std::pow(r, -(static_cast<double>(e.cycle.size()) - 2.0));
    case EventKind::C: return std::pow(r, -static_cast<double>(e.scope.size()));
  }
  return 0;
}

// Half-length ranges of the two cycle-shaped families. A leftover cycle of
// length 2m is only dangerous for ceil(k/2) <= m <= ell/2 (bipartite:
// (k^2-k+2)/2 <= m <= ell/2); a mixed cycle for 2 <= m <= ell/2.
inline int leftover_cycle_min_m(const HostSpec& host) {
  return host.mode == Mode::complete ? (host.k + 1) / 2
                                     : (host.k * host.k - host.k + 2) / 2;
}
inline int leftover_cycle_max_m(const HostSpec& host) { return host.ell / 2; }
inline int mixed_cycle_min_m() { return 2; }
inline int mixed_cycle_max_m(const HostSpec& host) { return host.ell / 2; }

// ---------------------------------------------------------------------------
// weights and feasibility

struct FeasibilityRow {
  EventKind family = EventKind::A;
  int m = 0;       // 0 for the pair family
  double lhs = 0;  // the inequality lhs < rhs must hold
  double rhs = 0;
  bool holds = false;
};

struct LLLWeights {
  double alpha = 0;
  double delta = 0;
  double x = 0;                            // pair-event weight n^(-2+3a)
  std::vector<std::pair<int, double>> y;   // (m, n^(-(2m-2)+(2m-1)a)), leftover cycles
  std::vector<std::pair<int, double>> z;   // (m, n^(-m+(m+1)a)), mixed cycles
  std::vector<FeasibilityRow> feasibility;
  bool feasible = true;
};

// Weights for the local-lemma argument plus the exponent inequalities that
// make them work: 2a < delta for pairs, (2m-1)a < (2m-2)delta per leftover
// cycle length, (m+2)a < (m-1)delta per mixed cycle length. Any alpha below
// min(delta/4, 1/2) satisfies all of them; infeasible choices are reported
// row by row, never rejected.
inline LLLWeights lll_weights(int n, double alpha, double delta, int k, int ell,
                              Mode mode = Mode::complete) {
  if (!(alpha > 0 && alpha < 1)) throw Error("lll_weights: alpha must lie in (0, 1)");
  if (!(delta > 0 && delta < 1)) throw Error("lll_weights: delta must lie in (0, 1)");
  if (n < 2) throw Error("lll_weights: host needs at least two vertices");
  if (k < 2 || ell < k) throw Error("lll_weights: cycle range needs 2 <= k <= ell");

  LLLWeights w;
  w.alpha = alpha;
  w.delta = delta;
  const double dn = static_cast<double>(n);
  w.x = std::pow(dn, -2.0 + 3.0 * alpha);
  w.feasibility.push_back({EventKind::A, 0, 2.0 * alpha, delta, 2.0 * alpha < delta});

  const int bMin = mode == Mode::complete ? (k + 1) / 2 : (k * k - k + 2) / 2;
  for (int m = bMin; m <= ell / 2; ++m) {
    w.y.emplace_back(m, std::pow(dn, -(2.0 * m - 2.0) + (2.0 * m - 1.0) * alpha));
    const double lhs = (2.0 * m - 1.0) * alpha, rhs = (2.0 * m - 2.0) * delta;
    w.feasibility.push_back({EventKind::B, m, lhs, rhs, lhs < rhs});
  }
  for (int m = 2; m <= ell / 2; ++m) {
    w.z.emplace_back(m, std::pow(dn, -static_cast<double>(m) + (m + 1.0) * alpha));
    const double lhs = (m + 2.0) * alpha, rhs = (m - 1.0) * delta;
    w.feasibility.push_back({EventKind::C, m, lhs, rhs, lhs < rhs});
  }
  for (const FeasibilityRow& row : w.feasibility) w.feasible = w.feasible && row.holds;
  return w;
}

// ---------------------------------------------------------------------------
// fresh colouring

// Every uncoloured edge receives an independent uniform colour from the fresh
// palette [r], r = ceil(n^(1-alpha)); structured edges are untouched.
inline Colouring init_fresh(const Colouring& c, double alpha, std::uint64_t seed) {
  if (!(alpha > 0 && alpha < 0.5)) throw Error("init_fresh: alpha must lie in (0, 1/2)");
  Colouring out = c;
  const int r = fresh_palette_size(out.host().n, alpha);
  out.set_fresh_params(alpha, r);
  Rng rng(seed);
  for (std::int64_t e = 0; e < out.host().num_edges(); ++e)
    if (out.at_index(e).tag == Paint::uncoloured)
      out.set_index(e, fresh(1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(r)))));
  return out;
}

// ---------------------------------------------------------------------------
// detection

namespace detail {

inline void check_same_host(const HostSpec& a, const HostSpec& b, const char* where) {
  if (a.mode != b.mode || a.n != b.n || a.k != b.k || a.ell != b.ell)
    throw Error(std::string(where) + ": colouring and matching belong to different hosts");
}

// per vertex, ascending (neighbour, fresh colour) over the fresh edges
inline std::vector<std::vector<std::pair<int, int>>> fresh_adjacency(const Colouring& c) {
  const HostSpec& host = c.host();
  std::vector<std::vector<std::pair<int, int>>> adj(
      static_cast<std::size_t>(host.num_vertices()));
  for (std::int64_t e = 0; e < host.num_edges(); ++e) {
    EdgeColour col = c.at_index(e);
    if (col.tag != Paint::fresh) continue;
    auto [u, v] = host.edge_vertices(e);
    adj[static_cast<std::size_t>(u)].emplace_back(v, col.id);
    adj[static_cast<std::size_t>(v)].emplace_back(u, col.id);
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());
  return adj;
}

inline std::pair<int, int> norm_edge(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

inline void detect_adjacent_pairs(const std::vector<std::vector<std::pair<int, int>>>& adj,
                                  std::vector<BadEvent>& out) {
  for (int v = 0; v < static_cast<int>(adj.size()); ++v) {
    std::map<int, std::vector<int>> byColour;
    for (auto [nb, col] : adj[static_cast<std::size_t>(v)]) byColour[col].push_back(nb);
    for (const auto& [col, nbs] : byColour)
      for (std::size_t i = 0; i < nbs.size(); ++i)
        for (std::size_t j = i + 1; j < nbs.size(); ++j) {
          BadEvent e;
          e.kind = EventKind::A;
          e.sharedVertex = v;
          e.freshColour = col;
          e.scope = {norm_edge(v, nbs[i]), norm_edge(v, nbs[j])};
          out.push_back(std::move(e));
        }
  }
}

// Cycles in the fresh graph whose edge colours alternate between exactly two
// values. Canonical form: least vertex first, smaller second vertex, so each
// cycle is reported once.
struct LeftoverCycleSearch {
  const std::vector<std::vector<std::pair<int, int>>>& adj;
  int minLen;
  int maxLen;
  std::vector<BadEvent>* out;
  std::vector<int> path;
  std::vector<int> colours;  // colours[t] = colour of edge path[t] -- path[t+1]
  std::vector<char> used;

  void run() {
    used.assign(adj.size(), 0);
    for (int s = 0; s < static_cast<int>(adj.size()); ++s) {
      path.assign(1, s);
      colours.clear();
      used[static_cast<std::size_t>(s)] = 1;
      extend();
      used[static_cast<std::size_t>(s)] = 0;
    }
  }

  void extend() {
    const int s = path.front(), cur = path.back();
    const int len = static_cast<int>(path.size());
    if (len >= minLen && len % 2 == 0 && path[1] < cur) {
      for (auto [nb, col] : adj[static_cast<std::size_t>(cur)]) {
        if (nb != s) continue;
        if (col == colours[1]) emit();
        break;  // at most one edge back to the start
      }
    }
    if (len == maxLen) return;
    for (auto [nb, col] : adj[static_cast<std::size_t>(cur)]) {
      if (nb <= s || used[static_cast<std::size_t>(nb)]) continue;
      const int edgeIdx = len - 1;  // index of the edge being added
      if (edgeIdx == 1 && col == colours[0]) continue;
      if (edgeIdx >= 2 && col != colours[static_cast<std::size_t>(edgeIdx - 2)]) continue;
      path.push_back(nb);
      colours.push_back(col);
      used[static_cast<std::size_t>(nb)] = 1;
      extend();
      used[static_cast<std::size_t>(nb)] = 0;
      colours.pop_back();
      path.pop_back();
    }
  }

  void emit() {
    BadEvent e;
    e.kind = EventKind::B;
    e.cycle = path;
    const int len = static_cast<int>(path.size());
    for (int t = 0; t < len; ++t)
      e.scope.push_back(norm_edge(path[static_cast<std::size_t>(t)],
                                  path[static_cast<std::size_t>((t + 1) % len)]));
    out->push_back(std::move(e));
  }
};

// Cycles u1 v1 u2 v2 ... um vm where each ut--vt lies in a block Ft, the
// blocks share one structured colour and are pairwise distinct, and each
// vt--u(t+1) is a leftover edge of one fresh colour j. Each such cycle has
// exactly one representation that starts at its least vertex with the block
// edge first, so the search below reports every event once.
struct MixedCycleSearch {
  const HostSpec& host;
  const BlockMatching& matching;
  const std::vector<std::vector<std::pair<int, int>>>& adj;
  int maxM;
  std::vector<BadEvent>* out;
  std::vector<int> path;        // u1 v1 u2 v2 ...
  std::vector<int> blockIdx;    // index of Ft in the matching
  std::vector<char> used;
  int freshColour = 0;

  void run() {
    used.assign(static_cast<std::size_t>(host.num_vertices()), 0);
    for (int s = 0; s < host.num_vertices(); ++s) {
      for (const auto& [colour, idx] : matching.blocks_at(s)) {
        const Block& f = matching[idx];
        for (int v1 : f.vertices) {
          if (v1 <= s || !host.is_host_edge(s, v1)) continue;
          path = {s, v1};
          blockIdx.assign(1, idx);
          used[static_cast<std::size_t>(s)] = used[static_cast<std::size_t>(v1)] = 1;
          extend();
          used[static_cast<std::size_t>(s)] = used[static_cast<std::size_t>(v1)] = 0;
        }
      }
    }
  }

  void extend() {
    const int s = path.front(), cur = path.back();
    const int m = static_cast<int>(path.size()) / 2;
    if (m >= 2) {
      for (auto [nb, col] : adj[static_cast<std::size_t>(cur)]) {
        if (nb != s) continue;
        if (col == freshColour) emit();
        break;
      }
    }
    if (m == maxM) return;
    const int structuredColour = matching[blockIdx.front()].colour;
    for (auto [nb, col] : adj[static_cast<std::size_t>(cur)]) {
      if (nb <= s || used[static_cast<std::size_t>(nb)]) continue;
      if (m == 1)
        freshColour = col;
      else if (col != freshColour)
        continue;
      const int g = matching.block_at(structuredColour, nb);
      if (g < 0 || std::find(blockIdx.begin(), blockIdx.end(), g) != blockIdx.end()) continue;
      for (int v2 : matching[g].vertices) {
        if (v2 <= s || v2 == nb || used[static_cast<std::size_t>(v2)]) continue;
        if (!host.is_host_edge(nb, v2)) continue;
        path.push_back(nb);
        path.push_back(v2);
        blockIdx.push_back(g);
        used[static_cast<std::size_t>(nb)] = used[static_cast<std::size_t>(v2)] = 1;
        extend();
        used[static_cast<std::size_t>(nb)] = used[static_cast<std::size_t>(v2)] = 0;
        blockIdx.pop_back();
        path.pop_back();
        path.pop_back();
      }
    }
  }

  void emit() {
    BadEvent e;
    e.kind = EventKind::C;
    e.cycle = path;
    e.freshColour = freshColour;
    for (int idx : blockIdx) e.blocks.push_back(matching[idx]);
    const int len = static_cast<int>(path.size());
    for (int t = 1; t < len; t += 2)
      e.scope.push_back(norm_edge(path[static_cast<std::size_t>(t)],
                                  path[static_cast<std::size_t>((t + 1) % len)]));
    out->push_back(std::move(e));
  }
};

}  // namespace detail

// Complete list of occurring events, each geometric event exactly once, in a
// deterministic order (pairs, then leftover cycles, then mixed cycles). The
// colouring must be total: every leftover edge already fresh-coloured.
inline std::vector<BadEvent> detect_events(const Colouring& c, const BlockMatching& matching) {
  detail::check_same_host(c.host(), matching.host(), "detect_events");
  if (!c.total())
    throw Error("detect_events: every leftover edge needs a fresh colour first");
  const HostSpec& host = c.host();
  auto adj = detail::fresh_adjacency(c);

  std::vector<BadEvent> out;
  detail::detect_adjacent_pairs(adj, out);
  const int bMin = leftover_cycle_min_m(host), bMax = leftover_cycle_max_m(host);
  if (bMin <= bMax) {
    detail::LeftoverCycleSearch search{adj, std::max(4, 2 * bMin), 2 * bMax, &out, {}, {}, {}};
    search.run();
  }
  if (mixed_cycle_max_m(host) >= mixed_cycle_min_m() && matching.size() >= 2) {
    detail::MixedCycleSearch search{host,          matching, adj, mixed_cycle_max_m(host),
                                    &out,          {},       {},  {},
                                    0};
    search.run();
  }
  return out;
}

// ---------------------------------------------------------------------------
// resampling

struct ResampleRecord {
  int round = 0;
  EventKind kind = EventKind::A;
  std::vector<std::pair<int, int>> scope;
};

struct RecolourResult {
  Colouring colouring;
  bool certified = false;
  int rounds = 0;  // resample operations performed
  std::vector<ResampleRecord> log;
  std::vector<BadEvent> residual;  // events still present when the cap struck
};

// Resampling loop: while events occur, pick one uniformly at random and
// redraw its scope from the fresh palette. Stops certified at zero events,
// or uncertified with the residual list once maxRounds resamples are spent.
// Only leftover edges are ever rewritten.
inline RecolourResult moser_tardos(const Colouring& c, const BlockMatching& matching,
                                   std::uint64_t seed, int maxRounds) {
  detail::check_same_host(c.host(), matching.host(), "moser_tardos");
  if (maxRounds < 0) throw Error("moser_tardos: the round cap cannot be negative");
  const int r = c.fresh_palette();
  if (r < 1)
    throw Error("moser_tardos: colouring has no fresh palette; run init_fresh first");

  RecolourResult result{c, false, 0, {}, {}};
  Rng rng(seed);
  for (;;) {
    std::vector<BadEvent> events = detect_events(result.colouring, matching);
    if (events.empty()) {
      result.certified = true;
      return result;
    }
    if (result.rounds == maxRounds) {
      result.residual = std::move(events);
      return result;
    }
    const BadEvent& pick = events[static_cast<std::size_t>(rng.below(events.size()))];
    for (auto [u, v] : pick.scope)
      result.colouring.set(
          u, v, fresh(1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(r)))));
    ++result.rounds;
    result.log.push_back({result.rounds, pick.kind, pick.scope});
  }
}

}  // namespace ramsey
