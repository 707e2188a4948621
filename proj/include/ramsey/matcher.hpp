#pragma once

// Conflict detection inside a matching and the conflict-free random greedy
// that builds the structured stage: sample a colour and a block placement
// uniformly, accept when the block is compatible with the matching and
// closes no alternating cycle, stop after a stall run or at target coverage.
//
// Inside a valid matching the pairwise-compatibility half of the conflict
// definition is automatic, so detection reduces to the cycle conditions:
// strictly alternating two-colour block cycles, consecutive blocks sharing
// exactly one vertex, all shared vertices distinct.

#include <array>
#include <optional>

#include "colouring.hpp"
#include "counting.hpp"

namespace ramsey {

struct AlternatingCycleConflict {
  int m = 0;                      // half-length, 2 <= m <= ell/2
  std::vector<Block> blocks;      // cyclic, starting at the candidate, colours alternating
  std::vector<int> linkVertices;  // linkVertices[t] shared by blocks[t] and blocks[t+1 mod 2m]
};

struct MatcherParams {
  std::uint64_t seed = 0;
  std::int64_t stall = 100'000;     // consecutive rejections before stopping
  std::optional<double> targetCoverage;
};

struct TrackRequest {
  int u = 0, v = 0, m = 2;
};

struct TrackedCount {
  TrackRequest request;
  std::int64_t inP = 0, inT = 0;        // matching subsets inside the two path systems
  double predictedP = 0, predictedT = 0;  // family size scaled by d^-size
  double deviationP = 0, deviationT = 0;  // relative to the prediction
};

struct TestFunctionReport {
  std::vector<std::int64_t> vertexWeights;  // w_v(M) = degree of v in the structured graph
  std::vector<TrackedCount> tracked;
};

struct GreedyStats {
  std::int64_t attempts = 0, accepted = 0;
  std::int64_t rejectedIncompatible = 0, rejectedConflict = 0;
  double acceptanceRate = 0, coverage = 0;
  bool reachedTarget = false;
};

inline bool is_compatible(const BlockMatching& matching, const Block& cand) {
  return matching.compatible(cand);
}

inline std::optional<AlternatingCycleConflict> find_conflict(const BlockMatching& matching,
                                                             const Block& cand) {
  const HostSpec& host = matching.host();
  const int maxLen = 2 * (host.ell / 2);
  if (maxLen < 4 || matching.size() < 3) return std::nullopt;

  struct Search {
    const BlockMatching& matching;
    const Block& cand;
    int maxLen;
    std::vector<const Block*> path;
    std::vector<int> links;
    std::vector<char> used;
    std::optional<AlternatingCycleConflict> found;

    void finish(int closureLink) {
      AlternatingCycleConflict conflict;
      conflict.m = static_cast<int>(path.size()) / 2;
      for (const Block* b : path) conflict.blocks.push_back(*b);
      conflict.linkVertices = links;
      conflict.linkVertices.push_back(closureLink);
      found = conflict;
    }

    // parity of the next position fixes the colour: even positions repeat the
    // candidate's colour, odd positions the alternate colour (chosen at 1)
    void extend() {
      const Block* cur = path.back();
      const int pos = static_cast<int>(path.size());
      for (int v : cur->vertices) {
        for (auto [colour, idx] : matching.blocks_at(v)) {
          if (found) return;
          if (used[idx]) continue;
          if (pos == 1) {
            if (colour == cand.colour) continue;
          } else {
            int want = pos % 2 == 1 ? path[1]->colour : cand.colour;
            if (colour != want) continue;
          }
          const Block& next = matching[idx];
          if (shared_count(cur->vertices, next.vertices) != 1) continue;
          bool linkFresh = true;
          for (int l : links) linkFresh = linkFresh && l != v;
          if (!linkFresh) continue;
          path.push_back(&next);
          links.push_back(v);
          used[idx] = 1;
          const int len = pos + 1;
          if (len % 2 == 0 && len >= 4) {
            int w = single_shared_vertex(next.vertices, cand.vertices);
            bool wFresh = w >= 0;
            for (int l : links) wFresh = wFresh && l != w;
            if (wFresh) finish(w);
          }
          if (!found && len < maxLen) extend();
          used[idx] = 0;
          path.pop_back();
          links.pop_back();
          if (found) return;
        }
      }
    }
  };

  Search search{matching, cand, maxLen, {}, {}, {}, std::nullopt};
  search.path.push_back(&cand);
  search.used.assign(matching.size(), 0);
  search.extend();
  return search.found;
}

namespace detail {

// host edges coloured by one block: interior pairs that are host edges
inline std::int64_t edges_per_block(const HostSpec& host) {
  if (host.mode == Mode::complete) return binom(host.k - 1, 2);
  return static_cast<std::int64_t>(host.shape.sideSmall) * host.shape.sideLarge;
}

inline int shared_on_x(const HostSpec& host, const Block& a, const Block& b) {
  int count = 0;
  for (int v : a.vertices)
    if (host.is_x(v) && b.contains(v)) ++count;
  return count;
}

}  // namespace detail

inline TestFunctionReport track_tests(const BlockMatching& matching,
                                      const std::vector<TrackRequest>& requests = {}) {
  const HostSpec& host = matching.host();
  TestFunctionReport report;
  report.vertexWeights.assign(host.num_vertices(), 0);
  for (int i = 0; i < matching.size(); ++i) {
    const Block& b = matching[i];
    if (host.mode == Mode::complete) {
      for (int v : b.vertices) report.vertexWeights[v] += host.k - 2;
    } else {
      int xs = b.x_count(host);
      int ys = host.shape.total - xs;
      for (int v : b.vertices) report.vertexWeights[v] += host.is_x(v) ? ys : xs;
    }
  }

  std::vector<std::vector<int>> byColour(static_cast<std::size_t>(host.paletteSize) + 1);
  for (int i = 0; i < matching.size(); ++i)
    byColour[static_cast<std::size_t>(matching[i].colour)].push_back(i);

  const double d = host.d.value();
  for (const TrackRequest& req : requests) {
    if (host.mode == Mode::complete)
      detail::check_complete(host, req.u, req.v, req.m);
    else
      detail::check_bipartite(host, req.u, req.v, req.m, 0, 0);
    TrackedCount row;
    row.request = req;
    const int m = req.m;
    for (int colour = 1; colour <= host.paletteSize; ++colour) {
      int bu = matching.block_at(colour, req.u);
      int bv = matching.block_at(colour, req.v);
      if (bu < 0 || bv < 0 || bu == bv) continue;
      const Block& Au = matching[bu];
      const Block& Av = matching[bv];
      const std::int64_t cls = static_cast<std::int64_t>(byColour[colour].size());
      row.inP += binom(static_cast<int>(cls) - 2, m - 2);
      for (int other = 1; other <= host.paletteSize; ++other) {
        if (other == colour) continue;
        for (int idx : byColour[static_cast<std::size_t>(other)]) {
          const Block& extra = matching[idx];
          if (extra.contains(req.u) || extra.contains(req.v)) continue;
          int hitU = shared_count(extra.vertices, Au.vertices);
          if (hitU != 1) continue;
          if (host.mode == Mode::bipartite && detail::shared_on_x(host, extra, Au) != 0)
            continue;  // the first-block contact must lie on the Y side
          if (m == 2) {
            bool designated = shared_count(extra.vertices, Av.vertices) == 1;
            if (host.mode == Mode::bipartite)
              designated = designated && detail::shared_on_x(host, extra, Av) == 1;
            row.inT += designated ? 1 : 0;
          } else {
            const int tot = static_cast<int>(cls) - 2;
            if (host.mode == Mode::complete) {
              int hits = 0;
              for (int mid : byColour[static_cast<std::size_t>(colour)]) {
                if (mid == bu || mid == bv) continue;
                if (shared_count(extra.vertices, matching[mid].vertices) == 1) ++hits;
              }
              row.inT += binom(tot, m - 2) - binom(tot - hits, m - 2);
            } else {
              // one term per designated X-side size, as in the flagged counts
              std::array<int, 2> hits{0, 0};
              for (int mid : byColour[static_cast<std::size_t>(colour)]) {
                if (mid == bu || mid == bv) continue;
                const Block& mb = matching[mid];
                if (shared_count(extra.vertices, mb.vertices) != 1) continue;
                if (detail::shared_on_x(host, extra, mb) != 1) continue;
                ++hits[mb.x_count(host) == host.shape.sideSmall ? 0 : 1];
              }
              for (int h : hits) row.inT += binom(tot, m - 2) - binom(tot - h, m - 2);
            }
          }
        }
      }
    }
    if (host.mode == Mode::complete) {
      row.predictedP = static_cast<double>(count_P(host, req.u, req.v, m)) * std::pow(d, -m);
      row.predictedT = static_cast<double>(count_T(host, req.u, req.v, m)) * std::pow(d, -(m + 1));
    } else {
      for (int a = 0; a <= 1; ++a)
        for (int b = 0; b <= 1; ++b) {
          row.predictedP +=
              static_cast<double>(count_P(host, req.u, req.v, m, a, b)) * std::pow(d, -m);
          for (int c = 0; c <= 1; ++c)
            row.predictedT += static_cast<double>(count_T(host, req.u, req.v, m, a, b, c)) *
                              std::pow(d, -(m + 1));
        }
    }
    row.deviationP =
        row.predictedP > 0 ? (static_cast<double>(row.inP) - row.predictedP) / row.predictedP : 0;
    row.deviationT =
        row.predictedT > 0 ? (static_cast<double>(row.inT) - row.predictedT) / row.predictedT : 0;
    report.tracked.push_back(row);
  }
  return report;
}

struct GreedyResult {
  BlockMatching matching;
  TestFunctionReport report;
  GreedyStats stats;
};

inline GreedyResult greedy_match(const HostSpec& host, const MatcherParams& params) {
  if (params.stall < 1) throw Error("stall threshold must be at least 1");
  BlockMatching matching(host);
  GreedyStats stats;
  Rng rng(params.seed);
  const std::int64_t perBlock = detail::edges_per_block(host);
  auto coverage = [&] {
    return host.num_edges() == 0
               ? 0.0
               : static_cast<double>(static_cast<std::int64_t>(matching.size()) * perBlock) /
                     static_cast<double>(host.num_edges());
  };

  if (host.block_placements() > 0) {
    std::int64_t consecutiveRejects = 0;
    while (consecutiveRejects < params.stall) {
      if (params.targetCoverage && coverage() >= *params.targetCoverage) {
        stats.reachedTarget = true;
        break;
      }
      ++stats.attempts;
      Block cand;
      cand.colour = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(host.paletteSize)));
      if (host.mode == Mode::complete) {
        cand.vertices = rng.subset(host.n, host.k - 1);
      } else {
        bool flip = rng.below(2) == 1;
        int xSize = flip ? host.shape.sideLarge : host.shape.sideSmall;
        cand.vertices = rng.subset(host.n, xSize);
        for (int y : rng.subset(host.n, host.shape.total - xSize))
          cand.vertices.push_back(host.n + y);
      }
      if (!is_compatible(matching, cand)) {
        ++stats.rejectedIncompatible;
        ++consecutiveRejects;
        continue;
      }
      if (find_conflict(matching, cand)) {
        ++stats.rejectedConflict;
        ++consecutiveRejects;
        continue;
      }
      matching.add(cand);
      ++stats.accepted;
      consecutiveRejects = 0;
    }
  }
  stats.coverage = coverage();
  stats.acceptanceRate =
      stats.attempts > 0 ? static_cast<double>(stats.accepted) / static_cast<double>(stats.attempts)
                         : 0.0;
  TestFunctionReport report = track_tests(matching);
  return GreedyResult{std::move(matching), std::move(report), stats};
}

}  // namespace ramsey
