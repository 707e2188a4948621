#pragma once

// The auxiliary hypergraph H made explicit. Its vertices are the vertex
// pairs of the host (every pair, including bipartite same-side pairs, since
// blocks occupy those too) plus one (vertex, colour) slot per structured
// colour. Each hyperedge is a block placement tagged with a colour and
// consists of the pairs inside the block plus its (vertex, colour) slots.

#include "block.hpp"

namespace ramsey {

enum class HVertexKind { pairEdge, sameSidePair, crossPair, vertexColour };

inline const char* hvertex_kind_name(HVertexKind k) {
  switch (k) {
    case HVertexKind::pairEdge: return "pairEdge";
    case HVertexKind::sameSidePair: return "sameSidePair";
    case HVertexKind::crossPair: return "crossPair";
    default: return "vertexColour";
  }
}

// Exact degree of every H-vertex of the given kind (degrees are uniform
// within a kind).
inline std::int64_t degree_formula(const HostSpec& host, HVertexKind kind) {
  const int n = host.n;
  if (host.mode == Mode::complete) {
    switch (kind) {
      case HVertexKind::pairEdge:
        return checked_mul(binom(n - 2, host.k - 3), host.paletteSize);
      case HVertexKind::vertexColour:
        return binom(n - 1, host.k - 2);
      default:
        throw Error("degree_formula: kind not present in complete mode");
    }
  }
  const std::int64_t s = host.shape.sideSmall, t = host.shape.sideLarge;
  switch (kind) {
    case HVertexKind::sameSidePair:
      return checked_mul(host.paletteSize,
                         checked_mul(binom(n - 2, t - 2), binom(n, s)) +
                             checked_mul(binom(n - 2, s - 2), binom(n, t)));
    case HVertexKind::crossPair:
      return checked_mul(host.paletteSize,
                         checked_mul(2, checked_mul(binom(n - 1, t - 1), binom(n - 1, s - 1))));
    case HVertexKind::vertexColour:
      return checked_mul(binom(n - 1, t - 1), binom(n, s)) +
             checked_mul(binom(n - 1, s - 1), binom(n, t));
    default:
      throw Error("degree_formula: kind not present in bipartite mode");
  }
}

struct ExplicitHypergraph {
  HostSpec host;
  std::int64_t pairVertexCount = 0;    // C(N, 2) over global vertices
  std::int64_t colourVertexCount = 0;  // N * paletteSize
  std::vector<std::vector<std::int64_t>> edges;  // sorted H-vertex ids per hyperedge
  std::vector<Block> blocks;                     // the block behind each hyperedge

  std::int64_t num_h_vertices() const { return pairVertexCount + colourVertexCount; }

  std::int64_t pair_id(int u, int v) const {
    if (u > v) std::swap(u, v);
    return static_cast<std::int64_t>(v) * (v - 1) / 2 + u;
  }
  std::int64_t colour_id(int v, int colour) const {
    return pairVertexCount + static_cast<std::int64_t>(v) * host.paletteSize + (colour - 1);
  }

  HVertexKind kind_of(std::int64_t id) const {
    if (id >= pairVertexCount) return HVertexKind::vertexColour;
    if (host.mode == Mode::complete) return HVertexKind::pairEdge;
    auto [u, v] = pair_vertices(id);
    return host.is_x(u) == host.is_x(v) ? HVertexKind::sameSidePair : HVertexKind::crossPair;
  }

  std::pair<int, int> pair_vertices(std::int64_t id) const {
    int v = 1;
    while (static_cast<std::int64_t>(v + 1) * v / 2 <= id) ++v;
    return {static_cast<int>(id - static_cast<std::int64_t>(v) * (v - 1) / 2), v};
  }

  std::vector<std::int64_t> edge_vertices_of_block(const Block& b) const {
    std::vector<std::int64_t> ids;
    const auto& vs = b.vertices;
    ids.reserve(vs.size() * (vs.size() - 1) / 2 + vs.size());
    for (std::size_t i = 0; i < vs.size(); ++i)
      for (std::size_t j = i + 1; j < vs.size(); ++j) ids.push_back(pair_id(vs[i], vs[j]));
    for (int v : vs) ids.push_back(colour_id(v, b.colour));
    std::sort(ids.begin(), ids.end());
    return ids;
  }
};

namespace detail {

// visits all r-subsets of [0, n) in lexicographic order
template <typename Fn>
inline void for_each_subset(int n, int r, Fn fn) {
  if (r > n || r < 0) return;
  std::vector<int> pick(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) pick[static_cast<std::size_t>(i)] = i;
  while (true) {
    fn(const_cast<const std::vector<int>&>(pick));
    int i = r - 1;
    while (i >= 0 && pick[static_cast<std::size_t>(i)] == n - r + i) --i;
    if (i < 0) return;
    ++pick[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < r; ++j)
      pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
  }
}

}  // namespace detail

// Enumerates every block placement in a deterministic order (vertex sets
// lexicographic; bipartite: small-X orientation first; colours innermost).
inline std::vector<Block> all_blocks(const HostSpec& host) {
  std::vector<Block> out;
  auto emit = [&](const std::vector<int>& vertices) {
    for (int c = 1; c <= host.paletteSize; ++c) out.push_back(Block{c, vertices});
  };
  if (host.mode == Mode::complete) {
    detail::for_each_subset(host.n, host.k - 1, [&](const std::vector<int>& pick) { emit(pick); });
    return out;
  }
  for (int xSize : {host.shape.sideSmall, host.shape.sideLarge}) {
    int ySize = host.shape.total - xSize;
    detail::for_each_subset(host.n, xSize, [&](const std::vector<int>& xs) {
      detail::for_each_subset(host.n, ySize, [&](const std::vector<int>& ys) {
        std::vector<int> vertices = xs;
        for (int y : ys) vertices.push_back(y + host.n);
        emit(vertices);
      });
    });
  }
  return out;
}

// Materializes H. Refuses outright (no partial work) when the census
// |E(H)| = placements * paletteSize exceeds the cap.
inline ExplicitHypergraph materialize(const HostSpec& host, std::int64_t cap = 10'000'000) {
  std::int64_t census = checked_mul(host.block_placements(), host.paletteSize);
  if (census > cap)
    throw Error("materialize: census " + std::to_string(census) + " exceeds cap " +
                std::to_string(cap));
  ExplicitHypergraph h;
  h.host = host;
  const std::int64_t nv = host.num_vertices();
  h.pairVertexCount = nv * (nv - 1) / 2;
  h.colourVertexCount = nv * host.paletteSize;
  h.blocks = all_blocks(host);
  h.edges.reserve(h.blocks.size());
  for (const Block& b : h.blocks) h.edges.push_back(h.edge_vertices_of_block(b));
  return h;
}

}  // namespace ramsey
