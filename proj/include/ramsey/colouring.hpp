#pragma once

// Edge colourings of a host. Structured colours come from blocks, fresh
// colours from the second-stage palette; the two namespaces never collide
// because every edge colour carries a tag.

#include "block.hpp"

namespace ramsey {

enum class Paint : std::uint8_t { uncoloured = 0, structured = 1, fresh = 2 };

struct EdgeColour {
  Paint tag = Paint::uncoloured;
  int id = 0;  // 1-based within its namespace

  bool operator==(const EdgeColour&) const = default;
  auto operator<=>(const EdgeColour&) const = default;
};

inline EdgeColour structured(int id) { return {Paint::structured, id}; }
inline EdgeColour fresh(int id) { return {Paint::fresh, id}; }

class Colouring {
 public:
  explicit Colouring(const HostSpec& host)
      : host_(host), edges_(static_cast<std::size_t>(host.num_edges())) {}

  const HostSpec& host() const { return host_; }

  EdgeColour at(int u, int v) const { return edges_[static_cast<std::size_t>(host_.edge_index(u, v))]; }
  EdgeColour at_index(std::int64_t e) const { return edges_[static_cast<std::size_t>(e)]; }
  void set(int u, int v, EdgeColour c) { edges_[static_cast<std::size_t>(host_.edge_index(u, v))] = c; }
  void set_index(std::int64_t e, EdgeColour c) { edges_[static_cast<std::size_t>(e)] = c; }

  const std::vector<EdgeColour>& raw() const { return edges_; }

  bool total() const {
    for (const EdgeColour& c : edges_)
      if (c.tag == Paint::uncoloured) return false;
    return true;
  }

  std::int64_t coloured_count() const {
    std::int64_t out = 0;
    for (const EdgeColour& c : edges_)
      if (c.tag != Paint::uncoloured) ++out;
    return out;
  }

  // fresh palette parameters; alpha 0 marks a colouring whose fresh ids were
  // not produced by init_fresh (standalone colourings, exact-search witnesses)
  double fresh_alpha() const { return alpha_; }
  int fresh_palette() const { return freshPalette_; }
  void set_fresh_params(double alpha, int r) { alpha_ = alpha; freshPalette_ = r; }

 private:
  HostSpec host_;
  std::vector<EdgeColour> edges_;
  double alpha_ = 0;
  int freshPalette_ = 0;
};

// Paints every edge inside a block with the block's structured colour.
// The matching is re-validated first; an invalid one is rejected outright.
inline Colouring graph_of_matching(const HostSpec& host, const BlockMatching& m) {
  if (auto bad = validate_matching(host, m.blocks()))
    throw Error("graph_of_matching: invalid matching: blocks " + std::to_string(bad->first) +
                " and " + std::to_string(bad->second) + ": " + bad->reason);
  Colouring c(host);
  for (const Block& b : m.blocks()) {
    const auto& vs = b.vertices;
    for (std::size_t i = 0; i < vs.size(); ++i)
      for (std::size_t j = i + 1; j < vs.size(); ++j) {
        if (!host.is_host_edge(vs[i], vs[j])) continue;  // bipartite same-side pair
        if (c.at(vs[i], vs[j]).tag != Paint::uncoloured)
          throw Error("graph_of_matching: edge painted twice");  // unreachable on valid input
        c.set(vs[i], vs[j], structured(b.colour));
      }
  }
  return c;
}

struct Leftover {
  std::vector<std::pair<int, int>> edges;  // (min, max) global ids
  std::vector<std::vector<int>> adj;       // global id -> neighbours, ascending
  int maxDegree = 0;
};

// Uncoloured edges of a colouring, as a plain graph.
inline Leftover leftover_graph(const Colouring& c) {
  const HostSpec& host = c.host();
  Leftover out;
  out.adj.resize(static_cast<std::size_t>(host.num_vertices()));
  for (std::int64_t e = 0; e < host.num_edges(); ++e) {
    if (c.at_index(e).tag != Paint::uncoloured) continue;
    auto [u, v] = host.edge_vertices(e);
    out.edges.emplace_back(u, v);
    out.adj[static_cast<std::size_t>(u)].push_back(v);
    out.adj[static_cast<std::size_t>(v)].push_back(u);
  }
  for (auto& list : out.adj) {
    std::sort(list.begin(), list.end());
    out.maxDegree = std::max(out.maxDegree, static_cast<int>(list.size()));
  }
  return out;
}

}  // namespace ramsey
