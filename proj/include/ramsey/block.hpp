#pragma once

// Blocks and block matchings. A block is a monochromatic blockShape copy
// (clique on k-1 vertices, or K_{C(k,2),C(k+1,2)} in bipartite mode) tagged
// with a structured colour. A BlockMatching is a set of blocks that forms a
// matching in the auxiliary hypergraph H, which is equivalent to:
//   - blocks of the same colour are vertex-disjoint, and
//   - blocks of different colours share at most one vertex.

#include <optional>
#include <string>

#include "host.hpp"

namespace ramsey {

struct Block {
  int colour = 0;             // structured colour, 1-based
  std::vector<int> vertices;  // sorted global vertex ids

  bool operator==(const Block&) const = default;

  bool contains(int v) const {
    return std::binary_search(vertices.begin(), vertices.end(), v);
  }

  int x_count(const HostSpec& host) const {
    int c = 0;
    for (int v : vertices) c += host.is_x(v) ? 1 : 0;
    return c;
  }
};

// number of shared vertices of two sorted vertex lists
inline int shared_count(const std::vector<int>& a, const std::vector<int>& b) {
  int count = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) ++i;
    else if (a[i] > b[j]) ++j;
    else { ++count; ++i; ++j; }
  }
  return count;
}

// the single shared vertex of two sorted lists, or -1 when they share
// none or more than one
inline int single_shared_vertex(const std::vector<int>& a, const std::vector<int>& b) {
  int found = -1;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) ++i;
    else if (a[i] > b[j]) ++j;
    else {
      if (found >= 0) return -1;
      found = a[i];
      ++i; ++j;
    }
  }
  return found;
}

// Throws when the block's shape, colour or vertex ids do not fit the host.
inline void check_block(const HostSpec& host, const Block& b) {
  if (b.colour < 1 || b.colour > host.paletteSize)
    throw Error("block colour " + std::to_string(b.colour) + " outside palette");
  if (static_cast<int>(b.vertices.size()) != host.shape.total)
    throw Error("block has " + std::to_string(b.vertices.size()) + " vertices, expected " +
                std::to_string(host.shape.total));
  int prev = -1;
  for (int v : b.vertices) {
    if (v < 0 || v >= host.num_vertices()) throw Error("block vertex id out of range");
    if (v <= prev) throw Error("block vertices must be strictly ascending");
    prev = v;
  }
  if (host.mode == Mode::bipartite) {
    int xs = b.x_count(host);
    if (xs != host.shape.sideSmall && xs != host.shape.sideLarge)
      throw Error("bipartite block has side sizes " + std::to_string(xs) + "+" +
                  std::to_string(host.shape.total - xs) + ", expected " +
                  std::to_string(host.shape.sideSmall) + "+" +
                  std::to_string(host.shape.sideLarge) + " in either orientation");
  }
}

class BlockMatching {
 public:
  explicit BlockMatching(const HostSpec& host)
      : host_(host),
        byColour_(static_cast<std::size_t>(host.paletteSize) * host.num_vertices(), -1),
        byVertex_(static_cast<std::size_t>(host.num_vertices())) {}

  const HostSpec& host() const { return host_; }
  int size() const { return static_cast<int>(blocks_.size()); }
  const std::vector<Block>& blocks() const { return blocks_; }
  const Block& operator[](int i) const { return blocks_[static_cast<std::size_t>(i)]; }

  // index of the colour-i block containing v, or -1
  int block_at(int colour, int v) const { return byColour_[slot(colour, v)]; }

  // (colour, block index) pairs at v, ascending by colour
  const std::vector<std::pair<int, int>>& blocks_at(int v) const {
    return byVertex_[static_cast<std::size_t>(v)];
  }

  // H-compatibility of a candidate against everything already present; on
  // failure *clash is set to the index of one offending block.
  bool compatible(const Block& cand, int* clash = nullptr) const {
    for (int v : cand.vertices) {
      int same = block_at(cand.colour, v);
      if (same >= 0) {
        if (clash) *clash = same;
        return false;
      }
    }
    // cross colours: a single block may be met through at most one vertex
    std::vector<int> met;
    for (int v : cand.vertices) {
      for (const auto& [colour, idx] : byVertex_[static_cast<std::size_t>(v)]) {
        if (colour == cand.colour) continue;
        if (std::find(met.begin(), met.end(), idx) != met.end()) {
          if (clash) *clash = idx;
          return false;
        }
        met.push_back(idx);
      }
    }
    return true;
  }

  // Appends without legality checks beyond the shape; callers decide whether
  // compatible() has been consulted.
  void add(const Block& b) {
    check_block(host_, b);
    int idx = size();
    blocks_.push_back(b);
    for (int v : b.vertices) {
      byColour_[slot(b.colour, v)] = idx;
      auto& list = byVertex_[static_cast<std::size_t>(v)];
      auto pos = std::lower_bound(list.begin(), list.end(), std::make_pair(b.colour, idx));
      list.insert(pos, {b.colour, idx});
    }
  }

 private:
  std::size_t slot(int colour, int v) const {
    return static_cast<std::size_t>(colour - 1) * host_.num_vertices() +
           static_cast<std::size_t>(v);
  }

  HostSpec host_;
  std::vector<Block> blocks_;
  std::vector<int> byColour_;                             // (colour, vertex) -> block index
  std::vector<std::vector<std::pair<int, int>>> byVertex_;  // vertex -> (colour, index)
};

struct MatchingViolation {
  int first = -1;   // indices into the offending block list
  int second = -1;
  std::string reason;
};

// Checks shapes plus pairwise H-compatibility; nullopt when valid.
inline std::optional<MatchingViolation> validate_matching(const HostSpec& host,
                                                          const std::vector<Block>& blocks) {
  BlockMatching m(host);
  for (int i = 0; i < static_cast<int>(blocks.size()); ++i) {
    const Block& b = blocks[static_cast<std::size_t>(i)];
    try {
      check_block(host, b);
    } catch (const Error& e) {
      return MatchingViolation{i, i, e.what()};
    }
    int clash = -1;
    if (!m.compatible(b, &clash)) {
      bool sameColour = blocks[static_cast<std::size_t>(clash)].colour == b.colour;
      return MatchingViolation{clash, i,
                               sameColour ? "same-colour blocks share a vertex"
                                          : "blocks of different colours share two vertices"};
    }
    m.add(b);
  }
  return std::nullopt;
}

// Builds a validated matching; throws naming the violating pair.
inline BlockMatching make_matching(const HostSpec& host, const std::vector<Block>& blocks) {
  if (auto bad = validate_matching(host, blocks))
    throw Error("invalid matching: blocks " + std::to_string(bad->first) + " and " +
                std::to_string(bad->second) + ": " + bad->reason);
  BlockMatching m(host);
  for (const Block& b : blocks) m.add(b);
  return m;
}

}  // namespace ramsey
