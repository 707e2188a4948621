#pragma once

// Ground truth. verify_colouring answers the defining question directly: does
// every host cycle whose length falls in the target range see at least three
// distinct edge colours. check_construction_properties inspects a matching /
// colouring pair for the four structural guarantees the two-stage build rests
// on: disjoint blocks per colour class, two-colour block girth beyond the
// cycle range, small leftover degree, and small anchored block-path counts.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "colouring.hpp"
#include "lll.hpp"

namespace ramsey {

// ---------------------------------------------------------------------------
// cycle verdicts

enum class VerifyMode { exhaustive, sampled };

inline const char* verify_mode_name(VerifyMode m) {
  return m == VerifyMode::exhaustive ? "exhaustive" : "sampled";
}

struct Violation {
  int length = 0;
  std::vector<int> cycle;            // canonical vertex sequence
  std::vector<EdgeColour> colours;   // the edge-colour multiset, sorted
};

struct Verdict {
  VerifyMode mode = VerifyMode::exhaustive;
  std::map<int, std::int64_t> cyclesChecked;     // per length
  std::map<int, std::int64_t> violationCounts;   // exact, even when witnesses are capped
  std::vector<Violation> violations;             // at most witnessCap per length
  bool certified() const {
    for (const auto& [len, count] : violationCounts)
      if (count > 0) return false;
    return true;
  }
};

struct VerifyOptions {
  VerifyMode mode = VerifyMode::exhaustive;
  std::int64_t sampleBudget = 10'000;  // sampled mode, per length
  std::uint64_t seed = 0;
  std::vector<int> lengths;            // override; empty = the host's range
  double orderedTupleCap = 1e9;        // exhaustive-mode guard
  int witnessCap = 1000;               // stored violations per length
};

// Worker count for exhaustive enumeration; RAMSEY_WORKERS overrides.
inline int worker_count() {
  if (const char* env = std::getenv("RAMSEY_WORKERS")) {
    int w = std::atoi(env);
    if (w >= 1) return w;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

namespace detail {

// lengths to check: the host's cycle range, even lengths only on a
// bipartite host
inline std::vector<int> default_lengths(const HostSpec& host) {
  std::vector<int> out;
  for (int h = host.cycle_low(); h <= host.ell; ++h)
    if (host.mode == Mode::complete || h % 2 == 0) out.push_back(h);
  return out;
}

inline int distinct_colours(const std::vector<EdgeColour>& colours) {
  std::set<EdgeColour> seen(colours.begin(), colours.end());
  return static_cast<int>(seen.size());
}

// one exhaustive task: canonical cycles of one length with a fixed first edge
// (least vertex s, then t); the remaining vertices all exceed s and the
// direction is fixed by requiring t below the final vertex
struct CycleTask {
  int length = 0;
  int start = 0;
  int second = 0;
};

struct TaskResult {
  std::int64_t checked = 0;
  std::int64_t violating = 0;
  std::vector<Violation> witnesses;
};

struct CycleEnumerator {
  const Colouring& colouring;
  const HostSpec& host;
  int length;
  int witnessCap;
  TaskResult result;
  std::vector<int> path;
  std::vector<char> used;

  void run(int s, int t) {
    used.assign(static_cast<std::size_t>(host.num_vertices()), 0);
    path = {s, t};
    used[static_cast<std::size_t>(s)] = used[static_cast<std::size_t>(t)] = 1;
    extend();
  }

  void extend() {
    const int s = path.front(), cur = path.back();
    if (static_cast<int>(path.size()) == length) {
      if (host.is_host_edge(cur, s) && path[1] < cur) record();
      return;
    }
    for (int v = s + 1; v < host.num_vertices(); ++v) {
      if (used[static_cast<std::size_t>(v)] || !host.is_host_edge(cur, v)) continue;
      used[static_cast<std::size_t>(v)] = 1;
      path.push_back(v);
      extend();
      path.pop_back();
      used[static_cast<std::size_t>(v)] = 0;
    }
  }

  void record() {
    ++result.checked;
    std::vector<EdgeColour> colours;
    for (int t = 0; t < length; ++t)
      colours.push_back(colouring.at(path[static_cast<std::size_t>(t)],
                                     path[static_cast<std::size_t>((t + 1) % length)]));
    if (distinct_colours(colours) > 2) return;
    ++result.violating;
    if (static_cast<int>(result.witnesses.size()) >= witnessCap) return;
    std::sort(colours.begin(), colours.end());
    result.witnesses.push_back({length, path, std::move(colours)});
  }
};

// canonical form of a cycle given as an arbitrary rotation/direction
inline std::vector<int> canonical_cycle(std::vector<int> cycle) {
  int where = static_cast<int>(std::min_element(cycle.begin(), cycle.end()) - cycle.begin());
  std::rotate(cycle.begin(), cycle.begin() + where, cycle.end());
  if (cycle[1] > cycle.back()) {
    std::reverse(cycle.begin() + 1, cycle.end());
  }
  return cycle;
}

inline void shuffle_tail(Rng& rng, std::vector<int>& v) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng.below(i));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace detail

// Does every cycle of each target length receive at least three colours?
// Exhaustive mode enumerates each canonical cycle exactly once (behind an
// ordered-tuple guard and partitioned across workers); sampled mode draws
// uniform cycles, re-checks every hit, and deduplicates witnesses. A cycle
// violates when its edges carry at most two distinct colours.
inline Verdict verify_colouring(const Colouring& c, const VerifyOptions& opts = {}) {
  const HostSpec& host = c.host();
  if (!c.total()) throw Error("verify_colouring: the colouring leaves edges unpainted");
  if (opts.sampleBudget < 0) throw Error("verify_colouring: sample budget cannot be negative");
  std::vector<int> lengths = opts.lengths.empty() ? detail::default_lengths(host) : opts.lengths;
  for (int h : lengths)
    if (h < 3) throw Error("verify_colouring: cycle lengths start at 3");

  Verdict verdict;
  verdict.mode = opts.mode;
  for (int h : lengths) {
    verdict.cyclesChecked[h] = 0;
    verdict.violationCounts[h] = 0;
  }

  if (opts.mode == VerifyMode::exhaustive) {
    double orderedTuples = 0;
    for (int h : lengths) {
      double tuples = 1;
      for (int i = 0; i < h; ++i) tuples *= static_cast<double>(host.num_vertices() - i);
      if (tuples > 0) orderedTuples += tuples;
    }
    if (orderedTuples > opts.orderedTupleCap)
      throw Error("verify_colouring: ordered-tuple count exceeds the exhaustive cap");

    std::vector<detail::CycleTask> tasks;
    for (int h : lengths)
      for (int s = 0; s + 1 < host.num_vertices(); ++s)
        for (int t = s + 1; t < host.num_vertices(); ++t)
          if (host.is_host_edge(s, t)) tasks.push_back({h, s, t});

    std::vector<detail::TaskResult> results(tasks.size());
    const int workers = std::max(1, std::min(worker_count(), static_cast<int>(tasks.size())));
    auto runRange = [&](int firstTask, int stride) {
      for (std::size_t i = static_cast<std::size_t>(firstTask); i < tasks.size();
           i += static_cast<std::size_t>(stride)) {
        detail::CycleEnumerator e{c, host, tasks[i].length, opts.witnessCap, {}, {}, {}};
        e.run(tasks[i].start, tasks[i].second);
        results[i] = std::move(e.result);
      }
    };
    if (workers <= 1) {
      runRange(0, 1);
    } else {
      std::vector<std::thread> pool;
      for (int w = 0; w < workers; ++w) pool.emplace_back(runRange, w, workers);
      for (std::thread& t : pool) t.join();
    }

    std::map<int, int> stored;
    for (std::size_t i = 0; i < tasks.size(); ++i) {  // deterministic merge order
      verdict.cyclesChecked[tasks[i].length] += results[i].checked;
      verdict.violationCounts[tasks[i].length] += results[i].violating;
      for (Violation& v : results[i].witnesses)
        if (stored[v.length]++ < opts.witnessCap) verdict.violations.push_back(std::move(v));
    }
    return verdict;
  }

  // sampled mode: uniform random cycles, deduplicated witnesses
  Rng rng(opts.seed);
  std::map<int, std::set<std::vector<int>>> seen;
  for (int h : lengths) {
    const bool feasible = host.mode == Mode::complete
                              ? h <= host.num_vertices()
                              : h % 2 == 0 && h / 2 <= host.n;
    if (!feasible) continue;
    for (std::int64_t draw = 0; draw < opts.sampleBudget; ++draw) {
      std::vector<int> cycle;
      if (host.mode == Mode::complete) {
        cycle = rng.subset(host.num_vertices(), h);
        detail::shuffle_tail(rng, cycle);
      } else {
        std::vector<int> xs = rng.subset(host.n, h / 2);
        std::vector<int> ys = rng.subset(host.n, h / 2);
        detail::shuffle_tail(rng, xs);
        detail::shuffle_tail(rng, ys);
        for (int i = 0; i < h / 2; ++i) {
          cycle.push_back(xs[static_cast<std::size_t>(i)]);
          cycle.push_back(ys[static_cast<std::size_t>(i)] + host.n);
        }
      }
      ++verdict.cyclesChecked[h];
      std::vector<EdgeColour> colours;
      for (int t = 0; t < h; ++t)
        colours.push_back(c.at(cycle[static_cast<std::size_t>(t)],
                               cycle[static_cast<std::size_t>((t + 1) % h)]));
      if (detail::distinct_colours(colours) > 2) continue;
      std::vector<int> canon = detail::canonical_cycle(cycle);
      if (!seen[h].insert(canon).second) continue;  // already recorded
      // independent re-check of the canonical form before reporting
      std::vector<EdgeColour> recheck;
      for (int t = 0; t < h; ++t)
        recheck.push_back(c.at(canon[static_cast<std::size_t>(t)],
                               canon[static_cast<std::size_t>((t + 1) % h)]));
      if (detail::distinct_colours(recheck) > 2)
        throw Error("verify_colouring: sampled violation failed its re-check");  // unreachable
      ++verdict.violationCounts[h];
      if (static_cast<int>(seen[h].size()) <= opts.witnessCap) {
        std::sort(recheck.begin(), recheck.end());
        verdict.violations.push_back({h, std::move(canon), std::move(recheck)});
      }
    }
  }
  return verdict;
}

// ---------------------------------------------------------------------------
// construction properties

struct PropertyItem {
  std::string name;
  bool pass = true;
  double measured = 0;
  double threshold = 0;
  std::vector<std::string> witnesses;
};

struct PropertyReport {
  std::vector<PropertyItem> items;
  bool all_pass() const {
    for (const PropertyItem& item : items)
      if (!item.pass) return false;
    return true;
  }
};

struct PropertyOptions {
  std::int64_t edgeSampleCap = 200;  // anchored-count checks per run
  std::uint64_t seed = 0;
  int witnessCap = 20;
};

namespace detail {

// every block edge must be painted with the block's colour, and every
// structured edge must come from a block
inline void check_colouring_matches(const Colouring& c, const BlockMatching& matching) {
  const HostSpec& host = c.host();
  for (const Block& b : matching.blocks()) {
    const auto& vs = b.vertices;
    for (std::size_t i = 0; i < vs.size(); ++i)
      for (std::size_t j = i + 1; j < vs.size(); ++j) {
        if (!host.is_host_edge(vs[i], vs[j])) continue;
        if (c.at(vs[i], vs[j]) != structured(b.colour))
          throw Error("check_construction_properties: colouring does not match the matching");
      }
  }
  for (std::int64_t e = 0; e < host.num_edges(); ++e) {
    EdgeColour col = c.at_index(e);
    if (col.tag != Paint::structured) continue;
    auto [u, v] = host.edge_vertices(e);
    bool covered = false;
    for (const auto& [colour, idx] : matching.blocks_at(u))
      if (colour == col.id && matching[idx].contains(v)) covered = true;
    if (!covered)
      throw Error("check_construction_properties: structured edge outside every block");
  }
}

// shortest cycle through the blocks of two colour classes, up to a length
// cap; consecutive blocks share exactly one vertex, the shared vertices are
// pairwise distinct, and a pair sharing two vertices counts as a 2-cycle
struct TwoColourGirth {
  std::vector<const Block*> blocks;
  int cap;
  int best = 0;  // 0 = none found
  std::vector<int> path;
  std::vector<int> links;
  std::vector<char> used;

  void run() {
    for (std::size_t i = 0; i < blocks.size(); ++i)
      for (std::size_t j = i + 1; j < blocks.size(); ++j)
        if (shared_count(blocks[i]->vertices, blocks[j]->vertices) >= 2) {
          best = 2;
          return;
        }
    used.assign(blocks.size(), 0);
    for (int s = 0; s + 2 < static_cast<int>(blocks.size()); ++s) {
      path.assign(1, s);
      links.clear();
      used[static_cast<std::size_t>(s)] = 1;
      extend();
      used[static_cast<std::size_t>(s)] = 0;
      if (best == 3) return;  // nothing shorter exists past the 2-cycle scan
    }
  }

  void extend() {
    const int s = path.front(), len = static_cast<int>(path.size());
    const Block& cur = *blocks[static_cast<std::size_t>(path.back())];
    if (len >= 3) {
      const Block& first = *blocks[static_cast<std::size_t>(s)];
      if (shared_count(cur.vertices, first.vertices) == 1) {
        int link = single_shared_vertex(cur.vertices, first.vertices);
        if (std::find(links.begin(), links.end(), link) == links.end())
          if (best == 0 || len < best) best = len;
      }
    }
    if (len >= cap || (best != 0 && len + 1 >= best)) return;
    for (int nxt = s + 1; nxt < static_cast<int>(blocks.size()); ++nxt) {
      if (used[static_cast<std::size_t>(nxt)]) continue;
      const Block& cand = *blocks[static_cast<std::size_t>(nxt)];
      if (shared_count(cur.vertices, cand.vertices) != 1) continue;
      int link = single_shared_vertex(cur.vertices, cand.vertices);
      if (std::find(links.begin(), links.end(), link) != links.end()) continue;
      path.push_back(nxt);
      links.push_back(link);
      used[static_cast<std::size_t>(nxt)] = 1;
      extend();
      used[static_cast<std::size_t>(nxt)] = 0;
      links.pop_back();
      path.pop_back();
    }
  }
};

// number of block paths F1..Fm of one colour anchored at host edge (a, b):
// a sits in F1, b in Fm, consecutive blocks joined by leftover edges, every
// in-block step a host edge
inline std::int64_t anchored_block_paths(const Colouring& c, const BlockMatching& matching,
                                         int a, int b, int m) {
  const HostSpec& host = c.host();
  std::int64_t total = 0;
  std::vector<int> blockPath;
  auto rec = [&](auto&& self, int colour, int entry) -> void {
    const Block& cur = matching[blockPath.back()];
    const int depth = static_cast<int>(blockPath.size());
    for (int exit : cur.vertices) {
      if (exit == entry || !host.is_host_edge(entry, exit)) continue;
      if (depth == m) {
        if (exit == b) ++total;
        continue;
      }
      for (int w = 0; w < host.num_vertices(); ++w) {
        if (!host.is_host_edge(exit, w)) continue;
        if (c.at(exit, w).tag == Paint::structured) continue;  // must be a leftover edge
        int next = matching.block_at(colour, w);
        if (next < 0) continue;
        if (std::find(blockPath.begin(), blockPath.end(), next) != blockPath.end()) continue;
        blockPath.push_back(next);
        self(self, colour, w);
        blockPath.pop_back();
      }
    }
  };
  for (const auto& [colour, idx] : matching.blocks_at(a)) {
    if (m == 1) {
      if (matching[idx].contains(b) && host.is_host_edge(a, b)) ++total;
      continue;
    }
    blockPath.assign(1, idx);
    rec(rec, colour, a);
    blockPath.clear();
  }
  return total;
}

}  // namespace detail

// The four structural guarantees of the first stage, each reported with its
// measurement and threshold. delta is the slack exponent; the anchored-count
// check runs over every host edge when the host is small, otherwise over a
// seeded sample of edgeSampleCap edges.
inline PropertyReport check_construction_properties(const Colouring& c,
                                                    const BlockMatching& matching, double delta,
                                                    const PropertyOptions& opts = {}) {
  detail::check_same_host(c.host(), matching.host(), "check_construction_properties");
  if (!(delta > 0 && delta < 1))
    throw Error("check_construction_properties: delta must lie in (0, 1)");
  detail::check_colouring_matches(c, matching);
  const HostSpec& host = c.host();
  PropertyReport report;

  {  // (1) each colour class is a set of vertex-disjoint blocks
    PropertyItem item{"colour classes are vertex-disjoint blocks", true, 0, 0, {}};
    std::map<int, std::vector<int>> classes;
    for (int i = 0; i < matching.size(); ++i) classes[matching[i].colour].push_back(i);
    for (const auto& [colour, members] : classes)
      for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = i + 1; j < members.size(); ++j) {
          int shared = shared_count(matching[members[i]].vertices,
                                    matching[members[j]].vertices);
          if (shared == 0) continue;
          item.pass = false;
          item.measured += 1;
          if (static_cast<int>(item.witnesses.size()) < opts.witnessCap)
            item.witnesses.push_back("colour " + std::to_string(colour) + ": blocks " +
                                     std::to_string(members[i]) + " and " +
                                     std::to_string(members[j]) + " share " +
                                     std::to_string(shared) + " vertices");
        }
    report.items.push_back(std::move(item));
  }

  {  // (2) the blocks of any two colours form no short cycle
    const int bound = host.mode == Mode::complete ? 2 * (host.ell / 2) : host.ell;
    PropertyItem item{"two-colour block girth clears the cycle range", true, 0,
                      static_cast<double>(bound + 1), {}};
    std::set<std::pair<int, int>> pairs;
    for (int v = 0; v < host.num_vertices(); ++v) {
      const auto& here = matching.blocks_at(v);
      for (std::size_t i = 0; i < here.size(); ++i)
        for (std::size_t j = i + 1; j < here.size(); ++j)
          if (here[i].first != here[j].first) pairs.insert({here[i].first, here[j].first});
    }
    int shortest = 0;
    for (auto [ci, cj] : pairs) {
      detail::TwoColourGirth search{{}, bound, 0, {}, {}, {}};
      for (int i = 0; i < matching.size(); ++i)
        if (matching[i].colour == ci || matching[i].colour == cj)
          search.blocks.push_back(&matching[i]);
      search.run();
      if (search.best != 0 && (shortest == 0 || search.best < shortest)) {
        shortest = search.best;
        if (static_cast<int>(item.witnesses.size()) < opts.witnessCap)
          item.witnesses.push_back("colours " + std::to_string(ci) + "/" + std::to_string(cj) +
                                   ": block cycle of length " + std::to_string(search.best));
      }
    }
    item.measured = shortest;
    item.pass = shortest == 0 || shortest > bound;
    report.items.push_back(std::move(item));
  }

  {  // (3) leftover degree stays below n^(1-delta)
    PropertyItem item{"leftover degree stays below n^(1-delta)", true, 0,
                      std::pow(static_cast<double>(host.n), 1.0 - delta), {}};
    int worstVertex = 0;
    std::vector<int> degree(static_cast<std::size_t>(host.num_vertices()), 0);
    for (std::int64_t e = 0; e < host.num_edges(); ++e) {
      if (c.at_index(e).tag == Paint::structured) continue;
      auto [u, v] = host.edge_vertices(e);
      ++degree[static_cast<std::size_t>(u)];
      ++degree[static_cast<std::size_t>(v)];
    }
    for (int v = 0; v < host.num_vertices(); ++v)
      if (degree[static_cast<std::size_t>(v)] > degree[static_cast<std::size_t>(worstVertex)])
        worstVertex = v;
    item.measured = degree[static_cast<std::size_t>(worstVertex)];
    item.pass = item.measured <= item.threshold;
    if (!item.pass)
      item.witnesses.push_back("vertex " + std::to_string(worstVertex) + " keeps " +
                               std::to_string(degree[static_cast<std::size_t>(worstVertex)]) +
                               " leftover edges");
    report.items.push_back(std::move(item));
  }

  {  // (4) anchored block-path counts stay below n^((m-1)(1-delta))
    PropertyItem item{"anchored block-path counts stay below n^((m-1)(1-delta))", true, 0, 0, {}};
    std::vector<std::int64_t> edges;
    if (host.num_edges() <= opts.edgeSampleCap) {
      for (std::int64_t e = 0; e < host.num_edges(); ++e) edges.push_back(e);
    } else {
      Rng rng(opts.seed);
      for (std::int64_t i = 0; i < opts.edgeSampleCap; ++i)
        edges.push_back(static_cast<std::int64_t>(
            rng.below(static_cast<std::uint64_t>(host.num_edges()))));
    }
    double worstRatio = 0;
    for (std::int64_t e : edges) {
      auto [a, b] = host.edge_vertices(e);
      for (int m = 2; m <= host.ell / 2; ++m) {
        const double threshold =
            std::pow(static_cast<double>(host.n), (m - 1) * (1.0 - delta));
        const auto count =
            static_cast<double>(detail::anchored_block_paths(c, matching, a, b, m));
        const double ratio = count / threshold;
        if (ratio > worstRatio) {
          worstRatio = ratio;
          item.measured = count;
          item.threshold = threshold;
        }
        if (count > threshold) {
          item.pass = false;
          if (static_cast<int>(item.witnesses.size()) < opts.witnessCap)
            item.witnesses.push_back("edge (" + std::to_string(a) + "," + std::to_string(b) +
                                     "), m=" + std::to_string(m) + ": " +
                                     std::to_string(static_cast<std::int64_t>(count)) +
                                     " block paths exceed " + detail::format_double(threshold));
        }
      }
    }
    report.items.push_back(std::move(item));
  }

  return report;
}

}  // namespace ramsey
