// End-to-end pipeline: match, paint, recolour, verify, certify, retry.

#include <catch2/catch_amalgamated.hpp>

#include "ramsey/pipeline.hpp"
#include "oracles.hpp"

#include <cmath>
#include <set>

using namespace ramsey;

namespace {

// Distinct edge colours around a closed vertex walk, straight off the colouring.
int distinct_cycle_colours(const Colouring& c, const std::vector<int>& cycle) {
  std::set<EdgeColour> seen;
  const int h = static_cast<int>(cycle.size());
  for (int i = 0; i < h; ++i) {
    const int u = cycle[static_cast<std::size_t>(i)];
    const int v = cycle[static_cast<std::size_t>((i + 1) % h)];
    REQUIRE(c.host().is_host_edge(u, v));
    seen.insert(c.at(u, v));
  }
  return static_cast<int>(seen.size());
}

PipelineConfig certifying_config() {
  PipelineConfig cfg;
  cfg.mode = Mode::complete;
  cfg.n = 60;
  cfg.k = 3;
  cfg.ell = 4;
  cfg.alpha = 0.25;
  cfg.delta = 0.25;
  cfg.matcher.stall = 200'000;
  cfg.matcher.targetCoverage = 0.9;
  cfg.maxRounds = 20'000;
  cfg.restartBudget = 10;
  cfg.seed = 1;
  return cfg;
}

}  // namespace

TEST_CASE("a seeded run certifies within the colour budget") {
  const PipelineConfig cfg = certifying_config();
  const PipelineResult res = run_pipeline(cfg);

  REQUIRE(res.exitStatus == 0);
  REQUIRE(res.resampledClean);
  REQUIRE(res.verdict.mode == VerifyMode::exhaustive);
  REQUIRE(res.verdict.certified());
  REQUIRE(res.verdict.violations.empty());
  REQUIRE(res.attemptsUsed == 1);
  REQUIRE(res.attemptSeeds == std::vector<std::uint64_t>{1});

  const Certificate& cert = res.certificate;
  REQUIRE(cert.state == VerdictState::certified);
  REQUIRE(cert.violationCount == 0);
  REQUIRE(cert.violations.empty());
  REQUIRE(cert.seed == 1);
  REQUIRE(cert.alpha == cfg.alpha);

  // Colour budget: one block colour per floor(n / (k - 2)) plus the fresh palette.
  const HostSpec host = build_host(cfg.mode, cfg.n, cfg.k, cfg.ell);
  REQUIRE(cert.totalColours.has_value());
  REQUIRE(*cert.totalColours == host.paletteSize + fresh_palette_size(cfg.n, cfg.alpha));
  REQUIRE(*cert.totalColours == 82);  // 60 block colours + ceil(60^0.75) = 22 fresh

  REQUIRE(cert.coverage.has_value());
  REQUIRE(*cert.coverage > 0.0);
  REQUIRE(*cert.coverage <= 1.0);
  REQUIRE(cert.rounds.has_value());
  REQUIRE(*cert.rounds >= 0);

  // Blocks are k-1 = 2 vertices each here; leftover edges carry fresh colours.
  for (const Block& b : cert.blocks) {
    REQUIRE(static_cast<int>(b.vertices.size()) == cfg.k - 1);
    REQUIRE(b.colour >= 1);
    REQUIRE(b.colour <= host.paletteSize);
  }
  const int r = fresh_palette_size(cfg.n, cfg.alpha);
  for (const auto& [u, v, col] : cert.leftover) {
    REQUIRE(host.is_host_edge(u, v));
    REQUIRE(col >= 1);
    REQUIRE(col <= r);
  }
  REQUIRE(!cert.leftover.empty());
  REQUIRE(!cert.blocks.empty());

  // Every host edge is either inside some block or listed as leftover.
  std::int64_t structuredEdges = 0;
  for (const Block& b : cert.blocks)
    for (std::size_t i = 0; i < b.vertices.size(); ++i)
      for (std::size_t j = i + 1; j < b.vertices.size(); ++j)
        if (host.is_host_edge(b.vertices[i], b.vertices[j])) ++structuredEdges;
  REQUIRE(structuredEdges + static_cast<std::int64_t>(cert.leftover.size()) == host.num_edges());
}

TEST_CASE("fixed seeds reproduce certificates byte for byte") {
  const PipelineConfig cfg = certifying_config();
  const PipelineResult a = run_pipeline(cfg);
  const PipelineResult b = run_pipeline(cfg);

  REQUIRE(a.certificate == b.certificate);
  REQUIRE(encode(a.certificate) == encode(b.certificate));
  REQUIRE(encode_json(a.certificate) == encode_json(b.certificate));
  REQUIRE(a.attemptSeeds == b.attemptSeeds);
  REQUIRE(a.exitStatus == b.exitStatus);

  PipelineConfig other = cfg;
  other.seed = 2;
  const PipelineResult c = run_pipeline(other);
  REQUIRE(c.certificate.seed == 2);
  REQUIRE(encode(a.certificate) != encode(c.certificate));
}

TEST_CASE("exit codes separate violations from exhausted retries") {
  SECTION("a resampling budget of zero on a dense leftover reports violations") {
    PipelineConfig cfg;
    cfg.mode = Mode::complete;
    cfg.n = 10;
    cfg.k = 4;
    cfg.ell = 4;
    cfg.alpha = 0.35;
    cfg.maxRounds = 0;
    cfg.restartBudget = 2;
    cfg.seed = 1;
    const PipelineResult res = run_pipeline(cfg);

    REQUIRE(res.exitStatus == 2);
    REQUIRE_FALSE(res.resampledClean);
    REQUIRE_FALSE(res.verdict.certified());
    REQUIRE(res.attemptsUsed == 2);
    REQUIRE(res.attemptSeeds == std::vector<std::uint64_t>{1, 2});

    const Certificate& cert = res.certificate;
    REQUIRE(cert.state == VerdictState::violations);
    REQUIRE(cert.violationCount > 0);
    std::int64_t total = 0;
    for (const auto& [len, count] : res.verdict.violationCounts) total += count;
    REQUIRE(cert.violationCount == total);

    // Each recorded witness cycle is genuinely short on colours.
    REQUIRE(!cert.violations.empty());
    const Colouring painted = colouring_of(cert);
    for (const auto& cycle : cert.violations) {
      REQUIRE(static_cast<int>(cycle.size()) == 4);
      REQUIRE(distinct_cycle_colours(painted, cycle) <= 2);
    }
  }

  SECTION("events without any reachable cycle exhaust the retries cleanly") {
    // K_5 holds no 7-cycle, so verification is vacuous; equal fresh colours on
    // adjacent edges still keep the resampling loop from certifying at zero rounds.
    PipelineConfig cfg;
    cfg.mode = Mode::complete;
    cfg.n = 5;
    cfg.k = 7;
    cfg.ell = 7;
    cfg.alpha = 0.25;
    cfg.maxRounds = 0;
    cfg.restartBudget = 2;
    cfg.seed = 1;
    const PipelineResult res = run_pipeline(cfg);

    REQUIRE(res.exitStatus == 3);
    REQUIRE_FALSE(res.resampledClean);
    REQUIRE(res.verdict.certified());
    REQUIRE(res.attemptsUsed == 2);
    REQUIRE(res.attemptSeeds == std::vector<std::uint64_t>{1, 2});

    const Certificate& cert = res.certificate;
    REQUIRE(cert.state == VerdictState::certified);
    REQUIRE(cert.blocks.empty());            // K_6 blocks cannot fit in K_5
    REQUIRE(cert.leftover.size() == 10);     // every edge stays fresh
  }
}

TEST_CASE("the minimal host runs entirely on fresh colours") {
  // n = k - 2 admits no blocks and no cycles in range; the fresh stage alone
  // must carry the run to a certified exit.
  PipelineConfig cfg;
  cfg.mode = Mode::complete;
  cfg.n = 3;
  cfg.k = 5;
  cfg.ell = 5;
  cfg.alpha = 0.3;
  cfg.restartBudget = 3;
  cfg.seed = 4;
  const PipelineResult res = run_pipeline(cfg);

  REQUIRE(res.exitStatus == 0);
  REQUIRE(res.resampledClean);
  REQUIRE(res.verdict.certified());
  REQUIRE(res.certificate.blocks.empty());
  REQUIRE(res.certificate.leftover.size() == 3);
  const HostSpec host = build_host(Mode::complete, 3, 5, 5);
  REQUIRE(*res.certificate.totalColours ==
          host.paletteSize + fresh_palette_size(cfg.n, cfg.alpha));
  for (const auto& [len, count] : res.verdict.cyclesChecked) REQUIRE(count == 0);
}

TEST_CASE("certificates round-trip and verdicts are reproducible") {
  PipelineConfig cfg = certifying_config();
  const PipelineResult res = run_pipeline(cfg);
  const Certificate& cert = res.certificate;

  SECTION("text and json encodings decode back to the same certificate") {
    REQUIRE(decode(encode(cert)) == cert);
    REQUIRE(decode(encode_json(cert)) == cert);  // decode sniffs the format
  }

  SECTION("re-verifying the decoded certificate reproduces the verdict") {
    const Certificate back = decode(encode(cert));
    const Colouring painted = colouring_of(back);
    VerifyOptions vo;
    vo.mode = VerifyMode::exhaustive;
    const Verdict again = verify_colouring(painted, vo);
    REQUIRE(again.certified());
    REQUIRE(again.cyclesChecked == res.verdict.cyclesChecked);
  }

  SECTION("a violating certificate reproduces its violations too") {
    PipelineConfig bad;
    bad.mode = Mode::complete;
    bad.n = 10;
    bad.k = 4;
    bad.ell = 4;
    bad.alpha = 0.35;
    bad.maxRounds = 0;
    bad.restartBudget = 1;
    bad.seed = 1;
    const PipelineResult broken = run_pipeline(bad);
    REQUIRE(broken.exitStatus == 2);

    const Certificate back = decode(encode(broken.certificate));
    REQUIRE(back == broken.certificate);
    const Colouring painted = colouring_of(back);
    VerifyOptions vo;
    vo.mode = VerifyMode::exhaustive;
    const Verdict again = verify_colouring(painted, vo);
    REQUIRE_FALSE(again.certified());
    REQUIRE(again.violationCounts == broken.verdict.violationCounts);
  }
}

TEST_CASE("sampled verification flows through the final stage") {
  PipelineConfig cfg = certifying_config();
  cfg.verifyMode = VerifyMode::sampled;
  cfg.sampleBudget = 2'000;
  const PipelineResult res = run_pipeline(cfg);

  REQUIRE(res.exitStatus == 0);
  REQUIRE(res.verdict.mode == VerifyMode::sampled);
  REQUIRE(res.verdict.certified());
  REQUIRE(res.verdict.cyclesChecked.at(3) == 2'000);
  REQUIRE(res.verdict.cyclesChecked.at(4) == 2'000);

  const PipelineResult rerun = run_pipeline(cfg);
  REQUIRE(encode(res.certificate) == encode(rerun.certificate));
}

TEST_CASE("invalid configuration is rejected before any stage runs") {
  const PipelineConfig good = certifying_config();

  PipelineConfig cfg = good;
  cfg.restartBudget = 0;
  REQUIRE_THROWS_AS(run_pipeline(cfg), Error);

  cfg = good;
  cfg.alpha = 0.5;
  REQUIRE_THROWS_AS(run_pipeline(cfg), Error);
  cfg.alpha = 0.0;
  REQUIRE_THROWS_AS(run_pipeline(cfg), Error);
  cfg.alpha = -0.1;
  REQUIRE_THROWS_AS(run_pipeline(cfg), Error);

  cfg = good;
  cfg.delta = 0.0;
  REQUIRE_THROWS_AS(run_pipeline(cfg), Error);
  cfg.delta = 1.0;
  REQUIRE_THROWS_AS(run_pipeline(cfg), Error);

  cfg = good;
  cfg.maxRounds = -1;
  REQUIRE_THROWS_AS(run_pipeline(cfg), Error);

  cfg = good;
  cfg.matcher.stall = 0;
  REQUIRE_THROWS_AS(run_pipeline(cfg), Error);

  cfg = good;
  cfg.sampleBudget = -1;
  REQUIRE_THROWS_AS(run_pipeline(cfg), Error);

  cfg = good;
  cfg.n = 2;  // complete host needs n >= k - 2 = 1... but k range fails first
  cfg.k = 2;
  REQUIRE_THROWS_AS(run_pipeline(cfg), Error);

  cfg = good;
  cfg.ell = 2;  // ell < k
  REQUIRE_THROWS_AS(run_pipeline(cfg), Error);

  cfg = good;
  cfg.mode = Mode::bipartite;
  cfg.k = 4;
  cfg.ell = 5;  // bipartite ranges must stay even
  REQUIRE_THROWS_AS(run_pipeline(cfg), Error);
}
