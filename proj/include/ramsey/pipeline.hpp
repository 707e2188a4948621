#pragma once

// End-to-end orchestration: greedy block matching, fresh colouring of the
// leftover, resampling until no bad event remains, and ground-truth
// verification — retried with fresh seeds up to a restart budget. Every stage
// draws its seed deterministically from the attempt seed (root seed plus the
// attempt index), so a fixed configuration reproduces its certificate byte
// for byte.

#include <vector>

#include "certificate.hpp"
#include "matcher.hpp"
#include "verify.hpp"

namespace ramsey {

struct PipelineConfig {
  Mode mode = Mode::complete;
  int n = 0;
  int k = 0;
  int ell = 0;
  double eps = -1.0;  // host boundedness exponent; negative = default
  MatcherParams matcher;  // its seed field is ignored; seeds come from the root
  double alpha = 0.25;
  double delta = 0.25;  // slack exponent, carried for the property reports
  std::int64_t maxRounds = 20'000;
  int restartBudget = 1;
  VerifyMode verifyMode = VerifyMode::exhaustive;
  std::int64_t sampleBudget = 10'000;
  std::uint64_t seed = 0;  // root seed; attempt i runs on seed + i
};

struct PipelineResult {
  Certificate certificate;  // of the final attempt
  Verdict verdict;          // ground-truth verdict of the final attempt
  bool resampledClean = false;  // final resampling loop ended with no events
  int exitStatus = 0;           // 0 certified, 2 violations, 3 retries exhausted
  int attemptsUsed = 0;
  std::vector<std::uint64_t> attemptSeeds;  // every attempt seed tried, in order
};

namespace detail {

// stage tags for deriving per-stage seeds from an attempt seed
enum StageTag : std::uint64_t { matchStage = 0, freshStage = 1, resampleStage = 2, verifyStage = 3 };

inline std::uint64_t stage_seed(std::uint64_t attemptSeed, StageTag stage) {
  return splitmix64(attemptSeed ^ static_cast<std::uint64_t>(stage));
}

}  // namespace detail

inline void validate_config(const PipelineConfig& cfg) {
  if (cfg.restartBudget < 1) throw Error("pipeline: restart budget must be at least 1");
  if (!(cfg.alpha > 0 && cfg.alpha < 0.5)) throw Error("pipeline: alpha must lie in (0, 1/2)");
  if (!(cfg.delta > 0 && cfg.delta < 1)) throw Error("pipeline: delta must lie in (0, 1)");
  if (cfg.maxRounds < 0) throw Error("pipeline: max rounds cannot be negative");
  if (cfg.matcher.stall < 1) throw Error("pipeline: stall threshold must be at least 1");
  if (cfg.sampleBudget < 0) throw Error("pipeline: sample budget cannot be negative");
  build_host(cfg.mode, cfg.n, cfg.k, cfg.ell, cfg.eps);  // host ranges checked here
}

// One full attempt chain per seed: match, paint, recolour, verify. Retries
// while the resampling loop fails to certify or the verifier reports
// violations; the certificate of the final attempt is returned either way.
// Exit status: 0 when the final attempt is certified end to end, 2 when its
// verification reports violations, 3 when the verdict is clean but the
// resampling loop never certified within the budget.
inline PipelineResult run_pipeline(const PipelineConfig& cfg) {
  validate_config(cfg);
  const HostSpec host = build_host(cfg.mode, cfg.n, cfg.k, cfg.ell, cfg.eps);

  PipelineResult out;
  for (int attempt = 0; attempt < cfg.restartBudget; ++attempt) {
    const std::uint64_t attemptSeed = cfg.seed + static_cast<std::uint64_t>(attempt);
    out.attemptSeeds.push_back(attemptSeed);
    out.attemptsUsed = attempt + 1;

    MatcherParams params = cfg.matcher;
    params.seed = detail::stage_seed(attemptSeed, detail::matchStage);
    GreedyResult greedy = greedy_match(host, params);
    Colouring painted = graph_of_matching(host, greedy.matching);
    Colouring freshened =
        init_fresh(painted, cfg.alpha, detail::stage_seed(attemptSeed, detail::freshStage));
    RecolourResult recoloured =
        moser_tardos(freshened, greedy.matching,
                     detail::stage_seed(attemptSeed, detail::resampleStage), cfg.maxRounds);

    VerifyOptions vo;
    vo.mode = cfg.verifyMode;
    vo.sampleBudget = cfg.sampleBudget;
    vo.seed = detail::stage_seed(attemptSeed, detail::verifyStage);
    out.verdict = verify_colouring(recoloured.colouring, vo);
    out.resampledClean = recoloured.certified;

    Certificate cert;
    cert.host = host;
    cert.alpha = cfg.alpha;
    cert.seed = attemptSeed;
    cert.coverage = greedy.stats.coverage;
    cert.rounds = recoloured.rounds;
    cert.totalColours = host.paletteSize + recoloured.colouring.fresh_palette();
    cert.blocks = greedy.matching.blocks();
    for (std::int64_t e = 0; e < host.num_edges(); ++e) {
      EdgeColour col = recoloured.colouring.at_index(e);
      if (col.tag != Paint::fresh) continue;
      auto [u, v] = host.edge_vertices(e);
      cert.leftover.emplace_back(u, v, col.id);
    }
    if (out.verdict.certified()) {
      cert.state = VerdictState::certified;
    } else {
      cert.state = VerdictState::violations;
      cert.violationCount = 0;
      for (const auto& [length, count] : out.verdict.violationCounts)
        cert.violationCount += count;
      for (const Violation& viol : out.verdict.violations) cert.violations.push_back(viol.cycle);
    }
    out.certificate = std::move(cert);

    if (out.resampledClean && out.verdict.certified()) {
      out.exitStatus = 0;
      return out;
    }
  }
  out.exitStatus = out.verdict.certified() ? 3 : 2;
  return out;
}

}  // namespace ramsey
