// Command-line front end: forge, recolour, verify, audit, exact, bounds, pipeline.
//
// Certificates travel between stages as flat files (text or the JSON mirror,
// chosen by --format). Every stage derives its randomness from the global
// --seed through fixed per-stage splits, so forge | recolour | verify chained
// on one seed reproduces what `pipeline` does with that seed in one shot.

#include <CLI11.hpp>
#include <json.hpp>

#include "ramsey/audit.hpp"
#include "ramsey/exact.hpp"
#include "ramsey/pipeline.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;
using namespace ramsey;

struct GlobalOpts {
  std::uint64_t seed = 0;
  std::string format = "text";
  std::string out;  // certificate or report destination; empty = stdout
};

bool json_mode(const GlobalOpts& g) { return g.format == "json"; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open input file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& payload) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open output file: " + path);
  out << payload;
  if (!out) throw Error("failed writing output file: " + path);
}

// Certificate goes to --out when given, otherwise becomes part of the stdout
// payload (appended after the text report / embedded in the JSON object).
void emit_certificate(const Certificate& cert, const GlobalOpts& g, json* report) {
  const std::string payload = json_mode(g) ? encode_json(cert) : encode(cert);
  if (!g.out.empty()) {
    write_file(g.out, payload);
    return;
  }
  if (report)
    (*report)["certificate"] = to_json(cert);
  else
    std::cout << payload;
}

void print_report(const json& report, const GlobalOpts& g,
                  const std::function<void(const json&)>& textPrinter) {
  if (json_mode(g))
    std::cout << report.dump(2) << "\n";
  else
    textPrinter(report);
}

// Report first, then the certificate: embedded in the JSON object, appended
// after the text report, or routed to --out when a path was given.
void finish_with_certificate(const Certificate& cert, json& report, const GlobalOpts& g,
                             const std::function<void(const json&)>& textPrinter) {
  if (json_mode(g)) {
    emit_certificate(cert, g, &report);
    print_report(report, g, textPrinter);
  } else {
    print_report(report, g, textPrinter);
    emit_certificate(cert, g, nullptr);
  }
}

Mode parse_mode(const std::string& s) {
  return s == "bipartite" ? Mode::bipartite : Mode::complete;
}

std::vector<int> parse_int_list(const std::string& spec, const char* what) {
  std::vector<int> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw Error(std::string(what) + ": cannot parse integer list entry '" + item + "'");
    }
  }
  if (out.empty()) throw Error(std::string(what) + ": empty list");
  return out;
}

std::string rational_str(const Rational& r) {
  if (r.den == 1) return std::to_string(r.num);
  return std::to_string(r.num) + "/" + std::to_string(r.den);
}

json verdict_json(const Verdict& v) {
  json jv;
  jv["mode"] = v.mode == VerifyMode::exhaustive ? "exhaustive" : "sampled";
  jv["certified"] = v.certified();
  json checked = json::object(), found = json::object();
  for (const auto& [len, count] : v.cyclesChecked) checked[std::to_string(len)] = count;
  for (const auto& [len, count] : v.violationCounts) found[std::to_string(len)] = count;
  jv["cyclesChecked"] = checked;
  jv["violations"] = found;
  return jv;
}

void print_verdict_text(const Verdict& v) {
  std::printf("verify mode=%s certified=%s\n",
              v.mode == VerifyMode::exhaustive ? "exhaustive" : "sampled",
              v.certified() ? "yes" : "no");
  for (const auto& [len, count] : v.cyclesChecked) {
    std::int64_t bad = 0;
    if (auto it = v.violationCounts.find(len); it != v.violationCounts.end()) bad = it->second;
    std::printf("  length %d: checked %lld, violations %lld\n", len,
                static_cast<long long>(count), static_cast<long long>(bad));
  }
}

json audit_json(const AuditReport& rep) {
  json j;
  j["host"] = {{"mode", mode_name(rep.host.mode)},
               {"n", rep.host.n},
               {"k", rep.host.k},
               {"ell", rep.host.ell}};
  j["checks"] = json::array();
  for (const AuditCheck& c : rep.checks)
    j["checks"].push_back({{"name", c.name},
                           {"claimed", c.claimed},
                           {"threshold", c.threshold},
                           {"measured", c.measured},
                           {"pass", c.pass}});
  j["notes"] = rep.notes;
  j["allPass"] = rep.all_pass();
  return j;
}

void print_audit_text(const AuditReport& rep) {
  std::size_t width = 4;
  for (const AuditCheck& c : rep.checks) width = std::max(width, c.name.size());
  for (const AuditCheck& c : rep.checks)
    std::printf("  %-*s  measured %-14s threshold %-14s %s\n", static_cast<int>(width),
                c.name.c_str(), detail::format_double(c.measured).c_str(),
                detail::format_double(c.threshold).c_str(), c.pass ? "pass" : "FAIL");
  for (const std::string& note : rep.notes) std::printf("  note: %s\n", note.c_str());
}

// -------- forge --------

struct ForgeOpts {
  std::string mode = "complete";
  int n = 0, k = 3, ell = 3;
  double eps = -1.0;
  std::int64_t stall = 100'000;
  double targetCoverage = -1.0;
  std::vector<std::string> tracks;
};

int run_forge(const ForgeOpts& o, const GlobalOpts& g) {
  const HostSpec host = build_host(parse_mode(o.mode), o.n, o.k, o.ell, o.eps);

  MatcherParams params;
  params.seed = detail::stage_seed(g.seed, detail::matchStage);
  params.stall = o.stall;
  if (o.targetCoverage >= 0) params.targetCoverage = o.targetCoverage;

  std::vector<TrackRequest> requests;
  for (const std::string& spec : o.tracks) {
    std::vector<int> parts = parse_int_list(spec, "--track");
    if (parts.size() != 3) throw Error("--track wants 'u,v,m'");
    requests.push_back({parts[0], parts[1], parts[2]});
  }

  GreedyResult res = greedy_match(host, params);
  const TestFunctionReport tracked = track_tests(res.matching, requests);

  Certificate cert;
  cert.host = host;
  cert.alpha = 0;  // no fresh stage yet
  cert.seed = g.seed;
  cert.coverage = res.stats.coverage;
  cert.blocks = res.matching.blocks();
  cert.state = VerdictState::unverified;

  json report;
  report["host"] = {{"mode", mode_name(host.mode)}, {"n", host.n}, {"k", host.k},
                    {"ell", host.ell}, {"paletteSize", host.paletteSize}};
  report["stats"] = {{"attempts", res.stats.attempts},
                     {"accepted", res.stats.accepted},
                     {"rejectedIncompatible", res.stats.rejectedIncompatible},
                     {"rejectedConflict", res.stats.rejectedConflict},
                     {"acceptanceRate", res.stats.acceptanceRate},
                     {"coverage", res.stats.coverage},
                     {"reachedTarget", res.stats.reachedTarget}};
  report["blocks"] = cert.blocks.size();
  report["tracked"] = json::array();
  for (const TrackedCount& t : tracked.tracked)
    report["tracked"].push_back({{"u", t.request.u}, {"v", t.request.v}, {"m", t.request.m},
                                 {"inP", t.inP}, {"inT", t.inT},
                                 {"predictedP", t.predictedP}, {"predictedT", t.predictedT},
                                 {"deviationP", t.deviationP}, {"deviationT", t.deviationT}});

  finish_with_certificate(cert, report, g, [&](const json&) {
    std::printf("forge %s n=%d k=%d ell=%d\n", mode_name(host.mode), host.n, host.k, host.ell);
    std::printf("blocks %zu coverage %s reachedTarget %s\n", cert.blocks.size(),
                detail::format_double(res.stats.coverage).c_str(),
                res.stats.reachedTarget ? "yes" : "no");
    std::printf("attempts %lld accepted %lld rejectedIncompatible %lld rejectedConflict %lld\n",
                static_cast<long long>(res.stats.attempts),
                static_cast<long long>(res.stats.accepted),
                static_cast<long long>(res.stats.rejectedIncompatible),
                static_cast<long long>(res.stats.rejectedConflict));
    for (const TrackedCount& t : tracked.tracked)
      std::printf("track %d,%d m=%d inP=%lld predictedP=%s inT=%lld predictedT=%s\n",
                  t.request.u, t.request.v, t.request.m, static_cast<long long>(t.inP),
                  detail::format_double(t.predictedP).c_str(), static_cast<long long>(t.inT),
                  detail::format_double(t.predictedT).c_str());
  });
  return 0;
}

// -------- recolour --------

struct RecolourOpts {
  std::string in;
  double alpha = 0.25;
  double delta = 0.25;
  std::int64_t maxRounds = 20'000;
};

int run_recolour(const RecolourOpts& o, const GlobalOpts& g) {
  if (o.maxRounds < 0) throw Error("--max-rounds cannot be negative");
  if (o.maxRounds > std::numeric_limits<int>::max()) throw Error("--max-rounds too large");
  Certificate cert = decode(read_file(o.in));
  const HostSpec& host = cert.host;

  const BlockMatching matching = make_matching(host, cert.blocks);
  const Colouring base = graph_of_matching(host, matching);
  const Colouring seeded = init_fresh(base, o.alpha, detail::stage_seed(g.seed, detail::freshStage));
  const RecolourResult res = moser_tardos(seeded, matching,
                                          detail::stage_seed(g.seed, detail::resampleStage),
                                          static_cast<int>(o.maxRounds));

  const LLLWeights weights = lll_weights(host.n, o.alpha, o.delta, host.k, host.ell, host.mode);

  cert.alpha = o.alpha;
  cert.seed = g.seed;
  cert.rounds = res.rounds;
  cert.totalColours = host.paletteSize + res.colouring.fresh_palette();
  cert.leftover.clear();
  for (std::int64_t e = 0; e < host.num_edges(); ++e) {
    EdgeColour col = res.colouring.at_index(e);
    if (col.tag != Paint::fresh) continue;
    auto [u, v] = host.edge_vertices(e);
    cert.leftover.emplace_back(u, v, col.id);
  }
  cert.state = VerdictState::unverified;
  cert.violationCount = 0;
  cert.violations.clear();

  json report;
  report["certified"] = res.certified;
  report["rounds"] = res.rounds;
  report["residualEvents"] = res.residual.size();
  report["freshPalette"] = res.colouring.fresh_palette();
  report["totalColours"] = *cert.totalColours;
  report["weightsFeasible"] = weights.feasible;
  report["resampleLog"] = json::array();
  for (const ResampleRecord& r : res.log) {
    json scope = json::array();
    for (auto [u, v] : r.scope) scope.push_back({u, v});
    report["resampleLog"].push_back(
        {{"round", r.round}, {"kind", event_kind_name(r.kind)}, {"scope", scope}});
  }

  finish_with_certificate(cert, report, g, [&](const json&) {
    for (const ResampleRecord& r : res.log) {
      std::printf("R %d %s", r.round, event_kind_name(r.kind));
      for (auto [u, v] : r.scope) std::printf(" %d-%d", u, v);
      std::printf("\n");
    }
    std::printf("recolour alpha=%s freshPalette=%d totalColours=%d\n",
                detail::format_double(o.alpha).c_str(), res.colouring.fresh_palette(),
                *cert.totalColours);
    std::printf("certified %s rounds %d residualEvents %zu weightsFeasible %s\n",
                res.certified ? "yes" : "no", res.rounds, res.residual.size(),
                weights.feasible ? "yes" : "no");
  });
  return res.certified ? 0 : 3;
}

// -------- verify --------

struct VerifyCmdOpts {
  std::string in;
  std::string mode = "exhaustive";
  std::int64_t sampleBudget = 10'000;
  std::string lengths;
};

int run_verify(const VerifyCmdOpts& o, const GlobalOpts& g) {
  Certificate cert = decode(read_file(o.in));
  const Colouring painted = colouring_of(cert);

  VerifyOptions vo;
  vo.mode = o.mode == "sampled" ? VerifyMode::sampled : VerifyMode::exhaustive;
  vo.sampleBudget = o.sampleBudget;
  vo.seed = detail::stage_seed(g.seed, detail::verifyStage);
  if (!o.lengths.empty()) vo.lengths = parse_int_list(o.lengths, "--lengths");

  const Verdict verdict = verify_colouring(painted, vo);

  if (verdict.certified()) {
    cert.state = VerdictState::certified;
    cert.violationCount = 0;
    cert.violations.clear();
  } else {
    cert.state = VerdictState::violations;
    cert.violationCount = 0;
    for (const auto& [len, count] : verdict.violationCounts) cert.violationCount += count;
    cert.violations.clear();
    for (const Violation& v : verdict.violations) cert.violations.push_back(v.cycle);
  }

  json report = verdict_json(verdict);
  finish_with_certificate(cert, report, g, [&](const json&) { print_verdict_text(verdict); });
  return verdict.certified() ? 0 : 2;
}

// -------- audit --------

struct AuditOpts {
  std::string mode = "complete";
  int n = 0, k = 3, ell = 3;
  double eps = -1.0;
  std::int64_t edgeCap = 10'000'000;
};

int run_audit(const AuditOpts& o, const GlobalOpts& g) {
  const HostSpec host = build_host(parse_mode(o.mode), o.n, o.k, o.ell, o.eps);
  const AuditReport regularity = audit_regularity(host, o.edgeCap);
  const AuditReport conflicts = audit_conflicts(host, o.edgeCap);

  json report;
  report["regularity"] = audit_json(regularity);
  report["conflicts"] = audit_json(conflicts);
  if (!g.out.empty()) {
    write_file(g.out, report.dump(2) + "\n");
    return 0;
  }
  print_report(report, g, [&](const json&) {
    std::printf("audit %s n=%d k=%d ell=%d\n", mode_name(host.mode), host.n, host.k, host.ell);
    std::printf("regularity: %s\n", regularity.all_pass() ? "all pass" : "FAILURES");
    print_audit_text(regularity);
    std::printf("conflicts: %s\n", conflicts.all_pass() ? "all pass" : "FAILURES");
    print_audit_text(conflicts);
  });
  return 0;  // audits inform; only infeasible caps abort (thrown as errors)
}

// -------- exact --------

struct ExactCmdOpts {
  std::string mode = "complete";
  int n = 0, kLow = 3, kHigh = 0;
  int q = 3;
  int completeCap = 8, bipartiteCap = 5;
  bool noCanonical = false;
};

int run_exact(const ExactCmdOpts& o, const GlobalOpts& g) {
  ExactOptions opts;
  opts.canonicalColours = !o.noCanonical;
  opts.completeCap = o.completeCap;
  opts.bipartiteCap = o.bipartiteCap;
  const int kHigh = o.kHigh > 0 ? o.kHigh : o.kLow;
  const ExactResult res = exact_ramsey(parse_mode(o.mode), o.n, o.kLow, kHigh, o.q, opts);

  Certificate witness;
  witness.host = res.witness.host();
  witness.alpha = 0;  // free-form colour ids
  witness.seed = g.seed;
  witness.totalColours = res.value;
  for (std::int64_t e = 0; e < witness.host.num_edges(); ++e) {
    EdgeColour col = res.witness.at_index(e);
    if (col.tag != Paint::fresh) continue;
    auto [u, v] = witness.host.edge_vertices(e);
    witness.leftover.emplace_back(u, v, col.id);
  }
  // the solver re-checks its witness exhaustively for the three-colour property
  witness.state = o.q >= 3 ? VerdictState::certified : VerdictState::unverified;

  json report;
  report["value"] = res.value;
  report["nodesExplored"] = res.nodesExplored;
  report["exhaustedColourCounts"] = res.exhaustedColourCounts;

  finish_with_certificate(witness, report, g, [&](const json&) {
    std::printf("exact %s n=%d range=[%d,%d] q=%d\n", o.mode.c_str(), o.n, o.kLow, kHigh, o.q);
    std::printf("value %d nodesExplored %lld\n", res.value,
                static_cast<long long>(res.nodesExplored));
    std::printf("exhausted at:");
    for (int c : res.exhaustedColourCounts) std::printf(" %d", c);
    std::printf("\n");
  });
  return 0;
}

// -------- bounds --------

struct BoundsOpts {
  std::string mode = "complete";
  int n = 0, k = 3;
};

int run_bounds(const BoundsOpts& o, const GlobalOpts& g) {
  const BoundsReport rep = o.mode == "bipartite" ? bipartite_bounds(o.n, o.k)
                                                 : lower_bound_complete(o.n, o.k);
  json report;
  report["mode"] = o.mode;
  report["n"] = rep.n;
  report["k"] = rep.k;
  report["lowerBound"] = rep.lowerBound;
  report["pathExtremal"] = rational_str(rep.pathExtremal);
  if (rep.mode == Mode::bipartite) {
    report["t"] = rep.t;
    report["upperCoefficient"] = rational_str(rep.upperCoefficient);
  }
  if (!g.out.empty()) {
    write_file(g.out, report.dump(2) + "\n");
    return 0;
  }
  print_report(report, g, [&](const json&) {
    std::printf("bounds %s n=%d k=%d\n", o.mode.c_str(), rep.n, rep.k);
    std::printf("lowerBound %lld (path extremal %s)\n", static_cast<long long>(rep.lowerBound),
                rational_str(rep.pathExtremal).c_str());
    if (rep.mode == Mode::bipartite)
      std::printf("block parameter t %d upperCoefficient %s\n", rep.t,
                  rational_str(rep.upperCoefficient).c_str());
  });
  return 0;
}

// -------- pipeline --------

struct PipelineOpts {
  std::string mode = "complete";
  int n = 0, k = 3, ell = 3;
  double eps = -1.0;
  double alpha = 0.25, delta = 0.25;
  std::int64_t stall = 100'000;
  double targetCoverage = -1.0;
  std::int64_t maxRounds = 20'000;
  int restartBudget = 1;
  std::string verifyMode = "exhaustive";
  std::int64_t sampleBudget = 10'000;
};

int run_pipeline_cmd(const PipelineOpts& o, const GlobalOpts& g) {
  PipelineConfig cfg;
  cfg.mode = parse_mode(o.mode);
  cfg.n = o.n;
  cfg.k = o.k;
  cfg.ell = o.ell;
  cfg.eps = o.eps;
  cfg.alpha = o.alpha;
  cfg.delta = o.delta;
  cfg.matcher.stall = o.stall;
  if (o.targetCoverage >= 0) cfg.matcher.targetCoverage = o.targetCoverage;
  cfg.maxRounds = o.maxRounds;
  cfg.restartBudget = o.restartBudget;
  cfg.verifyMode = o.verifyMode == "sampled" ? VerifyMode::sampled : VerifyMode::exhaustive;
  cfg.sampleBudget = o.sampleBudget;
  cfg.seed = g.seed;

  const PipelineResult res = run_pipeline(cfg);

  json report;
  report["exitStatus"] = res.exitStatus;
  report["attemptsUsed"] = res.attemptsUsed;
  report["attemptSeeds"] = res.attemptSeeds;
  report["resampledClean"] = res.resampledClean;
  report["verdict"] = verdict_json(res.verdict);
  if (res.certificate.totalColours) report["totalColours"] = *res.certificate.totalColours;
  if (res.certificate.coverage) report["coverage"] = *res.certificate.coverage;
  if (res.certificate.rounds) report["rounds"] = *res.certificate.rounds;

  finish_with_certificate(res.certificate, report, g, [&](const json&) {
    std::printf("pipeline %s n=%d k=%d ell=%d alpha=%s seed=%llu\n", o.mode.c_str(), o.n, o.k,
                o.ell, detail::format_double(o.alpha).c_str(),
                static_cast<unsigned long long>(g.seed));
    std::printf("attempts %d seeds", res.attemptsUsed);
    for (std::uint64_t s : res.attemptSeeds)
      std::printf(" %llu", static_cast<unsigned long long>(s));
    std::printf("\n");
    if (res.certificate.totalColours)
      std::printf("totalColours %d coverage %s rounds %lld\n", *res.certificate.totalColours,
                  detail::format_double(res.certificate.coverage.value_or(0)).c_str(),
                  static_cast<long long>(res.certificate.rounds.value_or(0)));
    print_verdict_text(res.verdict);
    std::printf("resampledClean %s exit %d\n", res.resampledClean ? "yes" : "no",
                res.exitStatus);
  });
  return res.exitStatus;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Block-colouring toolkit: structured matchings plus fresh-palette recolouring,\n"
      "with exhaustive and sampled cycle-colour verification.\n"
      "Set RAMSEY_WORKERS to override the verifier's thread count."};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--seed", g.seed, "root seed; stages derive their own streams from it");
  app.add_option("--format", g.format, "report and certificate format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_option("--out", g.out, "write the certificate (or report) to this path");

  int exitCode = 0;

  auto add_host = [](CLI::App* cmd, std::string& mode, int& n, int& k, int& ell, double* eps) {
    cmd->add_option("--mode", mode, "host graph family")
        ->check(CLI::IsMember({"complete", "bipartite"}))
        ->capture_default_str();
    cmd->add_option("-n,--n", n, "host size (per side when bipartite)")->required();
    cmd->add_option("-k,--k", k, "shortest constrained cycle length")->capture_default_str();
    cmd->add_option("-l,--ell", ell, "longest constrained cycle length")->capture_default_str();
    if (eps)
      cmd->add_option("--eps", *eps, "boundedness exponent override (negative = default)");
  };

  ForgeOpts forge;
  {
    CLI::App* cmd = app.add_subcommand("forge", "Grow a conflict-free greedy block matching");
    add_host(cmd, forge.mode, forge.n, forge.k, forge.ell, &forge.eps);
    cmd->add_option("--stall", forge.stall, "stop after this many consecutive rejections")
        ->capture_default_str();
    cmd->add_option("--target-coverage", forge.targetCoverage,
                    "stop once this edge fraction is covered (negative = run to stall)");
    cmd->add_option("--track", forge.tracks,
                    "report anchored path counts for host edge u,v at size m (repeatable)");
    cmd->callback([&] { exitCode = run_forge(forge, g); });
  }

  RecolourOpts recolour;
  {
    CLI::App* cmd = app.add_subcommand(
        "recolour", "Fresh-palette the leftover edges and resample until event-free");
    cmd->add_option("--in", recolour.in, "input certificate path")->required();
    cmd->add_option("--alpha", recolour.alpha, "fresh palette exponent, in (0, 1/2)")
        ->capture_default_str();
    cmd->add_option("--delta", recolour.delta, "slack exponent for the weight feasibility table")
        ->capture_default_str();
    cmd->add_option("--max-rounds", recolour.maxRounds, "resampling round cap")
        ->capture_default_str();
    cmd->callback([&] { exitCode = run_recolour(recolour, g); });
  }

  VerifyCmdOpts verify;
  {
    CLI::App* cmd = app.add_subcommand(
        "verify", "Check every cycle in range sees at least three colours");
    cmd->add_option("--in", verify.in, "input certificate path")->required();
    cmd->add_option("--mode", verify.mode, "verification strategy")
        ->check(CLI::IsMember({"exhaustive", "sampled"}))
        ->capture_default_str();
    cmd->add_option("--sample-budget", verify.sampleBudget, "cycles drawn per length when sampling")
        ->capture_default_str();
    cmd->add_option("--lengths", verify.lengths, "comma-separated cycle lengths override");
    cmd->callback([&] { exitCode = run_verify(verify, g); });
  }

  AuditOpts audit;
  {
    CLI::App* cmd = app.add_subcommand(
        "audit", "Measure block-system degrees and conflict structure against their bounds");
    add_host(cmd, audit.mode, audit.n, audit.k, audit.ell, &audit.eps);
    cmd->add_option("--edge-cap", audit.edgeCap, "largest block system to materialize")
        ->capture_default_str();
    cmd->callback([&] { exitCode = run_audit(audit, g); });
  }

  ExactCmdOpts exact;
  {
    CLI::App* cmd = app.add_subcommand(
        "exact", "Minimum colour count by exhaustive backtracking on a tiny host");
    cmd->add_option("--mode", exact.mode, "host graph family")
        ->check(CLI::IsMember({"complete", "bipartite"}))
        ->capture_default_str();
    cmd->add_option("-n,--n", exact.n, "host size (per side when bipartite)")->required();
    cmd->add_option("--k-low", exact.kLow, "shortest constrained cycle length")
        ->capture_default_str();
    cmd->add_option("--k-high", exact.kHigh, "longest constrained cycle length (0 = k-low)");
    cmd->add_option("-q,--q", exact.q, "minimum distinct colours per cycle")
        ->capture_default_str();
    cmd->add_option("--complete-cap", exact.completeCap, "largest complete host allowed")
        ->capture_default_str();
    cmd->add_option("--bipartite-cap", exact.bipartiteCap, "largest per-side bipartite host")
        ->capture_default_str();
    cmd->add_flag("--no-canonical", exact.noCanonical, "disable canonical-colour pruning");
    cmd->callback([&] { exitCode = run_exact(exact, g); });
  }

  BoundsOpts bounds;
  {
    CLI::App* cmd = app.add_subcommand("bounds", "Closed-form lower bounds and block parameters");
    cmd->add_option("--mode", bounds.mode, "host graph family")
        ->check(CLI::IsMember({"complete", "bipartite"}))
        ->capture_default_str();
    cmd->add_option("-n,--n", bounds.n, "host size (per side when bipartite)")->required();
    cmd->add_option("-k,--k", bounds.k, "cycle length")->capture_default_str();
    cmd->callback([&] { exitCode = run_bounds(bounds, g); });
  }

  PipelineOpts pipeline;
  {
    CLI::App* cmd = app.add_subcommand(
        "pipeline", "Full chain: forge, recolour, verify, with seeded restarts");
    add_host(cmd, pipeline.mode, pipeline.n, pipeline.k, pipeline.ell, &pipeline.eps);
    cmd->add_option("--alpha", pipeline.alpha, "fresh palette exponent, in (0, 1/2)")
        ->capture_default_str();
    cmd->add_option("--delta", pipeline.delta, "slack exponent carried into reports")
        ->capture_default_str();
    cmd->add_option("--stall", pipeline.stall, "matcher stall threshold")->capture_default_str();
    cmd->add_option("--target-coverage", pipeline.targetCoverage,
                    "matcher coverage target (negative = run to stall)");
    cmd->add_option("--max-rounds", pipeline.maxRounds, "resampling round cap")
        ->capture_default_str();
    cmd->add_option("--restart-budget", pipeline.restartBudget,
                    "full-chain retries on consecutive seeds")
        ->capture_default_str();
    cmd->add_option("--verify-mode", pipeline.verifyMode, "verification strategy")
        ->check(CLI::IsMember({"exhaustive", "sampled"}))
        ->capture_default_str();
    cmd->add_option("--sample-budget", pipeline.sampleBudget,
                    "cycles drawn per length when sampling")
        ->capture_default_str();
    cmd->callback([&] { exitCode = run_pipeline_cmd(pipeline, g); });
  }

  // let --seed / --format / --out appear after the subcommand name too
  for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;  // help/version exit clean; every usage error is 1
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return exitCode;
}
