#pragma once

// Certificate: the full object a run emits — host parameters, block matching,
// fresh assignment, seed, pipeline statistics and the verification verdict.
//
// Text format (one record per line):
//   mode complete|bipartite
//   n/k/ell/alpha/seed headers, then optional coverage/rounds/colours stats
//   B <colour> <v...>                 complete block
//   B <colour> X <x...> Y <y...>      bipartite block, side-local ids
//   F <u> <v> <freshColour>           leftover edge (bipartite: x, y side-local)
//   VERDICT certified | violations <count> | unverified
//   V <cycle vertices...>             violation witnesses after the verdict
//
// Bipartite violation cycles alternate X,Y starting on the X side and use
// side-local ids. A JSON mirror of the same schema is accepted and emitted.

#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <tuple>

#include "json.hpp"

#include "colouring.hpp"

namespace ramsey {

// ceil(n^(1-alpha)) with a tiny nudge so that exact powers are not pushed up
// by floating-point noise
inline int fresh_palette_size(int n, double alpha) {
  double p = std::pow(static_cast<double>(n), 1.0 - alpha);
  return static_cast<int>(std::ceil(p - 1e-9));
}

enum class VerdictState { unverified, certified, violations };

inline const char* verdict_name(VerdictState s) {
  switch (s) {
    case VerdictState::certified: return "certified";
    case VerdictState::violations: return "violations";
    default: return "unverified";
  }
}

struct Certificate {
  HostSpec host;
  double alpha = 0;  // 0 until a fresh stage ran
  std::uint64_t seed = 0;

  std::optional<double> coverage;
  std::optional<std::int64_t> rounds;
  std::optional<int> totalColours;

  std::vector<Block> blocks;                       // global vertex ids
  std::vector<std::tuple<int, int, int>> leftover;  // (u, v, freshColour), global ids

  VerdictState state = VerdictState::unverified;
  std::int64_t violationCount = 0;
  std::vector<std::vector<int>> violations;  // witness cycles, global ids

  bool operator==(const Certificate&) const = default;
};

class CertError : public Error {
 public:
  CertError(const std::string& msg, std::int64_t line, std::int64_t byte)
      : Error("certificate: line " + std::to_string(line) + " (byte " + std::to_string(byte) +
              "): " + msg),
        line_(line), byte_(byte) {}
  explicit CertError(const std::string& msg) : Error("certificate: " + msg), line_(0), byte_(0) {}
  std::int64_t line() const { return line_; }
  std::int64_t byte_offset() const { return byte_; }

 private:
  std::int64_t line_, byte_;
};

namespace detail {

// Semantic validation shared by both codecs. locate(i) describes where block
// i came from (a line number or ordinal) for error messages.
template <typename Locate>
inline void validate_certificate(const Certificate& cert, Locate locate) {
  const HostSpec& host = cert.host;
  if (cert.alpha < 0 || cert.alpha >= 1)
    throw CertError("alpha must lie in [0, 1)");
  if (auto bad = validate_matching(host, cert.blocks))
    throw CertError("blocks at " + locate(bad->first) + " and " + locate(bad->second) +
                    " violate matching invariants: " + bad->reason);
  // the fresh palette is derivable from alpha; alpha 0 means free-form ids
  int freshCap = cert.alpha > 0 ? fresh_palette_size(host.n, cert.alpha) : 0;
  Colouring painted = graph_of_matching(host, make_matching(host, cert.blocks));
  for (const auto& [u, v, c] : cert.leftover) {
    if (!host.is_host_edge(u, v)) throw CertError("leftover entry is not a host edge");
    if (c < 1) throw CertError("fresh colour ids are 1-based");
    if (freshCap > 0 && c > freshCap)
      throw CertError("fresh colour " + std::to_string(c) + " exceeds palette " +
                      std::to_string(freshCap) + " implied by alpha");
    EdgeColour prev = painted.at(u, v);
    if (prev.tag == Paint::structured)
      throw CertError("leftover edge " + std::to_string(u) + "-" + std::to_string(v) +
                      " lies inside a block");
    if (prev.tag == Paint::fresh)
      throw CertError("duplicate leftover edge " + std::to_string(u) + "-" + std::to_string(v));
    painted.set(u, v, fresh(c));
  }
  if (cert.state != VerdictState::violations &&
      (cert.violationCount != 0 || !cert.violations.empty()))
    throw CertError("violation entries present without a violations verdict");
  if (static_cast<std::int64_t>(cert.violations.size()) > cert.violationCount)
    throw CertError("more violation witnesses than the declared count");
  for (const auto& cyc : cert.violations) {
    if (static_cast<int>(cyc.size()) < 3) throw CertError("violation cycle shorter than 3");
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      int v = cyc[i];
      if (v < 0 || v >= host.num_vertices()) throw CertError("violation cycle vertex out of range");
      if (host.mode == Mode::bipartite && host.is_x(v) != (i % 2 == 0))
        throw CertError("bipartite violation cycle must alternate X,Y starting on X");
    }
  }
}

}  // namespace detail

// -------- text codec --------

inline std::string encode(const Certificate& cert) {
  const HostSpec& host = cert.host;
  std::ostringstream out;
  out << "mode " << mode_name(host.mode) << "\n";
  out << "n " << host.n << "\n";
  out << "k " << host.k << "\n";
  out << "ell " << host.ell << "\n";
  out << "alpha " << detail::format_double(cert.alpha) << "\n";
  out << "seed " << cert.seed << "\n";
  if (cert.coverage) out << "coverage " << detail::format_double(*cert.coverage) << "\n";
  if (cert.rounds) out << "rounds " << *cert.rounds << "\n";
  if (cert.totalColours) out << "colours " << *cert.totalColours << "\n";
  for (const Block& b : cert.blocks) {
    out << "B " << b.colour;
    if (host.mode == Mode::complete) {
      for (int v : b.vertices) out << ' ' << v;
    } else {
      out << " X";
      for (int v : b.vertices)
        if (host.is_x(v)) out << ' ' << v;
      out << " Y";
      for (int v : b.vertices)
        if (!host.is_x(v)) out << ' ' << (v - host.n);
    }
    out << "\n";
  }
  for (const auto& [u, v, c] : cert.leftover) {
    int a = u, b = v;
    if (host.mode == Mode::bipartite) b -= host.n;
    out << "F " << a << ' ' << b << ' ' << c << "\n";
  }
  out << "VERDICT " << verdict_name(cert.state);
  if (cert.state == VerdictState::violations) out << ' ' << cert.violationCount;
  out << "\n";
  for (const auto& cyc : cert.violations) {
    out << "V";
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      int v = cyc[i];
      if (host.mode == Mode::bipartite && i % 2 == 1) v -= host.n;
      out << ' ' << v;
    }
    out << "\n";
  }
  return out.str();
}

// -------- JSON mirror --------

inline nlohmann::json to_json(const Certificate& cert) {
  const HostSpec& host = cert.host;
  nlohmann::json j;
  j["mode"] = mode_name(host.mode);
  j["n"] = host.n;
  j["k"] = host.k;
  j["ell"] = host.ell;
  j["alpha"] = cert.alpha;
  j["seed"] = cert.seed;
  if (cert.coverage) j["coverage"] = *cert.coverage;
  if (cert.rounds) j["rounds"] = *cert.rounds;
  if (cert.totalColours) j["colours"] = *cert.totalColours;
  j["blocks"] = nlohmann::json::array();
  for (const Block& b : cert.blocks) {
    nlohmann::json jb;
    jb["colour"] = b.colour;
    if (host.mode == Mode::complete) {
      jb["vertices"] = b.vertices;
    } else {
      std::vector<int> xs, ys;
      for (int v : b.vertices) (host.is_x(v) ? xs : ys).push_back(v < host.n ? v : v - host.n);
      jb["x"] = xs;
      jb["y"] = ys;
    }
    j["blocks"].push_back(jb);
  }
  j["leftover"] = nlohmann::json::array();
  for (const auto& [u, v, c] : cert.leftover)
    j["leftover"].push_back({u, host.mode == Mode::bipartite ? v - host.n : v, c});
  if (cert.state == VerdictState::violations) {
    nlohmann::json cycles = nlohmann::json::array();
    for (const auto& cyc : cert.violations) {
      std::vector<int> local = cyc;
      if (host.mode == Mode::bipartite)
        for (std::size_t i = 1; i < local.size(); i += 2) local[i] -= host.n;
      cycles.push_back(local);
    }
    j["verdict"] = {{"violations", cert.violationCount}, {"cycles", cycles}};
  } else {
    j["verdict"] = verdict_name(cert.state);
  }
  return j;
}

inline std::string encode_json(const Certificate& cert) { return to_json(cert).dump(2) + "\n"; }

namespace detail {

inline Certificate decode_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw CertError(std::string("bad JSON: ") + e.what());
  }
  Certificate cert;
  try {
    std::string mode = j.at("mode").get<std::string>();
    if (mode != "complete" && mode != "bipartite") throw CertError("unknown mode " + mode);
    cert.host = build_host(mode == "complete" ? Mode::complete : Mode::bipartite,
                           j.at("n").get<int>(), j.at("k").get<int>(), j.at("ell").get<int>());
    cert.alpha = j.at("alpha").get<double>();
    cert.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("coverage")) cert.coverage = j["coverage"].get<double>();
    if (j.contains("rounds")) cert.rounds = j["rounds"].get<std::int64_t>();
    if (j.contains("colours")) cert.totalColours = j["colours"].get<int>();
    for (const auto& jb : j.at("blocks")) {
      Block b;
      b.colour = jb.at("colour").get<int>();
      if (cert.host.mode == Mode::complete) {
        b.vertices = jb.at("vertices").get<std::vector<int>>();
      } else {
        for (int x : jb.at("x").get<std::vector<int>>()) b.vertices.push_back(x);
        for (int y : jb.at("y").get<std::vector<int>>()) b.vertices.push_back(y + cert.host.n);
      }
      std::sort(b.vertices.begin(), b.vertices.end());
      cert.blocks.push_back(std::move(b));
    }
    for (const auto& jf : j.at("leftover")) {
      int u = jf.at(0).get<int>(), v = jf.at(1).get<int>(), c = jf.at(2).get<int>();
      if (cert.host.mode == Mode::bipartite) v += cert.host.n;
      cert.leftover.emplace_back(u, v, c);
    }
    const auto& jv = j.at("verdict");
    if (jv.is_string()) {
      std::string s = jv.get<std::string>();
      if (s == "certified") cert.state = VerdictState::certified;
      else if (s == "unverified") cert.state = VerdictState::unverified;
      else throw CertError("unknown verdict " + s);
    } else {
      cert.state = VerdictState::violations;
      cert.violationCount = jv.at("violations").get<std::int64_t>();
      for (const auto& jc : jv.at("cycles")) {
        std::vector<int> cyc = jc.get<std::vector<int>>();
        if (cert.host.mode == Mode::bipartite)
          for (std::size_t i = 1; i < cyc.size(); i += 2) cyc[i] += cert.host.n;
        cert.violations.push_back(std::move(cyc));
      }
    }
  } catch (const CertError&) {
    throw;
  } catch (const Error& e) {
    throw CertError(e.what());
  } catch (const std::exception& e) {
    throw CertError(std::string("bad JSON field: ") + e.what());
  }
  validate_certificate(cert, [](int i) { return "index " + std::to_string(i); });
  return cert;
}

}  // namespace detail

// Parses and validates either the text format or its JSON mirror.
inline Certificate decode(const std::string& text) {
  std::size_t firstNonSpace = text.find_first_not_of(" \t\r\n");
  if (firstNonSpace != std::string::npos && text[firstNonSpace] == '{')
    return detail::decode_json(text);

  Certificate cert;
  std::vector<std::int64_t> blockLines;
  std::int64_t lineNo = 0, lineStart = 0, pos = 0;
  const std::int64_t size = static_cast<std::int64_t>(text.size());
  bool sawVerdict = false;
  int headerStage = 0;  // how many of the six required headers were consumed
  static const char* kHeader[6] = {"mode", "n", "k", "ell", "alpha", "seed"};
  std::string modeWord;
  int n = 0, k = 0, ell = 0;

  auto fail = [&](const std::string& msg) -> void { throw CertError(msg, lineNo, lineStart); };

  while (pos <= size) {
    std::int64_t eol = pos;
    while (eol < size && text[static_cast<std::size_t>(eol)] != '\n') ++eol;
    if (pos == size && eol == pos) break;  // no trailing data
    ++lineNo;
    lineStart = pos;
    std::string line = text.substr(static_cast<std::size_t>(pos), static_cast<std::size_t>(eol - pos));
    pos = eol + 1;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    std::istringstream in(line);
    std::string word;
    in >> word;
    auto want_int = [&](const char* what) {
      long long v = 0;
      if (!(in >> v)) fail(std::string("expected integer ") + what);
      return v;
    };
    auto want_double = [&](const char* what) {
      double v = 0;
      if (!(in >> v)) fail(std::string("expected number ") + what);
      return v;
    };
    auto want_eol = [&] {
      std::string extra;
      if (in >> extra) fail("trailing token '" + extra + "'");
    };

    if (headerStage < 6) {
      if (word != kHeader[headerStage])
        fail("expected header '" + std::string(kHeader[headerStage]) + "', got '" + word + "'");
      switch (headerStage) {
        case 0:
          if (!(in >> modeWord) || (modeWord != "complete" && modeWord != "bipartite"))
            fail("mode must be complete or bipartite");
          break;
        case 1: n = static_cast<int>(want_int("n")); break;
        case 2: k = static_cast<int>(want_int("k")); break;
        case 3: ell = static_cast<int>(want_int("ell")); break;
        case 4: cert.alpha = want_double("alpha"); break;
        case 5: {
          long long s = want_int("seed");
          cert.seed = static_cast<std::uint64_t>(s);
          try {
            cert.host = build_host(modeWord == "complete" ? Mode::complete : Mode::bipartite,
                                   n, k, ell);
          } catch (const Error& e) {
            fail(e.what());
          }
          break;
        }
      }
      want_eol();
      ++headerStage;
      continue;
    }

    if (sawVerdict) {
      if (word != "V") fail("only V lines may follow the verdict");
      std::vector<int> cyc;
      int value;
      std::size_t idx = 0;
      while (in >> value) {
        if (cert.host.mode == Mode::bipartite && idx % 2 == 1) value += cert.host.n;
        cyc.push_back(value);
        ++idx;
      }
      if (cyc.empty()) fail("empty violation cycle");
      cert.violations.push_back(std::move(cyc));
      continue;
    }

    if (word == "coverage") { cert.coverage = want_double("coverage"); want_eol(); }
    else if (word == "rounds") { cert.rounds = want_int("rounds"); want_eol(); }
    else if (word == "colours") { cert.totalColours = static_cast<int>(want_int("colours")); want_eol(); }
    else if (word == "B") {
      Block b;
      b.colour = static_cast<int>(want_int("block colour"));
      if (cert.host.mode == Mode::complete) {
        int v;
        while (in >> v) b.vertices.push_back(v);
      } else {
        std::string tag;
        if (!(in >> tag) || tag != "X") fail("bipartite block line needs an X section");
        std::string tok;
        bool inY = false;
        while (in >> tok) {
          if (tok == "Y") { if (inY) fail("duplicate Y section"); inY = true; continue; }
          int v = -1;
          try { v = std::stoi(tok); } catch (...) { fail("bad vertex '" + tok + "'"); }
          if (v < 0 || v >= cert.host.n) fail("side-local vertex id out of range");
          b.vertices.push_back(inY ? v + cert.host.n : v);
        }
        if (!inY) fail("bipartite block line needs a Y section");
      }
      std::sort(b.vertices.begin(), b.vertices.end());
      cert.blocks.push_back(std::move(b));
      blockLines.push_back(lineNo);
    } else if (word == "F") {
      int u = static_cast<int>(want_int("u"));
      int v = static_cast<int>(want_int("v"));
      int c = static_cast<int>(want_int("fresh colour"));
      want_eol();
      if (cert.host.mode == Mode::bipartite) {
        if (u < 0 || u >= cert.host.n || v < 0 || v >= cert.host.n)
          fail("side-local vertex id out of range");
        v += cert.host.n;
      }
      cert.leftover.emplace_back(u, v, c);
    } else if (word == "VERDICT") {
      std::string verdict;
      if (!(in >> verdict)) fail("missing verdict");
      if (verdict == "certified") cert.state = VerdictState::certified;
      else if (verdict == "unverified") cert.state = VerdictState::unverified;
      else if (verdict == "violations") {
        cert.state = VerdictState::violations;
        cert.violationCount = want_int("violation count");
      } else fail("unknown verdict '" + verdict + "'");
      want_eol();
      sawVerdict = true;
    } else {
      fail("unknown record '" + word + "'");
    }
  }

  if (headerStage < 6)
    throw CertError("truncated: missing '" + std::string(kHeader[headerStage]) + "' header",
                    lineNo, size);
  if (!sawVerdict) throw CertError("truncated: missing VERDICT line", lineNo, size);

  try {
    detail::validate_certificate(cert, [&](int i) {
      return "line " + std::to_string(blockLines[static_cast<std::size_t>(i)]);
    });
  } catch (const CertError&) {
    throw;
  } catch (const Error& e) {
    throw CertError(e.what());
  }
  return cert;
}

// Repaints the certificate's colouring: blocks first, then leftover edges.
inline Colouring colouring_of(const Certificate& cert) {
  Colouring c = graph_of_matching(cert.host, make_matching(cert.host, cert.blocks));
  int maxFresh = 0;
  for (const auto& [u, v, col] : cert.leftover) {
    c.set(u, v, fresh(col));
    maxFresh = std::max(maxFresh, col);
  }
  int r = cert.alpha > 0 ? fresh_palette_size(cert.host.n, cert.alpha) : maxFresh;
  c.set_fresh_params(cert.alpha, r);
  return c;
}

}  // namespace ramsey
