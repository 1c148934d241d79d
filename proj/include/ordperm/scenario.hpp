#pragma once

#include <charconv>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ordperm/witnesses.hpp"

namespace ordperm {

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"lemma31", "lemma41", "lemma42", "centralizer", "oprim", "algebra"};
  return names;
}

struct Scenario {
  TowerModel model;
  std::vector<std::string> suites;
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  std::string output = "out";

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

inline std::string scenario_str(const Scenario& s) {
  std::string out = "model=" + s.model.str() + "; suite=";
  for (std::size_t i = 0; i < s.suites.size(); ++i) out += (i ? "," : "") + s.suites[i];
  return out + "; trials=" + std::to_string(s.trials) + "; seed=" + std::to_string(s.seed) + "; output=" + s.output;
}

namespace detail {

inline std::string trim(std::string_view v) {
  std::size_t a = 0, b = v.size();
  while (a < b && std::isspace(static_cast<unsigned char>(v[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(v[b - 1]))) --b;
  return std::string(v.substr(a, b - a));
}

template <typename T>
T parse_count(std::string_view v, std::size_t line, std::size_t col, const char* what) {
  T out{};
  auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc() || end != v.data() + v.size())
    throw ParseError(line, col, std::string("expected a non-negative integer for ") + what);
  return out;
}

}  // namespace detail

/// "key=value; key=value" statements, separated by ';' or newlines. Lines
/// starting with '#' are comments.
inline Scenario parse_scenario(std::string_view text) {
  Scenario s;
  std::set<std::string> seen;
  Cursor cur(text);
  auto is_key = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
  auto blank = [](char c) { return c == ' ' || c == '\t'; };
  for (;;) {
    while (!cur.done()) {
      char c = cur.peek();
      if (std::isspace(static_cast<unsigned char>(c)) || c == ';') cur.get();
      else if (c == '#') cur.take_while([](char x) { return x != '\n'; });
      else break;
    }
    if (cur.done()) break;
    const std::size_t kl = cur.line(), kc = cur.column();
    std::string key(cur.take_while(is_key));
    if (key.empty()) cur.error("expected a key");
    cur.take_while(blank);
    cur.expect("=");
    cur.take_while(blank);
    const std::size_t vl = cur.line(), vc = cur.column();
    std::string value = detail::trim(cur.take_while([](char c) { return c != ';' && c != '\n'; }));
    if (!seen.insert(key).second) throw ParseError(kl, kc, "duplicate key '" + key + "'");

    if (key == "model") {
      try {
        s.model = parse_model(value);
      } catch (const ParseError& e) {
        throw ParseError(vl, vc + e.column() - 1, "bad model '" + value + "'");
      }
    } else if (key == "suite") {
      std::stringstream ss(value);
      std::string name;
      while (std::getline(ss, name, ',')) {
        name = detail::trim(name);
        const auto& known = suite_names();
        if (std::find(known.begin(), known.end(), name) == known.end())
          fail(ErrorCode::UnknownSuite,
               "'" + name + "' at line " + std::to_string(vl) + ", column " + std::to_string(vc));
        s.suites.push_back(name);
      }
      if (s.suites.empty()) throw ParseError(vl, vc, "empty suite list");
    } else if (key == "trials") {
      s.trials = detail::parse_count<std::size_t>(value, vl, vc, "trials");
      if (s.trials < 1) throw ParseError(vl, vc, "trials must be at least 1");
    } else if (key == "seed") {
      s.seed = detail::parse_count<std::uint64_t>(value, vl, vc, "seed");
    } else if (key == "output") {
      if (value.empty()) throw ParseError(vl, vc, "empty output path");
      s.output = value;
    } else {
      throw ParseError(kl, kc, "unknown key '" + key + "'");
    }
  }
  if (!seen.count("model")) cur.error("missing key 'model'");
  if (!seen.count("suite")) cur.error("missing key 'suite'");
  return s;
}

// ---------------------------------------------------------------------------
// Reports

enum class TrialStatus { Pass, Fail, Skip };

inline std::string_view status_name(TrialStatus s) {
  return s == TrialStatus::Pass ? "pass" : s == TrialStatus::Fail ? "fail" : "skip";
}

struct TrialLine {
  std::size_t n = 0;
  TrialStatus status = TrialStatus::Pass;
  std::string cert_file;  // "-" when the trial emits no certificate
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<TrialLine> trials;
  std::vector<std::string> notes;
  std::map<std::string, std::size_t> counts;  // case, route or branch tallies
  double seconds = 0;

  std::size_t count(TrialStatus s) const {
    return static_cast<std::size_t>(
        std::count_if(trials.begin(), trials.end(), [&](const TrialLine& t) { return t.status == s; }));
  }
  /// No failed trial. Skipped trials are reported but do not fail a suite.
  bool pass() const { return count(TrialStatus::Fail) == 0; }
};

struct OutputFile {
  std::string path;  // relative to the scenario output directory
  std::string content;
};

struct Report {
  Scenario scenario;
  std::vector<SuiteReport> suites;
  std::vector<OutputFile> files;

  bool pass() const {
    return !suites.empty() && std::all_of(suites.begin(), suites.end(), [](const SuiteReport& s) { return s.pass(); });
  }

  const SuiteReport* suite(std::string_view name) const {
    for (const auto& s : suites)
      if (s.suite == name) return &s;
    return nullptr;
  }

  /// Everything except timing; identical across replays of one scenario.
  std::string body() const {
    std::ostringstream os;
    os << "SCENARIO " << scenario_str(scenario) << "\n";
    for (const auto& s : suites) {
      os << "SUITE " << s.suite << "\n";
      for (const auto& t : s.trials)
        os << "TRIAL " << t.n << " " << s.suite << " " << status_name(t.status) << " " << t.cert_file << "\n";
      for (const auto& t : s.trials)
        if (t.status != TrialStatus::Pass) os << "NOTE trial " << t.n << ": " << t.detail << "\n";
      for (const auto& n : s.notes) os << "NOTE " << n << "\n";
      os << "RESULT " << s.suite << " " << (s.pass() ? "pass" : "fail") << " passed=" << s.count(TrialStatus::Pass)
         << " failed=" << s.count(TrialStatus::Fail) << " skipped=" << s.count(TrialStatus::Skip) << "\n";
    }
    os << "VERDICT " << (pass() ? "pass" : "fail") << "\n";
    return os.str();
  }

  std::string timing() const {
    std::ostringstream os;
    for (const auto& s : suites) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.3f", s.seconds);
      os << "TIMING " << s.suite << " " << buf << "s\n";
    }
    return os.str();
  }

  std::string text() const { return body() + "# timing, not part of replay comparison\n" + timing(); }
};

// ---------------------------------------------------------------------------
// Suites

namespace detail {

inline std::uint64_t name_hash(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string trial_file(const std::string& suite, std::size_t n) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "trial-%04zu.cert", n);
  return suite + "/" + buf;
}

inline std::string certs_text(const std::vector<WitnessCert>& certs) {
  std::string out;
  for (std::size_t i = 0; i < certs.size(); ++i) out += (i ? "\n" : "") + cert_str(certs[i]);
  return out;
}

/// Collects trial outcomes for one suite. Every certificate is re-checked
/// through check_cert before a trial counts as passing.
class SuiteRecorder {
 public:
  SuiteRecorder(SuiteReport& rep, std::vector<OutputFile>& files) : rep_(rep), files_(files) {}

  void record(bool ok, const std::vector<WitnessCert>& certs, std::string detail = {}) {
    std::size_t n = rep_.trials.size() + 1;
    for (const auto& c : certs) {
      if (!check_cert(c)) {
        ok = false;
        detail += " certificate " + c.kind + " failed the checker";
      }
    }
    std::string file = "-";
    if (!certs.empty()) {
      file = trial_file(rep_.suite, n);
      files_.push_back({file, certs_text(certs)});
    }
    rep_.trials.push_back({n, ok ? TrialStatus::Pass : TrialStatus::Fail, file, std::move(detail)});
  }

  void skip(std::string detail) {
    rep_.trials.push_back({rep_.trials.size() + 1, TrialStatus::Skip, "-", std::move(detail)});
  }

  /// Runs one trial, turning module errors into a failed (or, for
  /// constructions the model cannot host, skipped) trial.
  void guarded(const std::function<void()>& body) {
    try {
      body();
    } catch (const Error& e) {
      if (e.code() == ErrorCode::AbelianComponent) skip(e.what());
      else record(false, {}, e.what());
    }
  }

 private:
  SuiteReport& rep_;
  std::vector<OutputFile>& files_;
};

template <typename K>
void tally(SuiteReport& rep, const std::string& label, const std::map<K, std::size_t>& counts,
           const std::function<std::string(const K&)>& name) {
  std::string out = label;
  for (const auto& [k, v] : counts) {
    out += " " + name(k) + "=" + std::to_string(v);
    rep.counts[name(k)] = v;
  }
  rep.notes.push_back(out);
}

inline void suite_algebra(const Scenario& s, Rng& master, SuiteRecorder& rec, SuiteReport& rep) {
  std::size_t triples = 0, pairs = 0;
  for (std::size_t t = 0; t < s.trials; ++t) {
    Rng rng(master.fork());
    rec.guarded([&] {
      PLMap f = gen_plmap(rng), g = gen_plmap(rng), h = gen_plmap(rng);
      bool ok = (f * g) * h == f * (g * h) && f * pl_inverse(f) == PLMap::identity() &&
                pl_inverse(f) * f == PLMap::identity() && pl_vee(f, pl_wedge(f, g)) == f &&
                pl_wedge(f, pl_vee(f, g)) == f;
      ++triples;
      ok = ok && pl_support(pl_conj(g, f)) == pl_image(pl_support(g), f);
      ++pairs;
      std::string detail = ok ? "" : "law violated for " + f.str() + " " + g.str() + " " + h.str();
      if (s.model.depth() > 1) {
        LexAut a = gen_lexaut(rng, s.model), b = gen_lexaut(rng, s.model), c = gen_lexaut(rng, s.model);
        bool lex_ok = (a * b) * c == a * (b * c) && (a * lex_inverse(a)).is_identity() &&
                      lex_vee(a, lex_wedge(a, b)) == a && lex_wedge(a, lex_vee(a, b)) == a;
        if (!lex_ok) detail += " tower law violated for " + a.str();
        ok = ok && lex_ok;
      }
      rec.record(ok, {}, detail);
    });
  }
  rep.notes.push_back("triples=" + std::to_string(triples) + " support-pairs=" + std::to_string(pairs));
}

inline void suite_lemma31(const Scenario& s, Rng& master, SuiteRecorder& rec, SuiteReport& rep) {
  std::map<std::string, std::size_t> frames;
  for (std::size_t t = 0; t < s.trials; ++t) {
    Rng rng(master.fork());
    rec.guarded([&] {
      PLMap h = gen_bump(rng);
      if (rng.coin()) h = h * gen_bump(rng);
      if (h.is_identity()) h = pl_bump(Rat(0), Rat(1), Rat(2), Rat(3));
      Rat shift = Rat(20) + rng.rational(0, 4);
      PLMap g = PLMap::translation(rng.coin() ? shift : -shift);
      Lemma31Result r = lemma31(h, g);
      const Lemma31Data& n = r.normalized;
      PLMap H = pl_conj(n.h, n.g);
      PLMap w1 = pl_comm(pl_inverse(n.h), pl_conj(n.h, n.f));
      PLMap w2 = pl_comm(pl_inverse(H), pl_conj(H, n.k));
      bool ok = w1(n.lambda) == n.gamma && w2(n.lambda) == n.delta && w2(n.gamma) == n.gamma;
      ++frames[std::string(n.reflected ? "reflected" : "direct") + (n.swapped ? "+swapped" : "")];
      rec.record(ok, {r.cert}, ok ? "" : "intermediate identities failed");
    });
  }
  rep.notes.push_back("runs on the rational line (PL2T) regardless of the scenario model");
  tally<std::string>(rep, "frames", frames, [](const std::string& k) { return k; });
}

inline void suite_lemma41(const Scenario& s, Rng& master, SuiteRecorder& rec, SuiteReport& rep) {
  const TowerModel& m = s.model;
  const int d = m.depth();
  std::map<RefuteRoute, std::size_t> routes;
  for (std::size_t t = 0; t < s.trials; ++t) {
    Rng rng(master.fork());
    rec.guarded([&] {
      OBlock delta = random_block(rng, static_cast<int>(rng.range(1, std::max(1, d - 1))));
      LexAut h = gen_q_element(rng, m, delta);
      LexAut f;
      switch (t % 3) {
        case 0: f = gen_lexaut(rng, m); break;
        case 1: f = delta.prefix.empty() ? LexAut::identity(d) : gen_outside(rng, m, delta.prefix); break;
        default: f = nest(delta.prefix, moving_element(rng, m.tail(static_cast<int>(delta.prefix.size()))));
      }
      RefuteOptions opt;
      opt.seed = rng.fork();
      RefuteResult r = refute_commuting(m, h, f, delta, opt);
      ++routes[r.route];
      bool ok;
      if (r.route == RefuteRoute::FixesSupport) {
        LexSupport sh = lex_support(h);
        ok = r.certs.size() == opt.samples &&
             std::all_of(r.certs.begin(), r.certs.end(), [&](const WitnessCert& c) {
               return ls_contains(sh, c.point) && lex_apply(f, c.point) == c.point;
             });
      } else {
        ok = !lex_comm(r.c, f).is_identity() && r.certs.size() == 1;
      }
      rec.record(ok, r.certs, "route " + std::string(route_name(r.route)));
    });
  }
  tally<RefuteRoute>(rep, "routes", routes, [](const RefuteRoute& r) { return std::string(route_name(r)); });
}

inline void suite_lemma42(const Scenario& s, Rng& master, SuiteRecorder& rec, SuiteReport& rep) {
  const TowerModel& m = s.model;
  const int d = m.depth();
  std::map<PairCase, std::size_t> cases;
  for (std::size_t t = 0; t < s.trials; ++t) {
    Rng rng(master.fork());
    rec.guarded([&] {
      const int target = static_cast<int>(t % 3);
      int level = target == 2 ? d : static_cast<int>(rng.range(1, target == 1 && d >= 3 ? d - 2 : d));
      OBlock delta = random_block(rng, level);
      const auto& p = delta.prefix;
      TowerModel rest = m.tail(static_cast<int>(p.size()));
      LexAut h = gen_q_element(rng, m, delta);
      LexAut inside = gen_lexaut(rng, rest);
      if (target == 0 && rest.kinds[0] == ComponentKind::PL2T) {
        // Bounded movement of the children, carried far away by g.
        h = nest(p, LexAut::make(rest.depth(), gen_bump(rng), gen_lexaut(rng, rest).overrides()));
        Rat shift = Rat(20) + rng.rational(0, 4);
        inside = LexAut::make(rest.depth(), PLMap::translation(rng.coin() ? shift : -shift), inside.overrides());
      } else {
        // g fixes the children of the block, so h^g moves the same ones as h.
        inside = LexAut::make(rest.depth(), PLMap::identity(), inside.overrides());
      }
      LexAut g = nest(p, inside);
      if (!p.empty() && rng.coin()) g = gen_outside(rng, m, p) * g;
      Lemma42Result r = lemma42b(m, h, g, delta);
      ++cases[r.which];
      LexAut k = lex_conj(h, g);
      bool ok = r.b == x_value(h, r.y) && r.a == x_value(k, r.x) && !lex_comm(r.a, r.b).is_identity();
      rec.record(ok, {r.cert}, "case " + std::string(case_name(r.which)));
    });
  }
  tally<PairCase>(rep, "cases", cases, [](const PairCase& c) { return std::string(case_name(c)); });
}

inline void suite_centralizer(const Scenario& s, Rng& master, SuiteRecorder& rec, SuiteReport& rep) {
  const TowerModel& m = s.model;
  const int d = m.depth();
  std::map<CentralizerBranch, std::size_t> hits;
  // Moves every proper block off itself.
  const LexAut shift = LexAut::make(d, PLMap::translation(Rat(1)));
  for (std::size_t t = 0; t < s.trials; ++t) {
    for (CentralizerBranch want :
         {CentralizerBranch::FixesBlock, CentralizerBranch::MovesBlockPoint, CentralizerBranch::StabilizesBlock}) {
      Rng rng(master.fork());
      if (d == 1 && want == CentralizerBranch::StabilizesBlock) {
        rec.skip("the line has no proper block to stabilize");
        continue;
      }
      rec.guarded([&] {
        OBlock delta = d == 1 ? OBlock::whole() : random_block(rng, static_cast<int>(rng.range(2, d)));
        const auto& p = delta.prefix;
        TowerModel rest = m.tail(static_cast<int>(p.size()));
        LexAut h = gen_q_element(rng, m, delta);
        LexAut f = LexAut::identity(d);
        if (want == CentralizerBranch::FixesBlock) {
          if (!p.empty() && rng.coin()) f = gen_outside(rng, m, p);
        } else if (want == CentralizerBranch::MovesBlockPoint) {
          f = nest(p, moving_element(rng, rest));
          if (!p.empty() && rng.coin()) f = shift * f;
        } else {
          f = gen_outside(rng, m, p) * nest(p, moving_element(rng, rest));
        }
        CentralizerResult r = centralizer_refute(m, h, f, delta, rng.fork());
        ++hits[r.branch];
        bool ok = r.branch == want && (want == CentralizerBranch::FixesBlock ? r.consistent : !r.certs.empty());
        rec.record(ok, r.certs,
                   "branch " + std::string(branch_name(r.branch)) + " wanted " + std::string(branch_name(want)));
      });
    }
  }
  tally<CentralizerBranch>(rep, "branches", hits, [](const CentralizerBranch& b) {
    return std::string(branch_name(b));
  });
}

inline void suite_oprim(const Scenario& s, Rng& master, SuiteRecorder& rec, SuiteReport& rep) {
  OprimReport o = oprim_report(s.model, s.trials, master.fork());
  std::size_t from = 0;
  for (std::size_t t = 0; t < o.trial_pass.size(); ++t) {
    std::vector<WitnessCert> certs(o.certs.begin() + static_cast<std::ptrdiff_t>(from),
                                   o.certs.begin() + static_cast<std::ptrdiff_t>(o.trial_end[t]));
    from = o.trial_end[t];
    rec.record(o.trial_pass[t], certs, "verdict branch " + o.branch + " not confirmed");
  }
  rep.notes.push_back("verdict " + o.model.str() + " " + o.verdict + " branch=" + o.branch +
                      " nontrivial-x=" + std::to_string(o.nontrivial_x) + " trivial-x=" + std::to_string(o.trivial_x) +
                      " empty-w=" + std::to_string(o.empty_w) + " refutations=" + std::to_string(o.refutations) +
                      " commutator-checks=" + std::to_string(o.commutator_checks) +
                      " non-abelian-pairs=" + std::to_string(o.nonabelian_pairs));
  if (!o.pass) rep.notes.push_back("verdict conditions not met");
}

}  // namespace detail

/// Runs every suite of the scenario in order. Trials run sequentially, so
/// the report is a pure function of the scenario.
inline Report run(const Scenario& s) {
  Report rep;
  rep.scenario = s;
  using Runner = void (*)(const Scenario&, Rng&, detail::SuiteRecorder&, SuiteReport&);
  static const std::map<std::string, Runner> runners{
      {"algebra", detail::suite_algebra},         {"lemma31", detail::suite_lemma31},
      {"lemma41", detail::suite_lemma41},         {"lemma42", detail::suite_lemma42},
      {"centralizer", detail::suite_centralizer}, {"oprim", detail::suite_oprim},
  };
  for (const auto& name : s.suites) {
    auto it = runners.find(name);
    if (it == runners.end()) fail(ErrorCode::UnknownSuite, name);
    SuiteReport sr;
    sr.suite = name;
    Rng master(s.seed ^ detail::name_hash(name));
    detail::SuiteRecorder rec(sr, rep.files);
    auto t0 = std::chrono::steady_clock::now();
    it->second(s, master, rec, sr);
    sr.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rep.suites.push_back(std::move(sr));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Round trip of serialized objects

struct RoundtripResult {
  std::size_t objects = 0;
  std::vector<std::string> mismatches;  // "line N: ..." for objects that did not survive
  bool ok() const { return mismatches.empty(); }
};

/// Reads a file of certificates and one-per-line objects: "PL[...]" maps,
/// "Lex{...}" tower elements (after a "MODEL <kinds>" line), "SET <set>"
/// interval sets and "POINT <point>" points. '#' starts a comment line.
inline RoundtripResult roundtrip_text(std::string_view text) {
  RoundtripResult res;
  Cursor cur(text);
  std::optional<TowerModel> model;
  auto end_of_line = [&] {
    cur.take_while([](char c) { return c == ' ' || c == '\t' || c == '\r'; });
    if (!cur.done() && !cur.accept("\n")) cur.error("unexpected text after object");
  };
  auto check = [&](std::size_t line, bool same, const std::string& what) {
    ++res.objects;
    if (!same) res.mismatches.push_back("line " + std::to_string(line) + ": " + what);
  };
  for (;;) {
    cur.skip_ws();
    if (cur.done()) break;
    const std::size_t line = cur.line();
    if (cur.starts_with("#")) {
      cur.take_while([](char c) { return c != '\n'; });
    } else if (cur.accept("MODEL ")) {
      const std::size_t col = cur.column();
      std::string m(cur.take_while([](char c) { return c != '\n'; }));
      try {
        model = parse_model(detail::trim(m));
      } catch (const ParseError& e) {
        throw ParseError(line, col + e.column() - 1, "bad model");
      }
    } else if (cur.starts_with("CERT ")) {
      WitnessCert c = parse_cert(cur);
      check(line, parse_cert(cert_str(c)) == c, "certificate " + c.kind);
    } else if (cur.starts_with("PL[")) {
      PLMap f = parse_plmap(cur);
      end_of_line();
      check(line, parse_plmap(f.str()) == f, f.str());
    } else if (cur.starts_with("Lex{")) {
      if (!model) cur.error("tower element before any MODEL line");
      LexAut g = parse_lexaut(cur, model->depth());
      end_of_line();
      check(line, parse_lexaut(g.str(), model->depth()) == g && conforms(*model, g), g.str());
    } else if (cur.accept("SET ")) {
      IntervalSet s = parse_interval_set(cur);
      end_of_line();
      check(line, parse_interval_set(s.str()) == s, s.str());
    } else if (cur.accept("POINT ")) {
      Point p = parse_point(cur);
      end_of_line();
      check(line, parse_point(p.str()) == p, p.str());
    } else {
      cur.error("unrecognized object");
    }
  }
  return res;
}

}  // namespace ordperm
