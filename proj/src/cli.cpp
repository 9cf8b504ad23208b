#include "ztop/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <ctime>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>

#include "ztop/config.hpp"
#include "ztop/serialize.hpp"

namespace ztop::cli {

namespace {

struct Outcome {
  Json inputs = Json::object();
  Json result = Json::object();
  std::string evidence;
  int exit_code = kIn;
  std::optional<std::string> csv;
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

int exit_for(Kind k) {
  switch (k) {
    case Kind::In: return kIn;
    case Kind::Out: return kOut;
    case Kind::Unknown: break;
  }
  return kUnknown;
}

std::string evidence_for(Kind k) { return k == Kind::Unknown ? "unknown" : "exact"; }

Outcome verdict_outcome(Json inputs, Json result, Kind kind) {
  return Outcome{std::move(inputs), std::move(result), evidence_for(kind), exit_for(kind), std::nullopt};
}

std::vector<Integer> parse_integer_list(const std::string& text) {
  std::vector<Integer> out;
  std::size_t start = 0;
  for (;;) {
    auto comma = text.find(',', start);
    out.push_back(parse_integer(std::string_view(text).substr(start, comma == std::string::npos ? comma : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::size_t parse_count(const std::string& text, const char* what) {
  Integer n = parse_integer(text);
  if (n < 1 || !n.fits_ulong_p()) throw UsageError(std::string(what) + " must be a positive integer, got '" + text + "'");
  return n.get_ui();
}

std::string timestamp() {
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

// Option storage shared by the subcommands; each handler reads what it registered.
struct Options {
  std::string seq, list, m, n, k, g, level, cap, depth, horizon, x;
  std::string chars, delta, chi, u, v;
  std::string s, prefix, grids;
  std::string mins, rule, index_cap, slot_cap, node_budget;
  std::string window;
  std::vector<std::string> specs, t1, t2;
  bool oracle = false;
  bool no_replay = false;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"ztop: group topologies on the integers"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  std::string config_path, out_path, precision_ceiling;
  bool no_meta = false, csv = false;
  app.add_option("--config", config_path, "key=value file with caps and precision defaults");
  app.add_option("--out", out_path, "Write the output to this file instead of stdout");
  app.add_flag("--no-meta", no_meta, "Omit the timestamp block");
  app.add_flag("--csv", csv, "Emit CSV for table-valued results");
  app.add_option("--precision-ceiling", precision_ceiling, "Largest MPFR precision in bits");

  Options o;
  Config config;
  std::function<Outcome()> handler;
  std::string command;

  auto bind = [&](CLI::App* sub, std::string name, std::function<Outcome()> fn) {
    sub->callback([&, name, fn] {
      command = name;
      handler = fn;
    });
  };

  auto seq = [&] { return DSequence::parse(o.seq); };
  auto caps = [&] {
    SearchCaps c = config.caps;
    if (!o.index_cap.empty()) c.index_cap = parse_count(o.index_cap, "--index-cap");
    if (!o.slot_cap.empty()) c.slot_cap = parse_count(o.slot_cap, "--slot-cap");
    if (!o.node_budget.empty()) c.node_budget = parse_count(o.node_budget, "--node-budget");
    return c;
  };
  auto window = [&] { return o.window.empty() ? config.window : Window::parse(o.window); };

  // dseq -------------------------------------------------------------------------
  CLI::App* dseq = app.add_subcommand("dseq", "D-sequences and b-adic topologies");
  dseq->require_subcommand(1);
  {
    auto* c = dseq->add_subcommand("validate", "Check a finite candidate prefix");
    c->add_option("--list", o.list, "Comma-separated terms, e.g. 1,2,6,24")->required();
    bind(c, "dseq validate", [&] {
      std::vector<Integer> terms = parse_integer_list(o.list);
      Json inputs{{"list", o.list}};
      try {
        DSequence b = DSequence::validate(terms);
        Json ratios = Json::array();
        for (std::size_t i = 2; i <= terms.size(); ++i) ratios.push_back(b.ratio(i).get_str());
        return verdict_outcome(inputs, Json{{"valid", true}, {"ratios", ratios}}, Kind::In);
      } catch (const DSequenceError& e) {
        Json result{{"valid", false}, {"error", to_string(e.code())}, {"reason", e.what()}};
        if (e.index()) result["index"] = e.index();
        return verdict_outcome(inputs, result, Kind::Out);
      }
    });
  }
  {
    auto* c = dseq->add_subcommand("digits", "Mixed-radix digits of m");
    c->add_option("--seq", o.seq)->required();
    c->add_option("--m", o.m)->required();
    bind(c, "dseq digits", [&] {
      DSequence b = seq();
      Integer m = parse_integer(o.m);
      DigitVector d = digits(m, b);
      Json result = to_json(d);
      result["reconstructs"] = d.reconstruct(b) == m;
      return verdict_outcome(Json{{"seq", b.name()}, {"m", m.get_str()}}, result, Kind::In);
    });
  }
  {
    auto* c = dseq->add_subcommand("level", "Largest n <= cap with b_n | m");
    c->add_option("--seq", o.seq)->required();
    c->add_option("--m", o.m)->required();
    c->add_option("--cap", o.cap);
    bind(c, "dseq level", [&] {
      DSequence b = seq();
      Integer m = parse_integer(o.m);
      std::size_t cap = o.cap.empty() ? 64 : parse_count(o.cap, "--cap");
      Json inputs{{"seq", b.name()}, {"m", m.get_str()}, {"cap", cap}};
      if (m == 0) {
        return verdict_outcome(inputs, Json{{"level", nullptr}, {"reason", "0 lies in every b_n Z"}}, Kind::In);
      }
      LevelResult r = badic_level(m, b, cap);
      return verdict_outcome(inputs, Json{{"level", r.level}, {"at_cap", r.at_cap}}, Kind::In);
    });
  }
  {
    auto* c = dseq->add_subcommand("member", "m in b_n Z");
    c->add_option("--seq", o.seq)->required();
    c->add_option("--m", o.m)->required();
    c->add_option("--level", o.level)->required();
    bind(c, "dseq member", [&] {
      DSequence b = seq();
      Integer m = parse_integer(o.m);
      std::size_t level = parse_count(o.level, "--level");
      Verdict v = badic_member(m, b, level);
      return verdict_outcome(Json{{"seq", b.name()}, {"m", m.get_str()}, {"level", level}}, to_json(v), v.kind);
    });
  }
  {
    auto* c = dseq->add_subcommand("converge", "Finite convergence certificate for x_k -> 0");
    c->add_option("--seq", o.seq)->required();
    c->add_option("--x", o.x, "self, kself, const:c or dseq:<literal>")->default_str("self");
    c->add_option("--depth", o.depth)->required();
    c->add_option("--horizon", o.horizon)->required();
    bind(c, "dseq converge", [&] {
      DSequence b = seq();
      IntegerSequence x = IntegerSequence::parse(o.x.empty() ? "self" : o.x, b);
      std::size_t depth = parse_count(o.depth, "--depth");
      std::size_t horizon = parse_count(o.horizon, "--horizon");
      ConvergenceCertificate cert = convergence_certificate(x, b, depth, horizon);
      Outcome r{Json{{"seq", b.name()}, {"x", x.name}, {"depth", depth}, {"horizon", horizon}}, to_json(cert),
                "window-evidence", cert.all_converged() ? kIn : kOut, csv_convergence(cert)};
      return r;
    });
  }

  // weak -------------------------------------------------------------------------
  CLI::App* weak = app.add_subcommand("weak", "Weak topologies from torus characters");
  weak->require_subcommand(1);
  {
    auto* c = weak->add_subcommand("member", "k in U_{F,delta}");
    c->add_option("--chars", o.chars)->required();
    c->add_option("--delta", o.delta)->required();
    c->add_option("--k", o.k)->required();
    bind(c, "weak member", [&] {
      CharacterSet chars = CharacterSet::parse(o.chars);
      Rational delta = parse_rational(o.delta);
      Integer k = parse_integer(o.k);
      Verdict v = weak_member(k, chars, delta, config.precision);
      return verdict_outcome(Json{{"chars", chars.literal()}, {"delta", to_string(delta)}, {"k", k.get_str()}},
                             to_json(v), v.kind);
    });
  }
  {
    auto* c = weak->add_subcommand("separate", "Find a character in H with ||m chi|| > 0");
    c->add_option("--chars", o.chars)->required();
    c->add_option("--m", o.m)->required();
    c->add_option("--cap", o.cap);
    bind(c, "weak separate", [&] {
      CharacterSet chars = CharacterSet::parse(o.chars);
      Integer m = parse_integer(o.m);
      std::size_t cap = o.cap.empty() ? config.separation_cap : parse_count(o.cap, "--cap");
      SeparationResult r = separation_witness(m, chars, cap, config.precision);
      return verdict_outcome(Json{{"chars", chars.literal()}, {"m", m.get_str()}, {"cap", cap}}, to_json(r),
                             r.verdict.kind);
    });
  }
  {
    auto* c = weak->add_subcommand("cont", "Continuity of a character against the b-adic topology");
    c->add_option("--chi", o.chi)->required();
    c->add_option("--seq", o.seq)->required();
    c->add_option("--cap", o.cap);
    bind(c, "weak cont", [&] {
      TorusPoint chi = TorusPoint::parse(o.chi);
      DSequence b = seq();
      std::size_t cap = o.cap.empty() ? config.continuity_cap : parse_count(o.cap, "--cap");
      ContinuityResult r = character_continuity(chi, b, cap);
      return verdict_outcome(Json{{"chi", chi.literal()}, {"seq", b.name()}, {"cap", cap}}, to_json(r),
                             r.verdict.kind);
    });
  }
  {
    auto* c = weak->add_subcommand("prufer-add", "Sum in the Prufer group");
    c->add_option("--u", o.u)->required();
    c->add_option("--v", o.v)->required();
    bind(c, "weak prufer-add", [&] {
      PruferElement u = PruferElement::parse(o.u), v = PruferElement::parse(o.v);
      PruferElement sum = prufer_add(u, v);
      return verdict_outcome(Json{{"u", u.literal()}, {"v", v.literal()}}, to_json(sum), Kind::In);
    });
  }

  // unif -------------------------------------------------------------------------
  CLI::App* unif = app.add_subcommand("unif", "Uniform-convergence pseudometric topologies");
  unif->require_subcommand(1);
  {
    auto* c = unif->add_subcommand("d", "The pseudometric d_S(m, n)");
    c->add_option("--S", o.s, "set:..., grid:N or inv:<seq>")->required();
    c->add_option("--m", o.m)->required();
    c->add_option("--n", o.n)->required();
    bind(c, "unif d", [&] {
      SSpec s = SSpec::parse(o.s);
      Integer m = parse_integer(o.m), n = parse_integer(o.n);
      DistanceValue d = pseudometric(m, n, s, config.precision.start_bits);
      return Outcome{Json{{"S", s.literal()}, {"m", m.get_str()}, {"n", n.get_str()}}, to_json(d),
                     d.exact() ? "exact" : "enclosure", kIn, csv_distance(m, n, d)};
    });
  }
  {
    auto* c = unif->add_subcommand("member", "k in V_{S,n}");
    c->add_option("--S", o.s)->required();
    c->add_option("--k", o.k)->required();
    c->add_option("--level", o.level)->required();
    c->add_option("--prefix", o.prefix, "InvSeq only: check exactly this many leading terms");
    bind(c, "unif member", [&] {
      SSpec s = SSpec::parse(o.s);
      Integer k = parse_integer(o.k);
      std::size_t level = parse_count(o.level, "--level");
      std::optional<std::size_t> prefix;
      if (!o.prefix.empty()) prefix = parse_count(o.prefix, "--prefix");
      Verdict v = uniform_member(k, s, level, config.precision, prefix);
      Json inputs{{"S", s.literal()}, {"k", k.get_str()}, {"level", level}};
      if (prefix) inputs["prefix"] = *prefix;
      return verdict_outcome(inputs, to_json(v), v.kind);
    });
  }
  {
    auto* c = unif->add_subcommand("scan", "d(m, n) over grids of growing size");
    c->add_option("--m", o.m)->required();
    c->add_option("--n", o.n)->required();
    c->add_option("--grids", o.grids, "Comma-separated grid sizes")->required();
    bind(c, "unif scan", [&] {
      Integer m = parse_integer(o.m), n = parse_integer(o.n);
      std::vector<Integer> sizes = parse_integer_list(o.grids);
      std::vector<ScanRow> rows = dense_limit_scan(m, n, sizes, config.precision.ceiling_bits);
      Json list = Json::array();
      bool ok = true;
      for (const ScanRow& r : rows) {
        list.push_back(to_json(r));
        if (r.floor_applies && !r.meets_floor) ok = false;
      }
      Json sizes_json = Json::array();
      for (const Integer& z : sizes) sizes_json.push_back(z.get_str());
      return Outcome{Json{{"m", m.get_str()}, {"n", n.get_str()}, {"grids", sizes_json}}, Json{{"rows", list}},
                     "enclosure", ok ? kIn : kOut, csv_scan(rows)};
    });
  }
  {
    auto* c = unif->add_subcommand("shift", "Compare d(m, n) with d(m + k, n + k)");
    c->add_option("--S", o.s)->required();
    c->add_option("--m", o.m)->required();
    c->add_option("--n", o.n)->required();
    c->add_option("--k", o.k)->required();
    bind(c, "unif shift", [&] {
      SSpec s = SSpec::parse(o.s);
      Integer m = parse_integer(o.m), n = parse_integer(o.n), k = parse_integer(o.k);
      TranslationReport t = translation_invariance_check(m, n, k, s, config.precision.start_bits);
      return Outcome{Json{{"S", s.literal()}, {"m", m.get_str()}, {"n", n.get_str()}, {"k", k.get_str()}},
                     to_json(t), t.exact ? "exact" : "enclosure", t.equal ? kIn : kOut, std::nullopt};
    });
  }
  {
    auto* c = unif->add_subcommand("triangle", "Check d(m, k) <= d(m, n) + d(n, k)");
    c->add_option("--S", o.s)->required();
    c->add_option("--m", o.m)->required();
    c->add_option("--n", o.n)->required();
    c->add_option("--k", o.k)->required();
    bind(c, "unif triangle", [&] {
      SSpec s = SSpec::parse(o.s);
      Integer m = parse_integer(o.m), n = parse_integer(o.n), k = parse_integer(o.k);
      Verdict v = triangle_inequality(m, n, k, s, config.precision);
      return verdict_outcome(Json{{"S", s.literal()}, {"m", m.get_str()}, {"n", n.get_str()}, {"k", k.get_str()}},
                             to_json(v), v.kind);
    });
  }

  // zel --------------------------------------------------------------------------
  CLI::App* zel = app.add_subcommand("zel", "Finest group topologies of T-sequences");
  zel->require_subcommand(1);
  auto add_caps = [&](CLI::App* c) {
    c->add_option("--index-cap", o.index_cap);
    c->add_option("--slot-cap", o.slot_cap);
    c->add_option("--node-budget", o.node_budget);
  };
  {
    auto* c = zel->add_subcommand("member", "g in [n_1, ..., n_k]");
    c->add_option("--seq", o.seq)->required();
    c->add_option("--mins", o.mins)->required();
    c->add_option("--g", o.g)->required();
    c->add_flag("--oracle", o.oracle, "Answer by plain enumeration up to --index-cap");
    add_caps(c);
    bind(c, "zel member", [&] {
      DSequence a = seq();
      std::vector<std::size_t> mins = parse_mins(o.mins);
      Integer g = parse_integer(o.g);
      SearchCaps cp = caps();
      BracketResult r = o.oracle ? brute_force_oracle(g, a, mins, cp.index_cap) : bracket_member(g, a, mins, cp);
      Json result = to_json(r);
      result["caps"] = to_json(cp);
      if (o.oracle) result["oracle"] = true;
      Json inputs{{"seq", a.name()}, {"mins", ZelenyukSpec{a, mins, cp}.mins_literal()}, {"g", g.get_str()}};
      Outcome outcome = verdict_outcome(inputs, result, r.verdict.kind);
      if (o.oracle && r.verdict.is_out()) outcome.evidence = "window-evidence";
      return outcome;
    });
  }
  {
    auto* c = zel->add_subcommand("oracle", "Brute-force enumeration up to --index-cap");
    c->add_option("--seq", o.seq)->required();
    c->add_option("--mins", o.mins)->required();
    c->add_option("--g", o.g)->required();
    add_caps(c);
    bind(c, "zel oracle", [&] {
      DSequence a = seq();
      std::vector<std::size_t> mins = parse_mins(o.mins);
      Integer g = parse_integer(o.g);
      SearchCaps cp = caps();
      BracketResult r = brute_force_oracle(g, a, mins, cp.index_cap);
      Json result = to_json(r);
      result["index_cap"] = cp.index_cap;
      Outcome outcome = verdict_outcome(
          Json{{"seq", a.name()}, {"mins", ZelenyukSpec{a, mins, cp}.mins_literal()}, {"g", g.get_str()}}, result,
          r.verdict.kind);
      if (r.verdict.is_out()) outcome.evidence = "window-evidence";
      return outcome;
    });
  }
  {
    auto* c = zel->add_subcommand("vn", "g in V_{(n_i)} for a rule i -> n_i");
    c->add_option("--seq", o.seq)->required();
    c->add_option("--rule", o.rule, "id, shift:s, const:m or linear:a,b")->required();
    c->add_option("--g", o.g)->required();
    add_caps(c);
    bind(c, "zel vn", [&] {
      DSequence a = seq();
      MinsRule rule = MinsRule::parse(o.rule);
      Integer g = parse_integer(o.g);
      SearchCaps cp = caps();
      BracketResult r = vn_member(g, a, rule, cp);
      Json result = to_json(r);
      result["caps"] = to_json(cp);
      return verdict_outcome(Json{{"seq", a.name()}, {"rule", rule.literal()}, {"g", g.get_str()}}, result,
                             r.verdict.kind);
    });
  }
  {
    auto* c = zel->add_subcommand("tails", "Least J with a_j in V_{(n_i)} for J <= j <= horizon");
    c->add_option("--seq", o.seq)->required();
    c->add_option("--rule", o.rule)->required();
    c->add_option("--horizon", o.horizon)->required();
    add_caps(c);
    bind(c, "zel tails", [&] {
      DSequence a = seq();
      MinsRule rule = MinsRule::parse(o.rule);
      std::size_t horizon = parse_count(o.horizon, "--horizon");
      TailCertificate t = tail_convergence_check(a, rule, caps(), horizon);
      int code = t.entry ? kIn : exit_for(t.rows.back().verdict.kind);
      return Outcome{Json{{"seq", a.name()}, {"rule", rule.literal()}, {"horizon", horizon}}, to_json(t),
                     "window-evidence", code, std::nullopt};
    });
  }

  // topo -------------------------------------------------------------------------
  CLI::App* topo = app.add_subcommand("topo", "Neighbourhood bases on finite windows");
  topo->require_subcommand(1);
  auto family = [&](const std::vector<std::string>& literals) {
    std::vector<NeighborhoodSpec> out;
    for (const std::string& s : literals) {
      for (NeighborhoodSpec& v : NeighborhoodSpec::parse_family(s, caps())) out.push_back(std::move(v));
    }
    return out;
  };
  auto literals = [](const std::vector<NeighborhoodSpec>& f) {
    Json out = Json::array();
    for (const NeighborhoodSpec& v : f) out.push_back(v.literal());
    return out;
  };
  {
    auto* c = topo->add_subcommand("member", "k in a basic neighbourhood");
    c->add_option("--spec", o.specs)->required()->expected(1);
    c->add_option("--k", o.k)->required();
    add_caps(c);
    bind(c, "topo member", [&] {
      NeighborhoodSpec v = NeighborhoodSpec::parse(o.specs.front(), caps());
      Integer k = parse_integer(o.k);
      Verdict verdict = member(k, v, config.precision);
      return verdict_outcome(Json{{"spec", v.literal()}, {"k", k.get_str()}}, to_json(verdict), verdict.kind);
    });
  }
  {
    auto* c = topo->add_subcommand("axioms", "Check G1, G2, G4, G5 on a window");
    c->add_option("--spec", o.specs, "Repeatable; '@n=a..b' expands a level range")->required();
    c->add_option("--window", o.window);
    add_caps(c);
    bind(c, "topo axioms", [&] {
      std::vector<NeighborhoodSpec> f = family(o.specs);
      Window w = window();
      AxiomsReport r = axioms_check_window(f, w, config.precision, config.window_budget);
      AxiomStatus s = r.overall();
      int code = s == AxiomStatus::Pass ? kIn : s == AxiomStatus::Fail ? kOut : kUnknown;
      return Outcome{Json{{"family", literals(f)}, {"window", w.literal()}}, to_json(r), "window-evidence", code,
                     std::nullopt};
    });
  }
  {
    auto* c = topo->add_subcommand("compare", "Inclusions between two bases on a window");
    c->add_option("--t1", o.t1)->required();
    c->add_option("--t2", o.t2)->required();
    c->add_option("--window", o.window);
    add_caps(c);
    bind(c, "topo compare", [&] {
      std::vector<NeighborhoodSpec> f1 = family(o.t1), f2 = family(o.t2);
      Window w = window();
      CompareReport r = compare_window(f1, f2, w, config.precision, config.window_budget);
      bool fail = false, unknown = false;
      for (const auto* side : {&r.first_refines_second, &r.second_refines_first}) {
        for (const InclusionEntry& e : *side) {
          fail = fail || e.status == AxiomStatus::Fail;
          unknown = unknown || e.status == AxiomStatus::Inconclusive;
        }
      }
      int code = fail ? kOut : unknown ? kUnknown : kIn;
      return Outcome{Json{{"t1", literals(f1)}, {"t2", literals(f2)}, {"window", w.literal()}}, to_json(r, f1, f2),
                     "window-evidence", code, std::nullopt};
    });
  }
  {
    auto* c = topo->add_subcommand("cover", "Finite F with window inside F + V");
    c->add_option("--spec", o.specs)->required()->expected(1);
    c->add_option("--window", o.window);
    c->add_flag("--no-replay", o.no_replay, "Skip replaying the cover on the window");
    add_caps(c);
    bind(c, "topo cover", [&] {
      NeighborhoodSpec v = NeighborhoodSpec::parse(o.specs.front(), caps());
      Window w = window();
      CoverResult r = cover_witness(v, w, config.window_budget);
      std::optional<ReplayResult> replay;
      if (r.witness && !o.no_replay) replay = replay_cover(*r.witness, v, config.precision);
      int code = kUnknown;
      if (r.witness) code = !replay || replay->complete() ? kIn : (replay->gaps.empty() ? kUnknown : kOut);
      return Outcome{Json{{"spec", v.literal()}, {"window", w.literal()}}, to_json(r, replay ? &*replay : nullptr),
                     "window-evidence", code, std::nullopt};
    });
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kIn;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kIn;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  Outcome outcome;
  try {
    if (!config_path.empty()) config = Config::load(config_path);
    if (!precision_ceiling.empty()) config.set("precision_ceiling", precision_ceiling);
    outcome = handler();
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::length_error& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::overflow_error& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  std::string text;
  if (csv) {
    if (!outcome.csv) {
      err << "usage error: '" << command << "' has no table output\n";
      return kUsage;
    }
    text = *outcome.csv;
  } else {
    Json doc{{"command", command},
             {"inputs", outcome.inputs},
             {"result", outcome.result},
             {"evidence_label", outcome.evidence},
             {"exit_code", outcome.exit_code}};
    if (!no_meta) doc["meta"] = Json{{"timestamp", timestamp()}};
    text = doc.dump(2) + "\n";
  }
  if (out_path.empty()) {
    out << text;
  } else {
    std::ofstream file(out_path);
    if (!file) {
      err << "usage error: cannot write '" << out_path << "'\n";
      return kUsage;
    }
    file << text;
  }
  return outcome.exit_code;
}

}  // namespace ztop::cli
