#include "ztop/serialize.hpp"

#include <sstream>

namespace ztop {

namespace {

constexpr int kDigits = 30;

std::string str(const Integer& x) { return x.get_str(); }

}  // namespace

Json to_json(const Verdict& v) {
  Json j{{"verdict", to_string(v.kind)}, {"reason", v.reason}};
  if (v.precision_bits) j["precision_bits"] = v.precision_bits;
  if (v.witness) j["witness"] = *v.witness;
  return j;
}

Json to_json(const Enclosure& e) {
  return Json{{"lo", e.lo().to_string(kDigits)}, {"hi", e.hi().to_string(kDigits)}, {"exact", e.degenerate()}};
}

Json to_json(const DistanceValue& d) {
  Json j{{"value", to_json(d.value)}};
  if (d.norm) j["norm"] = to_string(*d.norm);
  if (d.attaining_point) j["attaining_point"] = d.attaining_point->literal();
  if (d.prefix_bound) j["prefix_bound"] = *d.prefix_bound;
  return j;
}

Json to_json(const DigitVector& d) {
  Json digits = Json::array();
  for (const Integer& c : d.digits) digits.push_back(str(c));
  return Json{{"sign", d.sign}, {"digits", digits}};
}

Json to_json(const ConvergenceCertificate& c) {
  Json rows = Json::array();
  for (const ConvergenceRow& r : c.rows) {
    Json row{{"level", r.level}};
    row["threshold"] = r.threshold ? Json(*r.threshold) : Json(nullptr);
    if (r.failure_at) row["failure_at"] = *r.failure_at;
    rows.push_back(row);
  }
  return Json{{"sequence", c.sequence}, {"dsequence", c.dsequence}, {"depth", c.depth},
              {"horizon", c.horizon},   {"rows", rows},             {"all_converged", c.all_converged()},
              {"crosses_seam", c.crosses_seam}, {"label", ConvergenceCertificate::label}};
}

Json to_json(const SeparationResult& s) {
  Json j = to_json(s.verdict);
  if (s.witness) {
    j["character"] = s.witness->literal();
    Json word = Json::array();
    for (const Integer& e : s.word) word.push_back(str(e));
    j["word"] = word;
  }
  j["words_tried"] = s.words_tried;
  return j;
}

Json to_json(const ContinuityResult& c) {
  Json j = to_json(c.verdict);
  if (c.level) j["level"] = *c.level;
  return j;
}

Json to_json(const PruferElement& p) {
  return Json{{"element", p.literal()},
              {"prime", str(p.prime())},
              {"numerator", str(p.numerator())},
              {"exponent", p.exponent()},
              {"order", str(p.order())},
              {"value", to_string(p.value())}};
}

Json to_json(const SignedCombination& s) {
  Json terms = Json::array();
  for (const auto& t : s.terms) terms.push_back(Json{{"slot", t.slot}, {"index", t.index}, {"sign", t.sign}});
  return terms;
}

Json to_json(const SearchCaps& c) {
  return Json{{"index_cap", c.index_cap}, {"slot_cap", c.slot_cap}, {"node_budget", c.node_budget}};
}

Json to_json(const BracketResult& b) {
  Json j = to_json(b.verdict);
  j.erase("witness");
  if (b.witness) j["witness"] = to_json(*b.witness);
  j["closures_applied"] = b.closures_applied;
  j["nodes"] = b.nodes;
  if (b.slots) j["slots"] = *b.slots;
  return j;
}

Json to_json(const TailCertificate& t) {
  Json rows = Json::array();
  for (const TailRow& r : t.rows) rows.push_back(Json{{"index", r.index}, {"verdict", to_string(r.verdict.kind)}});
  Json j{{"mins", t.mins}, {"horizon", t.horizon}};
  j["entry"] = t.entry ? Json(*t.entry) : Json(nullptr);
  j["rows"] = rows;
  j["label"] = TailCertificate::label;
  return j;
}

Json to_json(const TranslationReport& t) {
  return Json{{"base", to_json(t.base)}, {"shifted", to_json(t.shifted)}, {"exact", t.exact}, {"equal", t.equal}};
}

Json to_json(const ScanRow& r) {
  return Json{{"grid_size", str(r.grid_size)},
              {"value", to_json(r.value)},
              {"floor", to_json(r.floor)},
              {"floor_applies", r.floor_applies},
              {"meets_floor", r.meets_floor}};
}

Json to_json(const AxiomsReport& r) {
  Json axioms = Json::array();
  for (const AxiomReport& a : r.axioms) {
    Json j{{"axiom", a.axiom}, {"status", to_string(a.status)}};
    if (a.counterexample) j["counterexample"] = *a.counterexample;
    if (a.witness) j["witness"] = *a.witness;
    axioms.push_back(j);
  }
  return Json{{"window", r.window.literal()},
              {"axioms", axioms},
              {"overall", to_string(r.overall())},
              {"label", AxiomsReport::label}};
}

namespace {

Json inclusion_json(const std::vector<InclusionEntry>& entries, const std::vector<NeighborhoodSpec>& inner,
                    const std::vector<NeighborhoodSpec>& outer) {
  Json out = Json::array();
  for (const InclusionEntry& e : entries) {
    Json j{{"target", outer[e.target].literal()}, {"status", to_string(e.status)}};
    if (e.included_by) j["included_by"] = inner[*e.included_by].literal();
    if (!e.counterexamples.empty()) {
      Json ce = Json::array();
      for (const auto& [c, k] : e.counterexamples) ce.push_back(Json{{"candidate", inner[c].literal()}, {"k", str(k)}});
      j["counterexamples"] = ce;
    }
    out.push_back(j);
  }
  return out;
}

}  // namespace

Json to_json(const CompareReport& r, const std::vector<NeighborhoodSpec>& t1, const std::vector<NeighborhoodSpec>& t2) {
  return Json{{"window", r.window.literal()},
              {"first_refines_second", inclusion_json(r.first_refines_second, t1, t2)},
              {"second_refines_first", inclusion_json(r.second_refines_first, t2, t1)},
              {"label", CompareReport::label}};
}

Json to_json(const CoverResult& c, const ReplayResult* replay) {
  if (!c.witness) return Json{{"status", "failure"}, {"reason", c.failure}};
  Json translates = Json::array();
  for (const Integer& f : c.witness->translates) translates.push_back(str(f));
  Json j{{"status", "witness"},
         {"neighborhood", c.witness->neighborhood},
         {"window", c.witness->window.literal()},
         {"translates", translates}};
  if (replay) {
    Json gaps = Json::array(), undecided = Json::array();
    for (const Integer& k : replay->gaps) gaps.push_back(str(k));
    for (const Integer& k : replay->undecided) undecided.push_back(str(k));
    j["replay"] = Json{{"complete", replay->complete()}, {"gaps", gaps}, {"undecided", undecided}};
  }
  return j;
}

std::string csv_scan(const std::vector<ScanRow>& rows) {
  std::ostringstream out;
  out << "grid_size,value_lo,value_hi,floor_lo,floor_hi,floor_applies,meets_floor\n";
  for (const ScanRow& r : rows) {
    out << r.grid_size.get_str() << ',' << r.value.value.lo().to_string(kDigits) << ','
        << r.value.value.hi().to_string(kDigits) << ',' << r.floor.lo().to_string(kDigits) << ','
        << r.floor.hi().to_string(kDigits) << ',' << (r.floor_applies ? "true" : "false") << ','
        << (r.meets_floor ? "true" : "false") << '\n';
  }
  return out.str();
}

std::string csv_convergence(const ConvergenceCertificate& c) {
  std::ostringstream out;
  out << "level,threshold,failure_at\n";
  for (const ConvergenceRow& r : c.rows) {
    out << r.level << ',' << (r.threshold ? std::to_string(*r.threshold) : "") << ','
        << (r.failure_at ? std::to_string(*r.failure_at) : "") << '\n';
  }
  return out.str();
}

std::string csv_distance(const Integer& m, const Integer& n, const DistanceValue& d) {
  std::ostringstream out;
  out << "m,n,value_lo,value_hi,attaining_point\n";
  out << m.get_str() << ',' << n.get_str() << ',' << d.value.lo().to_string(kDigits) << ','
      << d.value.hi().to_string(kDigits) << ',' << (d.attaining_point ? d.attaining_point->literal() : "") << '\n';
  return out.str();
}

}  // namespace ztop
