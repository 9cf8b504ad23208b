#include "ztop/topology.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

namespace ztop {

// Specs ----------------------------------------------------------------------

NeighborhoodSpec NeighborhoodSpec::badic(const DSequence& seq, std::size_t level) {
  if (level == 0) throw std::invalid_argument("b-adic level must be >= 1");
  return NeighborhoodSpec(Badic{seq, level});
}

NeighborhoodSpec NeighborhoodSpec::weak(const CharacterSet& chars, const Rational& band) {
  if (band <= 0 || band > Rational(1, 2)) throw std::invalid_argument("band must lie in (0, 1/2]");
  return NeighborhoodSpec(Weak{chars, band});
}

NeighborhoodSpec NeighborhoodSpec::uniform(const SSpec& s, std::size_t level) {
  if (level == 0) throw std::invalid_argument("uniform level must be >= 1");
  return NeighborhoodSpec(Uniform{s, level});
}

NeighborhoodSpec NeighborhoodSpec::zelenyuk(const ZelenyukSpec& spec) {
  spec.caps.validate();
  if (const auto* mins = std::get_if<0>(&spec.mins)) {
    ZelenyukSpec copy = spec;
    copy.mins = normalize_mins(*mins);
    return NeighborhoodSpec(Zelenyuk{copy});
  }
  return NeighborhoodSpec(Zelenyuk{spec});
}

namespace {

std::size_t parse_level(std::string_view text) {
  Integer n = parse_integer(text);
  if (n < 1 || n > 1'000'000) throw std::invalid_argument("level out of range: '" + std::string(text) + "'");
  return n.get_ui();
}

struct Split {
  std::string_view kind;
  std::string_view body;
  std::string_view param;
};

Split split_literal(std::string_view literal) {
  auto colon = literal.find(':');
  auto at = literal.rfind('@');
  if (colon == std::string_view::npos || at == std::string_view::npos || at < colon) {
    throw std::invalid_argument("expected '<kind>:<object>@<parameter>', got '" + std::string(literal) + "'");
  }
  return {literal.substr(0, colon), literal.substr(colon + 1, at - colon - 1), literal.substr(at + 1)};
}

NeighborhoodSpec build(std::string_view kind, std::string_view body, std::string_view param, const SearchCaps& caps) {
  if (kind == "badic") return NeighborhoodSpec::badic(DSequence::parse(body), parse_level(param));
  if (kind == "weak") return NeighborhoodSpec::weak(CharacterSet::parse(body), parse_rational(param));
  if (kind == "unif") return NeighborhoodSpec::uniform(SSpec::parse(body), parse_level(param));
  if (kind == "zel") {
    ZelenyukSpec spec{DSequence::parse(body), std::vector<std::size_t>{}, caps};
    if (param.starts_with("rule:")) {
      spec.mins = MinsRule::parse(param.substr(5));
    } else {
      spec.mins = parse_mins(param);
    }
    return NeighborhoodSpec::zelenyuk(spec);
  }
  throw std::invalid_argument("unknown neighbourhood kind '" + std::string(kind) + "'");
}

}  // namespace

NeighborhoodSpec NeighborhoodSpec::parse(std::string_view literal, const SearchCaps& caps) {
  Split s = split_literal(literal);
  return build(s.kind, s.body, s.param, caps);
}

std::vector<NeighborhoodSpec> NeighborhoodSpec::parse_family(std::string_view literal, const SearchCaps& caps) {
  Split s = split_literal(literal);
  if (!s.param.starts_with("n=")) return {build(s.kind, s.body, s.param, caps)};
  auto range = s.param.substr(2);
  auto dots = range.find("..");
  if (dots == std::string_view::npos) throw std::invalid_argument("expected n=a..b, got '" + std::string(s.param) + "'");
  std::size_t first = parse_level(range.substr(0, dots));
  std::size_t last = parse_level(range.substr(dots + 2));
  if (first > last) throw std::invalid_argument("empty range '" + std::string(s.param) + "'");
  std::vector<NeighborhoodSpec> out;
  for (std::size_t n = first; n <= last; ++n) {
    if (s.kind == "badic") {
      out.push_back(badic(DSequence::parse(s.body), n));
    } else if (s.kind == "unif") {
      out.push_back(uniform(SSpec::parse(s.body), n));
    } else if (s.kind == "weak") {
      out.push_back(weak(CharacterSet::parse(s.body), Rational(1, 4 * static_cast<long>(n))));
    } else {
      throw std::invalid_argument("level ranges are not defined for '" + std::string(s.kind) + "'");
    }
  }
  return out;
}

std::string NeighborhoodSpec::literal() const {
  struct {
    std::string operator()(const Badic& b) const { return "badic:" + b.seq.name() + "@" + std::to_string(b.level); }
    std::string operator()(const Weak& w) const { return "weak:" + w.chars.literal() + "@" + to_string(w.band); }
    std::string operator()(const Uniform& u) const { return "unif:" + u.s.literal() + "@" + std::to_string(u.level); }
    std::string operator()(const Zelenyuk& z) const { return "zel:" + z.spec.seq.name() + "@" + z.spec.mins_literal(); }
  } visitor;
  return std::visit(visitor, value_);
}

std::string NeighborhoodSpec::kind_name() const {
  static const char* names[] = {"badic", "weak", "unif", "zel"};
  return names[value_.index()];
}

Window::Window(Integer lo_, Integer hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
  if (lo > 0 || hi < 0) throw std::invalid_argument("a window must contain 0, got " + literal());
}

Window Window::parse(std::string_view literal) {
  auto dots = literal.find("..");
  if (dots == std::string_view::npos) throw std::invalid_argument("expected a window 'lo..hi', got '" + std::string(literal) + "'");
  return Window(parse_integer(literal.substr(0, dots)), parse_integer(literal.substr(dots + 2)));
}

std::size_t Window::size() const {
  Integer n = hi - lo + 1;
  if (!n.fits_slong_p()) throw std::length_error("window " + literal() + " is too large");
  return n.get_ui();
}

std::string Window::literal() const { return lo.get_str() + ".." + hi.get_str(); }

Verdict member(const Integer& k, const NeighborhoodSpec& v, const PrecisionPolicy& policy) {
  if (k == 0) return Verdict::in("0 lies in every neighbourhood");
  struct {
    const Integer& k;
    const PrecisionPolicy& policy;
    Verdict operator()(const NeighborhoodSpec::Badic& b) const { return badic_member(k, b.seq, b.level); }
    Verdict operator()(const NeighborhoodSpec::Weak& w) const { return weak_member(k, w.chars, w.band, policy); }
    Verdict operator()(const NeighborhoodSpec::Uniform& u) const { return uniform_member(k, u.s, u.level, policy); }
    Verdict operator()(const NeighborhoodSpec::Zelenyuk& z) const { return vn_member(k, z.spec).verdict; }
  } visitor{k, policy};
  return std::visit(visitor, v.variant());
}

std::string to_string(AxiomStatus s) {
  switch (s) {
    case AxiomStatus::Pass: return "Pass";
    case AxiomStatus::Fail: return "Fail";
    case AxiomStatus::Inconclusive: return "Inconclusive";
    case AxiomStatus::NotApplicable: return "NotApplicable";
  }
  return "?";
}

AxiomStatus AxiomsReport::overall() const {
  bool inconclusive = false;
  for (const AxiomReport& a : axioms) {
    if (a.status == AxiomStatus::Fail) return AxiomStatus::Fail;
    if (a.status == AxiomStatus::Inconclusive) inconclusive = true;
  }
  return inconclusive ? AxiomStatus::Inconclusive : AxiomStatus::Pass;
}

// Window scans -----------------------------------------------------------------

namespace {

// Membership of every integer in [lo, hi].
struct Scan {
  long lo = 0;
  long hi = -1;
  std::vector<Kind> kinds;

  Kind at(long k) const { return kinds[static_cast<std::size_t>(k - lo)]; }
  bool in_range(long k) const { return k >= lo && k <= hi; }
};

Scan scan(const NeighborhoodSpec& v, long lo, long hi, const PrecisionPolicy& policy) {
  Scan s{lo, hi, {}};
  s.kinds.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (long k = lo; k <= hi; ++k) s.kinds.push_back(member(Integer(k), v, policy).kind);
  return s;
}

// 0, 1, -1, 2, -2, ... within [lo, hi].
template <typename F>
bool for_each_ordered(long lo, long hi, F&& visit) {
  long reach = std::max(-lo, hi);
  for (long m = 0; m <= reach; ++m) {
    if (m <= hi && visit(m)) return true;
    if (m > 0 && -m >= lo && visit(-m)) return true;
  }
  return false;
}

struct Inclusion {
  bool holds = false;            // certainly A n w inside B n w
  std::optional<long> violation;  // k in A, k not in B, both certain
};

template <typename InA, typename InB>
Inclusion check_inclusion(long lo, long hi, InA&& a, InB&& b) {
  Inclusion r;
  bool uncertain = false;
  for_each_ordered(lo, hi, [&](long k) {
    Kind ka = a(k);
    if (ka == Kind::Out) return false;
    Kind kb = b(k);
    if (kb == Kind::In) return false;
    if (ka == Kind::In && kb == Kind::Out) {
      r.violation = k;
      return true;
    }
    uncertain = true;
    return false;
  });
  r.holds = !r.violation && !uncertain;
  return r;
}

Kind meet(Kind a, Kind b) {
  if (a == Kind::Out || b == Kind::Out) return Kind::Out;
  if (a == Kind::Unknown || b == Kind::Unknown) return Kind::Unknown;
  return Kind::In;
}

class Bits {
 public:
  explicit Bits(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1; }
  std::size_t size() const { return n_; }

  // this |= other << shift
  void or_shifted(const Bits& other, std::size_t shift) {
    std::size_t ws = shift / 64, bs = shift % 64;
    for (std::size_t i = 0; i + ws < words_.size() && i < other.words_.size(); ++i) {
      words_[i + ws] |= other.words_[i] << bs;
      if (bs && i + ws + 1 < words_.size()) words_[i + ws + 1] |= other.words_[i] >> (64 - bs);
    }
  }

 private:
  std::size_t n_;
  std::vector<std::uint64_t> words_;
};

// Sums a + b with a, b in the set, on [2 lo, 2 hi], indexed by sum - 2 lo.
Bits sumset(const Scan& v, bool include_unknown) {
  std::size_t width = v.kinds.size();
  Bits members(width);
  for (std::size_t i = 0; i < width; ++i) {
    Kind k = v.kinds[i];
    if (k == Kind::In || (include_unknown && k == Kind::Unknown)) members.set(i);
  }
  Bits sums(2 * width - 1);
  for (std::size_t i = 0; i < width; ++i) {
    if (members.test(i)) sums.or_shifted(members, i);
  }
  return sums;
}

long window_bound(const Integer& x) {
  if (!x.fits_slong_p()) throw std::length_error("window endpoint out of range");
  return x.get_si();
}

void check_budget(const Window& w, std::size_t budget) {
  if (w.size() > budget) {
    throw std::length_error("window " + w.literal() + " has " + std::to_string(w.size()) +
                            " points, above the enumeration budget " + std::to_string(budget));
  }
}

AxiomStatus from_flags(bool pass, bool fail) {
  if (fail) return AxiomStatus::Fail;
  return pass ? AxiomStatus::Pass : AxiomStatus::Inconclusive;
}

}  // namespace

AxiomsReport axioms_check_window(const std::vector<NeighborhoodSpec>& family, const Window& w,
                                 const PrecisionPolicy& policy, std::size_t budget) {
  if (family.empty()) throw std::invalid_argument("axioms_check_window: empty family");
  check_budget(w, budget);
  const long lo = window_bound(w.lo), hi = window_bound(w.hi);
  const std::size_t count = family.size();

  std::vector<Scan> scans, doubled;
  for (const NeighborhoodSpec& v : family) {
    scans.push_back(scan(v, lo, hi, policy));
    doubled.push_back(scan(v, 2 * lo, 2 * hi, policy));
  }

  AxiomsReport report{w, {}};

  {
    AxiomReport g1{"G1", AxiomStatus::Inconclusive, std::nullopt, std::nullopt};
    bool unknown = false;
    for (std::size_t i = 0; i < count && !g1.counterexample; ++i) {
      Kind k = scans[i].at(0);
      if (k == Kind::Out) g1.counterexample = "0 not in " + family[i].literal();
      if (k == Kind::Unknown) unknown = true;
    }
    g1.status = from_flags(!unknown, g1.counterexample.has_value());
    if (g1.status == AxiomStatus::Pass) g1.witness = "0 lies in every listed set";
    report.axioms.push_back(std::move(g1));
  }

  {
    AxiomReport g2{"G2", AxiomStatus::Inconclusive, std::nullopt, std::nullopt};
    bool all_pass = true;
    std::string witness;
    for (std::size_t i = 0; i < count && !g2.counterexample; ++i) {
      for (std::size_t j = i; j < count && !g2.counterexample; ++j) {
        auto target = [&](long k) { return meet(scans[i].at(k), scans[j].at(k)); };
        std::vector<std::size_t> order{i};
        if (j != i) order.push_back(j);
        for (std::size_t l = 0; l < count; ++l) {
          if (l != i && l != j) order.push_back(l);
        }
        bool found = false, every_violated = true;
        std::optional<long> first_violation;
        for (std::size_t l : order) {
          Inclusion inc = check_inclusion(lo, hi, [&](long k) { return scans[l].at(k); }, target);
          if (inc.holds) {
            found = true;
            if (!witness.empty()) witness += "; ";
            witness += "V" + std::to_string(l) + " in V" + std::to_string(i) + " n V" + std::to_string(j);
            break;
          }
          if (!inc.violation) every_violated = false;
          if (inc.violation && !first_violation) first_violation = inc.violation;
        }
        if (!found) {
          all_pass = false;
          if (every_violated) {
            g2.counterexample = "no listed set lies in V" + std::to_string(i) + " n V" + std::to_string(j) +
                                " on the window; V" + std::to_string(order.front()) + " fails at k = " +
                                std::to_string(*first_violation);
          }
        }
      }
    }
    g2.status = from_flags(all_pass, g2.counterexample.has_value());
    if (g2.status == AxiomStatus::Pass) g2.witness = witness;
    report.axioms.push_back(std::move(g2));
  }

  report.axioms.push_back({"G3", AxiomStatus::NotApplicable, std::nullopt,
                           "supersets of basic sets are not enumerated"});

  {
    AxiomReport g4{"G4", AxiomStatus::Inconclusive, std::nullopt, std::nullopt};
    std::vector<std::optional<Bits>> certain(count), possible(count);
    bool all_pass = true;
    std::string witness;
    for (std::size_t wi = 0; wi < count && !g4.counterexample; ++wi) {
      std::size_t width = doubled[wi].kinds.size();
      Bits w_in(width), w_out(width);
      for (std::size_t s = 0; s < width; ++s) {
        if (doubled[wi].kinds[s] == Kind::In) w_in.set(s);
        if (doubled[wi].kinds[s] == Kind::Out) w_out.set(s);
      }
      std::vector<std::size_t> order{wi};
      for (std::size_t l = 0; l < count; ++l) {
        if (l != wi) order.push_back(l);
      }
      bool found = false, every_violated = true;
      std::optional<std::string> first_violation;
      for (std::size_t l : order) {
        if (!possible[l]) {
          possible[l] = sumset(scans[l], true);
          certain[l] = sumset(scans[l], false);
        }
        bool contained = true;
        for (std::size_t s = 0; s < width && contained; ++s) {
          if (possible[l]->test(s) && !w_in.test(s)) contained = false;
        }
        if (contained) {
          found = true;
          if (!witness.empty()) witness += "; ";
          witness += "V" + std::to_string(l) + " + V" + std::to_string(l) + " in V" + std::to_string(wi);
          break;
        }
        std::optional<long> bad;
        for_each_ordered(2 * lo, 2 * hi, [&](long sum) {
          auto s = static_cast<std::size_t>(sum - 2 * lo);
          if (certain[l]->test(s) && w_out.test(s)) bad = sum;
          return bad.has_value();
        });
        if (!bad) {
          every_violated = false;
        } else if (!first_violation) {
          const long sum = *bad;
          for_each_ordered(lo, hi, [&](long a) {
            long b = sum - a;
            if (!scans[l].in_range(b) || scans[l].at(a) != Kind::In || scans[l].at(b) != Kind::In) return false;
            first_violation = std::to_string(a) + " + " + std::to_string(b) + " = " + std::to_string(sum) +
                              " with both in V" + std::to_string(l) + ", not in V" + std::to_string(wi);
            return true;
          });
        }
      }
      if (!found) {
        all_pass = false;
        if (every_violated) g4.counterexample = *first_violation;
      }
    }
    g4.status = from_flags(all_pass, g4.counterexample.has_value());
    if (g4.status == AxiomStatus::Pass) g4.witness = witness;
    report.axioms.push_back(std::move(g4));
  }

  {
    AxiomReport g5{"G5", AxiomStatus::Inconclusive, std::nullopt, std::nullopt};
    bool unknown = false;
    long reach = std::min(-lo, hi);
    for (std::size_t i = 0; i < count && !g5.counterexample; ++i) {
      for (long k = 1; k <= reach; ++k) {
        Kind a = scans[i].at(k), b = scans[i].at(-k);
        if (a == Kind::Unknown || b == Kind::Unknown) {
          unknown = true;
        } else if (a != b) {
          g5.counterexample = "k = " + std::to_string(a == Kind::In ? k : -k) + " in V" + std::to_string(i) +
                              " but -k is not";
          break;
        }
      }
    }
    g5.status = from_flags(!unknown, g5.counterexample.has_value());
    if (g5.status == AxiomStatus::Pass) g5.witness = "every listed set is symmetric on the window";
    report.axioms.push_back(std::move(g5));
  }
  return report;
}

namespace {

std::vector<InclusionEntry> inclusions(const std::vector<Scan>& inner, const std::vector<Scan>& outer, long lo,
                                       long hi) {
  std::vector<InclusionEntry> out;
  for (std::size_t t = 0; t < outer.size(); ++t) {
    InclusionEntry entry{t, std::nullopt, {}, AxiomStatus::Inconclusive};
    bool every_violated = true;
    for (std::size_t c = 0; c < inner.size(); ++c) {
      Inclusion inc = check_inclusion(
          lo, hi, [&](long k) { return inner[c].at(k); }, [&](long k) { return outer[t].at(k); });
      if (inc.holds) {
        entry.included_by = c;
        break;
      }
      if (inc.violation) {
        entry.counterexamples.emplace_back(c, Integer(*inc.violation));
      } else {
        every_violated = false;
      }
    }
    if (entry.included_by) {
      entry.counterexamples.clear();
      entry.status = AxiomStatus::Pass;
    } else {
      entry.status = every_violated ? AxiomStatus::Fail : AxiomStatus::Inconclusive;
    }
    out.push_back(std::move(entry));
  }
  return out;
}

}  // namespace

CompareReport compare_window(const std::vector<NeighborhoodSpec>& t1, const std::vector<NeighborhoodSpec>& t2,
                             const Window& w, const PrecisionPolicy& policy, std::size_t budget) {
  check_budget(w, budget);
  const long lo = window_bound(w.lo), hi = window_bound(w.hi);
  std::vector<Scan> s1, s2;
  for (const NeighborhoodSpec& v : t1) s1.push_back(scan(v, lo, hi, policy));
  for (const NeighborhoodSpec& v : t2) s2.push_back(scan(v, lo, hi, policy));
  return CompareReport{w, inclusions(s1, s2, lo, hi), inclusions(s2, s1, lo, hi)};
}

CoverResult cover_witness(const NeighborhoodSpec& v, const Window& w, std::size_t budget) {
  check_budget(w, budget);
  std::optional<Integer> modulus;
  if (const auto* b = std::get_if<NeighborhoodSpec::Badic>(&v.variant())) {
    modulus = b->seq.term(b->level);
  } else if (const auto* weak = std::get_if<NeighborhoodSpec::Weak>(&v.variant())) {
    modulus = weak->chars.period();
    if (!modulus) return {std::nullopt, "no general witness procedure for characters of infinite order"};
  }
  if (!modulus) return {std::nullopt, "no general witness procedure"};
  if (*modulus > budget) {
    throw std::length_error("cover needs " + modulus->get_str() + " translates, above the enumeration budget " +
                            std::to_string(budget));
  }
  CoverWitness cover{{}, v.literal(), w};
  for (unsigned long f = 0; f < modulus->get_ui(); ++f) cover.translates.emplace_back(f);
  return {std::move(cover), {}};
}

ReplayResult replay_cover(const CoverWitness& cover, const NeighborhoodSpec& v, const PrecisionPolicy& policy) {
  ReplayResult result;
  if (cover.translates.empty()) throw std::invalid_argument("cover has no translates");
  const long lo = window_bound(cover.window.lo), hi = window_bound(cover.window.hi);
  const Integer count(static_cast<unsigned long>(cover.translates.size()));
  for (long k = lo; k <= hi; ++k) {
    Integer key(k);
    Integer first;
    mpz_fdiv_r(first.get_mpz_t(), key.get_mpz_t(), count.get_mpz_t());
    const std::size_t start = first.get_ui();
    bool covered = false, unknown = false;
    for (std::size_t step = 0; step < cover.translates.size() && !covered; ++step) {
      const Integer& f = cover.translates[(start + step) % cover.translates.size()];
      Kind kind = member(Integer(key - f), v, policy).kind;
      covered = kind == Kind::In;
      unknown = unknown || kind == Kind::Unknown;
    }
    if (!covered) (unknown ? result.undecided : result.gaps).push_back(key);
  }
  return result;
}

}  // namespace ztop
