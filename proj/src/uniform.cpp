#include "ztop/uniform.hpp"

#include <algorithm>
#include <stdexcept>

namespace ztop {

SSpec SSpec::explicit_set(std::vector<TorusPoint> points) {
  if (points.empty()) throw std::invalid_argument("explicit S must be nonempty");
  return SSpec(Explicit{std::move(points)});
}

SSpec SSpec::grid(const Integer& n) {
  if (n < 1) throw std::invalid_argument("grid size must be >= 1");
  return SSpec(Grid{n});
}

SSpec SSpec::inverse_sequence(const DSequence& b) { return SSpec(InvSeq{b}); }

SSpec SSpec::parse(std::string_view literal) {
  if (literal.starts_with("set:")) {
    std::vector<TorusPoint> points;
    std::string_view rest = literal.substr(4);
    std::size_t start = 0;
    for (;;) {
      auto comma = rest.find(',', start);
      points.push_back(TorusPoint::parse(rest.substr(start, comma == std::string_view::npos ? comma : comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return explicit_set(std::move(points));
  }
  if (literal.starts_with("grid:")) return grid(parse_integer(literal.substr(5)));
  if (literal.starts_with("inv:")) return inverse_sequence(DSequence::parse(literal.substr(4)));
  throw std::invalid_argument("unknown S literal '" + std::string(literal) + "'");
}

bool SSpec::all_rational() const {
  if (const auto* e = std::get_if<Explicit>(&value_)) {
    return std::all_of(e->points.begin(), e->points.end(), [](const TorusPoint& x) { return x.is_rational(); });
  }
  return true;
}

std::string SSpec::literal() const {
  if (const auto* e = std::get_if<Explicit>(&value_)) {
    std::string out = "set:";
    for (std::size_t i = 0; i < e->points.size(); ++i) {
      if (i) out += ",";
      out += e->points[i].literal();
    }
    return out;
  }
  if (const auto* g = std::get_if<Grid>(&value_)) return "grid:" + g->size.get_str();
  return "inv:" + std::get<InvSeq>(value_).seq.name();
}

GridMax grid_max_norm(const Integer& d, const Integer& grid_size) {
  if (grid_size < 1) throw std::invalid_argument("grid size must be >= 1");
  Integer g = gcd(d, grid_size);
  Integer period = grid_size / g;  // d*i mod N runs over multiples of g
  if (period == 1) return {Rational(0), Integer(0)};
  Integer top = period / 2;
  Integer unit;
  mpz_fdiv_r(unit.get_mpz_t(), Integer(d / g).get_mpz_t(), period.get_mpz_t());
  Integer inverse;
  mpz_invert(inverse.get_mpz_t(), unit.get_mpz_t(), period.get_mpz_t());
  Integer i0, i1;
  mpz_fdiv_r(i0.get_mpz_t(), Integer(top * inverse).get_mpz_t(), period.get_mpz_t());
  mpz_fdiv_r(i1.get_mpz_t(), Integer((period - top) * inverse).get_mpz_t(), period.get_mpz_t());
  Rational norm(top, period);
  norm.canonicalize();
  return {norm, std::min(i0, i1)};
}

namespace {

DistanceValue rational_distance(const Rational& norm, const TorusPoint& point, mpfr_prec_t bits) {
  return DistanceValue{chord_of_norm(norm, bits), norm, point, std::nullopt};
}

DistanceValue explicit_distance(const Integer& m, const Integer& n, const std::vector<TorusPoint>& points,
                                mpfr_prec_t bits) {
  bool all_rational = std::all_of(points.begin(), points.end(), [](const TorusPoint& x) { return x.is_rational(); });
  if (all_rational) {
    std::size_t best = 0;
    Rational best_norm = -1;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const Rational& x = points[i].rational();
      Rational t = torus_norm(Rational(reduce_mod1(x * m) - reduce_mod1(x * n)));
      if (t > best_norm) {
        best_norm = t;
        best = i;
      }
    }
    return rational_distance(best_norm, points[best], bits);
  }

  std::vector<Enclosure> chords;
  chords.reserve(points.size());
  for (const TorusPoint& x : points) chords.push_back(chord_distance(x, m, n, bits));
  std::size_t best = 0;
  for (std::size_t i = 1; i < chords.size(); ++i) {
    if (chords[i].lo().cmp(chords[best].lo()) > 0) best = i;
  }
  const BigFloat* hi = &chords[0].hi();
  for (const Enclosure& c : chords) {
    if (c.hi().cmp(*hi) > 0) hi = &c.hi();
  }
  DistanceValue out{Enclosure(chords[best].lo(), *hi), std::nullopt, points[best], std::nullopt};
  bool dominates = std::all_of(chords.begin(), chords.end(), [&](const Enclosure& c) {
    return &c == &chords[best] || c.hi().cmp(chords[best].lo()) <= 0;
  });
  if (points[best].is_rational() && dominates) {
    out.norm = torus_norm(Rational(points[best].rational() * (m - n)));
  }
  return out;
}

}  // namespace

DistanceValue pseudometric(const Integer& m, const Integer& n, const SSpec& s, mpfr_prec_t bits) {
  const Integer d = m - n;
  const auto& v = s.variant();
  if (const auto* e = std::get_if<SSpec::Explicit>(&v)) return explicit_distance(m, n, e->points, bits);
  if (const auto* g = std::get_if<SSpec::Grid>(&v)) {
    GridMax best = grid_max_norm(d, g->size);
    return rational_distance(best.norm, TorusPoint(Rational(best.index, g->size)), bits);
  }
  const DSequence& b = std::get<SSpec::InvSeq>(v).seq;
  const Integer limit = 2 * abs(d);
  std::size_t best = 1;
  Rational best_norm = 0;
  std::size_t j = 1;
  if (d != 0) {
    for (;; ++j) {
      if (!b.has_term(j)) {
        --j;
        break;
      }
      Integer bj = b.term(j);
      Rational t = torus_norm(Rational(d, bj));
      if (t > best_norm) {
        best_norm = t;
        best = j;
      }
      // Past 2|d| the norms |d|/b_j decrease, so the first such term dominates the rest.
      if (bj > limit) break;
    }
  }
  DistanceValue out = rational_distance(best_norm, TorusPoint(Rational(1, b.term(best))), bits);
  out.prefix_bound = j;
  return out;
}

std::size_t invseq_violation_prefix(const Integer& k, const DSequence& b, std::size_t level) {
  if (level == 0) throw std::invalid_argument("level must be >= 1");
  const Integer bound = 4 * Integer(static_cast<unsigned long>(level)) * abs(k);
  std::size_t last = 0;
  for (std::size_t j = 1; b.has_term(j) && b.term(j) <= bound; ++j) last = j;
  return last;
}

Verdict uniform_member(const Integer& k, const SSpec& s, std::size_t level, const PrecisionPolicy& policy,
                       std::optional<std::size_t> explicit_prefix) {
  if (level == 0) throw std::invalid_argument("uniform_member: level must be >= 1");
  if (k == 0) return Verdict::in("0 lies in every neighbourhood");
  const Rational delta(1, 4 * static_cast<long>(level));
  const auto& v = s.variant();

  if (const auto* e = std::get_if<SSpec::Explicit>(&v)) {
    std::vector<Verdict> verdicts;
    for (const TorusPoint& x : e->points) {
      Verdict one = band_member(x.multiple(k), delta, policy);
      if (one.is_out()) {
        one.reason = "x = " + x.literal() + ": " + one.reason;
        return one;
      }
      verdicts.push_back(std::move(one));
    }
    return all_of(verdicts);
  }

  if (const auto* g = std::get_if<SSpec::Grid>(&v)) {
    GridMax best = grid_max_norm(k, g->size);
    std::string where = "max over grid:" + g->size.get_str() + " of ||k x|| = " + to_string(best.norm);
    if (best.norm <= delta) return Verdict::in(where + " <= " + to_string(delta));
    return Verdict::out(where + " > " + to_string(delta) + " at x = " + to_string(Rational(best.index, g->size)));
  }

  const DSequence& b = std::get<SSpec::InvSeq>(v).seq;
  std::size_t prefix = explicit_prefix ? *explicit_prefix : invseq_violation_prefix(k, b, level);
  if (b.length()) prefix = std::min(prefix, *b.length());
  for (std::size_t j = 1; j <= prefix; ++j) {
    Rational t = torus_norm(Rational(k, b.term(j)));
    if (t > delta) {
      return Verdict::out("||k/b_" + std::to_string(j) + "|| = " + to_string(t) + " > " + to_string(delta));
    }
  }
  return Verdict::in("||k/b_j|| <= " + to_string(delta) + " for j <= " + std::to_string(prefix) +
                     (explicit_prefix ? std::string() : "; later terms have |k|/b_j < 1/(4n)"));
}

TranslationReport translation_invariance_check(const Integer& m, const Integer& n, const Integer& k, const SSpec& s,
                                               mpfr_prec_t bits) {
  TranslationReport report{pseudometric(m, n, s, bits), pseudometric(m + k, n + k, s, bits)};
  if (report.base.norm && report.shifted.norm) {
    report.exact = true;
    report.equal = *report.base.norm == *report.shifted.norm;
  } else {
    report.equal = report.base.value.overlaps(report.shifted.value);
  }
  return report;
}

Verdict triangle_inequality(const Integer& m, const Integer& n, const Integer& k, const SSpec& s,
                            const PrecisionPolicy& policy) {
  mpfr_prec_t bits = std::min(policy.start_bits, policy.ceiling_bits);
  DistanceValue mk = pseudometric(m, k, s, bits);
  DistanceValue mn = pseudometric(m, n, s, bits);
  DistanceValue nk = pseudometric(n, k, s, bits);
  // A chord bounded by one summand's chord needs no sine: the chord is monotone in the norm.
  if (mk.norm && ((mn.norm && *mk.norm <= *mn.norm) || (nk.norm && *mk.norm <= *nk.norm))) {
    return Verdict::in("d(m,k) is bounded by a single summand (exact norm comparison)");
  }
  for (;;) {
    Enclosure rhs = mn.value + nk.value;
    if (mk.value.hi().cmp(rhs.lo()) <= 0) {
      Verdict v = Verdict::in("d(m,k) in " + mk.value.to_string(12) + " <= " + rhs.to_string(12));
      v.precision_bits = static_cast<unsigned>(bits);
      return v;
    }
    if (mk.value.lo().cmp(rhs.hi()) > 0) {
      Verdict v = Verdict::out("d(m,k) in " + mk.value.to_string(12) + " > " + rhs.to_string(12));
      v.precision_bits = static_cast<unsigned>(bits);
      return v;
    }
    if (bits >= policy.ceiling_bits) {
      return Verdict::unknown("enclosures overlap at the precision ceiling", static_cast<unsigned>(bits));
    }
    bits = std::min(bits * 2, policy.ceiling_bits);
    mk = pseudometric(m, k, s, bits);
    mn = pseudometric(m, n, s, bits);
    nk = pseudometric(n, k, s, bits);
  }
}

std::vector<ScanRow> dense_limit_scan(const Integer& m, const Integer& n, const std::vector<Integer>& grid_sizes,
                                      mpfr_prec_t bits) {
  if (m == n) throw std::invalid_argument("dense_limit_scan: m must differ from n");
  const Integer d = abs(Integer(m - n));
  std::vector<ScanRow> rows;
  for (const Integer& size : grid_sizes) {
    DistanceValue value = pseudometric(m, n, SSpec::grid(size), bits);
    Enclosure floor = two_cos_pi_over_2n(size, bits);
    // 2cos(pi/2N) = 2 sin(pi (N-1)/(2N)); sin is increasing on [0, pi/2].
    bool meets = *value.norm >= Rational(size - 1, 2 * size);
    // d i / N runs over the multiples of 1/M, M = N / gcd(d, N); the largest norm is
    // 1/2 for even M and (M-1)/(2M) for odd M, which reaches the floor only when M = N.
    Integer g = gcd(d, size);
    Integer period = size / g;
    bool applies = g == 1 || period % 2 == 0;
    rows.push_back(ScanRow{size, std::move(value), std::move(floor), applies, meets});
  }
  return rows;
}

}  // namespace ztop
