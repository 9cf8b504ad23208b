#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ztop/exact_torus.hpp"

using namespace ztop;

namespace {

Rational q(long a, long b) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

// 2 sin(pi t) as sqrt(2 - 2 cos(2 pi t)) at 600 bits, nearest rounding.
BigFloat reference_chord(const Rational& t) {
  mpfr_t x, pi;
  mpfr_inits2(600, x, pi, (mpfr_ptr)nullptr);
  mpfr_const_pi(pi, MPFR_RNDN);
  mpfr_mul_q(x, pi, t.get_mpq_t(), MPFR_RNDN);
  mpfr_mul_ui(x, x, 2, MPFR_RNDN);
  mpfr_cos(x, x, MPFR_RNDN);
  mpfr_mul_si(x, x, -2, MPFR_RNDN);
  mpfr_add_ui(x, x, 2, MPFR_RNDN);
  if (mpfr_sgn(x) < 0) mpfr_set_ui(x, 0, MPFR_RNDN);
  mpfr_sqrt(x, x, MPFR_RNDN);
  BigFloat out(600);
  mpfr_set(out.get(), x, MPFR_RNDN);
  mpfr_clears(x, pi, (mpfr_ptr)nullptr);
  return out;
}

bool encloses(const Enclosure& e, const BigFloat& v) { return e.lo().cmp(v) <= 0 && e.hi().cmp(v) >= 0; }

}  // namespace

TEST(ReduceMod1, ExamplesFromTheDefinition) {
  EXPECT_EQ(reduce_mod1(q(7, 5)), q(2, 5));
  EXPECT_EQ(reduce_mod1(q(-1, 4)), q(3, 4));
  EXPECT_EQ(reduce_mod1(Rational(0)), Rational(0));
  EXPECT_EQ(reduce_mod1(Rational(-3)), Rational(0));
}

TEST(TorusNorm, Examples) {
  EXPECT_EQ(torus_norm(q(2, 5)), q(2, 5));
  EXPECT_EQ(torus_norm(q(3, 4)), q(1, 4));
  EXPECT_EQ(torus_norm(q(1, 2)), q(1, 2));
  EXPECT_EQ(torus_norm(q(-7, 3)), q(1, 3));
}

TEST(TorusNorm, AgreesWithNearestIntegerDistance) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    long a = static_cast<long>(rng() % 20001) - 10000;
    long b = 1 + static_cast<long>(rng() % 999);
    Rational x = q(a, b);
    // distance to round-half-up(x), computed independently
    Integer nearest;
    Rational shifted = x + q(1, 2);
    mpz_fdiv_q(nearest.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
    Rational d = abs(Rational(x - nearest));
    EXPECT_EQ(torus_norm(x), d) << x.get_str();
  }
}

TEST(ChordDistance, ClosedFormValuesAreExact) {
  Enclosure two = chord_distance(TorusPoint(q(1, 4)), 3, 1);
  EXPECT_TRUE(two.degenerate());
  EXPECT_TRUE(two.contains(Rational(2)));
  Enclosure one = chord_distance(TorusPoint(q(1, 6)), 1, 0);
  EXPECT_TRUE(one.degenerate());
  EXPECT_TRUE(one.contains(Rational(1)));
  Enclosure zero = chord_distance(TorusPoint(q(3, 7)), 5, 5);
  EXPECT_TRUE(zero.degenerate());
  EXPECT_TRUE(zero.contains(Rational(0)));
}

TEST(ChordOfNorm, EnclosesHighPrecisionCosineFormula) {
  for (long b = 2; b <= 60; ++b) {
    for (long a = 0; 2 * a <= b; ++a) {
      Rational t = q(a, b);
      for (mpfr_prec_t bits : {24, 64, 200}) {
        Enclosure e = chord_of_norm(t, bits);
        EXPECT_TRUE(encloses(e, reference_chord(t))) << t.get_str() << " at " << bits;
        EXPECT_LE(e.lo().to_double(), 2.0);
      }
      double approx = 2.0 * std::sin(M_PI * a / static_cast<double>(b));
      EXPECT_NEAR(chord_of_norm(t, 64).lo().to_double(), approx, 1e-12);
    }
  }
}

TEST(ChordOfNorm, WidthShrinksWithPrecision) {
  Enclosure e = chord_of_norm(q(1, 7), 200);
  EXPECT_TRUE(e.width_at_most_pow2(180));
}

TEST(TwoCos, MatchesChordAtComplementaryAngle) {
  for (long n = 1; n <= 300; n += 7) {
    Enclosure c = two_cos_pi_over_2n(Integer(n), 128);
    BigFloat ref = reference_chord(q(n - 1, 2 * n));
    EXPECT_TRUE(encloses(c, ref)) << n;
  }
}

TEST(BandMember, ClosedBandBoundary) {
  EXPECT_TRUE(band_member(TorusPoint(q(2, 8)), q(1, 4)).is_in());
  EXPECT_TRUE(band_member(TorusPoint(q(1, 2)), q(1, 4)).is_out());
  EXPECT_TRUE(band_member(TorusPoint(), q(1, 100)).is_in());
}

TEST(BandMember, RejectsDeltaOutsideRange) {
  EXPECT_THROW(band_member(TorusPoint(q(1, 3)), Rational(0)), std::invalid_argument);
  EXPECT_THROW(band_member(TorusPoint(q(1, 3)), q(3, 5)), std::invalid_argument);
}

TEST(IntervalPoints, SqrtTwoBandDecisions) {
  TorusPoint r2 = TorusPoint::parse("sqrt:2");  // 0.41421356...
  EXPECT_TRUE(band_member(r2, q(42, 100)).is_in());
  EXPECT_TRUE(band_member(r2, q(41, 100)).is_out());
  EXPECT_TRUE(certified_nonzero(r2.multiple(1000)).is_in());
}

TEST(IntervalPoints, UnresolvableComparisonIsUnknownAtCeiling) {
  // The decimal 1/4 exactly, supplied as an interval, sits on the band edge.
  TorusPoint edge = TorusPoint::parse("dec:0.25:64");
  Verdict v = band_member(edge, q(1, 4), PrecisionPolicy{64, 128});
  EXPECT_FALSE(v.is_out());
}

TEST(IntervalPoints, ParseAndLiteral) {
  EXPECT_EQ(TorusPoint::parse("7/5").literal(), "2/5");
  EXPECT_EQ(TorusPoint::parse("-1/4").literal(), "3/4");
  EXPECT_EQ(TorusPoint::parse("3").literal(), "0");
  EXPECT_FALSE(TorusPoint::parse("sqrt:3").is_rational());
  EXPECT_THROW(TorusPoint::parse("sqrt:4"), std::invalid_argument);
  EXPECT_THROW(TorusPoint::parse("1/0"), std::invalid_argument);
  EXPECT_THROW(TorusPoint::parse("abc"), std::invalid_argument);
}

TEST(IntervalPoints, MultipleAndSumStayEnclosed) {
  TorusPoint x = TorusPoint::parse("sqrt:2");
  Enclosure e = x.multiple(7).enclosure(128);
  // 7 sqrt 2 = 9.899494936611665..., fractional part .899494936611665
  EXPECT_TRUE(e.lo().to_double() < 0.8994949367 && e.hi().to_double() > 0.8994949366);
  TorusPoint s = x + TorusPoint(q(1, 2));
  Enclosure es = s.enclosure(128);
  EXPECT_NEAR(es.lo().to_double(), 0.9142135623730951, 1e-12);
}

TEST(CertifiedNonzero, RationalIsExact) {
  EXPECT_TRUE(certified_nonzero(TorusPoint(q(6, 5))).is_in());
  EXPECT_TRUE(certified_nonzero(TorusPoint(Rational(4))).is_out());
}

TEST(Parsing, OffendingTokenIsReported) {
  try {
    parse_rational("3/x");
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("3/x"), std::string::npos);
  }
  EXPECT_EQ(parse_rational("6/4"), q(3, 2));
  EXPECT_EQ(parse_integer("-12"), Integer(-12));
}

TEST(Verdicts, ConjunctionOrder) {
  std::vector<Verdict> v{Verdict::in(), Verdict::unknown("cap"), Verdict::in()};
  EXPECT_TRUE(all_of(v).is_unknown());
  v.push_back(Verdict::out());
  EXPECT_TRUE(all_of(v).is_out());
  EXPECT_TRUE(all_of(std::vector<Verdict>{Verdict::in()}).is_in());
}
