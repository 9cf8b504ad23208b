#include <gtest/gtest.h>

#include <random>

#include "ztop/weak.hpp"

using namespace ztop;

namespace {

Rational q(long a, long b) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

CharacterSet chars(std::initializer_list<Rational> xs) {
  std::vector<TorusPoint> pts;
  for (const Rational& x : xs) pts.emplace_back(x);
  return CharacterSet(pts);
}

// ||k a / b|| via integer residues.
Rational residue_norm(long k, long a, long b) {
  long r = ((k % b) * (a % b)) % b;
  if (r < 0) r += b;
  return q(std::min(r, b - r), b);
}

}  // namespace

TEST(WeakMember, Examples) {
  CharacterSet f = chars({q(1, 5)});
  EXPECT_TRUE(weak_member(5, f, q(1, 10)).is_in());
  EXPECT_TRUE(weak_member(2, f, q(1, 10)).is_out());
  EXPECT_TRUE(weak_member(0, f, q(1, 10)).is_in());
  EXPECT_THROW(weak_member(1, f, Rational(0)), std::invalid_argument);
}

TEST(WeakMember, AgreesWithResidueArithmetic) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    long a1 = 1 + rng() % 50, b1 = 2 + rng() % 60, a2 = 1 + rng() % 50, b2 = 2 + rng() % 60;
    Rational delta = q(1 + rng() % 10, 21);
    CharacterSet f = chars({q(a1, b1), q(a2, b2)});
    for (long k = -300; k <= 300; ++k) {
      bool expect = residue_norm(k, a1, b1) <= delta && residue_norm(k, a2, b2) <= delta;
      EXPECT_EQ(weak_member(k, f, delta).is_in(), expect) << k;
    }
  }
}

TEST(WeakMember, IrrationalCharacterIsDecided) {
  CharacterSet f = CharacterSet::parse("sqrt:2");
  // ||5 sqrt 2|| = ||7.0710678|| = 0.0710678
  EXPECT_TRUE(weak_member(5, f, q(1, 10)).is_in());
  EXPECT_TRUE(weak_member(5, f, q(1, 20)).is_out());
}

TEST(CharacterSet, PeriodIsLcmOfDenominators) {
  EXPECT_EQ(*chars({q(1, 4), q(1, 6)}).period(), 12);
  EXPECT_FALSE(CharacterSet::parse("1/3,sqrt:5").period().has_value());
  EXPECT_THROW(CharacterSet(std::vector<TorusPoint>{}), std::invalid_argument);
}

TEST(Separation, Examples) {
  SeparationResult r = separation_witness(6, chars({q(1, 5)}), 4);
  ASSERT_TRUE(r.verdict.is_in());
  EXPECT_EQ(r.witness->literal(), "1/5");
  r = separation_witness(6, chars({q(1, 7)}), 4);
  ASSERT_TRUE(r.verdict.is_in());
  EXPECT_EQ(r.witness->literal(), "1/7");
  r = separation_witness(5, chars({q(1, 5)}), 4);
  EXPECT_FALSE(r.witness.has_value());
  EXPECT_TRUE(r.verdict.is_out());
  EXPECT_NE(r.verdict.reason.find("NotFound(4)"), std::string::npos);
  EXPECT_THROW(separation_witness(0, chars({q(1, 5)}), 4), std::invalid_argument);
}

TEST(Separation, NotFoundUsesThePeriodArgument) {
  // 12 kills both generators, hence all of H.
  SeparationResult r = separation_witness(12, chars({q(1, 4), q(1, 6)}), 1);
  EXPECT_TRUE(r.verdict.is_out());
  // An interval point that is secretly 1/4 has no period to appeal to.
  r = separation_witness(4, CharacterSet::parse("dec:0.25:64"), 2, PrecisionPolicy{64, 128});
  EXPECT_TRUE(r.verdict.is_unknown());
  r = separation_witness(7, CharacterSet::parse("sqrt:2"), 2);
  EXPECT_TRUE(r.verdict.is_in());
}

TEST(Separation, WordsCombineGenerators) {
  // 6 * 1/4 = 3/2 and 6 * 1/6 = 1: the first generator already separates.
  SeparationResult r = separation_witness(6, chars({q(1, 6), q(1, 4)}), 3);
  ASSERT_TRUE(r.verdict.is_in());
  EXPECT_EQ(r.word.size(), 2u);
}

TEST(Continuity, Examples) {
  DSequence p2 = DSequence::padic(2);
  ContinuityResult c = character_continuity(TorusPoint(q(3, 8)), p2, 10);
  EXPECT_TRUE(c.verdict.is_in());
  EXPECT_EQ(*c.level, 4u);
  EXPECT_TRUE(character_continuity(TorusPoint(q(1, 3)), p2, 10).verdict.is_out());
  EXPECT_TRUE(character_continuity(TorusPoint(), p2, 10).verdict.is_in());
  EXPECT_TRUE(character_continuity(TorusPoint::parse("sqrt:2"), p2, 10).verdict.is_out());
}

TEST(Continuity, FactorialSeesEveryDenominator) {
  DSequence f = DSequence::factorial();
  for (long b = 2; b <= 20; ++b) {
    ContinuityResult c = character_continuity(TorusPoint(q(1, b)), f, 20);
    ASSERT_TRUE(c.verdict.is_in()) << b;
    // least n with b | n!
    Integer fact = 1;
    std::size_t n = 1;
    while (fact % b != 0) fact *= static_cast<unsigned long>(++n);
    EXPECT_EQ(*c.level, n);
  }
}

TEST(Continuity, PeriodicTailsAreUnknownPastTheCap) {
  DSequence b = DSequence::parse("ratios:2,3");
  EXPECT_TRUE(character_continuity(TorusPoint(q(1, 9)), b, 10).verdict.is_in());
  EXPECT_TRUE(character_continuity(TorusPoint(q(1, 27)), b, 4).verdict.is_unknown());
  EXPECT_TRUE(character_continuity(TorusPoint(q(1, 5)), b, 4).verdict.is_out());
}

TEST(Continuity, ValuationArgumentClosesPrefixSequences) {
  // 1, 3, then powers of 2: v_3 stays at 1, so 1/9 is never reached.
  DSequence b = DSequence::parse("list:1,3;padic:2");
  EXPECT_TRUE(character_continuity(TorusPoint(q(1, 9)), b, 6).verdict.is_out());
  EXPECT_TRUE(character_continuity(TorusPoint(q(1, 24)), b, 6).verdict.is_in());
}

TEST(Prufer, Examples) {
  EXPECT_EQ(prufer_add(PruferElement::parse("1/2^1"), PruferElement::parse("1/2^1")).value(), Rational(0));
  EXPECT_EQ(prufer_add(PruferElement::parse("1/2^2"), PruferElement::parse("1/2^2")).value(), q(1, 2));
  PruferElement s = prufer_add(PruferElement::parse("2/3^2"), PruferElement::parse("8/3^2"));
  EXPECT_EQ(s.value(), q(1, 9));
  EXPECT_EQ(s.literal(), "1/3^2");
}

TEST(Prufer, CanonicalForms) {
  EXPECT_EQ(PruferElement(2, 4, 3).literal(), "1/2^1");
  EXPECT_EQ(PruferElement(3, -1, 2).literal(), "8/3^2");
  EXPECT_EQ(PruferElement(5, 25, 2).literal(), "0/5^0");
  EXPECT_EQ(PruferElement(2, 6, 3), PruferElement(2, 3, 2));
  EXPECT_THROW(PruferElement(4, 1, 1), std::invalid_argument);
  EXPECT_THROW(prufer_add(PruferElement(2, 1, 1), PruferElement(3, 1, 1)), std::invalid_argument);
  EXPECT_THROW(PruferElement::parse("1/2"), std::invalid_argument);
}

TEST(Prufer, AdditionMatchesRationalArithmetic) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 500; ++i) {
    long p = std::vector<long>{2, 3, 5, 7}[rng() % 4];
    PruferElement u(p, static_cast<long>(rng() % 1000), rng() % 5);
    PruferElement v(p, static_cast<long>(rng() % 1000), rng() % 5);
    Rational expect = u.value() + v.value();
    while (expect >= 1) expect -= 1;
    EXPECT_EQ(prufer_add(u, v).value(), expect);
    EXPECT_TRUE(prufer_add(u, v).order() > 0);
  }
}
