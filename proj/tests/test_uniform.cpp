#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ztop/uniform.hpp"

using namespace ztop;

namespace {

Rational q(long a, long b) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

SSpec set_of(std::initializer_list<Rational> xs) {
  std::vector<TorusPoint> pts;
  for (const Rational& x : xs) pts.emplace_back(x);
  return SSpec::explicit_set(pts);
}

}  // namespace

TEST(Pseudometric, ClosedFormExamples) {
  DistanceValue d = pseudometric(3, 1, set_of({q(1, 4)}));
  EXPECT_TRUE(d.exact());
  EXPECT_TRUE(d.value.contains(Rational(2)));
  d = pseudometric(1, 0, set_of({q(1, 6)}));
  EXPECT_TRUE(d.value.contains(Rational(1)));
  EXPECT_TRUE(d.exact());
  d = pseudometric(9, 9, SSpec::grid(17));
  EXPECT_TRUE(d.value.contains(Rational(0)));
  EXPECT_TRUE(d.exact());
}

TEST(Pseudometric, ExplicitMaxTakesSmallestIndexOnTies) {
  DistanceValue d = pseudometric(1, 0, set_of({q(1, 3), q(2, 3), q(1, 2)}));
  EXPECT_EQ(d.attaining_point->literal(), "1/2");
  d = pseudometric(1, 0, set_of({q(1, 3), q(2, 3)}));
  EXPECT_EQ(d.attaining_point->literal(), "1/3");
  EXPECT_EQ(*d.norm, q(1, 3));
}

TEST(Pseudometric, MixedSetsReportEnclosures) {
  SSpec s = SSpec::parse("set:1/8,sqrt:2");
  DistanceValue d = pseudometric(1, 0, s, 128);
  // 2 sin(pi * 0.41421356) = 1.9337...
  EXPECT_NEAR(d.value.lo().to_double(), 2.0 * std::sin(M_PI * (std::sqrt(2.0) - 1.0)), 1e-12);
  EXPECT_FALSE(d.norm.has_value());
  EXPECT_FALSE(d.attaining_point->is_rational());
}

TEST(GridMax, MatchesEnumeration) {
  for (long n = 1; n <= 60; ++n) {
    for (long d = -90; d <= 90; ++d) {
      Rational best = -1;
      long index = -1;
      for (long i = 0; i < n; ++i) {
        Rational t = torus_norm(q(d * i, n));
        if (t > best) {
          best = t;
          index = i;
        }
      }
      GridMax g = grid_max_norm(d, n);
      ASSERT_EQ(g.norm, best) << d << " " << n;
      ASSERT_EQ(g.index, index) << d << " " << n;
    }
  }
  EXPECT_THROW(grid_max_norm(1, 0), std::invalid_argument);
}

TEST(InvSeq, DistanceMatchesLongPrefix) {
  for (const char* lit : {"padic:2", "padic:3", "factorial", "ratios:2,5"}) {
    DSequence b = DSequence::parse(lit);
    for (long d = -400; d <= 400; ++d) {
      Rational best = 0;
      for (std::size_t j = 1; j <= 40; ++j) best = std::max(best, torus_norm(Rational(d, b.term(j))));
      DistanceValue v = pseudometric(d, 0, SSpec::inverse_sequence(b));
      ASSERT_EQ(*v.norm, best) << lit << " " << d;
    }
  }
}

TEST(InvSeq, ViolationPrefixLemma) {
  for (const char* lit : {"padic:2", "padic:5", "factorial"}) {
    DSequence b = DSequence::parse(lit);
    for (std::size_t n = 1; n <= 4; ++n) {
      Rational delta(1, 4 * static_cast<long>(n));
      for (long k = -500; k <= 500; ++k) {
        std::size_t prefix = invseq_violation_prefix(k, b, n);
        for (std::size_t j = prefix + 1; j <= prefix + 25; ++j) {
          ASSERT_LE(torus_norm(Rational(k, b.term(j))), delta) << lit << " k=" << k << " j=" << j;
        }
      }
    }
  }
  EXPECT_EQ(invseq_violation_prefix(0, DSequence::padic(2), 3), 0u);
  EXPECT_EQ(invseq_violation_prefix(1, DSequence::padic(2), 1), 3u);  // 1, 2, 4 <= 4
}

TEST(UniformMember, Examples) {
  EXPECT_TRUE(uniform_member(2, set_of({q(1, 8)}), 1).is_in());
  Verdict v = uniform_member(1, SSpec::inverse_sequence(DSequence::padic(2)), 1);
  EXPECT_TRUE(v.is_out());
  EXPECT_NE(v.reason.find("b_2"), std::string::npos);
  EXPECT_TRUE(uniform_member(0, SSpec::grid(5), 3).is_in());
  EXPECT_THROW(uniform_member(1, SSpec::grid(5), 0), std::invalid_argument);
}

TEST(UniformMember, GridAgreesWithPointwiseBands) {
  for (long n = 1; n <= 24; ++n) {
    SSpec grid = SSpec::grid(n);
    std::vector<TorusPoint> pts;
    for (long i = 0; i < n; ++i) pts.emplace_back(q(i, n));
    SSpec explicit_grid = SSpec::explicit_set(pts);
    for (std::size_t level = 1; level <= 3; ++level) {
      for (long k = -60; k <= 60; ++k) {
        EXPECT_EQ(uniform_member(k, grid, level).kind, uniform_member(k, explicit_grid, level).kind);
      }
    }
  }
}

TEST(UniformMember, InvSeqIsStableUnderLongerPrefix) {
  for (const char* lit : {"padic:2", "factorial"}) {
    SSpec s = SSpec::inverse_sequence(DSequence::parse(lit));
    for (std::size_t level = 1; level <= 4; ++level) {
      for (long k = -2000; k <= 2000; k += 7) {
        Verdict a = uniform_member(k, s, level);
        Verdict b = uniform_member(k, s, level, {}, 30);
        ASSERT_FALSE(a.is_unknown());
        ASSERT_EQ(a.kind, b.kind) << lit << " " << k;
      }
    }
  }
}

TEST(UniformMember, TruncatedInverseSequenceContainsDeepSubgroup) {
  DSequence b = DSequence::padic(3);
  std::vector<TorusPoint> pts;
  for (std::size_t j = 1; j <= 4; ++j) pts.emplace_back(Rational(1, b.term(j)));
  SSpec s = SSpec::explicit_set(pts);
  for (long k = -2000; k <= 2000; ++k) {
    if (k % 27 != 0) continue;
    for (std::size_t level = 1; level <= 5; ++level) EXPECT_TRUE(uniform_member(k, s, level).is_in());
  }
}

TEST(Translation, Examples) {
  TranslationReport r = translation_invariance_check(0, 1, 7, set_of({q(1, 4)}));
  EXPECT_TRUE(r.exact);
  EXPECT_TRUE(r.equal);
  r = translation_invariance_check(4, 4, -9, SSpec::grid(3));
  EXPECT_TRUE(r.equal);
  r = translation_invariance_check(2, 5, -2, SSpec::grid(12));
  EXPECT_TRUE(r.equal);
  r = translation_invariance_check(2, 5, 11, SSpec::parse("set:sqrt:3"));
  EXPECT_FALSE(r.exact);
  EXPECT_TRUE(r.equal);
}

TEST(Triangle, HoldsOnRandomExplicitSets) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 300; ++i) {
    std::vector<TorusPoint> pts;
    for (int p = 0; p < 1 + static_cast<int>(rng() % 5); ++p) {
      pts.emplace_back(q(static_cast<long>(rng() % 200), 1 + static_cast<long>(rng() % 200)));
    }
    SSpec s = SSpec::explicit_set(pts);
    long m = static_cast<long>(rng() % 2001) - 1000, n = static_cast<long>(rng() % 2001) - 1000,
         k = static_cast<long>(rng() % 2001) - 1000;
    EXPECT_TRUE(triangle_inequality(m, n, k, s).is_in());
  }
}

TEST(Triangle, EqualityIsDecidedExactly) {
  // d(0,4) = 0 at x = 1/4, so d(0,1) = d(4,1) and the inequality is tight.
  Verdict v = triangle_inequality(0, 4, 1, set_of({q(1, 4)}));
  EXPECT_TRUE(v.is_in());
  EXPECT_NE(v.reason.find("exact"), std::string::npos);
  EXPECT_TRUE(triangle_inequality(0, 1, 2, SSpec::parse("set:sqrt:2,1/3")).is_in());
}

TEST(DenseScan, Examples) {
  auto rows = dense_limit_scan(0, 1, {Integer(2), Integer(3)});
  EXPECT_TRUE(rows[0].value.value.contains(Rational(2)));
  EXPECT_NEAR(rows[1].value.value.lo().to_double(), std::sqrt(3.0), 1e-15);
  rows = dense_limit_scan(0, 2, {Integer(4)});
  EXPECT_TRUE(rows[0].value.value.contains(Rational(2)));
  EXPECT_THROW(dense_limit_scan(3, 3, {Integer(4)}), std::invalid_argument);
}

TEST(DenseScan, FloorHoldsExactlyWhenTheOrbitHasEvenOrFullPeriod) {
  for (long d = 1; d <= 12; ++d) {
    std::vector<Integer> sizes;
    for (long n = 1; n <= 120; ++n) sizes.emplace_back(n);
    for (const ScanRow& r : dense_limit_scan(0, d, sizes, 96)) {
      long n = r.grid_size.get_si();
      // brute force max over the grid
      Rational best = 0;
      for (long i = 0; i < n; ++i) best = std::max(best, torus_norm(q(d * i, n)));
      bool expect = best >= q(n - 1, 2 * n);
      EXPECT_EQ(r.meets_floor, expect) << d << " " << n;
      EXPECT_EQ(r.floor_applies, expect) << d << " " << n;
      if (expect) EXPECT_GE(r.value.value.hi().cmp(r.floor.lo()), 0);
    }
  }
  // d = 2, N = 6: the orbit is {0, 1/3, 2/3}
  EXPECT_FALSE(dense_limit_scan(0, 2, {Integer(6)})[0].meets_floor);
}

TEST(SSpecLiterals, RoundTrip) {
  EXPECT_EQ(SSpec::parse("set:1/8,1/5").literal(), "set:1/8,1/5");
  EXPECT_EQ(SSpec::parse("grid:64").literal(), "grid:64");
  EXPECT_EQ(SSpec::parse("inv:padic:2").literal(), "inv:padic:2");
  EXPECT_THROW(SSpec::parse("grid:0"), std::invalid_argument);
  EXPECT_THROW(SSpec::parse("cloud:3"), std::invalid_argument);
}
