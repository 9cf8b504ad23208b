#include <gtest/gtest.h>

#include <sstream>

#include "ztop/cli.hpp"
#include "ztop/serialize.hpp"
#include "ztop/topology.hpp"

using namespace ztop;

// A single rational point gives the same band through the weak and uniform routes.
TEST(Integration, UniformSingletonMatchesWeakBand) {
  for (long den : {3L, 7L, 12L, 50L}) {
    Rational x(1, den);
    CharacterSet chars(std::vector<TorusPoint>{TorusPoint(x)});
    SSpec s = SSpec::explicit_set({TorusPoint(x)});
    for (std::size_t level = 1; level <= 4; ++level) {
      Rational band(1, 4 * static_cast<long>(level));
      for (long k = -300; k <= 300; ++k) {
        EXPECT_EQ(uniform_member(k, s, level).kind, weak_member(k, chars, band).kind) << den << " " << k;
      }
    }
  }
}

// b_n Z is a subgroup, so its cover by 0..b_n - 1 is exact and digits agree.
TEST(Integration, BadicCoverMatchesDigits) {
  DSequence f = DSequence::factorial();
  NeighborhoodSpec v = NeighborhoodSpec::badic(f, 4);
  CoverResult c = cover_witness(v, Window(-500, 500));
  ASSERT_TRUE(c.witness.has_value());
  EXPECT_TRUE(replay_cover(*c.witness, v).complete());
  for (long k = -500; k <= 500; ++k) {
    DigitVector d = digits(k, f);
    bool low_digits_zero = true;
    for (std::size_t j = 0; j < std::min<std::size_t>(3, d.digits.size()); ++j) low_digits_zero &= d.digits[j] == 0;
    EXPECT_EQ(member(k, v).is_in(), low_digits_zero) << k;
  }
}

// One slot with minimum m is exactly {0} u {+-a_j : j >= m}.
TEST(Integration, OneSlotBracketIsTheTail) {
  DSequence p3 = DSequence::padic(3);
  for (long g = -800; g <= 800; ++g) {
    bool expect = g == 0;
    for (std::size_t j = 2; j <= 8; ++j) expect = expect || std::abs(g) == p3.term(j);
    EXPECT_EQ(member(g, NeighborhoodSpec::parse("zel:padic:3@2")).is_in(), expect) << g;
  }
}

// A level-n b-adic set sits inside the Zelenyuk set built from the same sequence.
TEST(Integration, SubgroupInsideBracketOnlyAtZero) {
  CompareReport r = compare_window({NeighborhoodSpec::parse("zel:padic:2@3")},
                                   {NeighborhoodSpec::parse("badic:padic:2@3")}, Window(-256, 256));
  EXPECT_EQ(r.first_refines_second[0].status, AxiomStatus::Pass);
  EXPECT_EQ(r.second_refines_first[0].status, AxiomStatus::Fail);
  EXPECT_EQ(r.second_refines_first[0].counterexamples[0].second, 12);
}

TEST(Integration, CliResultIsTheModuleResult) {
  std::ostringstream out, err;
  int code = cli::run({"--no-meta", "weak", "cont", "--chi", "3/8", "--seq", "padic:2"}, out, err);
  ASSERT_EQ(code, 0) << err.str();
  Json doc = Json::parse(out.str());
  ContinuityResult direct = character_continuity(TorusPoint(Rational(3, 8)), DSequence::padic(2), 20);
  EXPECT_EQ(doc["result"], to_json(direct));
}
