#include <gtest/gtest.h>

#include "ztop/topology.hpp"

using namespace ztop;

namespace {

const AxiomReport& axiom(const AxiomsReport& r, const std::string& name) {
  for (const AxiomReport& a : r.axioms) {
    if (a.axiom == name) return a;
  }
  throw std::logic_error("missing axiom " + name);
}

}  // namespace

TEST(Member, OneOracleForEveryKind) {
  EXPECT_TRUE(member(24, NeighborhoodSpec::parse("badic:factorial@3")).is_in());
  EXPECT_TRUE(member(2, NeighborhoodSpec::parse("weak:1/5@1/10")).is_out());
  EXPECT_TRUE(member(2, NeighborhoodSpec::parse("unif:set:1/8@1")).is_in());
  EXPECT_TRUE(member(3, NeighborhoodSpec::parse("zel:padic:2@1,1")).is_in());
  EXPECT_TRUE(member(3, NeighborhoodSpec::parse("zel:padic:2@rule:shift:1")).is_out());
  EXPECT_TRUE(member(0, NeighborhoodSpec::parse("weak:sqrt:2@1/100")).is_in());
}

TEST(Parse, LiteralsAndErrors) {
  EXPECT_EQ(NeighborhoodSpec::parse("badic:padic:3@2").literal(), "badic:padic:3@2");
  EXPECT_EQ(NeighborhoodSpec::parse("unif:set:1/2,1/4@1").kind_name(), "unif");
  EXPECT_EQ(NeighborhoodSpec::parse("zel:factorial@rule:id").literal(), "zel:factorial@rule:id");
  EXPECT_THROW(NeighborhoodSpec::parse("badic:padic:3"), std::invalid_argument);
  EXPECT_THROW(NeighborhoodSpec::parse("badic:padic:3@0"), std::invalid_argument);
  EXPECT_THROW(NeighborhoodSpec::parse("weak:1/5@3/4"), std::invalid_argument);
  EXPECT_THROW(NeighborhoodSpec::parse("blob:1@1"), std::invalid_argument);
}

TEST(Parse, FamiliesExpandLevels) {
  auto badic = NeighborhoodSpec::parse_family("badic:padic:2@n=1..5");
  ASSERT_EQ(badic.size(), 5u);
  EXPECT_EQ(badic[4].literal(), "badic:padic:2@5");
  auto weak = NeighborhoodSpec::parse_family("weak:1/5@n=1..3");
  ASSERT_EQ(weak.size(), 3u);
  EXPECT_EQ(std::get<NeighborhoodSpec::Weak>(weak[2].variant()).band, Rational(1, 12));
  EXPECT_EQ(NeighborhoodSpec::parse_family("unif:grid:8@2").size(), 1u);
  EXPECT_THROW(NeighborhoodSpec::parse_family("zel:padic:2@n=1..3"), std::invalid_argument);
  EXPECT_THROW(NeighborhoodSpec::parse_family("badic:padic:2@n=3..1"), std::invalid_argument);
}

TEST(Window, ParseAndValidate) {
  Window w = Window::parse("-100..100");
  EXPECT_EQ(w.size(), 201u);
  EXPECT_EQ(w.literal(), "-100..100");
  EXPECT_THROW(Window::parse("1..5"), std::invalid_argument);
  EXPECT_THROW(Window::parse("5"), std::invalid_argument);
}

TEST(Axioms, BadicFamilyPasses) {
  AxiomsReport r = axioms_check_window(NeighborhoodSpec::parse_family("badic:padic:2@n=1..5"),
                                       Window::parse("-1000..1000"));
  for (const char* g : {"G1", "G2", "G4", "G5"}) EXPECT_EQ(axiom(r, g).status, AxiomStatus::Pass) << g;
  EXPECT_EQ(axiom(r, "G3").status, AxiomStatus::NotApplicable);
  // subgroups: each set absorbs its own sums
  EXPECT_NE(axiom(r, "G4").witness->find("V0 + V0 in V0"), std::string::npos);
  EXPECT_EQ(r.overall(), AxiomStatus::Pass);
}

TEST(Axioms, WeakFamilyIsSymmetric) {
  AxiomsReport r = axioms_check_window(NeighborhoodSpec::parse_family("weak:1/5@n=1..3"), Window::parse("-500..500"));
  EXPECT_EQ(axiom(r, "G5").status, AxiomStatus::Pass);
  EXPECT_EQ(axiom(r, "G1").status, AxiomStatus::Pass);
}

TEST(Axioms, SingleWideBandFailsG4) {
  // {k : ||k/5|| <= 1/5} = 5Z + {-1, 0, 1}, and 1 + 1 = 2 escapes
  AxiomsReport r = axioms_check_window({NeighborhoodSpec::parse("weak:1/5@1/5")}, Window::parse("-50..50"));
  const AxiomReport& g4 = axiom(r, "G4");
  EXPECT_EQ(g4.status, AxiomStatus::Fail);
  ASSERT_TRUE(g4.counterexample.has_value());
  EXPECT_NE(g4.counterexample->find("1 + 1 = 2"), std::string::npos);
  EXPECT_EQ(r.overall(), AxiomStatus::Fail);
}

TEST(Axioms, ZelenyukContainsZero) {
  AxiomsReport r = axioms_check_window({NeighborhoodSpec::parse("zel:padic:2@1,1")}, Window::parse("-64..64"));
  EXPECT_EQ(axiom(r, "G1").status, AxiomStatus::Pass);
  EXPECT_EQ(axiom(r, "G5").status, AxiomStatus::Pass);
}

TEST(Axioms, BudgetIsEnforced) {
  EXPECT_THROW(axioms_check_window({NeighborhoodSpec::parse("badic:padic:2@1")}, Window::parse("-100..100"), {}, 50),
               std::length_error);
  EXPECT_THROW(axioms_check_window({}, Window::parse("-1..1")), std::invalid_argument);
}

TEST(Compare, SubgroupInsideUniformBand) {
  // ||4 j / 2|| = ||4 j / 4|| = 0
  CompareReport r = compare_window({NeighborhoodSpec::parse("badic:padic:2@3")},
                                   {NeighborhoodSpec::parse("unif:set:1/2,1/4@1")}, Window::parse("-200..200"));
  ASSERT_EQ(r.first_refines_second.size(), 1u);
  EXPECT_EQ(r.first_refines_second[0].status, AxiomStatus::Pass);
  EXPECT_EQ(*r.first_refines_second[0].included_by, 0u);
}

TEST(Compare, CounterexampleIsFirstInScanOrder) {
  CompareReport r = compare_window({NeighborhoodSpec::parse("badic:factorial@3")},
                                   {NeighborhoodSpec::parse("badic:padic:2@3")}, Window::parse("-24..24"));
  const InclusionEntry& e = r.first_refines_second[0];
  EXPECT_EQ(e.status, AxiomStatus::Fail);
  ASSERT_EQ(e.counterexamples.size(), 1u);
  EXPECT_EQ(e.counterexamples[0].second, 6);
  // nor is 4Z inside 6Z
  EXPECT_EQ(r.second_refines_first[0].status, AxiomStatus::Fail);
}

TEST(Cover, RationalWitnesses) {
  CoverResult c = cover_witness(NeighborhoodSpec::parse("badic:padic:2@3"), Window::parse("-50..50"));
  ASSERT_TRUE(c.witness.has_value());
  EXPECT_EQ(c.witness->translates, (std::vector<Integer>{0, 1, 2, 3}));
  EXPECT_TRUE(replay_cover(*c.witness, NeighborhoodSpec::parse("badic:padic:2@3")).complete());

  NeighborhoodSpec weak = NeighborhoodSpec::parse("weak:1/5@1/10");
  c = cover_witness(weak, Window::parse("-50..50"));
  ASSERT_TRUE(c.witness.has_value());
  EXPECT_EQ(c.witness->translates.size(), 5u);
  EXPECT_TRUE(replay_cover(*c.witness, weak).complete());
}

TEST(Cover, NoProcedureForInfiniteOrderOrOtherKinds) {
  CoverResult c = cover_witness(NeighborhoodSpec::parse("weak:sqrt:2@1/10"), Window::parse("-5..5"));
  EXPECT_FALSE(c.witness.has_value());
  EXPECT_NE(c.failure.find("infinite order"), std::string::npos);
  c = cover_witness(NeighborhoodSpec::parse("unif:inv:padic:2@1"), Window::parse("-5..5"));
  EXPECT_FALSE(c.witness.has_value());
  EXPECT_EQ(c.failure, "no general witness procedure");
  EXPECT_THROW(cover_witness(NeighborhoodSpec::parse("badic:factorial@12"), Window::parse("-5..5"), 1000),
               std::length_error);
}

TEST(Cover, ReplayFindsGapsOfATooSmallCover) {
  NeighborhoodSpec v = NeighborhoodSpec::parse("badic:padic:3@2");
  CoverWitness partial{{Integer(0), Integer(1)}, v.literal(), Window::parse("-6..6")};
  ReplayResult r = replay_cover(partial, v);
  EXPECT_EQ(r.gaps, (std::vector<Integer>{-4, -1, 2, 5}));
  EXPECT_TRUE(r.undecided.empty());
}
