#include <gtest/gtest.h>

#include "oracles.hpp"
#include "support.hpp"

using namespace commacat;
using support::fixture;
using support::tmod;

namespace {

/// S_S -> P -> S_R over the A2 algebra.
Presentation simple_r_presentation() {
  const auto& f = fixture("a2");
  const ModuleRep& ss = tmod(f, "S_S");
  const ModuleRep& p = tmod(f, "P");
  const ModuleRep& sr = tmod(f, "S_R");
  const auto inc = hom_basis(ss, p);
  const auto proj = hom_basis(p, sr);
  return {{ss, p, inc.at(0)}, {p, sr, proj.at(0)}};
}

}  // namespace

TEST(Presentation, SimpleRPresentationIsValid) {
  const Presentation s = simple_r_presentation();
  EXPECT_TRUE(validate_presentation(s).valid());
  EXPECT_TRUE(is_injective(s.sigma));
  EXPECT_TRUE(is_surjective(s.epi));
}

TEST(Presentation, BrokenExactnessIsReported) {
  Presentation s = simple_r_presentation();
  s.sigma.matrix = FpMatrix(2, s.p0().dim, s.p1().dim);
  EXPECT_FALSE(validate_presentation(s).valid());
}

TEST(Presentation, DSigmaMembersForSimpleR) {
  const auto& f = fixture("a2");
  const Presentation s = simple_r_presentation();
  const auto in = support::members_where(f.setting.t, [&](const ModuleRep& x) { return d_sigma_member(s, x); });
  EXPECT_EQ(in, (std::vector<std::string>{"0", "S_R", "P"}));
}

TEST(Presentation, DSigmaMatchesOracleOnFixtures) {
  const auto& f = fixture("a2");
  const Presentation s = simple_r_presentation();
  for (const auto& x : f.setting.t.members) EXPECT_EQ(d_sigma_member(s, x), oracle::d_sigma_member(s, x));
  for (const char* name : {"a2", "dual-numbers"}) {
    const auto& g = fixture(name);
    for (const auto& [pname, entry] : g.ws->presentations) {
      const auto& u = entry.presentation.target().algebra == g.setting.ctx->r ? g.setting.r : g.setting.s;
      for (const auto& x : u.members)
        EXPECT_EQ(d_sigma_member(entry.presentation, x), oracle::d_sigma_member(entry.presentation, x))
            << name << " " << pname;
    }
  }
}

TEST(Presentation, SimpleRIsPartialSiltingButNotSilting) {
  const auto& f = fixture("a2");
  const Presentation s = simple_r_presentation();
  EXPECT_TRUE(is_partial_silting(tmod(f, "S_R"), s, f.setting.t).holds());
  const Verdict v = is_silting(tmod(f, "S_R"), s, f.setting.t);
  EXPECT_FALSE(v.holds());
  ASSERT_EQ(v.notes.size(), 1u);
  EXPECT_EQ(v.notes[0], "P is in D_sigma but not in Gen");
}

TEST(Presentation, RegularModuleIsSilting) {
  const auto& f = fixture("a2");
  const ModuleRep t = regular_module(f.setting.ctx->t);
  const Presentation s = projective_presentation(t);
  for (const auto& x : f.setting.t.members) EXPECT_TRUE(d_sigma_member(s, x));
  EXPECT_TRUE(is_silting(t, s, f.setting.t).holds());
}

TEST(Presentation, MultiplicationByXExcludesSimple) {
  const auto& f = fixture("dual-numbers");
  const Presentation& s = support::presentation(f, "x on R");
  const ModuleRep& k = support::module(f, "kR");
  EXPECT_EQ(s.p0().dim, 2u);
  EXPECT_EQ(s.p1().dim, 2u);
  EXPECT_FALSE(d_sigma_member(s, k));
  const Verdict v = is_partial_silting(k, s, f.setting.r);
  EXPECT_FALSE(v.holds());
  EXPECT_EQ(v.notes.front(), "module is not in D_sigma");
}

TEST(Presentation, FreePresentationOfZeroAndProjective) {
  const auto r = make_algebra(FDAlgebra::truncated_polynomial(3, 2));
  const Presentation z = free_presentation(zero_module(r));
  EXPECT_EQ(z.p0().dim, 0u);
  EXPECT_EQ(z.p1().dim, 0u);
  const Presentation reg = free_presentation(regular_module(r), true);
  EXPECT_EQ(reg.p1().dim, 0u);
  EXPECT_TRUE(validate_presentation(reg).valid());
}

TEST(Presentation, FreePresentationsAreExact) {
  for (const char* name : {"a2", "dual-numbers"})
    for (const auto& m : fixture(name).setting.t.members)
      for (bool minimize : {false, true}) {
        const Presentation s = free_presentation(m, minimize);
        EXPECT_TRUE(validate_presentation(s).valid()) << name;
        EXPECT_TRUE(is_isomorphic(s.target(), m));
      }
}

TEST(Presentation, ZeroSigmaWithZeroP1AdmitsEverything) {
  const auto& f = fixture("dual-numbers");
  const Presentation s = projective_presentation(regular_module(f.setting.ctx->r));
  for (const auto& x : f.setting.r.members) EXPECT_TRUE(d_sigma_member(s, x));
}

TEST(Presentation, LeftApproximationByIdentity) {
  const auto& f = fixture("a2");
  const ModuleRep t = regular_module(f.setting.ctx->t);
  const auto fam = d_sigma_family("D_sigma", projective_presentation(t));
  EXPECT_TRUE(is_left_approximation(identity_map(t), fam, f.setting.t));
  const ModuleRep& p = tmod(f, "P");
  const ModuleMap to_zero{p, zero_module(p.algebra), FpMatrix(2, 0, p.dim)};
  EXPECT_FALSE(is_left_approximation(to_zero, all_family(), f.setting.t));
}

TEST(Presentation, PresentsCheckRejectsWrongTarget) {
  const auto& f = fixture("a2");
  EXPECT_THROW(is_silting(tmod(f, "S_S"), simple_r_presentation(), f.setting.t), Error);
}
