#include <gtest/gtest.h>

#include <map>

#include "oracles.hpp"
#include "support.hpp"

using namespace commacat;
using support::fixture;

namespace {

const TransferInstance& transfer(const Fixture& f, const std::string& name) {
  for (const auto& t : f.transfers)
    if (t.name == name) return t;
  throw Error("no transfer " + name);
}

std::string note_with(const Verdict& v, const std::string& prefix) {
  for (const auto& n : v.notes)
    if (n.rfind(prefix, 0) == 0) return n;
  return {};
}

struct Expected {
  Outcome b;
  Outcome j;
};

}  // namespace

TEST(SiltingTransfer, A2Instances) {
  const auto& f = fixture("a2");
  const std::map<std::string, std::string> sides = {{"k,k", "over T: true; components: true/true/true"},
                                                    {"k,0", "over T: false; components: true/false/false"},
                                                    {"0,0", "over T: false; components: false/false/true"}};
  for (const auto& [name, note] : sides) {
    const auto& t = transfer(f, name);
    const Verdict v = verify_silting_transfer(f.setting, t.a.module, t.a.sigma, t.b.module, t.b.sigma);
    EXPECT_TRUE(v.holds()) << name;
    EXPECT_EQ(v.notes.front(), note) << name;
    EXPECT_TRUE(replay_all(v).empty());
  }
}

TEST(SiltingTransfer, A2SimpleSWitnessForZeroB) {
  const auto& f = fixture("a2");
  const auto& t = transfer(f, "k,0");
  const Verdict v = verify_silting_transfer(f.setting, t.a.module, t.a.sigma, t.b.module, t.b.sigma);
  const Verdict& lhs = v.sub.front();
  EXPECT_NE(std::find(lhs.notes.begin(), lhs.notes.end(), "S_S is in D_sigma but not in Gen"), lhs.notes.end());
}

TEST(SiltingTransfer, DualNumbersMultiplicationByX) {
  const auto& f = fixture("dual-numbers");
  const auto& t = transfer(f, "k,k");
  const Verdict full = verify_silting_transfer(f.setting, t.a.module, t.a.sigma, t.b.module, t.b.sigma);
  const Verdict part = verify_silting_transfer(f.setting, t.a.module, t.a.sigma, t.b.module, t.b.sigma, true);
  EXPECT_TRUE(full.holds());
  EXPECT_TRUE(part.holds());
  EXPECT_EQ(part.notes.front(), "over T: false; components: false/true/true");
  EXPECT_FALSE(part.sub[0].holds());
  EXPECT_FALSE(part.sub[1].holds());
}

TEST(SiltingTransfer, RegularPairIsSilting) {
  const auto& f = fixture("dual-numbers");
  const auto& t = transfer(f, "R,k");
  const Verdict v = verify_silting_transfer(f.setting, t.a.module, t.a.sigma, t.b.module, t.b.sigma);
  EXPECT_EQ(v.notes.front(), "over T: true; components: true/true/true");
}

TEST(SiltingTransfer, MembershipsMatchOracles) {
  for (const char* name : {"a2", "dual-numbers"}) {
    const auto& f = fixture(name);
    const auto& ctx = *f.setting.ctx;
    for (const auto& t : f.transfers) {
      const Presentation s = sigma_for_p(ctx, t.a.sigma, t.b.sigma);
      const ModuleRep pt = to_T_module(ctx, functor_p(ctx, t.a.module, t.b.module));
      for (const auto& x : f.setting.t.members) {
        EXPECT_EQ(d_sigma_member(s, x), oracle::d_sigma_member(s, x)) << name << " " << t.name;
        EXPECT_EQ(gen_member(pt, x), oracle::gen_member(pt, x)) << name << " " << t.name;
      }
    }
  }
}

TEST(DSigma, DecompositionAndTorsionClassesSplit) {
  for (const char* name : {"a2", "dual-numbers"}) {
    const auto& f = fixture(name);
    for (const auto& t : f.transfers) {
      EXPECT_TRUE(verify_dsigma_decomposition(f.setting, t.a.sigma, t.b.sigma).holds()) << name << " " << t.name;
      EXPECT_TRUE(verify_dsigma_torsion_class(f.setting, t.a.sigma, t.b.sigma).holds()) << name << " " << t.name;
    }
  }
}

TEST(PerpFamilies, A2Outcomes) {
  const auto& st = fixture("a2").setting;
  const auto all = all_family(), zero = zero_family();
  EXPECT_TRUE(verify_prop_B_perp(st, all, all).holds());
  EXPECT_TRUE(verify_prop_B_perp(st, all, zero).holds());
  EXPECT_TRUE(verify_prop_B_perp(st, zero, zero).holds());
  EXPECT_TRUE(verify_prop_J_perp(st, all, all).holds());
  EXPECT_TRUE(verify_prop_J_perp(st, zero, all).holds());
  EXPECT_TRUE(verify_prop_J_perp(st, zero, zero).holds());

  // the converse inclusions fail even though their side conditions hold
  const Verdict b = verify_prop_B_perp(st, zero, all);
  EXPECT_EQ(b.result, Outcome::fails);
  EXPECT_TRUE(b.sub[0].holds());
  EXPECT_TRUE(b.sub[1].holds());
  EXPECT_EQ(b.sub[2].notes, (std::vector<std::string>{"S_R is in ^perpU[zero,all] but not in B[^perpzero,^perpall]"}));
  const Verdict j = verify_prop_J_perp(st, all, zero);
  EXPECT_EQ(j.result, Outcome::fails);
  EXPECT_TRUE(j.sub[0].holds());
  EXPECT_TRUE(j.sub[1].holds());
  EXPECT_EQ(j.sub[2].notes, (std::vector<std::string>{"S_S is in U[all,zero]^perp but not in J[all^perp,zero^perp]"}));
}

TEST(PerpFamilies, ConverseFailureHasNonzeroExt) {
  // S_R has no maps to the zero-B members yet extends nontrivially by S_S
  const auto& f = fixture("a2");
  const auto ext = extension_middle_terms(support::tmod(f, "S_R"), support::tmod(f, "S_S"));
  EXPECT_EQ(ext.ext_dim, 1u);
}

TEST(PerpFamilies, EqualityPartsHoldOnDualNumbers) {
  const auto& st = fixture("dual-numbers").setting;
  const auto all = all_family(), zero = zero_family();
  for (const auto* c : {&all, &zero})
    for (const auto* d : {&all, &zero}) {
      const Verdict b = verify_prop_B_perp(st, *c, *d);
      const Verdict j = verify_prop_J_perp(st, *c, *d);
      EXPECT_TRUE(b.sub[0].holds() && b.sub[1].holds()) << b.claim;
      EXPECT_TRUE(j.sub[0].holds() && j.sub[1].holds()) << j.claim;
    }
  EXPECT_EQ(verify_prop_B_perp(st, zero, all).result, Outcome::fails);
  EXPECT_EQ(verify_prop_J_perp(st, all, zero).result, Outcome::fails);
}

TEST(TorsionTransfer, A2Outcomes) {
  const auto& st = fixture("a2").setting;
  const auto all = all_family(), zero = zero_family();
  using P = std::pair<const ModuleFamily*, const ModuleFamily*>;
  const std::vector<P> pairs = {{&all, &zero}, {&zero, &all}};
  // [c-pair index][d-pair index]
  const Expected want[2][2] = {{{Outcome::out_of_scope, Outcome::holds}, {Outcome::fails, Outcome::fails}},
                               {{Outcome::out_of_scope, Outcome::out_of_scope}, {Outcome::holds, Outcome::out_of_scope}}};
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t k = 0; k < 2; ++k) {
      const auto& c = pairs[i];
      const auto& d = pairs[k];
      const Verdict b = verify_thm_torsion_B(st, *c.first, *c.second, *d.first, *d.second);
      const Verdict j = verify_thm_torsion_J(st, *c.first, *c.second, *d.first, *d.second);
      EXPECT_EQ(b.result, want[i][k].b) << b.claim;
      EXPECT_EQ(j.result, want[i][k].j) << j.claim;
      EXPECT_TRUE(replay_all(b).empty());
      EXPECT_TRUE(replay_all(j).empty());
    }
}

TEST(TorsionTransfer, A2DecisiveInstancesAgreeWithOracle) {
  const auto& st = fixture("a2").setting;
  const auto all = all_family(), zero = zero_family();
  const auto bf = comma_family(st.ctx, CommaFamilyKind::B, all, zero);
  const auto uf = comma_family(st.ctx, CommaFamilyKind::U, zero, all);
  EXPECT_FALSE(oracle::is_torsion_pair(bf, uf, st.t));
  const Verdict b = verify_thm_torsion_B(st, all, zero, zero, all);
  EXPECT_EQ(note_with(b.sub[2], "S_R:"), "S_R: trace is outside the torsion class");

  const auto uj = comma_family(st.ctx, CommaFamilyKind::U, all, zero);
  const auto jf = comma_family(st.ctx, CommaFamilyKind::J, zero, all);
  EXPECT_FALSE(oracle::is_torsion_pair(uj, jf, st.t));
  const Verdict j = verify_thm_torsion_J(st, all, zero, zero, all);
  EXPECT_EQ(note_with(j.sub[2], "S_S:"), "S_S: quotient by the trace is outside the torsion-free class");
}

TEST(TorsionTransfer, ZeroPairsHoldOverT) {
  const auto& st = fixture("a2").setting;
  const auto all = all_family(), zero = zero_family();
  EXPECT_TRUE(verify_thm_torsion_B(st, zero, all, zero, all).holds());
  EXPECT_TRUE(verify_thm_torsion_J(st, all, zero, all, zero).holds());
}

TEST(FinalCorollaries, CertificatesReplayOnBothFixtures) {
  for (const char* name : {"a2", "dual-numbers"}) {
    const auto& f = fixture(name);
    for (const auto& t : f.transfers) {
      const Verdict v = verify_final_corollaries(f.setting, t.a.module, t.a.sigma, t.b.module, t.b.sigma);
      EXPECT_NE(v.result, Outcome::fails) << name << " " << t.name;
      EXPECT_TRUE(replay_all(v).empty());
    }
  }
}
