#include <gtest/gtest.h>

#include "oracles.hpp"
#include "support.hpp"

using namespace commacat;
using support::fixture;

TEST(Comma, RoundTripOnAllFixtures) {
  for (const char* name : {"a2", "dual-numbers"}) {
    const auto& st = fixture(name).setting;
    EXPECT_TRUE(verify_round_trip(st).holds()) << name;
    for (const auto& m : st.t.members) {
      const auto d = from_T_module(*st.ctx, m);
      EXPECT_EQ(to_T_module(*st.ctx, d.object).dim, m.dim);
      EXPECT_TRUE(is_isomorphic(to_T_module(*st.ctx, d.object), m));
    }
  }
}

TEST(Comma, ObjectsSurviveTheTrip) {
  const auto& f = fixture("dual-numbers");
  const auto& ctx = *f.setting.ctx;
  for (const auto& o : f.objects) {
    const auto back = from_T_module(ctx, to_T_module(ctx, o.object)).object;
    EXPECT_EQ(back.a.dim, o.object.a.dim);
    EXPECT_EQ(back.b.dim, o.object.b.dim);
    EXPECT_EQ(hom_comma_dim(ctx, back, o.object), hom_comma_dim(ctx, o.object, o.object));
  }
}

TEST(Comma, DualNumbersUniverseSizes) {
  const auto& f = fixture("dual-numbers");
  EXPECT_EQ(f.setting.t.size(), 19u);
  EXPECT_EQ(f.rights.size(), 8u);
  for (const auto& o : f.objects) EXPECT_TRUE(validate_comma(*f.setting.ctx, o.object).valid()) << o.name;
}

TEST(Comma, HomCommaMatchesHomOverT) {
  for (const char* name : {"a2", "dual-numbers"}) {
    const auto& st = fixture(name).setting;
    const auto objs = hom_test_objects(st);
    for (const auto& x : objs)
      for (const auto& y : objs)
        EXPECT_EQ(hom_comma_dim(*st.ctx, x.object, y.object),
                  oracle::hom_dim(to_T_module(*st.ctx, x.object), to_T_module(*st.ctx, y.object)))
            << name << " " << x.name << " -> " << y.name;
  }
}

TEST(Comma, CommaMapsAreTModuleMaps) {
  const auto& f = fixture("a2");
  const auto& ctx = *f.setting.ctx;
  for (const auto& x : f.objects)
    for (const auto& y : f.objects)
      for (const auto& m : hom_comma(ctx, x.object, y.object)) {
        EXPECT_TRUE(is_comma_map(ctx, x.object, y.object, m));
        const ModuleMap t = comma_map_as_T(ctx, x.object, y.object, m);
        EXPECT_TRUE(is_module_map(t.source, t.target, t.matrix));
      }
}

TEST(Comma, EveryHomFormulaKindHasInstancesAndHolds) {
  for (const char* name : {"a2", "dual-numbers"}) {
    const auto& st = fixture(name).setting;
    const Verdict v = verify_hom_formulas(st, hom_test_objects(st));
    EXPECT_TRUE(v.holds()) << name;
    ASSERT_EQ(v.sub.size(), 5u);
    for (const auto& s : v.sub) EXPECT_EQ(s.result, Outcome::holds) << name << " " << s.claim;
  }
}

TEST(Comma, HomFormulaRejectsWrongShape) {
  const auto& f = fixture("a2");
  const auto& ctx = *f.setting.ctx;
  EXPECT_THROW(hom_formula(ctx, HomKind::target_lower, support::object(f, "P"), support::object(f, "P")), Error);
  EXPECT_EQ(hom_formula(ctx, HomKind::source_free, support::object(f, "P"), support::object(f, "N")), 1u);
}

TEST(Comma, TensorOverTMatchesBasisTripleSpan) {
  for (const char* name : {"a2", "dual-numbers"}) {
    const auto& f = fixture(name);
    const auto& ctx = *f.setting.ctx;
    for (const auto& r : f.rights) {
      const ModuleRep rt = to_T_right_module(ctx, r.module);
      for (const auto& o : f.objects)
        EXPECT_EQ(tensor_T(ctx, r.module, o.object).dim, oracle::tensor_dim(rt, to_T_module(ctx, o.object)))
            << name << " " << r.name << " (x) " << o.name;
    }
  }
}

TEST(Comma, TensorFormulasHold) {
  for (const char* name : {"a2", "dual-numbers"}) {
    const auto& f = fixture(name);
    const Verdict v = verify_tensor_formulas(f.setting, f.rights, f.objects);
    EXPECT_TRUE(v.holds()) << name;
    for (const auto& s : v.sub) EXPECT_EQ(s.result, Outcome::holds) << name << " " << s.claim;
  }
}

TEST(Comma, AdjunctionsHold) {
  for (const char* name : {"a2", "dual-numbers"}) {
    const auto& st = fixture(name).setting;
    const Verdict v = verify_adjunctions(st, hom_test_objects(st));
    EXPECT_TRUE(v.holds()) << name;
    for (const auto& s : v.sub) EXPECT_TRUE(s.holds()) << s.claim;
  }
}

TEST(Comma, FunctorShapes) {
  const auto& f = fixture("a2");
  const auto& ctx = *f.setting.ctx;
  const ModuleRep k = regular_module(ctx.r), ks = regular_module(ctx.s);
  EXPECT_TRUE(comma_isomorphic(ctx, functor_p(ctx, k, zero_module(ctx.s)), support::object(f, "P")));
  EXPECT_TRUE(comma_isomorphic(ctx, functor_h(ctx, zero_module(ctx.r), ks), support::object(f, "P")));
  EXPECT_TRUE(comma_isomorphic(ctx, functor_h(ctx, k, zero_module(ctx.s)), support::object(f, "S_R")));
  EXPECT_TRUE(phi_is_iso(ctx, support::object(f, "P")));
  EXPECT_FALSE(phi_is_mono(ctx, support::object(f, "N")));
}

TEST(Comma, BadPhiNamesBalanceRelation) {
  const auto& f = fixture("dual-numbers");
  const auto& ctx = *f.setting.ctx;
  const CommaObject bad{regular_module(ctx.r), regular_module(ctx.s), FpMatrix::from_rows(2, {{0, 1}})};
  const auto rep = validate_comma(ctx, bad);
  ASSERT_FALSE(rep.valid());
  EXPECT_NE(rep.violations.front().find("balance relation"), std::string::npos);
  EXPECT_THROW(to_T_module(ctx, bad), Error);
}

TEST(Comma, CommaFamilies) {
  const auto& f = fixture("a2");
  const auto& ctx = f.setting.ctx;
  const auto u_all = comma_family(ctx, CommaFamilyKind::U, all_family(), all_family());
  const auto b_all = comma_family(ctx, CommaFamilyKind::B, all_family(), all_family());
  const auto j_all = comma_family(ctx, CommaFamilyKind::J, all_family(), all_family());
  const auto& t = f.setting.t;
  EXPECT_EQ(support::members_where(t, [&](const ModuleRep& m) { return u_all.contains(m); }).size(), 5u);
  // phi mono: S_R has phi: U (x) k -> 0, not mono
  EXPECT_EQ(support::members_where(t, [&](const ModuleRep& m) { return b_all.contains(m); }),
            (std::vector<std::string>{"0", "S_S", "P"}));
  // phi~ epi: A -> Hom(U, B); fails when B is nonzero and phi vanishes
  EXPECT_EQ(support::members_where(t, [&](const ModuleRep& m) { return j_all.contains(m); }),
            (std::vector<std::string>{"0", "S_R", "P"}));
}

TEST(Comma, SigmaForPPresentsP) {
  for (const char* name : {"a2", "dual-numbers"}) {
    const auto& f = fixture(name);
    const auto& ctx = *f.setting.ctx;
    for (const auto& tr : f.transfers) {
      const Presentation s = sigma_for_p(ctx, tr.a.sigma, tr.b.sigma);
      EXPECT_TRUE(validate_presentation(s).valid());
      const ModuleRep pt = to_T_module(ctx, functor_p(ctx, tr.a.module, tr.b.module));
      EXPECT_TRUE(is_isomorphic(s.target(), pt)) << name << " " << tr.name;
    }
  }
}
