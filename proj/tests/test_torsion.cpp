#include <gtest/gtest.h>

#include "oracles.hpp"
#include "support.hpp"

using namespace commacat;
using support::fixture;
using support::tmod;

namespace {

/// Direct sums of copies of the named members, up to isomorphism.
ModuleFamily sums_of(const std::string& label, std::vector<ModuleRep> gens) {
  return {label, FamilyKind::custom, [gens = std::move(gens)](const ModuleRep& m) {
            if (m.dim == 0) return true;
            std::vector<ModuleRep> parts;
            std::function<bool(std::size_t, const ModuleRep&)> search = [&](std::size_t from, const ModuleRep& acc) {
              if (acc.dim == m.dim) return is_isomorphic(acc, m);
              for (std::size_t i = from; i < gens.size(); ++i)
                if (acc.dim + gens[i].dim <= m.dim && search(i, direct_sum(acc, gens[i]))) return true;
              return false;
            };
            return search(0, zero_module(m.algebra, m.side));
          }};
}

}  // namespace

TEST(Torsion, TrivialPairsHold) {
  const auto& t = fixture("a2").setting.t;
  EXPECT_TRUE(is_torsion_pair(zero_family(), all_family(), t).holds());
  EXPECT_TRUE(is_torsion_pair(all_family(), zero_family(), t).holds());
  EXPECT_FALSE(is_torsion_pair(all_family(), all_family(), t).holds());
  EXPECT_FALSE(is_torsion_pair(zero_family(), zero_family(), t).holds());
}

TEST(Torsion, ProjectiveAndSimpleRAgainstSimpleS) {
  const auto& f = fixture("a2");
  const auto x = sums_of("P,S_R", {tmod(f, "P"), tmod(f, "S_R")});
  const auto y = sums_of("S_S", {tmod(f, "S_S")});
  const Verdict v = is_torsion_pair(x, y, f.setting.t);
  EXPECT_TRUE(v.holds());
  EXPECT_TRUE(oracle::is_torsion_pair(x, y, f.setting.t));
  // t(N) = S_R with quotient S_S
  const auto tr = trace_of({tmod(f, "P"), tmod(f, "S_R")}, tmod(f, "N"));
  EXPECT_TRUE(is_isomorphic(tr.module, tmod(f, "S_R")));
}

TEST(Torsion, PerpOfProjectiveIsSimpleSSums) {
  const auto& f = fixture("a2");
  const auto p = perp_right(explicit_family("P", {tmod(f, "P")}), f.setting.t);
  EXPECT_EQ(support::members_where(f.setting.t, [&](const ModuleRep& m) { return p.contains(m); }),
            (std::vector<std::string>{"0", "S_S"}));
  const auto q = perp_left(explicit_family("S_S", {tmod(f, "S_S")}), f.setting.t);
  EXPECT_EQ(support::members_where(f.setting.t, [&](const ModuleRep& m) { return q.contains(m); }),
            (std::vector<std::string>{"0", "S_R", "P"}));
  EXPECT_EQ(support::members_where(f.setting.t, [&](const ModuleRep& m) { return perp_right(all_family(), f.setting.t).contains(m); }),
            (std::vector<std::string>{"0"}));
}

TEST(Torsion, PairVerdictAgreesWithSubmoduleOracle) {
  const auto& f = fixture("a2");
  const auto& t = f.setting.t;
  std::vector<ModuleFamily> fams = {zero_family(), all_family()};
  for (const auto& n : t.names) fams.push_back(gen_family("Gen " + n, tmod(f, n)));
  for (std::size_t i = 2; i < 7; ++i) {
    fams.push_back(perp_right(fams[i], t));
    fams.push_back(perp_left(fams[i], t));
  }
  for (const auto& x : fams)
    for (const auto& y : fams)
      EXPECT_EQ(is_torsion_pair(x, y, t).holds(), oracle::is_torsion_pair(x, y, t)) << x.label << " / " << y.label;
}

TEST(Torsion, GenAndItsPerpPassHomVanishing) {
  for (const char* name : {"a2", "dual-numbers"}) {
    const auto& t = fixture(name).setting.t;
    for (std::size_t i = 0; i < t.size(); ++i) {
      const auto g = gen_family("Gen", t.members[i]);
      const auto v = is_torsion_pair(g, perp_right(g, t), t);
      for (const auto& n : v.notes) EXPECT_EQ(n.find("Hom("), std::string::npos) << name << " " << n;
    }
  }
}

TEST(Torsion, HoldingPairsAreMutualPerps) {
  const auto& t = fixture("dual-numbers").setting.t;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const auto x = gen_family("Gen", t.members[i]);
    const auto y = perp_right(x, t);
    if (!is_torsion_pair(x, y, t).holds()) continue;
    const auto back = perp_left(y, t);
    for (const auto& m : t.members) EXPECT_EQ(back.contains(m), x.contains(m));
  }
}

TEST(Torsion, SimpleSSumsFormATorsionClass) {
  const auto& f = fixture("a2");
  EXPECT_TRUE(is_torsion_class(sums_of("S_S", {tmod(f, "S_S")}), f.setting.t).holds());
  EXPECT_TRUE(is_torsion_class(all_family(), f.setting.t).holds());
}

TEST(Torsion, ProjectiveSumsAreNotClosedUnderImages) {
  const auto& f = fixture("a2");
  const Verdict v = is_torsion_class(sums_of("P", {tmod(f, "P")}), f.setting.t);
  EXPECT_FALSE(v.holds());
  EXPECT_EQ(v.notes.front(), "image of a map P -> S_R leaves the family");
  ASSERT_FALSE(v.certificates.empty());
  EXPECT_EQ(v.certificates.front().kind, CertKind::map_image_dim);
  EXPECT_TRUE(replay_all(v).empty());
}

TEST(Torsion, MonotoneInTheUniverse) {
  const auto& f = fixture("a2");
  const auto& full = f.setting.t;
  Universe small;
  for (const char* n : {"0", "S_R", "P"}) small.add(n, tmod(f, n));
  const auto x = sums_of("P", {tmod(f, "P")});
  const auto y = perp_right(x, full);
  for (const auto& [a, b] : std::vector<std::pair<ModuleFamily, ModuleFamily>>{
           {x, y}, {zero_family(), all_family()}, {all_family(), zero_family()}})
    if (is_torsion_pair(a, b, full).holds()) EXPECT_TRUE(is_torsion_pair(a, b, small).holds());
  if (is_torsion_class(x, full).holds()) EXPECT_TRUE(is_torsion_class(x, small).holds());
}

TEST(Torsion, CertificatesReplay) {
  const auto& t = fixture("a2").setting.t;
  const Verdict v = is_torsion_pair(all_family(), all_family(), t);
  EXPECT_FALSE(v.certificates.empty());
  EXPECT_TRUE(replay_all(v).empty());
}
