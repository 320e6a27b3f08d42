#pragma once

// Built-in corpora, defined in code and emitted as documents so that they go
// through the same loader as user files.
//   a2:           R = S = U = F_2; T is the path algebra of the A2 quiver and
//                 the T-universe is {0, S_R, S_S, P, N}.
//   dual-numbers: R = F_2[x]/(x^2), S = F_2, U = F_2 with x acting as 0; the
//                 T-universe is generated up to total dimension max_dim.

#include <memory>
#include <string>
#include <vector>

#include "commacat/tasks.hpp"

namespace commacat {

/// Accumulates a document; modules are named once and found again by value.
class DocBuilder {
 public:
  explicit DocBuilder(Residue p) { doc_["field"] = {{"p", p}}; }

  void algebra(const std::string& name, const AlgebraPtr& a) {
    doc_["algebras"][name] = algebra_json(*a);
    algebras_.emplace_back(name, a);
  }

  void bimodule(const std::string& name, const std::string& left, const std::string& right, const Bimodule& u) {
    doc_["bimodules"][name] = bimodule_json({left, right, u});
  }

  void triangular(const std::string& r, const std::string& s, const std::string& u, Json universes) {
    doc_["triangular"] = {{"R", r}, {"S", s}, {"U", u}, {"universes", std::move(universes)}};
  }

  /// Returns the name under which m is stored, adding it as `name` if new.
  std::string module(const std::string& name, const ModuleRep& m) {
    for (const auto& [n, prev] : modules_)
      if (prev.algebra == m.algebra && prev.side == m.side && prev.dim == m.dim && prev.action == m.action) return n;
    doc_["modules"][name] = module_json(algebra_name(m.algebra), m);
    modules_.emplace_back(name, m);
    return name;
  }

  void comma(const std::string& name, const std::string& a, const std::string& b, const FpMatrix& phi) {
    doc_["comma_objects"][name] = {{"A", a}, {"B", b}, {"phi", matrix_json(phi)}};
  }

  void presentation(const std::string& name, const Presentation& s, const std::string& target_name) {
    const std::string t = module(target_name, s.target());
    const std::string p0 = module(name + ".p0", s.p0());
    const std::string p1 = module(name + ".p1", s.p1());
    doc_["presentations"][name] = {{"p1", p1},
                                   {"p0", p0},
                                   {"sigma", matrix_json(s.sigma.matrix)},
                                   {"target", t},
                                   {"epi", matrix_json(s.epi.matrix)}};
  }

  void universe(const std::string& name, Json def) { doc_["universes"][name] = std::move(def); }
  void family(const std::string& name, Json def) { doc_["families"][name] = std::move(def); }
  void task(Json t) { doc_["tasks"].push_back(std::move(t)); }

  const Json& doc() const { return doc_; }

 private:
  Json doc_;
  std::vector<std::pair<std::string, AlgebraPtr>> algebras_;
  std::vector<std::pair<std::string, ModuleRep>> modules_;

  const std::string& algebra_name(const AlgebraPtr& a) const {
    for (const auto& [n, b] : algebras_)
      if (a == b) return n;
    throw Error("DocBuilder: module over an unregistered algebra");
  }
};

inline Bimodule one_dim_bimodule(AlgebraPtr s, AlgebraPtr r, std::vector<Residue> left, std::vector<Residue> right) {
  const Residue p = s->p();
  Bimodule u{std::move(s), std::move(r), 1, {}, {}};
  for (auto v : left) u.left_action.emplace_back(p, 1, 1, std::vector<Residue>{v});
  for (auto v : right) u.right_action.emplace_back(p, 1, 1, std::vector<Residue>{v});
  return u;
}

/// The one-dimensional module on which basis element i acts by values[i].
inline ModuleRep scalar_module(const AlgebraPtr& a, Side side, const std::vector<Residue>& values) {
  ModuleRep m{a, side, 1, {}};
  for (auto v : values) m.action.emplace_back(a->p(), 1, 1, std::vector<Residue>{v});
  return m;
}

inline Json names_json(std::initializer_list<const char*> names) {
  Json out = Json::array();
  for (const char* n : names) out.push_back(n);
  return out;
}

inline Json transfer_json(const char* name, const char* a, const char* b) {
  return {{"name", name}, {"sigma_A", a}, {"sigma_B", b}};
}

inline Json fixture_a2_document() {
  const Residue p = 2;
  auto r = make_algebra(FDAlgebra::field(p));
  auto s = make_algebra(FDAlgebra::field(p));
  DocBuilder d(p);
  d.algebra("R", r);
  d.algebra("S", s);
  d.bimodule("U", "S", "R", one_dim_bimodule(s, r, {1}, {1}));
  d.triangular("R", "S", "U", {{"R", "R-universe"}, {"S", "S-universe"}, {"T", "T-universe"}, {"right", "right-universe"}});

  const ModuleRep kr = regular_module(r), ks = regular_module(s);
  d.module("0R", zero_module(r));
  d.module("kR", kr);
  d.module("0S", zero_module(s));
  d.module("kS", ks);
  d.module("0R_right", zero_module(r, Side::right));
  d.module("kR_right", regular_module(r, Side::right));
  d.module("0S_right", zero_module(s, Side::right));
  d.module("kS_right", regular_module(s, Side::right));

  d.comma("0", "0R", "0S", FpMatrix(p, 0, 0));
  d.comma("S_R", "kR", "0S", FpMatrix(p, 0, 1));
  d.comma("S_S", "0R", "kS", FpMatrix(p, 1, 0));
  d.comma("P", "kR", "kS", FpMatrix::identity(p, 1));
  d.comma("N", "kR", "kS", FpMatrix(p, 1, 1));

  d.universe("R-universe", {{"kind", "modules"}, {"members", names_json({"0R", "kR"})}});
  d.universe("S-universe", {{"kind", "modules"}, {"members", names_json({"0S", "kS"})}});
  d.universe("T-universe", {{"kind", "comma"}, {"members", names_json({"0", "S_R", "S_S", "P", "N"})}});
  d.universe("R-right", {{"kind", "modules"}, {"members", names_json({"0R_right", "kR_right"})}});
  d.universe("S-right", {{"kind", "modules"}, {"members", names_json({"0S_right", "kS_right"})}});
  d.universe("right-universe",
             {{"kind", "right_t"}, {"generate", {{"R", "R-right"}, {"S", "S-right"}, {"max_dim", 4}}}});

  d.presentation("proj kR", projective_presentation(kr), "kR");
  d.presentation("proj 0R", projective_presentation(zero_module(r)), "0R");
  d.presentation("proj kS", projective_presentation(ks), "kS");
  d.presentation("proj 0S", projective_presentation(zero_module(s)), "0S");

  d.task({{"task", "hom-table"}});
  d.task({{"task", "verify-all"},
          {"transfers",
           {transfer_json("k,k", "proj kR", "proj kS"), transfer_json("k,0", "proj kR", "proj 0S"),
            transfer_json("0,0", "proj 0R", "proj 0S")}}});
  return d.doc();
}

inline Json fixture_dual_numbers_document(std::size_t max_dim = 4) {
  const Residue p = 2;
  auto r = make_algebra(FDAlgebra::truncated_polynomial(p, 2));
  auto s = make_algebra(FDAlgebra::field(p));
  DocBuilder d(p);
  d.algebra("R", r);
  d.algebra("S", s);
  d.bimodule("U", "S", "R", one_dim_bimodule(s, r, {1}, {1, 0}));
  d.triangular("R", "S", "U", {{"R", "R-universe"}, {"S", "S-universe"}, {"T", "T-universe"}, {"right", "right-universe"}});

  const ModuleRep k = scalar_module(r, Side::left, {1, 0});
  const ModuleRep reg = regular_module(r), ks = regular_module(s);
  d.module("0R", zero_module(r));
  d.module("kR", k);
  d.module("R", reg);
  d.module("kR2", power(k, 2));
  d.module("0S", zero_module(s));
  d.module("kS", ks);
  d.module("kS2", power(ks, 2));
  d.module("0R_right", zero_module(r, Side::right));
  d.module("kR_right", scalar_module(r, Side::right, {1, 0}));
  d.module("R_right", regular_module(r, Side::right));
  d.module("0S_right", zero_module(s, Side::right));
  d.module("kS_right", regular_module(s, Side::right));

  d.universe("R-universe", {{"kind", "modules"}, {"members", names_json({"0R", "kR", "R", "kR2"})}});
  d.universe("S-universe", {{"kind", "modules"}, {"members", names_json({"0S", "kS", "kS2"})}});
  d.universe("T-universe",
             {{"kind", "comma"}, {"generate", {{"R", "R-universe"}, {"S", "S-universe"}, {"max_dim", max_dim}}}});
  d.universe("R-right", {{"kind", "modules"}, {"members", names_json({"0R_right", "kR_right", "R_right"})}});
  d.universe("S-right", {{"kind", "modules"}, {"members", names_json({"0S_right", "kS_right"})}});
  d.universe("right-universe",
             {{"kind", "right_t"}, {"generate", {{"R", "R-right"}, {"S", "S-right"}, {"max_dim", 3}}}});

  d.presentation("x on R", free_presentation(k, true), "kR");
  d.presentation("proj R", projective_presentation(reg), "R");
  d.presentation("R to 0", zero_presentation(reg), "0R");
  d.presentation("proj kS", projective_presentation(ks), "kS");
  d.presentation("proj 0S", projective_presentation(zero_module(s)), "0S");

  d.family("Gen kR", {{"kind", "gen"}, {"module", "kR"}});
  d.family("kR^perp", {{"kind", "perp_right"}, {"of", "Gen kR"}, {"universe", "R-universe"}});

  d.task({{"task", "hom-table"}});
  d.task({{"task", "verify-all"},
          {"transfers",
           {transfer_json("k,k", "x on R", "proj kS"), transfer_json("R,k", "proj R", "proj kS"),
            transfer_json("R,0", "proj R", "proj 0S"), transfer_json("0,k", "R to 0", "proj kS")}},
          {"r_pairs", Json::array({Json::array({"all", "zero"}), Json::array({"zero", "all"}),
                                    Json::array({"Gen kR", "kR^perp"})})}});
  return d.doc();
}

inline Json fixture_document(const std::string& name, std::size_t max_dim = 4) {
  if (name == "a2") return fixture_a2_document();
  if (name == "dual-numbers") return fixture_dual_numbers_document(max_dim);
  throw Error("unknown fixture '" + name + "' (expected a2 or dual-numbers)");
}

/// A loaded fixture with its setting and the verify-all parameters unpacked.
struct Fixture {
  std::string name;
  std::shared_ptr<const Workspace> ws;
  Setting setting;
  std::vector<NamedObject> objects;  // comma objects of setting.t, same order
  std::vector<NamedRight> rights;
  std::vector<TransferInstance> transfers;
  std::vector<FamilyPair> r_pairs;  // torsion-pair candidates over R
  std::vector<FamilyPair> s_pairs;  // torsion-pair candidates over S
};

inline Fixture fixture_by_name(const std::string& name, const TorsionOptions& opt = {}, std::size_t max_dim = 4) {
  LoadOptions lo;
  lo.iso_cap = opt.iso_cap;
  auto ws = std::make_shared<const Workspace>(load_document(fixture_document(name, max_dim), lo));
  const Runner run(*ws, opt);
  Fixture f{name, ws, run.setting(), {}, run.rights(), {}, {}, {}};
  f.objects = universe_objects(f.setting);
  for (const auto& t : ws->tasks)
    if (t["task"] == "verify-all") {
      f.transfers = run.transfers(t);
      f.r_pairs = run.pairs(t, "r_pairs");
      f.s_pairs = run.pairs(t, "s_pairs");
    }
  return f;
}

}  // namespace commacat
