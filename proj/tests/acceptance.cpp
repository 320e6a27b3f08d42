// One line per acceptance criterion; exits nonzero if any criterion fails.

#include <cstdio>
#include <functional>
#include <map>
#include <string>

#include "oracles.hpp"
#include "support.hpp"

using namespace commacat;
using support::fixture;

namespace {

struct Check {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (cond || !ok) {
      ok = ok && cond;
      return;
    }
    ok = false;
    detail = what;
  }
};

const TransferInstance& transfer(const Fixture& f, const std::string& name) {
  for (const auto& t : f.transfers)
    if (t.name == name) return t;
  throw Error("no transfer " + name);
}

Check hom_iso_suite() {
  Check c;
  std::size_t compared = 0;
  std::map<int, std::size_t> per_kind;
  for (const char* name : {"a2", "dual-numbers"}) {
    const auto& f = fixture(name);
    const auto& ctx = *f.setting.ctx;
    c.require(f.objects.size() >= (std::string(name) == "a2" ? 5u : 10u), std::string(name) + ": too few objects");
    const auto objs = hom_test_objects(f.setting);
    for (const auto& x : objs)
      for (const auto& y : objs) {
        const std::size_t comma = hom_comma_dim(ctx, x.object, y.object);
        const std::size_t over_t = oracle::hom_dim(to_T_module(ctx, x.object), to_T_module(ctx, y.object));
        c.require(comma == over_t, std::string(name) + ": " + x.name + " -> " + y.name);
        for (int k = 1; k <= 5; ++k) {
          const auto kind = static_cast<HomKind>(k);
          if (!hom_formula_applies(ctx, kind, x.object, y.object)) continue;
          ++per_kind[k];
          ++compared;
          c.require(hom_formula(ctx, kind, x.object, y.object) == comma,
                    std::string(name) + ": kind " + std::to_string(k) + " at " + x.name + " -> " + y.name);
        }
      }
    c.require(verify_hom_formulas(f.setting, objs).holds(), std::string(name) + ": hom-iso verdict");
  }
  for (int k = 1; k <= 5; ++k) c.require(per_kind[k] > 0, "no instance of kind " + std::to_string(k));
  if (c.ok) c.detail = std::to_string(compared) + " formula instances, a2 5 objects, dual-numbers " +
                       std::to_string(fixture("dual-numbers").objects.size()) + " objects";
  return c;
}

Check tensor_suite() {
  Check c;
  std::map<int, std::size_t> per_kind;
  std::size_t pairs = 0;
  for (const char* name : {"a2", "dual-numbers"}) {
    const auto& f = fixture(name);
    const auto& ctx = *f.setting.ctx;
    const auto objs = hom_test_objects(f.setting);
    for (const auto& r : f.rights) {
      const ModuleRep rt = to_T_right_module(ctx, r.module);
      for (const auto& o : objs) {
        ++pairs;
        const std::size_t h = tensor_T(ctx, r.module, o.object).dim;
        c.require(h == oracle::tensor_dim(rt, to_T_module(ctx, o.object)),
                  std::string(name) + ": H-quotient at " + r.name + " (x) " + o.name);
        for (int k = 1; k <= 5; ++k) {
          const auto kind = static_cast<TensorKind>(k);
          if (!tensor_formula_applies(ctx, kind, r.module, o.object)) continue;
          ++per_kind[k];
          c.require(tensor_formula(ctx, kind, r.module, o.object) == h,
                    std::string(name) + ": kind " + std::to_string(k) + " at " + r.name + " (x) " + o.name);
        }
      }
    }
    c.require(verify_tensor_formulas(f.setting, f.rights, objs).holds(), std::string(name) + ": tensor-iso verdict");
  }
  for (int k = 1; k <= 5; ++k) c.require(per_kind[k] > 0, "no instance of kind " + std::to_string(k));
  if (c.ok) c.detail = std::to_string(pairs) + " pairs cross-checked against the basis-triple span";
  return c;
}

Check presentation_decomposition() {
  Check c;
  std::size_t instances = 0;
  for (const char* name : {"a2", "dual-numbers"}) {
    const auto& f = fixture(name);
    const auto& ctx = *f.setting.ctx;
    for (const auto& t : f.transfers) {
      ++instances;
      const Presentation s = sigma_for_p(ctx, t.a.sigma, t.b.sigma);
      for (std::size_t i = 0; i < f.setting.t.size(); ++i) {
        const auto& m = f.setting.t.members[i];
        const auto obj = from_T_module(ctx, m).object;
        const bool whole = oracle::d_sigma_member(s, m);
        const bool parts = oracle::d_sigma_member(t.a.sigma, obj.a) && oracle::d_sigma_member(t.b.sigma, obj.b);
        c.require(whole == parts, std::string(name) + " " + t.name + ": " + f.setting.t.names[i]);
        c.require(whole == d_sigma_member(s, m), std::string(name) + " " + t.name + ": library disagrees at " +
                                                     f.setting.t.names[i]);
      }
      c.require(verify_dsigma_decomposition(f.setting, t.a.sigma, t.b.sigma).holds(),
                std::string(name) + " " + t.name + ": decomposition verdict");
      c.require(verify_dsigma_torsion_class(f.setting, t.a.sigma, t.b.sigma).holds(),
                std::string(name) + " " + t.name + ": torsion-class verdicts");
    }
  }
  if (c.ok) c.detail = std::to_string(instances) + " presentations";
  return c;
}

Check silting_transfer() {
  Check c;
  struct Case {
    const char* fixture;
    const char* transfer;
    bool partial;
  };
  for (const Case& k : {Case{"a2", "k,k", false}, Case{"a2", "k,0", false}, Case{"dual-numbers", "k,k", true}}) {
    const auto& f = fixture(k.fixture);
    const auto& ctx = *f.setting.ctx;
    const auto& t = transfer(f, k.transfer);
    const std::string where = std::string(k.fixture) + " " + k.transfer;
    const Verdict v = verify_silting_transfer(f.setting, t.a.module, t.a.sigma, t.b.module, t.b.sigma, k.partial);
    c.require(v.holds(), where + ": equivalence fails");
    if (k.partial) {
      c.require(!v.sub[0].holds(), where + ": partial clause holds over T");
      c.require(!(v.sub[1].holds() && v.sub[2].holds() && v.sub[3].holds()), where + ": partial clause holds on components");
    }
    const Presentation s = sigma_for_p(ctx, t.a.sigma, t.b.sigma);
    const ModuleRep pt = to_T_module(ctx, functor_p(ctx, t.a.module, t.b.module));
    for (std::size_t i = 0; i < f.setting.t.size(); ++i) {
      const auto& m = f.setting.t.members[i];
      c.require(gen_member(pt, m) == oracle::gen_member(pt, m), where + ": Gen at " + f.setting.t.names[i]);
      c.require(d_sigma_member(s, m) == oracle::d_sigma_member(s, m), where + ": D_sigma at " + f.setting.t.names[i]);
    }
    const auto& ru = f.setting.r;
    for (const auto& m : ru.members) {
      c.require(gen_member(t.a.module, m) == oracle::gen_member(t.a.module, m), where + ": Gen over R");
      c.require(d_sigma_member(t.a.sigma, m) == oracle::d_sigma_member(t.a.sigma, m), where + ": D_sigma over R");
    }
  }
  if (c.ok) c.detail = "a2 (k,k), a2 (k,0), dual-numbers (k, x) partial";
  return c;
}

Check torsion_pair_oracle() {
  Check c;
  const auto& f = fixture("a2");
  const auto& u = f.setting.t;
  std::vector<ModuleFamily> fams = {zero_family(), all_family(), gen_family("Gen P", support::tmod(f, "P")),
                                    gen_family("Gen S_R", support::tmod(f, "S_R"))};
  for (std::size_t i = 0; i < 4; ++i) {
    fams.push_back(perp_right(fams[i], u));
    fams.push_back(perp_left(fams[i], u));
  }
  std::size_t pairs = 0, holding = 0;
  for (const auto& x : fams)
    for (const auto& y : fams) {
      ++pairs;
      const bool lib = is_torsion_pair(x, y, u).holds();
      holding += lib ? 1 : 0;
      c.require(lib == oracle::is_torsion_pair(x, y, u), x.label + " / " + y.label);
    }
  c.require(pairs >= 20, "fewer than 20 pairs");
  c.require(holding > 0 && holding < pairs, "pairs do not discriminate");
  if (c.ok) c.detail = std::to_string(pairs) + " family pairs, " + std::to_string(holding) + " torsion pairs";
  return c;
}

Check transfer_ledger() {
  Check c;
  const auto& st = fixture("a2").setting;
  const auto all = all_family(), zero = zero_family();
  const std::vector<std::pair<const ModuleFamily*, const ModuleFamily*>> pairs = {{&all, &zero}, {&zero, &all}};
  // frozen outcomes, resolved by the exhaustive oracle: [c-pair][d-pair] -> (B, J)
  const Outcome want_b[2][2] = {{Outcome::out_of_scope, Outcome::fails}, {Outcome::out_of_scope, Outcome::holds}};
  const Outcome want_j[2][2] = {{Outcome::holds, Outcome::fails}, {Outcome::out_of_scope, Outcome::out_of_scope}};
  std::size_t certs = 0;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t k = 0; k < 2; ++k) {
      const auto& [c1, c2] = pairs[i];
      const auto& [d1, d2] = pairs[k];
      const Verdict b = verify_thm_torsion_B(st, *c1, *c2, *d1, *d2);
      const Verdict j = verify_thm_torsion_J(st, *c1, *c2, *d1, *d2);
      for (const Verdict* v : {&b, &j}) {
        certs += count_certificates(*v);
        c.require(replay_all(*v).empty(), v->claim + ": certificate does not replay");
      }
      c.require(b.result == want_b[i][k], b.claim + ": " + to_string(b.result));
      c.require(j.result == want_j[i][k], j.claim + ": " + to_string(j.result));
      const bool q_b = oracle::is_torsion_pair(comma_family(st.ctx, CommaFamilyKind::B, *c1, *d1),
                                               comma_family(st.ctx, CommaFamilyKind::U, *c2, *d2), st.t);
      const bool q_j = oracle::is_torsion_pair(comma_family(st.ctx, CommaFamilyKind::U, *c1, *d1),
                                               comma_family(st.ctx, CommaFamilyKind::J, *c2, *d2), st.t);
      c.require(q_b == b.sub[2].holds(), b.claim + ": oracle disagrees over T");
      c.require(q_j == j.sub[2].holds(), j.claim + ": oracle disagrees over T");
    }
  for (const auto* cf : {&all, &zero})
    for (const auto* df : {&all, &zero})
      for (const Verdict& v : {verify_prop_B_perp(st, *cf, *df), verify_prop_J_perp(st, *cf, *df)}) {
        certs += count_certificates(v);
        c.require(replay_all(v).empty(), v.claim + ": certificate does not replay");
      }
  if (c.ok) c.detail = "8 theorem verdicts, " + std::to_string(certs) + " certificates replayed";
  return c;
}

Check round_trip_and_determinism() {
  Check c;
  for (const char* name : {"a2", "dual-numbers"}) {
    const auto& f = fixture(name);
    c.require(verify_round_trip(f.setting).holds(), std::string(name) + ": round trip");
    const Json doc = fixture_document(name);
    c.require(canonical_dump(to_json(load_document(doc))) == canonical_dump(doc), std::string(name) + ": document");
    auto report = [&] {
      const Workspace ws = load_document(doc);
      const Runner run(ws, {});
      return run.report_json(run.run_all(ws.tasks)).dump(2);
    };
    c.require(report() == report(), std::string(name) + ": reports differ");
  }
  if (c.ok) c.detail = "a2 and dual-numbers";
  return c;
}

Check adjunctions() {
  Check c;
  std::size_t checked = 0;
  for (const char* name : {"a2", "dual-numbers"}) {
    const auto& f = fixture(name);
    const auto& st = f.setting;
    const auto& ctx = *st.ctx;
    for (const auto& a : st.r.members)
      for (const auto& b : st.s.members) {
        const CommaObject p = functor_p(ctx, a, b), h = functor_h(ctx, a, b);
        const ModuleRep pt = to_T_module(ctx, p), ht = to_T_module(ctx, h);
        for (const auto& o : f.objects) {
          ++checked;
          const ModuleRep mt = to_T_module(ctx, o.object);
          c.require(oracle::hom_dim(pt, mt) == oracle::hom_dim(a, o.object.a) + oracle::hom_dim(b, o.object.b),
                    std::string(name) + ": p -| q at " + o.name);
          c.require(oracle::hom_dim(mt, ht) == oracle::hom_dim(o.object.a, a) + oracle::hom_dim(o.object.b, b),
                    std::string(name) + ": q -| h at " + o.name);
        }
      }
    const Verdict v = verify_adjunctions(st, f.objects);
    c.require(v.holds(), std::string(name) + ": adjunction verdict");
  }
  if (c.ok) c.detail = std::to_string(checked) + " (A, B, M) triples";
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Check()>>> criteria = {
      {"hom-iso suite", hom_iso_suite},
      {"tensor suite", tensor_suite},
      {"presentation decomposition", presentation_decomposition},
      {"silting transfer", silting_transfer},
      {"torsion pairs against exhaustive submodule oracle", torsion_pair_oracle},
      {"transfer-theorem ledger", transfer_ledger},
      {"round trip and deterministic reports", round_trip_and_determinism},
      {"adjunction dimension equalities", adjunctions},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    try {
      c = criteria[i].second();
    } catch (const std::exception& e) {
      c.ok = false;
      c.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s %zu %s: %s\n", c.ok ? "PASS" : "FAIL", i + 1, criteria[i].first, c.detail.c_str());
    failed += c.ok ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
