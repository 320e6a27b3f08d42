#pragma once

// Task execution over a loaded workspace, JSON and text reports, and replay
// of the certificates stored in a report.

#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "commacat/document.hpp"

namespace commacat {

struct NamedPresentation {
  std::string name;
  ModuleRep module;
  Presentation sigma;
};

/// One instance of the silting transfer: (A, sigma_A) over R, (B, sigma_B) over S.
struct TransferInstance {
  std::string name;
  NamedPresentation a;
  NamedPresentation b;
};

struct FamilyPair {
  ModuleFamily first;
  ModuleFamily second;
};

struct TaskResult {
  std::size_t index = 0;
  std::string task;
  Verdict verdict;
  Json data;  // task-specific payload (null when absent)
};

struct Report {
  Json context;
  std::vector<TaskResult> results;
};

// -------------------------------------------------------------- certificates

/// Names algebras for serialization: workspace names first, then "T".
class AlgebraNames {
 public:
  explicit AlgebraNames(const Workspace& ws) {
    for (const auto& [name, a] : ws.algebras) entries_.emplace_back(name, a);
    if (ws.ctx) entries_.emplace_back("T", ws.ctx->t);
  }

  const std::string& name_of(const AlgebraPtr& a) const {
    for (const auto& e : entries_)
      if (e.second == a) return e.first;
    for (const auto& e : entries_)
      if (same_algebra(e.second, a)) return e.first;
    throw Error("certificate module over an unnamed algebra");
  }

  Json json() const {
    Json out = Json::object();
    for (const auto& [name, a] : entries_) out[name] = algebra_json(*a);
    return out;
  }

 private:
  std::vector<std::pair<std::string, AlgebraPtr>> entries_;
};

inline Json shaped_matrix_json(const FpMatrix& m) {
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", matrix_json(m)}};
}

inline Json certificate_json(const Certificate& c, const AlgebraNames& names) {
  Json mods = Json::array();
  for (const auto& m : c.modules) mods.push_back(module_json(names.name_of(m.algebra), m));
  Json maps = Json::array();
  for (const auto& f : c.maps) maps.push_back(shaped_matrix_json(f));
  return {{"clause", c.clause}, {"kind", to_string(c.kind)}, {"modules", mods}, {"maps", maps}, {"expected", c.expected}};
}

inline Json verdict_json(const Verdict& v, const AlgebraNames& names) {
  Json certs = Json::array();
  for (const auto& c : v.certificates) certs.push_back(certificate_json(c, names));
  Json sub = Json::array();
  for (const auto& s : v.sub) sub.push_back(verdict_json(s, names));
  return {{"claim", v.claim},
          {"result", to_string(v.result)},
          {"notes", v.notes},
          {"universe_hash", v.universe_hash},
          {"certificates", certs},
          {"sub", sub}};
}

namespace detail {

inline FpMatrix matrix_from_json(const Json& j, Residue p, std::size_t rows, std::size_t cols) {
  if (!j.is_array() || j.size() != rows) throw Error("matrix has the wrong number of rows");
  FpMatrix m(p, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw Error("matrix row has the wrong length");
    for (std::size_t c = 0; c < cols; ++c) {
      const auto v = j[i][c].get<std::int64_t>();
      if (v < 0 || v >= static_cast<std::int64_t>(p)) throw Error("matrix entry out of range");
      m.set(i, c, static_cast<Residue>(v));
    }
  }
  return m;
}

inline CertKind cert_kind_from(const std::string& s) {
  for (auto k : {CertKind::hom_dim, CertKind::gen_member, CertKind::d_sigma_member, CertKind::map_image_dim,
                 CertKind::trace_dim, CertKind::isomorphic, CertKind::matrix_rank, CertKind::module_dim})
    if (s == to_string(k)) return k;
  throw Error("unknown certificate kind '" + s + "'");
}

}  // namespace detail

inline std::map<std::string, AlgebraPtr> algebras_from_json(const Json& j, Residue p) {
  std::map<std::string, AlgebraPtr> out;
  for (const auto& [name, a] : j.items()) {
    const std::size_t d = a.at("dim").get<std::size_t>();
    std::vector<Residue> mul(d * d * d);
    for (std::size_t x = 0; x < d; ++x)
      for (std::size_t y = 0; y < d; ++y)
        for (std::size_t z = 0; z < d; ++z) mul[(x * d + y) * d + z] = a.at("mul").at(x).at(y).at(z).get<Residue>();
    out[name] = make_algebra(FDAlgebra(p, d, std::move(mul), a.at("unit").get<std::vector<Residue>>()));
  }
  return out;
}

inline Certificate certificate_from_json(const Json& j, const std::map<std::string, AlgebraPtr>& algebras) {
  Certificate c;
  c.clause = j.at("clause").get<std::string>();
  c.kind = detail::cert_kind_from(j.at("kind").get<std::string>());
  c.expected = j.at("expected").get<std::int64_t>();
  for (const auto& m : j.at("modules")) {
    auto it = algebras.find(m.at("algebra").get<std::string>());
    if (it == algebras.end()) throw Error("certificate refers to an unknown algebra");
    const AlgebraPtr& a = it->second;
    const std::size_t d = m.at("dim").get<std::size_t>();
    ModuleRep rep{a, m.at("side").get<std::string>() == "right" ? Side::right : Side::left, d, {}};
    if (m.at("action").size() != a->dim()) throw Error("certificate module has the wrong number of action matrices");
    for (const auto& act : m.at("action")) rep.action.push_back(detail::matrix_from_json(act, a->p(), d, d));
    c.modules.push_back(std::move(rep));
  }
  const Residue p = algebras.empty() ? 2 : algebras.begin()->second->p();
  for (const auto& f : j.at("maps"))
    c.maps.push_back(detail::matrix_from_json(f.at("data"), p, f.at("rows").get<std::size_t>(), f.at("cols").get<std::size_t>()));
  return c;
}

struct ReplaySummary {
  std::size_t checked = 0;
  std::vector<std::string> failures;  // "claim: clause" or parse errors
};

/// Re-checks every certificate of a JSON report from its raw data.
inline ReplaySummary replay_report(const Json& report, std::size_t iso_cap = 16) {
  ReplaySummary out;
  const Residue p = report.at("context").at("field").get<Residue>();
  const auto algebras = algebras_from_json(report.at("context").at("algebras"), p);
  auto walk = [&](auto&& self, const Json& v) -> void {
    for (const auto& c : v.at("certificates")) {
      ++out.checked;
      try {
        if (!replay(certificate_from_json(c, algebras), iso_cap))
          out.failures.push_back(v.at("claim").get<std::string>() + ": " + c.at("clause").get<std::string>());
      } catch (const std::exception& e) {
        out.failures.push_back(v.at("claim").get<std::string>() + ": " + e.what());
      }
    }
    for (const auto& s : v.at("sub")) self(self, s);
  };
  for (const auto& t : report.at("tasks")) walk(walk, t.at("verdict"));
  return out;
}

// -------------------------------------------------------------------- runner

class Runner {
 public:
  Runner(const Workspace& ws, TorsionOptions opt) : ws_(ws), opt_(opt), names_(ws) {}

  const Workspace& workspace() const { return ws_; }
  const TorsionOptions& options() const { return opt_; }

  Setting setting() const {
    if (!ws_.ctx || !ws_.triangular) throw Error("no triangular context");
    const auto& roles = ws_.triangular->universes;
    auto get = [&](const char* role) -> const Universe& {
      auto it = roles.find(role);
      if (it == roles.end()) throw Error(std::string("no universe for role ") + role);
      return ws_.universes.at(it->second).modules;
    };
    return {ws_.ctx, get("R"), get("S"), get("T"), opt_};
  }

  std::vector<NamedRight> rights() const {
    const auto& roles = ws_.triangular->universes;
    auto it = roles.find("right");
    if (it == roles.end()) throw Error("no universe for role right");
    return ws_.universes.at(it->second).rights;
  }

  const ModuleFamily& family(const Json& name) const {
    const std::string n = name.get<std::string>();
    if (auto it = ws_.families.find(n); it != ws_.families.end()) return it->second.family;
    if (n == "all") return all_;
    if (n == "zero") return zero_;
    throw Error("unknown family '" + n + "'");
  }

  const Universe& universe(const Json& name) const { return ws_.universes.at(name.get<std::string>()).modules; }

  NamedPresentation presentation(const Json& name) const {
    const auto& e = ws_.presentations.at(name.get<std::string>());
    return {e.target, e.presentation.target(), e.presentation};
  }

  std::vector<TransferInstance> transfers(const Json& task) const {
    std::vector<TransferInstance> out;
    if (task.contains("transfers"))
      for (const auto& t : task["transfers"])
        out.push_back({t["name"].get<std::string>(), presentation(t["sigma_A"]), presentation(t["sigma_B"])});
    return out;
  }

  std::vector<FamilyPair> pairs(const Json& task, const char* key) const {
    std::vector<FamilyPair> out;
    if (task.contains(key)) {
      for (const auto& p : task[key]) out.push_back({family(p[0]), family(p[1])});
    } else if (std::string(key) == "perp") {
      for (const auto* c : {&all_, &zero_})
        for (const auto* d : {&all_, &zero_}) out.push_back({*c, *d});
    } else {
      out = {{all_, zero_}, {zero_, all_}};
    }
    return out;
  }

  TaskResult run(const Json& task, std::size_t index) const {
    const std::string name = task.at("task").get<std::string>();
    TaskResult r{index, name, {}, Json()};
    if (name == "torsion-pair") {
      r.verdict = is_torsion_pair(family(task["x"]), family(task["y"]), universe(task["universe"]), opt_);
    } else if (name == "torsion-class") {
      r.verdict = is_torsion_class(family(task["family"]), universe(task["universe"]), opt_);
    } else if (name == "silting" || name == "partial-silting") {
      const auto p = presentation(task["presentation"]);
      const auto& u = universe(task["universe"]);
      r.verdict = name == "silting" ? is_silting(p.module, p.sigma, u, opt_.iso_cap)
                                    : is_partial_silting(p.module, p.sigma, u, opt_.sum_dim_bound, opt_.iso_cap);
    } else {
      const Setting st = setting();
      if (name == "hom-table") r = hom_table(st, task, index);
      else if (name == "hom-bijection") r.verdict = verify_hom_bijection(st, hom_test_objects(st));
      else if (name == "hom-iso") r.verdict = verify_hom_formulas(st, hom_test_objects(st));
      else if (name == "tensor-iso") r.verdict = verify_tensor_formulas(st, rights(), hom_test_objects(st));
      else if (name == "adjunctions") r.verdict = verify_adjunctions(st, universe_objects(st));
      else if (name == "round-trip") r.verdict = verify_round_trip(st);
      else if (name == "perp-B") r.verdict = verify_prop_B_perp(st, family(task["C"]), family(task["D"]));
      else if (name == "perp-J") r.verdict = verify_prop_J_perp(st, family(task["C"]), family(task["D"]));
      else if (name == "torsion-B")
        r.verdict = verify_thm_torsion_B(st, family(task["c1"]), family(task["c2"]), family(task["d1"]), family(task["d2"]));
      else if (name == "torsion-J")
        r.verdict = verify_thm_torsion_J(st, family(task["c1"]), family(task["c2"]), family(task["d1"]), family(task["d2"]));
      else if (name == "verify-all") r.verdict = verify_all(st, task);
      else {
        const auto a = presentation(task["sigma_A"]), b = presentation(task["sigma_B"]);
        r.verdict = transfer_task(st, name, a, b);
      }
    }
    return r;
  }

  Verdict transfer_task(const Setting& st, const std::string& name, const NamedPresentation& a,
                        const NamedPresentation& b) const {
    if (name == "dsigma-decomposition") return verify_dsigma_decomposition(st, a.sigma, b.sigma);
    if (name == "dsigma-torsion-class") return verify_dsigma_torsion_class(st, a.sigma, b.sigma);
    if (name == "silting-transfer") return verify_silting_transfer(st, a.module, a.sigma, b.module, b.sigma);
    if (name == "partial-silting-transfer") return verify_silting_transfer(st, a.module, a.sigma, b.module, b.sigma, true);
    if (name == "final-corollaries") return verify_final_corollaries(st, a.module, a.sigma, b.module, b.sigma);
    throw Error("unknown task '" + name + "'");
  }

  /// Every claim on this setting: componentwise presentations, the Hom and
  /// tensor formulas, adjunctions, silting transfer per instance, the perp
  /// propositions and the torsion transfer theorems per pair of pairs.
  Verdict verify_all(const Setting& st, const Json& task) const {
    Verdict v = make_verdict("verify-all", combined_hash(st));
    const auto objs = hom_test_objects(st);
    v.sub.push_back(verify_round_trip(st));
    v.sub.push_back(verify_hom_bijection(st, objs));
    v.sub.push_back(verify_hom_formulas(st, objs));
    v.sub.push_back(verify_tensor_formulas(st, rights(), objs));
    v.sub.push_back(verify_adjunctions(st, universe_objects(st)));
    for (const auto& t : transfers(task))
      for (const char* name : {"dsigma-decomposition", "dsigma-torsion-class", "silting-transfer",
                               "partial-silting-transfer", "final-corollaries"}) {
        Verdict s = transfer_task(st, name, t.a, t.b);
        s.claim += "[" + t.name + "]";
        v.sub.push_back(std::move(s));
      }
    for (const auto& c : pairs(task, "perp")) {
      v.sub.push_back(verify_prop_B_perp(st, c.first, c.second));
      v.sub.push_back(verify_prop_J_perp(st, c.first, c.second));
    }
    const auto rp = pairs(task, "r_pairs"), sp = pairs(task, "s_pairs");
    for (const auto& c : rp)
      for (const auto& d : sp) {
        v.sub.push_back(verify_thm_torsion_B(st, c.first, c.second, d.first, d.second));
        v.sub.push_back(verify_thm_torsion_J(st, c.first, c.second, d.first, d.second));
      }
    for (const auto& s : v.sub)
      if (s.result == Outcome::fails) v.result = Outcome::fails;
    return v;
  }

  TaskResult hom_table(const Setting& st, const Json& task, std::size_t index) const {
    std::vector<NamedObject> objs;
    if (task.contains("objects"))
      for (const auto& n : task["objects"]) objs.push_back({n.get<std::string>(), ws_.comma_objects.at(n.get<std::string>()).object});
    else
      objs = universe_objects(st);
    const auto& ctx = *st.ctx;
    Verdict v = make_verdict("hom-table", combined_hash(st));
    Json names = Json::array(), comma = Json::array(), over_t = Json::array();
    for (const auto& x : objs) names.push_back(x.name);
    for (const auto& x : objs) {
      Json row = Json::array(), trow = Json::array();
      const ModuleRep xt = to_T_module(ctx, x.object);
      for (const auto& y : objs) {
        const std::size_t d = hom_comma_dim(ctx, x.object, y.object);
        const ModuleRep yt = to_T_module(ctx, y.object);
        const std::size_t dt = hom_dim(xt, yt);
        row.push_back(d);
        trow.push_back(dt);
        if (d != dt) {
          v.fail("Hom(" + x.name + ", " + y.name + "): comma " + std::to_string(d) + ", over T " + std::to_string(dt));
          v.certificates.push_back(hom_dim_certificate("Hom(" + x.name + ", " + y.name + ") over T", xt, yt));
        }
      }
      comma.push_back(std::move(row));
      over_t.push_back(std::move(trow));
    }
    return {index, "hom-table", std::move(v), {{"objects", names}, {"hom_comma", comma}, {"hom_T", over_t}}};
  }

  Json context() const {
    Json c;
    c["field"] = ws_.p;
    c["algebras"] = names_.json();
    if (ws_.triangular) {
      c["triangular"] = {{"R", ws_.triangular->r}, {"S", ws_.triangular->s}, {"U", ws_.triangular->u},
                         {"dim", ws_.ctx->t->dim()}};
      Json us = Json::object();
      for (const auto& [role, uname] : ws_.triangular->universes) {
        const auto& e = ws_.universes.at(uname);
        Json members = Json::array();
        if (e.kind == "right_t")
          for (const auto& r : e.rights) members.push_back(r.name);
        else
          for (const auto& n : e.modules.names) members.push_back(n);
        us[role] = {{"name", uname}, {"size", members.size()}, {"members", members}};
        if (e.kind != "right_t") us[role]["hash"] = e.modules.hash();
      }
      c["universes"] = std::move(us);
    }
    c["options"] = {{"iso_cap", opt_.iso_cap},
                    {"ext_cap", opt_.ext_cap},
                    {"map_cap", opt_.map_cap},
                    {"sum_dim_bound", opt_.sum_dim_bound}};
    return c;
  }

  Report run_all(const Json& tasks) const {
    Report r{context(), {}};
    for (std::size_t i = 0; i < tasks.size(); ++i) r.results.push_back(run(tasks[i], i));
    return r;
  }

  Json report_json(const Report& r) const {
    Json tasks = Json::array();
    for (const auto& t : r.results) {
      Json e = {{"index", t.index}, {"task", t.task}, {"verdict", verdict_json(t.verdict, names_)}};
      if (!t.data.is_null()) e["data"] = t.data;
      tasks.push_back(std::move(e));
    }
    return {{"context", r.context}, {"tasks", tasks}};
  }

 private:
  const Workspace& ws_;
  TorsionOptions opt_;
  AlgebraNames names_;
  ModuleFamily all_ = all_family();
  ModuleFamily zero_ = zero_family();
};

// ------------------------------------------------------------------ text form

inline void render_verdict(std::ostream& os, const Verdict& v, int depth) {
  const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  os << pad << v.claim << ": " << to_string(v.result);
  const std::size_t n = count_certificates(v);
  if (n) os << " [" << n << " certificate" << (n == 1 ? "" : "s") << "]";
  os << "\n";
  for (const auto& note : v.notes) os << pad << "  - " << note << "\n";
  for (const auto& s : v.sub) render_verdict(os, s, depth + 1);
}

inline std::string render_text(const Report& r) {
  std::ostringstream os;
  const Json& c = r.context;
  os << "field F_" << c["field"].get<Residue>() << "\n";
  if (c.contains("universes"))
    for (const auto& [role, u] : c["universes"].items())
      os << "universe " << role << " (" << u["name"].get<std::string>() << "): " << u["size"].get<std::size_t>()
         << " members\n";
  for (const auto& t : r.results) {
    os << "\ntask " << t.index << ": " << t.task << "\n";
    if (t.task == "hom-table" && t.data.is_object()) {
      const auto& names = t.data["objects"];
      std::size_t w = 4;
      for (const auto& n : names) w = std::max(w, n.get<std::string>().size() + 1);
      os << std::setw(static_cast<int>(w)) << "";
      for (const auto& n : names) os << std::setw(static_cast<int>(w)) << n.get<std::string>();
      os << "\n";
      for (std::size_t i = 0; i < names.size(); ++i) {
        os << std::setw(static_cast<int>(w)) << names[i].get<std::string>();
        for (const auto& d : t.data["hom_comma"][i]) os << std::setw(static_cast<int>(w)) << d.get<std::size_t>();
        os << "\n";
      }
    }
    render_verdict(os, t.verdict, 1);
  }
  return os.str();
}

}  // namespace commacat
