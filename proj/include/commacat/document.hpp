#pragma once

// JSON documents: named algebras, bimodules, modules, comma objects, right
// T-modules, presentations, universes, families and tasks. Loading validates
// every object and reports each violation with its JSON path; serialization
// is canonical (sorted keys, residues as integers).

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "commacat/verify.hpp"

namespace commacat {

using Json = nlohmann::json;

struct BimoduleEntry {
  std::string left;
  std::string right;
  Bimodule bimodule;
};

struct ModuleEntry {
  std::string algebra;
  ModuleRep module;
};

struct CommaEntry {
  std::string a;
  std::string b;
  CommaObject object;
};

struct RightEntry {
  std::string x;
  std::string y;
  RightTModule module;
};

struct PresentationEntry {
  std::string p1;
  std::string p0;
  std::string target;
  Presentation presentation;
};

struct UniverseEntry {
  Json def;
  std::string kind;  // modules | comma | right_t
  Universe modules;
  std::vector<NamedRight> rights;
};

struct FamilyEntry {
  Json def;
  ModuleFamily family;
};

struct TriangularEntry {
  std::string r;
  std::string s;
  std::string u;
  std::map<std::string, std::string> universes;  // roles R, S, T, right
};

struct Workspace {
  Residue p = 2;
  std::map<std::string, AlgebraPtr> algebras;
  std::map<std::string, BimoduleEntry> bimodules;
  std::optional<TriangularEntry> triangular;
  ContextPtr ctx;
  std::map<std::string, ModuleEntry> modules;
  std::map<std::string, CommaEntry> comma_objects;
  std::map<std::string, RightEntry> right_t_modules;
  std::map<std::string, PresentationEntry> presentations;
  std::map<std::string, UniverseEntry> universes;
  std::map<std::string, FamilyEntry> families;
  Json tasks;  // null when the document has no task list
};

struct LoadOptions {
  std::optional<std::size_t> max_dim;  // overrides "generate.max_dim" of comma universes
  std::size_t iso_cap = 16;
};

class DocumentInvalid : public Error {
 public:
  explicit DocumentInvalid(ValidationReport r) : Error(summary(r)), report(std::move(r)) {}
  ValidationReport report;

 private:
  static std::string summary(const ValidationReport& r) {
    return r.violations.empty() ? "invalid document" : r.violations.front();
  }
};

// ---------------------------------------------------------------- serializers

inline Json matrix_json(const FpMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json matrices_json(const std::vector<FpMatrix>& ms) {
  Json out = Json::array();
  for (const auto& m : ms) out.push_back(matrix_json(m));
  return out;
}

inline Json algebra_json(const FDAlgebra& a) {
  const std::size_t d = a.dim();
  Json mul = Json::array();
  for (std::size_t i = 0; i < d; ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < d; ++j) {
      Json v = Json::array();
      for (std::size_t k = 0; k < d; ++k) v.push_back(a.mul(i, j, k));
      row.push_back(std::move(v));
    }
    mul.push_back(std::move(row));
  }
  return {{"dim", d}, {"mul", std::move(mul)}, {"unit", a.unit()}};
}

inline Json module_json(const std::string& algebra, const ModuleRep& m) {
  return {{"algebra", algebra}, {"side", to_string(m.side)}, {"dim", m.dim}, {"action", matrices_json(m.action)}};
}

inline Json bimodule_json(const BimoduleEntry& e) {
  return {{"left", e.left},
          {"right", e.right},
          {"dim", e.bimodule.dim},
          {"left_action", matrices_json(e.bimodule.left_action)},
          {"right_action", matrices_json(e.bimodule.right_action)}};
}

/// Canonical form of a workspace; equal to the canonical form of any
/// document it was loaded from.
inline Json to_json(const Workspace& ws) {
  Json doc;
  doc["field"] = {{"p", ws.p}};
  if (!ws.algebras.empty()) {
    Json& a = doc["algebras"];
    for (const auto& [name, alg] : ws.algebras) a[name] = algebra_json(*alg);
  }
  if (!ws.bimodules.empty()) {
    Json& b = doc["bimodules"];
    for (const auto& [name, e] : ws.bimodules) b[name] = bimodule_json(e);
  }
  if (ws.triangular) {
    Json t = {{"R", ws.triangular->r}, {"S", ws.triangular->s}, {"U", ws.triangular->u}};
    if (!ws.triangular->universes.empty()) t["universes"] = ws.triangular->universes;
    doc["triangular"] = std::move(t);
  }
  if (!ws.modules.empty()) {
    Json& m = doc["modules"];
    for (const auto& [name, e] : ws.modules) m[name] = module_json(e.algebra, e.module);
  }
  if (!ws.comma_objects.empty()) {
    Json& c = doc["comma_objects"];
    for (const auto& [name, e] : ws.comma_objects) c[name] = {{"A", e.a}, {"B", e.b}, {"phi", matrix_json(e.object.phi)}};
  }
  if (!ws.right_t_modules.empty()) {
    Json& r = doc["right_t_modules"];
    for (const auto& [name, e] : ws.right_t_modules)
      r[name] = {{"X", e.x}, {"Y", e.y}, {"psi", matrix_json(e.module.psi)}};
  }
  if (!ws.presentations.empty()) {
    Json& pr = doc["presentations"];
    for (const auto& [name, e] : ws.presentations)
      pr[name] = {{"p1", e.p1},
                  {"p0", e.p0},
                  {"sigma", matrix_json(e.presentation.sigma.matrix)},
                  {"target", e.target},
                  {"epi", matrix_json(e.presentation.epi.matrix)}};
  }
  if (!ws.universes.empty()) {
    Json& u = doc["universes"];
    for (const auto& [name, e] : ws.universes) u[name] = e.def;
  }
  if (!ws.families.empty()) {
    Json& f = doc["families"];
    for (const auto& [name, e] : ws.families) f[name] = e.def;
  }
  if (!ws.tasks.is_null()) doc["tasks"] = ws.tasks;
  return doc;
}

inline std::string canonical_dump(const Json& doc) { return Json(doc).dump(2) + "\n"; }

// -------------------------------------------------------------------- loading

namespace detail {

inline const std::set<std::string> kTaskNames = {
    "hom-table",        "hom-bijection",  "hom-iso",           "tensor-iso",   "adjunctions",
    "round-trip",       "dsigma-decomposition", "dsigma-torsion-class", "silting-transfer",
    "partial-silting-transfer", "final-corollaries", "perp-B", "perp-J", "torsion-B", "torsion-J",
    "torsion-pair",     "torsion-class",  "silting",           "partial-silting", "verify-all"};

class Loader {
 public:
  Loader(const Json& doc, const LoadOptions& opt) : doc_(doc), opt_(opt) {}

  Workspace run() {
    if (!doc_.is_object()) {
      bad("", "document is not a JSON object");
      throw DocumentInvalid(rep_);
    }
    keys(doc_, "", {"field", "algebras", "bimodules", "triangular", "modules", "comma_objects", "right_t_modules",
                    "presentations", "universes", "families", "tasks"},
         {"field"});
    field();
    section("algebras", [&](const std::string& n, const Json& j, const std::string& p) { algebra(n, j, p); });
    section("bimodules", [&](const std::string& n, const Json& j, const std::string& p) { bimodule(n, j, p); });
    triangular();
    section("modules", [&](const std::string& n, const Json& j, const std::string& p) { module(n, j, p); });
    section("comma_objects", [&](const std::string& n, const Json& j, const std::string& p) { comma(n, j, p); });
    section("right_t_modules", [&](const std::string& n, const Json& j, const std::string& p) { right(n, j, p); });
    section("presentations", [&](const std::string& n, const Json& j, const std::string& p) { presentation(n, j, p); });
    section("universes", [&](const std::string& n, const Json& j, const std::string& p) { universe(n, j, p); });
    families();
    tasks();
    check_triangular_universes();
    if (!rep_.valid()) throw DocumentInvalid(rep_);
    return std::move(ws_);
  }

 private:
  const Json& doc_;
  LoadOptions opt_;
  Workspace ws_;
  ValidationReport rep_;
  std::set<std::string> broken_;  // "section/name" entries that failed to load
  std::size_t suppressed_ = 0;     // references to broken entries seen so far

  void bad(const std::string& path, const std::string& msg) { rep_.add((path.empty() ? "/" : path) + ": " + msg); }

  bool keys(const Json& j, const std::string& path, const std::set<std::string>& allowed,
            const std::set<std::string>& required) {
    if (!j.is_object()) {
      bad(path, "expected an object");
      return false;
    }
    bool ok = true;
    for (const auto& [k, v] : j.items())
      if (!allowed.count(k)) {
        bad(path + "/" + k, "unknown key");
        ok = false;
      }
    for (const auto& k : required)
      if (!j.contains(k)) {
        bad(path, "missing key '" + k + "'");
        ok = false;
      }
    return ok;
  }

  std::optional<std::size_t> count(const Json& j, const std::string& path) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
      bad(path, "expected a non-negative integer");
      return std::nullopt;
    }
    return j.get<std::size_t>();
  }

  std::optional<std::string> text(const Json& j, const std::string& path) {
    if (!j.is_string()) {
      bad(path, "expected a string");
      return std::nullopt;
    }
    return j.get<std::string>();
  }

  std::optional<Residue> residue(const Json& j, const std::string& path) {
    if (!j.is_number_integer()) {
      bad(path, "expected an integer residue");
      return std::nullopt;
    }
    const auto v = j.get<std::int64_t>();
    if (v < 0 || v >= static_cast<std::int64_t>(ws_.p)) {
      bad(path, "residue " + std::to_string(v) + " outside [0, " + std::to_string(ws_.p) + ")");
      return std::nullopt;
    }
    return static_cast<Residue>(v);
  }

  std::optional<std::vector<Residue>> vector(const Json& j, const std::string& path, std::size_t len) {
    if (!j.is_array() || j.size() != len) {
      bad(path, "expected an array of " + std::to_string(len) + " residues");
      return std::nullopt;
    }
    std::vector<Residue> out;
    bool ok = true;
    for (std::size_t i = 0; i < len; ++i) {
      auto r = residue(j[i], path + "/" + std::to_string(i));
      ok = ok && r.has_value();
      out.push_back(r.value_or(0));
    }
    if (!ok) return std::nullopt;
    return out;
  }

  std::optional<FpMatrix> matrix(const Json& j, const std::string& path, std::size_t rows, std::size_t cols) {
    const std::string shape = std::to_string(rows) + "x" + std::to_string(cols);
    if (!j.is_array() || j.size() != rows) {
      bad(path, "expected a " + shape + " matrix (" + std::to_string(rows) + " rows)");
      return std::nullopt;
    }
    FpMatrix m(ws_.p, rows, cols);
    bool ok = true;
    for (std::size_t i = 0; i < rows; ++i) {
      const std::string rp = path + "/" + std::to_string(i);
      if (!j[i].is_array() || j[i].size() != cols) {
        bad(rp, "expected a row of " + std::to_string(cols) + " entries (matrix " + shape + ")");
        ok = false;
        continue;
      }
      for (std::size_t c = 0; c < cols; ++c) {
        auto r = residue(j[i][c], rp + "/" + std::to_string(c));
        if (r) m.set(i, c, *r);
        else ok = false;
      }
    }
    if (!ok) return std::nullopt;
    return m;
  }

  std::optional<std::vector<FpMatrix>> matrices(const Json& j, const std::string& path, std::size_t count,
                                                std::size_t rows, std::size_t cols) {
    if (!j.is_array() || j.size() != count) {
      bad(path, "expected " + std::to_string(count) + " matrices");
      return std::nullopt;
    }
    std::vector<FpMatrix> out;
    bool ok = true;
    for (std::size_t i = 0; i < count; ++i) {
      auto m = matrix(j[i], path + "/" + std::to_string(i), rows, cols);
      ok = ok && m.has_value();
      if (m) out.push_back(std::move(*m));
    }
    if (!ok) return std::nullopt;
    return out;
  }

  void report(const ValidationReport& r, const std::string& path) {
    for (const auto& v : r.violations) bad(path, v);
  }

  template <class F>
  void section(const char* key, F&& f) {
    if (!doc_.contains(key)) return;
    const Json& s = doc_[key];
    const std::string path = std::string("/") + key;
    if (!s.is_object()) {
      bad(path, "expected an object of named entries");
      return;
    }
    for (const auto& [name, j] : s.items()) {
      const std::size_t before = rep_.violations.size(), quiet = suppressed_;
      f(name, j, path + "/" + name);
      if (rep_.violations.size() != before || suppressed_ != quiet) broken_.insert(std::string(key) + "/" + name);
    }
  }

  /// Looks up `name` in a section; a reference to an entry that failed to
  /// load is not reported again.
  template <class M>
  const typename M::mapped_type* ref(const M& map, const char* section, const Json& j, const std::string& path) {
    auto name = text(j, path);
    if (!name) return nullptr;
    auto it = map.find(*name);
    if (it != map.end()) return &it->second;
    if (broken_.count(std::string(section) + "/" + *name)) ++suppressed_;
    else bad(path, "unresolved reference '" + *name + "' in " + section);
    return nullptr;
  }

  AlgebraPtr algebra_ref(const Json& j, const std::string& path) {
    auto name = text(j, path);
    if (!name) return nullptr;
    if (*name == "T" && !ws_.algebras.count("T")) {
      if (ws_.ctx) return ws_.ctx->t;
      if (broken_.count("triangular/T")) ++suppressed_;
      else bad(path, "algebra 'T' requires a triangular section");
      return nullptr;
    }
    auto it = ws_.algebras.find(*name);
    if (it != ws_.algebras.end()) return it->second;
    if (broken_.count("algebras/" + *name)) ++suppressed_;
    else bad(path, "unresolved reference '" + *name + "' in algebras");
    return nullptr;
  }

  void field() {
    const Json& f = doc_.contains("field") ? doc_["field"] : Json();
    if (f.is_null()) return;
    if (!keys(f, "/field", {"p"}, {"p"})) return;
    auto p = count(f["p"], "/field/p");
    if (!p) return;
    try {
      require_prime(static_cast<Residue>(*p));
      if (*p >= (1ull << 31)) throw Error("modulus must be below 2^31");
      ws_.p = static_cast<Residue>(*p);
    } catch (const Error& e) {
      bad("/field/p", e.what());
    }
  }

  void algebra(const std::string& name, const Json& j, const std::string& path) {
    if (name == "T") {
      bad(path, "the name 'T' is reserved for the triangular algebra");
      return;
    }
    if (!keys(j, path, {"dim", "mul", "unit"}, {"dim", "mul", "unit"})) return;
    auto d = count(j["dim"], path + "/dim");
    if (!d) return;
    const std::size_t n = *d;
    std::vector<Residue> mul(n * n * n, 0);
    bool ok = true;
    const Json& m = j["mul"];
    if (!m.is_array() || m.size() != n) {
      bad(path + "/mul", "expected " + std::to_string(n) + "x" + std::to_string(n) + "x" + std::to_string(n) +
                             " structure constants");
      return;
    }
    for (std::size_t a = 0; a < n; ++a) {
      const std::string pa = path + "/mul/" + std::to_string(a);
      if (!m[a].is_array() || m[a].size() != n) {
        bad(pa, "expected " + std::to_string(n) + " rows");
        ok = false;
        continue;
      }
      for (std::size_t b = 0; b < n; ++b) {
        auto v = vector(m[a][b], pa + "/" + std::to_string(b), n);
        if (!v) {
          ok = false;
          continue;
        }
        for (std::size_t c = 0; c < n; ++c) mul[(a * n + b) * n + c] = (*v)[c];
      }
    }
    auto unit = vector(j["unit"], path + "/unit", n);
    if (!ok || !unit) return;
    FDAlgebra alg(ws_.p, n, std::move(mul), std::move(*unit));
    const auto r = validate_algebra(alg);
    if (!r.valid()) {
      report(r, path);
      return;
    }
    ws_.algebras[name] = make_algebra(std::move(alg));
  }

  void bimodule(const std::string& name, const Json& j, const std::string& path) {
    if (!keys(j, path, {"left", "right", "dim", "left_action", "right_action"},
              {"left", "right", "dim", "left_action", "right_action"}))
      return;
    auto s = algebra_ref(j["left"], path + "/left");
    auto r = algebra_ref(j["right"], path + "/right");
    auto d = count(j["dim"], path + "/dim");
    if (!s || !r || !d) return;
    auto la = matrices(j["left_action"], path + "/left_action", s->dim(), *d, *d);
    auto ra = matrices(j["right_action"], path + "/right_action", r->dim(), *d, *d);
    if (!la || !ra) return;
    Bimodule u{s, r, *d, std::move(*la), std::move(*ra)};
    const auto rep = validate_bimodule(u);
    if (!rep.valid()) {
      report(rep, path);
      return;
    }
    ws_.bimodules[name] = {j["left"].get<std::string>(), j["right"].get<std::string>(), std::move(u)};
  }

  void triangular() {
    if (!doc_.contains("triangular")) return;
    const Json& t = doc_["triangular"];
    const std::string path = "/triangular";
    const std::size_t before = rep_.violations.size();
    if (!keys(t, path, {"R", "S", "U", "universes"}, {"R", "S", "U"})) {
      broken_.insert("triangular/T");
      return;
    }
    auto r = algebra_ref(t["R"], path + "/R");
    auto s = algebra_ref(t["S"], path + "/S");
    auto u = ref(ws_.bimodules, "bimodules", t["U"], path + "/U");
    TriangularEntry e{t["R"].is_string() ? t["R"].get<std::string>() : "",
                      t["S"].is_string() ? t["S"].get<std::string>() : "",
                      t["U"].is_string() ? t["U"].get<std::string>() : "",
                      {}};
    if (t.contains("universes") && keys(t["universes"], path + "/universes", {"R", "S", "T", "right"}, {}))
      for (const auto& [role, v] : t["universes"].items())
        if (auto n = text(v, path + "/universes/" + role)) e.universes[role] = *n;
    if (r && s && u) {
      if (u->left != e.s || u->right != e.r) bad(path + "/U", "bimodule '" + e.u + "' is not an (S, R)-bimodule");
      else
        try {
          ws_.ctx = make_context(r, s, u->bimodule);
        } catch (const Error& ex) {
          bad(path, ex.what());
        }
    }
    if (rep_.violations.size() != before || !ws_.ctx) broken_.insert("triangular/T");
    else ws_.triangular = std::move(e);
  }

  void module(const std::string& name, const Json& j, const std::string& path) {
    if (!keys(j, path, {"algebra", "side", "dim", "action"}, {"algebra", "side", "dim", "action"})) return;
    auto a = algebra_ref(j["algebra"], path + "/algebra");
    auto side = text(j["side"], path + "/side");
    auto d = count(j["dim"], path + "/dim");
    if (side && *side != "left" && *side != "right") {
      bad(path + "/side", "expected 'left' or 'right'");
      return;
    }
    if (!a || !side || !d) return;
    auto act = matrices(j["action"], path + "/action", a->dim(), *d, *d);
    if (!act) return;
    ModuleRep m{a, *side == "left" ? Side::left : Side::right, *d, std::move(*act)};
    const auto rep = validate_module(m);
    if (!rep.valid()) {
      report(rep, path);
      return;
    }
    ws_.modules[name] = {j["algebra"].get<std::string>(), std::move(m)};
  }

  const ModuleEntry* module_over(const Json& j, const std::string& path, const AlgebraPtr& a, Side side,
                                 const char* what) {
    auto e = ref(ws_.modules, "modules", j, path);
    if (!e) return nullptr;
    if (e->module.algebra != a || e->module.side != side) {
      bad(path, std::string("module '") + j.get<std::string>() + "' is not a " + what);
      return nullptr;
    }
    return e;
  }

  bool need_context(const std::string& path) {
    if (ws_.ctx) return true;
    if (broken_.count("triangular/T")) ++suppressed_;
    else bad(path, "requires a triangular section");
    return false;
  }

  void comma(const std::string& name, const Json& j, const std::string& path) {
    if (!keys(j, path, {"A", "B", "phi"}, {"A", "B", "phi"}) || !need_context(path)) return;
    const auto& c = *ws_.ctx;
    auto a = module_over(j["A"], path + "/A", c.r, Side::left, "left R-module");
    auto b = module_over(j["B"], path + "/B", c.s, Side::left, "left S-module");
    if (!a || !b) return;
    auto phi = matrix(j["phi"], path + "/phi", b->module.dim, c.u.dim * a->module.dim);
    if (!phi) return;
    CommaObject obj{a->module, b->module, std::move(*phi)};
    const auto rep = validate_comma(c, obj);
    if (!rep.valid()) {
      report(rep, path + "/phi");
      return;
    }
    ws_.comma_objects[name] = {j["A"].get<std::string>(), j["B"].get<std::string>(), std::move(obj)};
  }

  void right(const std::string& name, const Json& j, const std::string& path) {
    if (!keys(j, path, {"X", "Y", "psi"}, {"X", "Y", "psi"}) || !need_context(path)) return;
    const auto& c = *ws_.ctx;
    auto x = module_over(j["X"], path + "/X", c.r, Side::right, "right R-module");
    auto y = module_over(j["Y"], path + "/Y", c.s, Side::right, "right S-module");
    if (!x || !y) return;
    auto psi = matrix(j["psi"], path + "/psi", x->module.dim, y->module.dim * c.u.dim);
    if (!psi) return;
    RightTModule m{x->module, y->module, std::move(*psi)};
    const auto rep = validate_right(c, m);
    if (!rep.valid()) {
      report(rep, path + "/psi");
      return;
    }
    ws_.right_t_modules[name] = {j["X"].get<std::string>(), j["Y"].get<std::string>(), std::move(m)};
  }

  void presentation(const std::string& name, const Json& j, const std::string& path) {
    if (!keys(j, path, {"p1", "p0", "sigma", "target", "epi"}, {"p1", "p0", "sigma", "target", "epi"})) return;
    auto p1 = ref(ws_.modules, "modules", j["p1"], path + "/p1");
    auto p0 = ref(ws_.modules, "modules", j["p0"], path + "/p0");
    auto t = ref(ws_.modules, "modules", j["target"], path + "/target");
    if (!p1 || !p0 || !t) return;
    if (!same_algebra(p1->module.algebra, p0->module.algebra) || !same_algebra(p0->module.algebra, t->module.algebra) ||
        p1->module.side != p0->module.side || p0->module.side != t->module.side) {
      bad(path, "p1, p0 and target must be modules over the same algebra and side");
      return;
    }
    auto sigma = matrix(j["sigma"], path + "/sigma", p0->module.dim, p1->module.dim);
    auto epi = matrix(j["epi"], path + "/epi", t->module.dim, p0->module.dim);
    if (!sigma || !epi) return;
    Presentation pr{{p1->module, p0->module, std::move(*sigma)}, {p0->module, t->module, std::move(*epi)}};
    const auto rep = validate_presentation(pr);
    if (!rep.valid()) {
      report(rep, path);
      return;
    }
    ws_.presentations[name] = {j["p1"].get<std::string>(), j["p0"].get<std::string>(), j["target"].get<std::string>(),
                               std::move(pr)};
  }

  std::optional<std::size_t> max_dim(const Json& j, const std::string& path, bool override) {
    auto d = count(j, path);
    if (d && override && opt_.max_dim) return opt_.max_dim;
    return d;
  }

  const UniverseEntry* universe_ref(const Json& j, const std::string& path, const std::string& kind) {
    auto u = ref(ws_.universes, "universes", j, path);
    if (u && u->kind != kind) {
      bad(path, "universe '" + j.get<std::string>() + "' is not a " + kind + " universe");
      return nullptr;
    }
    return u;
  }

  void universe(const std::string& name, const Json& j, const std::string& path) {
    if (!keys(j, path, {"kind", "members", "generate"}, {"kind"})) return;
    auto kind = text(j["kind"], path + "/kind");
    if (!kind) return;
    UniverseEntry e{j, *kind, {name, {}, {}}, {}};
    const bool has_members = j.contains("members"), has_gen = j.contains("generate");
    if (has_members == has_gen) {
      bad(path, "exactly one of 'members' and 'generate' is required");
      return;
    }
    if (*kind == "modules") {
      if (has_gen) {
        bad(path + "/generate", "module universes list their members");
        return;
      }
      if (!j["members"].is_array()) {
        bad(path + "/members", "expected an array of names");
        return;
      }
      AlgebraPtr alg;
      Side side = Side::left;
      for (std::size_t i = 0; i < j["members"].size(); ++i) {
        const std::string mp = path + "/members/" + std::to_string(i);
        auto m = ref(ws_.modules, "modules", j["members"][i], mp);
        if (!m) continue;
        if (alg && (m->module.algebra != alg || m->module.side != side)) {
          bad(mp, "universe members must share algebra and side");
          continue;
        }
        alg = m->module.algebra;
        side = m->module.side;
        e.modules.add(j["members"][i].get<std::string>(), m->module);
      }
    } else if (*kind == "comma" || *kind == "right_t") {
      if (!need_context(path)) return;
      const auto& c = *ws_.ctx;
      const bool left = *kind == "comma";
      if (has_members) {
        if (!j["members"].is_array()) {
          bad(path + "/members", "expected an array of names");
          return;
        }
        for (std::size_t i = 0; i < j["members"].size(); ++i) {
          const std::string mp = path + "/members/" + std::to_string(i);
          if (left) {
            if (auto o = ref(ws_.comma_objects, "comma_objects", j["members"][i], mp))
              e.modules.add(j["members"][i].get<std::string>(), to_T_module(c, o->object));
          } else if (auto o = ref(ws_.right_t_modules, "right_t_modules", j["members"][i], mp)) {
            e.rights.push_back({j["members"][i].get<std::string>(), o->module});
          }
        }
      } else {
        const Json& g = j["generate"];
        const std::string gp = path + "/generate";
        if (!keys(g, gp, {"R", "S", "max_dim"}, {"R", "S", "max_dim"})) return;
        auto ru = universe_ref(g["R"], gp + "/R", "modules");
        auto su = universe_ref(g["S"], gp + "/S", "modules");
        auto md = max_dim(g["max_dim"], gp + "/max_dim", left);
        if (!ru || !su || !md) return;
        const Side want = left ? Side::left : Side::right;
        const auto fits = [&](const Universe& u, const AlgebraPtr& a) {
          for (const auto& m : u.members)
            if (m.algebra != a || m.side != want) return false;
          return true;
        };
        if (!fits(ru->modules, c.r)) bad(gp + "/R", std::string("members must be ") + to_string(want) + " R-modules");
        if (!fits(su->modules, c.s)) bad(gp + "/S", std::string("members must be ") + to_string(want) + " S-modules");
        if (!fits(ru->modules, c.r) || !fits(su->modules, c.s)) return;
        try {
          if (left) {
            e.modules = build_comma_universe(c, ru->modules, su->modules, *md, opt_.iso_cap);
            e.modules.label = name;
          } else {
            e.rights = build_right_universe(c, ru->modules, su->modules, *md, opt_.iso_cap);
          }
        } catch (const Error& ex) {
          bad(gp, ex.what());
          return;
        }
      }
    } else {
      bad(path + "/kind", "expected 'modules', 'comma' or 'right_t'");
      return;
    }
    ws_.universes[name] = std::move(e);
  }

  // Families may refer to earlier-declared or later-declared families; they
  // are resolved on demand with cycle detection.
  std::set<std::string> resolving_;

  const FamilyEntry* family_ref(const Json& j, const std::string& path) {
    auto name = text(j, path);
    if (!name) return nullptr;
    if (auto it = ws_.families.find(*name); it != ws_.families.end()) return &it->second;
    const Json* defs = doc_.contains("families") && doc_["families"].is_object() ? &doc_["families"] : nullptr;
    if (defs && defs->contains(*name)) {
      if (broken_.count("families/" + *name)) {
        ++suppressed_;
        return nullptr;
      }
      if (resolving_.count(*name)) {
        bad(path, "family '" + *name + "' refers to itself");
        return nullptr;
      }
      resolving_.insert(*name);
      const std::size_t before = rep_.violations.size(), quiet = suppressed_;
      family(*name, (*defs)[*name], "/families/" + *name);
      resolving_.erase(*name);
      if (rep_.violations.size() != before || suppressed_ != quiet) broken_.insert("families/" + *name);
      auto it = ws_.families.find(*name);
      if (it != ws_.families.end()) return &it->second;
      ++suppressed_;
      return nullptr;
    }
    if (*name == "all" || *name == "zero") return builtin(*name);
    bad(path, "unresolved reference '" + *name + "' in families");
    return nullptr;
  }

  std::map<std::string, FamilyEntry> builtins_;

  const FamilyEntry* builtin(const std::string& name) {
    auto it = builtins_.find(name);
    if (it == builtins_.end())
      it = builtins_.emplace(name, FamilyEntry{{{"kind", name}}, name == "all" ? all_family() : zero_family()}).first;
    return &it->second;
  }

  void families() {
    if (!doc_.contains("families")) return;
    if (!doc_["families"].is_object()) {
      bad("/families", "expected an object of named entries");
      return;
    }
    for (const auto& [name, j] : doc_["families"].items()) {
      if (ws_.families.count(name) || broken_.count("families/" + name)) continue;
      const std::size_t before = rep_.violations.size(), quiet = suppressed_;
      resolving_.insert(name);
      family(name, j, "/families/" + name);
      resolving_.erase(name);
      if (rep_.violations.size() != before || suppressed_ != quiet) broken_.insert("families/" + name);
    }
  }

  void family(const std::string& name, const Json& j, const std::string& path) {
    if (!j.is_object() || !j.contains("kind")) {
      bad(path, "expected an object with a 'kind'");
      return;
    }
    auto kind = text(j["kind"], path + "/kind");
    if (!kind) return;
    std::optional<ModuleFamily> f;
    if (*kind == "all" || *kind == "zero") {
      if (keys(j, path, {"kind"}, {})) f = *kind == "all" ? all_family(name) : zero_family(name);
    } else if (*kind == "explicit") {
      if (!keys(j, path, {"kind", "members"}, {"members"})) return;
      if (!j["members"].is_array()) {
        bad(path + "/members", "expected an array of names");
        return;
      }
      std::vector<ModuleRep> reps;
      for (std::size_t i = 0; i < j["members"].size(); ++i) {
        const std::string mp = path + "/members/" + std::to_string(i);
        const Json& m = j["members"][i];
        if (m.is_string() && ws_.comma_objects.count(m.get<std::string>()))
          reps.push_back(to_T_module(*ws_.ctx, ws_.comma_objects.at(m.get<std::string>()).object));
        else if (auto e = ref(ws_.modules, "modules", m, mp))
          reps.push_back(e->module);
      }
      f = explicit_family(name, std::move(reps), opt_.iso_cap);
    } else if (*kind == "gen") {
      if (!keys(j, path, {"kind", "module"}, {"module"})) return;
      const Json& m = j["module"];
      if (m.is_string() && ws_.comma_objects.count(m.get<std::string>()))
        f = gen_family(name, to_T_module(*ws_.ctx, ws_.comma_objects.at(m.get<std::string>()).object));
      else if (auto e = ref(ws_.modules, "modules", m, path + "/module"))
        f = gen_family(name, e->module);
    } else if (*kind == "d_sigma") {
      if (!keys(j, path, {"kind", "presentation"}, {"presentation"})) return;
      if (auto e = ref(ws_.presentations, "presentations", j["presentation"], path + "/presentation"))
        f = d_sigma_family(name, e->presentation);
    } else if (*kind == "perp_right" || *kind == "perp_left") {
      if (!keys(j, path, {"kind", "of", "universe"}, {"of", "universe"})) return;
      auto of = family_ref(j["of"], path + "/of");
      auto u = ref(ws_.universes, "universes", j["universe"], path + "/universe");
      if (u && u->kind == "right_t") {
        bad(path + "/universe", "perpendicular families need a module or comma universe");
        return;
      }
      if (of && u)
        f = *kind == "perp_right" ? perp_right(of->family, u->modules, name) : perp_left(of->family, u->modules, name);
    } else if (*kind == "comma") {
      if (!keys(j, path, {"kind", "type", "C", "D"}, {"type", "C", "D"}) || !need_context(path)) return;
      auto type = text(j["type"], path + "/type");
      auto c = family_ref(j["C"], path + "/C");
      auto d = family_ref(j["D"], path + "/D");
      if (!type) return;
      CommaFamilyKind k;
      if (*type == "U") k = CommaFamilyKind::U;
      else if (*type == "B") k = CommaFamilyKind::B;
      else if (*type == "J") k = CommaFamilyKind::J;
      else {
        bad(path + "/type", "expected 'U', 'B' or 'J'");
        return;
      }
      if (c && d) f = comma_family(ws_.ctx, k, c->family, d->family);
      if (f) f->label = name;
    } else {
      bad(path + "/kind", "unknown family kind '" + *kind + "'");
      return;
    }
    if (f) ws_.families[name] = {j, std::move(*f)};
  }

  void check_triangular_universes() {
    if (!ws_.triangular) return;
    const std::map<std::string, std::string> want = {{"R", "modules"}, {"S", "modules"}, {"T", "comma"}, {"right", "right_t"}};
    for (const auto& [role, uname] : ws_.triangular->universes) {
      const std::string path = "/triangular/universes/" + role;
      auto u = universe_ref(Json(uname), path, want.at(role));
      if (!u || u->kind != "modules") continue;
      const AlgebraPtr a = role == "R" ? ws_.ctx->r : ws_.ctx->s;
      for (const auto& m : u->modules.members)
        if (m.algebra != a || m.side != Side::left) {
          bad(path, "members must be left " + role + "-modules");
          break;
        }
    }
  }

  void pair_list(const Json& j, const std::string& path) {
    if (!j.is_array()) {
      bad(path, "expected an array of [family, family] pairs");
      return;
    }
    for (std::size_t i = 0; i < j.size(); ++i) {
      const std::string pp = path + "/" + std::to_string(i);
      if (!j[i].is_array() || j[i].size() != 2) {
        bad(pp, "expected a [family, family] pair");
        continue;
      }
      family_ref(j[i][0], pp + "/0");
      family_ref(j[i][1], pp + "/1");
    }
  }

  void sigma_pair(const Json& t, const std::string& path) {
    auto a = ref(ws_.presentations, "presentations", t["sigma_A"], path + "/sigma_A");
    auto b = ref(ws_.presentations, "presentations", t["sigma_B"], path + "/sigma_B");
    if (a && ws_.ctx && (a->presentation.target().algebra != ws_.ctx->r || a->presentation.target().side != Side::left))
      bad(path + "/sigma_A", "expected a presentation of a left R-module");
    if (b && ws_.ctx && (b->presentation.target().algebra != ws_.ctx->s || b->presentation.target().side != Side::left))
      bad(path + "/sigma_B", "expected a presentation of a left S-module");
  }

  void tasks() {
    if (!doc_.contains("tasks")) return;
    const Json& ts = doc_["tasks"];
    if (!ts.is_array()) {
      bad("/tasks", "expected an array");
      return;
    }
    ws_.tasks = ts;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const std::string path = "/tasks/" + std::to_string(i);
      const Json& t = ts[i];
      if (!t.is_object() || !t.contains("task") || !t["task"].is_string()) {
        bad(path, "expected an object with a 'task' name");
        continue;
      }
      const std::string name = t["task"].get<std::string>();
      if (!kTaskNames.count(name)) {
        bad(path + "/task", "unknown task '" + name + "'");
        continue;
      }
      if (name == "torsion-pair") {
        if (!keys(t, path, {"task", "x", "y", "universe"}, {"x", "y", "universe"})) continue;
        family_ref(t["x"], path + "/x");
        family_ref(t["y"], path + "/y");
        universe_ref(t["universe"], path + "/universe", universe_kind(t["universe"]));
        continue;
      }
      if (name == "torsion-class") {
        if (!keys(t, path, {"task", "family", "universe"}, {"family", "universe"})) continue;
        family_ref(t["family"], path + "/family");
        universe_ref(t["universe"], path + "/universe", universe_kind(t["universe"]));
        continue;
      }
      if (name == "silting" || name == "partial-silting") {
        if (!keys(t, path, {"task", "presentation", "universe"}, {"presentation", "universe"})) continue;
        ref(ws_.presentations, "presentations", t["presentation"], path + "/presentation");
        universe_ref(t["universe"], path + "/universe", universe_kind(t["universe"]));
        continue;
      }
      if (!need_context(path)) continue;
      if (!ws_.triangular || !ws_.triangular->universes.count("R") || !ws_.triangular->universes.count("S") ||
          !ws_.triangular->universes.count("T")) {
        bad(path, "task needs /triangular/universes with roles R, S and T");
        continue;
      }
      if (name == "hom-table") {
        if (!keys(t, path, {"task", "objects"}, {})) continue;
        if (t.contains("objects")) {
          if (!t["objects"].is_array()) bad(path + "/objects", "expected an array of comma object names");
          else
            for (std::size_t k = 0; k < t["objects"].size(); ++k)
              ref(ws_.comma_objects, "comma_objects", t["objects"][k], path + "/objects/" + std::to_string(k));
        }
      } else if (name == "tensor-iso") {
        keys(t, path, {"task"}, {});
        if (!ws_.triangular->universes.count("right")) bad(path, "tensor-iso needs /triangular/universes/right");
      } else if (name == "hom-bijection" || name == "hom-iso" || name == "adjunctions" || name == "round-trip") {
        keys(t, path, {"task"}, {});
      } else if (name == "perp-B" || name == "perp-J") {
        if (!keys(t, path, {"task", "C", "D"}, {"C", "D"})) continue;
        family_ref(t["C"], path + "/C");
        family_ref(t["D"], path + "/D");
      } else if (name == "torsion-B" || name == "torsion-J") {
        if (!keys(t, path, {"task", "c1", "c2", "d1", "d2"}, {"c1", "c2", "d1", "d2"})) continue;
        for (const char* k : {"c1", "c2", "d1", "d2"}) family_ref(t[k], path + "/" + k);
      } else if (name == "verify-all") {
        if (!keys(t, path, {"task", "transfers", "r_pairs", "s_pairs", "perp"}, {})) continue;
        if (!ws_.triangular->universes.count("right")) bad(path, "verify-all needs /triangular/universes/right");
        if (t.contains("transfers")) {
          if (!t["transfers"].is_array()) bad(path + "/transfers", "expected an array");
          else
            for (std::size_t k = 0; k < t["transfers"].size(); ++k) {
              const std::string tp = path + "/transfers/" + std::to_string(k);
              if (keys(t["transfers"][k], tp, {"name", "sigma_A", "sigma_B"}, {"name", "sigma_A", "sigma_B"})) {
                text(t["transfers"][k]["name"], tp + "/name");
                sigma_pair(t["transfers"][k], tp);
              }
            }
        }
        for (const char* k : {"r_pairs", "s_pairs", "perp"})
          if (t.contains(k)) pair_list(t[k], path + "/" + k);
      } else {
        if (!keys(t, path, {"task", "sigma_A", "sigma_B"}, {"sigma_A", "sigma_B"})) continue;
        sigma_pair(t, path);
      }
    }
  }

  std::string universe_kind(const Json& j) const {
    if (j.is_string())
      if (auto it = ws_.universes.find(j.get<std::string>()); it != ws_.universes.end() && it->second.kind == "comma")
        return "comma";
    return "modules";
  }
};

}  // namespace detail

/// Parses and validates; throws DocumentInvalid listing every violation.
inline Workspace load_document(const Json& doc, const LoadOptions& opt = {}) { return detail::Loader(doc, opt).run(); }

inline ValidationReport validate_document(const Json& doc, const LoadOptions& opt = {}) {
  try {
    load_document(doc, opt);
    return {};
  } catch (const DocumentInvalid& e) {
    return e.report;
  }
}

}  // namespace commacat
