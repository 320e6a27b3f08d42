#pragma once

// Comma objects (A, B, phi: U (x)_R A -> B) over a triangular algebra
// T = [[R, 0], [U, S]], their identification with left T-modules, the
// functors p, q, h, and the right-module data needed for tensoring over T.

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "commacat/family.hpp"
#include "commacat/presentation.hpp"

namespace commacat {

struct CommaContext {
  AlgebraPtr r;
  AlgebraPtr s;
  Bimodule u;
  AlgebraPtr t;
  TriangularLayout layout;

  Residue p() const { return r->p(); }
  /// U as a left S-module.
  ModuleRep u_left() const { return {s, Side::left, u.dim, u.left_action}; }
  /// U as a right R-module.
  ModuleRep u_right() const { return {r, Side::right, u.dim, u.right_action}; }
};

using ContextPtr = std::shared_ptr<const CommaContext>;

inline ContextPtr make_context(AlgebraPtr r, AlgebraPtr s, Bimodule u) {
  if (!same_algebra(u.left_algebra, s) || !same_algebra(u.right_algebra, r))
    throw Error("make_context: bimodule is not an (S, R)-bimodule");
  auto t = make_algebra(triangular_algebra(*r, *s, u));
  const TriangularLayout layout{r->dim(), u.dim, s->dim()};
  return std::make_shared<const CommaContext>(CommaContext{std::move(r), std::move(s), std::move(u), std::move(t), layout});
}

/// phi is dim B x (dim U * dim A); column i * dim A + j is phi(u_i (x) a_j).
struct CommaObject {
  ModuleRep a;
  ModuleRep b;
  FpMatrix phi;
};

/// The block Phi_i = phi(u_i (x) -): A -> B.
inline FpMatrix phi_block(const CommaObject& c, std::size_t i) { return c.phi.block(0, i * c.a.dim, c.b.dim, c.a.dim); }

inline FpMatrix assemble_phi(Residue p, std::size_t b, std::size_t a, const std::vector<FpMatrix>& blocks) {
  FpMatrix phi(p, b, blocks.size() * a);
  for (std::size_t i = 0; i < blocks.size(); ++i) phi.set_block(0, i * a, blocks[i]);
  return phi;
}

inline CommaObject zero_object(const CommaContext& ctx) {
  return {zero_module(ctx.r), zero_module(ctx.s), FpMatrix(ctx.p(), 0, 0)};
}

/// (A, 0, 0).
inline CommaObject lower_object(const CommaContext& ctx, ModuleRep a) {
  const std::size_t n = ctx.u.dim * a.dim;
  return {std::move(a), zero_module(ctx.s), FpMatrix(ctx.p(), 0, n)};
}

/// (0, B, 0).
inline CommaObject upper_object(const CommaContext& ctx, ModuleRep b) {
  const std::size_t n = b.dim;
  return {zero_module(ctx.r), std::move(b), FpMatrix(ctx.p(), n, 0)};
}

inline ValidationReport validate_comma(const CommaContext& ctx, const CommaObject& c) {
  ValidationReport rep;
  if (!same_algebra(c.a.algebra, ctx.r) || c.a.side != Side::left) rep.add("A is not a left R-module");
  if (!same_algebra(c.b.algebra, ctx.s) || c.b.side != Side::left) rep.add("B is not a left S-module");
  if (!rep.valid()) return rep;
  rep.merge(validate_module(c.a), "A: ");
  rep.merge(validate_module(c.b), "B: ");
  if (!rep.valid()) return rep;
  const std::size_t a = c.a.dim, u = ctx.u.dim;
  if (c.phi.rows() != c.b.dim || c.phi.cols() != u * a) {
    rep.add("phi has shape " + c.phi.shape() + ", expected " + std::to_string(c.b.dim) + "x" + std::to_string(u * a));
    return rep;
  }
  const FpMatrix rel = balancing_relations(ctx.u.right_action, u, c.a.action, a, ctx.p());
  const FpMatrix defect = c.phi * rel;
  for (std::size_t col = 0; col < defect.cols(); ++col) {
    bool zero = true;
    for (std::size_t row = 0; row < defect.rows() && zero; ++row) zero = defect(row, col) == 0;
    if (zero) continue;
    const std::size_t k = col / (u * a), rem = col % (u * a);
    rep.add("phi violates balance relation " + std::to_string(col) + ": (u_" + std::to_string(rem / a) + " r_" +
            std::to_string(k) + ") (x) a_" + std::to_string(rem % a) + " - u_" + std::to_string(rem / a) + " (x) (r_" +
            std::to_string(k) + " a_" + std::to_string(rem % a) + ")");
  }
  const FpMatrix ia = FpMatrix::identity(ctx.p(), a);
  for (std::size_t k = 0; k < ctx.u.left_action.size(); ++k)
    if (c.phi * kron(ctx.u.left_action[k], ia) != c.b.action[k] * c.phi)
      rep.add("phi is not S-linear for s_" + std::to_string(k));
  return rep;
}

inline void require_valid(const CommaContext& ctx, const CommaObject& c, const char* where) {
  const auto rep = validate_comma(ctx, c);
  if (!rep.valid()) throw Error(std::string(where) + ": " + rep.violations.front());
}

inline CommaObject comma_direct_sum(const CommaContext& ctx, const CommaObject& x, const CommaObject& y) {
  std::vector<FpMatrix> blocks;
  for (std::size_t i = 0; i < ctx.u.dim; ++i) blocks.push_back(block_diagonal(phi_block(x, i), phi_block(y, i)));
  ModuleRep a = direct_sum(x.a, y.a), b = direct_sum(x.b, y.b);
  FpMatrix phi = assemble_phi(ctx.p(), b.dim, a.dim, blocks);
  return {std::move(a), std::move(b), std::move(phi)};
}

/// The T-module on A (+) B with (r, u, s)(a, b) = (r a, phi(u (x) a) + s b).
inline ModuleRep to_T_module(const CommaContext& ctx, const CommaObject& c) {
  require_valid(ctx, c, "to_T_module");
  const Residue p = ctx.p();
  const std::size_t a = c.a.dim, b = c.b.dim, n = a + b;
  ModuleRep m{ctx.t, Side::left, n, {}};
  for (const auto& ra : c.a.action) m.action.push_back(block_diagonal(ra, FpMatrix(p, b, b)));
  for (std::size_t i = 0; i < ctx.u.dim; ++i) {
    FpMatrix act(p, n, n);
    act.set_block(a, 0, phi_block(c, i));
    m.action.push_back(std::move(act));
  }
  for (const auto& sb : c.b.action) m.action.push_back(block_diagonal(FpMatrix(p, a, a), sb));
  return m;
}

struct CommaDecomposition {
  CommaObject object;
  FpMatrix witness;  // isomorphism to_T_module(object) -> m
};

inline FpMatrix idempotent_action(const ModuleRep& m, std::size_t offset, const std::vector<Residue>& unit) {
  FpMatrix e(m.p(), m.dim, m.dim);
  for (std::size_t k = 0; k < unit.size(); ++k)
    if (unit[k] != 0) e = e + m.action[offset + k].scaled(unit[k]);
  return e;
}

/// Slices a T-module by the idempotents 1_R and 1_S.
inline CommaDecomposition from_T_module(const CommaContext& ctx, const ModuleRep& m) {
  if (!same_algebra(m.algebra, ctx.t) || m.side != Side::left) throw Error("from_T_module: not a left T-module");
  const auto& L = ctx.layout;
  const FpMatrix abasis = column_space_basis(idempotent_action(m, L.r_offset(), ctx.r->unit()));
  const FpMatrix bbasis = column_space_basis(idempotent_action(m, L.s_offset(), ctx.s->unit()));
  const FpMatrix ainv = left_inverse(abasis), binv = left_inverse(bbasis);
  ModuleRep a{ctx.r, Side::left, abasis.cols(), {}};
  ModuleRep b{ctx.s, Side::left, bbasis.cols(), {}};
  for (std::size_t k = 0; k < L.r_dim; ++k) a.action.push_back(ainv * m.action[L.r_offset() + k] * abasis);
  for (std::size_t k = 0; k < L.s_dim; ++k) b.action.push_back(binv * m.action[L.s_offset() + k] * bbasis);
  std::vector<FpMatrix> blocks;
  for (std::size_t i = 0; i < L.u_dim; ++i) blocks.push_back(binv * m.action[L.u_offset() + i] * abasis);
  FpMatrix phi = assemble_phi(ctx.p(), b.dim, a.dim, blocks);
  return {{std::move(a), std::move(b), std::move(phi)}, hstack(abasis, bbasis)};
}

/// p(A, B) = (A, U (x) A (+) B, [pi; 0]).
inline CommaObject functor_p(const CommaContext& ctx, const ModuleRep& a, const ModuleRep& b) {
  const auto fa = tensor_over(ctx.u, a);
  ModuleRep bb = direct_sum(fa.module, b);
  FpMatrix phi = vstack(fa.projection, FpMatrix(ctx.p(), b.dim, ctx.u.dim * a.dim));
  return {a, std::move(bb), std::move(phi)};
}

inline std::pair<ModuleRep, ModuleRep> functor_q(const CommaObject& c) { return {c.a, c.b}; }

/// Hom_S(U, B) as a left R-module via (r g)(u) = g(u r). `basis[l]` is the
/// intertwiner of coordinate l; `coords` maps a row-major flattened
/// intertwiner in the span to its coordinates.
struct HomFromBimodule {
  ModuleRep module;
  std::vector<FpMatrix> basis;
  FpMatrix coords;
};

inline FpMatrix flatten_column(const FpMatrix& m) { return FpMatrix(m.p(), m.rows() * m.cols(), 1, m.entries()); }

inline HomFromBimodule hom_from_bimodule(const CommaContext& ctx, const ModuleRep& b) {
  auto basis = hom_basis(ctx.u_left(), b);
  const Residue p = ctx.p();
  const std::size_t h = basis.size(), len = b.dim * ctx.u.dim;
  FpMatrix g(p, len, h);
  for (std::size_t l = 0; l < h; ++l) g.set_block(0, l, flatten_column(basis[l]));
  FpMatrix coords = left_inverse(g);
  ModuleRep m{ctx.r, Side::left, h, {}};
  for (const auto& rk : ctx.u.right_action) {
    FpMatrix act(p, h, h);
    for (std::size_t l = 0; l < h; ++l) act.set_block(0, l, coords * flatten_column(basis[l] * rk));
    m.action.push_back(std::move(act));
  }
  return {std::move(m), std::move(basis), std::move(coords)};
}

/// The adjunct A -> Hom_S(U, B), x -> phi(- (x) x).
inline ModuleMap tilde_phi(const CommaContext& ctx, const CommaObject& c, const HomFromBimodule& hom) {
  const std::size_t a = c.a.dim, u = ctx.u.dim;
  FpMatrix f(ctx.p(), hom.module.dim, a);
  for (std::size_t j = 0; j < a; ++j) {
    FpMatrix mj(ctx.p(), c.b.dim, u);
    for (std::size_t i = 0; i < u; ++i) mj.set_block(0, i, c.phi.block(0, i * a + j, c.b.dim, 1));
    f.set_block(0, j, hom.coords * flatten_column(mj));
  }
  return {c.a, hom.module, std::move(f)};
}

inline ModuleMap tilde_phi(const CommaContext& ctx, const CommaObject& c) {
  return tilde_phi(ctx, c, hom_from_bimodule(ctx, c.b));
}

inline Submodule tilde_phi_kernel(const CommaContext& ctx, const CommaObject& c) {
  const ModuleMap t = tilde_phi(ctx, c);
  return submodule(c.a, kernel_basis(t.matrix));
}

/// h(A, B) = (A (+) Hom_S(U, B), B, evaluation on the second summand).
inline CommaObject functor_h(const CommaContext& ctx, const ModuleRep& a, const ModuleRep& b) {
  const auto hom = hom_from_bimodule(ctx, b);
  ModuleRep aa = direct_sum(a, hom.module);
  const std::size_t n = aa.dim, u = ctx.u.dim;
  FpMatrix phi(ctx.p(), b.dim, u * n);
  for (std::size_t i = 0; i < u; ++i)
    for (std::size_t l = 0; l < hom.basis.size(); ++l) phi.set_block(0, i * n + a.dim + l, hom.basis[l].block(0, i, b.dim, 1));
  return {std::move(aa), b, std::move(phi)};
}

struct CommaMap {
  FpMatrix f;  // A -> A'
  FpMatrix g;  // B -> B'
};

inline bool is_comma_map(const CommaContext& ctx, const CommaObject& x, const CommaObject& y, const CommaMap& m) {
  if (!is_module_map(x.a, y.a, m.f) || !is_module_map(x.b, y.b, m.g)) return false;
  for (std::size_t i = 0; i < ctx.u.dim; ++i)
    if (m.g * phi_block(x, i) != phi_block(y, i) * m.f) return false;
  return true;
}

inline ModuleMap comma_map_as_T(const CommaContext& ctx, const CommaObject& x, const CommaObject& y, const CommaMap& m) {
  return {to_T_module(ctx, x), to_T_module(ctx, y), block_diagonal(m.f, m.g)};
}

/// Basis of commuting pairs (f, g) with g Phi_i = Phi'_i f for every u_i.
inline std::vector<CommaMap> hom_comma(const CommaContext& ctx, const CommaObject& x, const CommaObject& y) {
  require_valid(ctx, x, "hom_comma");
  require_valid(ctx, y, "hom_comma");
  const Residue p = ctx.p(), minus = p - 1;
  MatrixSystem sys(p);
  const std::size_t f = sys.add_variable(y.a.dim, x.a.dim);
  const std::size_t g = sys.add_variable(y.b.dim, x.b.dim);
  using Term = MatrixSystem::Term;
  for (std::size_t k = 0; k < x.a.action.size(); ++k) {
    const Term t[] = {{1, &y.a.action[k], f, nullptr}, {minus, nullptr, f, &x.a.action[k]}};
    sys.add_equation(t);
  }
  for (std::size_t k = 0; k < x.b.action.size(); ++k) {
    const Term t[] = {{1, &y.b.action[k], g, nullptr}, {minus, nullptr, g, &x.b.action[k]}};
    sys.add_equation(t);
  }
  std::vector<FpMatrix> xb, yb;
  for (std::size_t i = 0; i < ctx.u.dim; ++i) {
    xb.push_back(phi_block(x, i));
    yb.push_back(phi_block(y, i));
  }
  for (std::size_t i = 0; i < ctx.u.dim; ++i) {
    const Term t[] = {{1, nullptr, g, &xb[i]}, {minus, &yb[i], f, nullptr}};
    sys.add_equation(t);
  }
  std::vector<CommaMap> out;
  for (auto& sol : sys.solution_basis()) out.push_back({std::move(sol[0]), std::move(sol[1])});
  return out;
}

inline std::size_t hom_comma_dim(const CommaContext& ctx, const CommaObject& x, const CommaObject& y) {
  return hom_comma(ctx, x, y).size();
}

inline bool comma_isomorphic(const CommaContext& ctx, const CommaObject& x, const CommaObject& y, std::size_t iso_cap = 16) {
  return is_isomorphic(to_T_module(ctx, x), to_T_module(ctx, y), iso_cap);
}

/// phi induces an isomorphism U (x)_R A -> B.
inline bool phi_is_iso(const CommaContext& ctx, const CommaObject& c) {
  const auto fa = tensor_over(ctx.u, c.a);
  const std::size_t r = rank(c.phi);
  return r == c.b.dim && r == fa.module.dim;
}

inline bool phi_is_mono(const CommaContext& ctx, const CommaObject& c) {
  return rank(c.phi) == tensor_over(ctx.u, c.a).module.dim;
}

inline Quotient phi_cokernel(const CommaObject& c) { return quotient_module(c.b, c.phi); }

enum class HomKind { target_lower = 1, source_upper = 2, source_free = 3, target_cofree = 4, source_regular = 5 };

inline const char* to_string(HomKind k) {
  switch (k) {
    case HomKind::target_lower: return "target-C0";
    case HomKind::source_upper: return "source-0B";
    case HomKind::source_free: return "source-free";
    case HomKind::target_cofree: return "target-cofree";
    case HomKind::source_regular: return "source-R0";
  }
  return "?";
}

/// Whether the shape of (x, y) matches the given kind: (1) y = (C, 0);
/// (2) x = (0, B); (3) x has phi an isomorphism from U (x) A; (4) y has phi~
/// an isomorphism; (5) x = (R, 0).
inline bool hom_formula_applies(const CommaContext& ctx, HomKind kind, const CommaObject& x, const CommaObject& y,
                                std::size_t iso_cap = 16) {
  switch (kind) {
    case HomKind::target_lower: return y.b.dim == 0;
    case HomKind::source_upper: return x.a.dim == 0;
    case HomKind::source_free: return phi_is_iso(ctx, x);
    case HomKind::target_cofree: {
      const auto t = tilde_phi(ctx, y);
      const std::size_t r = rank(t.matrix);
      return r == t.source.dim && r == t.target.dim;
    }
    case HomKind::source_regular:
      return x.b.dim == 0 && is_isomorphic(x.a, regular_module(ctx.r), iso_cap);
  }
  return false;
}

/// The Hom dimension predicted from R- and S-side data alone.
inline std::size_t hom_formula(const CommaContext& ctx, HomKind kind, const CommaObject& x, const CommaObject& y,
                               std::size_t iso_cap = 16) {
  if (!hom_formula_applies(ctx, kind, x, y, iso_cap))
    throw Error(std::string("hom_formula: arguments do not have shape ") + to_string(kind));
  switch (kind) {
    case HomKind::target_lower:
    case HomKind::source_free: return hom_dim(x.a, y.a);
    case HomKind::source_upper:
    case HomKind::target_cofree: return hom_dim(x.b, y.b);
    case HomKind::source_regular: return tilde_phi_kernel(ctx, y).module.dim;
  }
  return 0;
}

/// (X, Y, psi: Y (x)_S U -> X); psi is dim X x (dim Y * dim U), column
/// i * dim U + j is psi(y_i (x) u_j).
struct RightTModule {
  ModuleRep x;
  ModuleRep y;
  FpMatrix psi;
};

inline FpMatrix psi_block(const CommaContext& ctx, const RightTModule& m, std::size_t i) {
  FpMatrix out(ctx.p(), m.x.dim, m.y.dim);
  for (std::size_t j = 0; j < m.y.dim; ++j) out.set_block(0, j, m.psi.block(0, j * ctx.u.dim + i, m.x.dim, 1));
  return out;
}

inline ValidationReport validate_right(const CommaContext& ctx, const RightTModule& m) {
  ValidationReport rep;
  if (!same_algebra(m.x.algebra, ctx.r) || m.x.side != Side::right) rep.add("X is not a right R-module");
  if (!same_algebra(m.y.algebra, ctx.s) || m.y.side != Side::right) rep.add("Y is not a right S-module");
  if (!rep.valid()) return rep;
  rep.merge(validate_module(m.x), "X: ");
  rep.merge(validate_module(m.y), "Y: ");
  if (!rep.valid()) return rep;
  const std::size_t u = ctx.u.dim, y = m.y.dim;
  if (m.psi.rows() != m.x.dim || m.psi.cols() != y * u) {
    rep.add("psi has shape " + m.psi.shape() + ", expected " + std::to_string(m.x.dim) + "x" + std::to_string(y * u));
    return rep;
  }
  const FpMatrix rel = balancing_relations(m.y.action, y, ctx.u.left_action, u, ctx.p());
  if (!(m.psi * rel).is_zero()) rep.add("psi does not vanish on the balancing relations over S");
  const FpMatrix iy = FpMatrix::identity(ctx.p(), y);
  for (std::size_t k = 0; k < ctx.u.right_action.size(); ++k)
    if (m.psi * kron(iy, ctx.u.right_action[k]) != m.x.action[k] * m.psi)
      rep.add("psi is not R-linear for r_" + std::to_string(k));
  return rep;
}

/// The right T-module on X (+) Y with (x, y)(r, u, s) = (x r + psi(y (x) u), y s).
inline ModuleRep to_T_right_module(const CommaContext& ctx, const RightTModule& m) {
  const auto rep = validate_right(ctx, m);
  if (!rep.valid()) throw Error("to_T_right_module: " + rep.violations.front());
  const Residue p = ctx.p();
  const std::size_t x = m.x.dim, y = m.y.dim, n = x + y;
  ModuleRep out{ctx.t, Side::right, n, {}};
  for (const auto& rx : m.x.action) out.action.push_back(block_diagonal(rx, FpMatrix(p, y, y)));
  for (std::size_t i = 0; i < ctx.u.dim; ++i) {
    FpMatrix act(p, n, n);
    act.set_block(0, x, psi_block(ctx, m, i));
    out.action.push_back(std::move(act));
  }
  for (const auto& sy : m.y.action) out.action.push_back(block_diagonal(FpMatrix(p, x, x), sy));
  return out;
}

/// Y (x)_S U as a right R-module; `projection` acts on the plain space with
/// basis y_i (x) u_j at index i * dim U + j.
inline TensorProduct tensor_right(const CommaContext& ctx, const ModuleRep& y) {
  if (!same_algebra(y.algebra, ctx.s) || y.side != Side::right) throw Error("tensor_right: Y must be a right S-module");
  const Residue p = ctx.p();
  const FpMatrix rel = balancing_relations(y.action, y.dim, ctx.u.left_action, ctx.u.dim, p);
  auto q = quotient_space(y.dim * ctx.u.dim, rel);
  ModuleRep m{ctx.r, Side::right, q.projection.rows(), {}};
  const FpMatrix iy = FpMatrix::identity(p, y.dim);
  for (const auto& rk : ctx.u.right_action) m.action.push_back(q.projection * kron(iy, rk) * q.section);
  return {std::move(m), std::move(q.projection), std::move(q.section), rel};
}

/// (Y (x)_S U, Y, pi).
inline RightTModule right_free_object(const CommaContext& ctx, const ModuleRep& y) {
  auto t = tensor_right(ctx, y);
  return {std::move(t.module), y, std::move(t.projection)};
}

struct NamedRight {
  std::string name;
  RightTModule module;
};

/// Right analogue of build_comma_universe: psi = g pi for g in
/// Hom_R(Y (x)_S U, X), deduplicated up to isomorphism within each (X, Y).
inline std::vector<NamedRight> build_right_universe(const CommaContext& ctx, const Universe& xu, const Universe& yu,
                                                    std::size_t max_dim, std::size_t iso_cap = 16,
                                                    std::uint64_t max_maps = 4096) {
  std::vector<NamedRight> out;
  for (std::size_t i = 0; i < xu.size(); ++i)
    for (std::size_t j = 0; j < yu.size(); ++j) {
      const auto& x = xu.members[i];
      const auto& y = yu.members[j];
      if (x.dim + y.dim > max_dim) continue;
      const auto yu_t = tensor_right(ctx, y);
      const auto homs = hom_basis(yu_t.module, x);
      if (saturating_pow(ctx.p(), homs.size(), max_maps + 1) > max_maps)
        throw Error("build_right_universe: too many structure maps for (" + xu.names[i] + "," + yu.names[j] + ")");
      std::vector<std::pair<ModuleRep, RightTModule>> reps;
      for_each_combination(ctx.p(), homs.size(), [&](const std::vector<Residue>& coeffs) {
        const FpMatrix g = combination(homs, coeffs, x.dim, yu_t.module.dim, ctx.p());
        RightTModule r{x, y, g * yu_t.projection};
        ModuleRep m = to_T_right_module(ctx, r);
        for (const auto& prev : reps)
          if (is_isomorphic(prev.first, m, iso_cap)) return true;
        reps.emplace_back(std::move(m), std::move(r));
        return true;
      });
      const std::string base = "(" + xu.names[i] + "," + yu.names[j] + ")";
      for (std::size_t k = 0; k < reps.size(); ++k)
        out.push_back({k == 0 ? base : base + "#" + std::to_string(k), std::move(reps[k].second)});
    }
  return out;
}

/// (X (x)_R A (+) Y (x)_S B) / H, as a vector space. The plain space has
/// X (x) A first (index l * dim A + k), then Y (x) B (offset dim X * dim A).
struct TensorOverT {
  std::size_t dim = 0;
  FpMatrix relations;
  FpMatrix projection;
};

inline FpMatrix tensor_T_relations(const CommaContext& ctx, const RightTModule& r, const CommaObject& c) {
  const Residue p = ctx.p();
  const std::size_t x = r.x.dim, y = r.y.dim, a = c.a.dim, b = c.b.dim, u = ctx.u.dim;
  const std::size_t top = x * a, n = top + y * b;
  const FpMatrix ra = balancing_relations(r.x.action, x, c.a.action, a, p);
  const FpMatrix sb = balancing_relations(r.y.action, y, c.b.action, b, p);
  FpMatrix h(p, n, y * u * a);
  for (std::size_t i = 0; i < y; ++i)
    for (std::size_t j = 0; j < u; ++j)
      for (std::size_t k = 0; k < a; ++k) {
        const std::size_t col = (i * u + j) * a + k;
        for (std::size_t l = 0; l < x; ++l) h.add_to(l * a + k, col, r.psi(l, i * u + j));
        for (std::size_t m = 0; m < b; ++m) h.add_to(top + i * b + m, col, neg_mod(c.phi(m, j * a + k), p));
      }
  FpMatrix rel(p, n, ra.cols() + sb.cols());
  rel.set_block(0, 0, ra);
  rel.set_block(top, ra.cols(), sb);
  return hstack(rel, h);
}

inline TensorOverT tensor_T(const CommaContext& ctx, const RightTModule& r, const CommaObject& c) {
  const auto rep = validate_right(ctx, r);
  if (!rep.valid()) throw Error("tensor_T: " + rep.violations.front());
  require_valid(ctx, c, "tensor_T");
  FpMatrix rel = tensor_T_relations(ctx, r, c);
  auto q = quotient_space(rel.rows(), rel);
  const std::size_t d = q.projection.rows();
  return {d, std::move(rel), std::move(q.projection)};
}

enum class TensorKind { lower_right = 1, upper_left = 2, free_left = 3, free_right = 4, upper_right = 5 };

inline const char* to_string(TensorKind k) {
  switch (k) {
    case TensorKind::lower_right: return "right-X0";
    case TensorKind::upper_left: return "left-0D";
    case TensorKind::free_left: return "left-free";
    case TensorKind::free_right: return "right-free";
    case TensorKind::upper_right: return "right-0Y";
  }
  return "?";
}

inline bool psi_is_iso(const CommaContext& ctx, const RightTModule& r) {
  const ModuleRep ul = ctx.u_left();
  const std::size_t yu = balanced_tensor_dim(r.y, ul);
  const std::size_t rk = rank(r.psi);
  return rk == r.x.dim && rk == yu;
}

/// (1) Y = 0; (2) A = 0; (3) phi an isomorphism from U (x) A; (4) psi an
/// isomorphism from Y (x) U; (5) X = 0.
inline bool tensor_formula_applies(const CommaContext& ctx, TensorKind kind, const RightTModule& r, const CommaObject& c) {
  switch (kind) {
    case TensorKind::lower_right: return r.y.dim == 0;
    case TensorKind::upper_left: return c.a.dim == 0;
    case TensorKind::free_left: return phi_is_iso(ctx, c);
    case TensorKind::free_right: return psi_is_iso(ctx, r);
    case TensorKind::upper_right: return r.x.dim == 0;
  }
  return false;
}

/// The tensor dimension predicted from R- and S-side data alone. Kind 5 gives
/// dim Y (x)_S (B / Im phi), which is dim B / Im phi for Y = S.
inline std::size_t tensor_formula(const CommaContext& ctx, TensorKind kind, const RightTModule& r, const CommaObject& c) {
  if (!tensor_formula_applies(ctx, kind, r, c))
    throw Error(std::string("tensor_formula: arguments do not have shape ") + to_string(kind));
  switch (kind) {
    case TensorKind::lower_right:
    case TensorKind::free_left: return balanced_tensor_dim(r.x, c.a);
    case TensorKind::upper_left:
    case TensorKind::free_right: return balanced_tensor_dim(r.y, c.b);
    case TensorKind::upper_right: return balanced_tensor_dim(r.y, phi_cokernel(c).module);
  }
  return 0;
}

enum class CommaFamilyKind { U, B, J };

inline const char* to_string(CommaFamilyKind k) {
  switch (k) {
    case CommaFamilyKind::U: return "U";
    case CommaFamilyKind::B: return "B";
    case CommaFamilyKind::J: return "J";
  }
  return "?";
}

/// U: A in C and B in D. B: phi mono, A in C, coker phi in D.
/// J: phi~ epi, ker phi~ in C, B in D.
inline bool family_membership(const CommaContext& ctx, const CommaObject& c, CommaFamilyKind kind,
                              const ModuleFamily& cfam, const ModuleFamily& dfam) {
  switch (kind) {
    case CommaFamilyKind::U: return cfam.contains(c.a) && dfam.contains(c.b);
    case CommaFamilyKind::B:
      return phi_is_mono(ctx, c) && cfam.contains(c.a) && dfam.contains(phi_cokernel(c).module);
    case CommaFamilyKind::J: {
      const ModuleMap t = tilde_phi(ctx, c);
      if (rank(t.matrix) != t.target.dim) return false;
      return cfam.contains(submodule(c.a, kernel_basis(t.matrix)).module) && dfam.contains(c.b);
    }
  }
  return false;
}

/// The family as a predicate on T-modules.
inline ModuleFamily comma_family(ContextPtr ctx, CommaFamilyKind kind, ModuleFamily cfam, ModuleFamily dfam) {
  std::string label = std::string(to_string(kind)) + "[" + cfam.label + "," + dfam.label + "]";
  const FamilyKind fk = kind == CommaFamilyKind::U ? FamilyKind::comma_u
                        : kind == CommaFamilyKind::B ? FamilyKind::comma_b
                                                     : FamilyKind::comma_j;
  return {std::move(label), fk,
          [ctx = std::move(ctx), kind, cfam = std::move(cfam), dfam = std::move(dfam)](const ModuleRep& m) {
            return family_membership(*ctx, from_T_module(*ctx, m).object, kind, cfam, dfam);
          }};
}

/// Presentation of p(A, B) = (A, FA) (+) (0, B) over T, block diagonal in
/// (sigma_A, F sigma_A) and (0, sigma_B).
inline Presentation sigma_for_p(const CommaContext& ctx, const Presentation& sa, const Presentation& sb) {
  if (!validate_presentation(sa).valid() || !validate_presentation(sb).valid())
    throw Error("sigma_for_p: invalid component presentation");
  if (!same_algebra(sa.p0().algebra, ctx.r) || !same_algebra(sb.p0().algebra, ctx.s))
    throw Error("sigma_for_p: presentations over the wrong algebras");
  auto lift = [&](const ModuleMap& f, const ModuleMap& g) {
    const ModuleRep src = to_T_module(ctx, functor_p(ctx, f.source, g.source));
    const ModuleRep tgt = to_T_module(ctx, functor_p(ctx, f.target, g.target));
    const FpMatrix ff = tensor_map(ctx.u, f).matrix;
    return ModuleMap{src, tgt, block_diagonal(block_diagonal(f.matrix, ff), g.matrix)};
  };
  Presentation out{lift(sa.sigma, sb.sigma), lift(sa.epi, sb.epi)};
  const auto rep = validate_presentation(out);
  if (!rep.valid()) throw Error("sigma_for_p: " + rep.violations.front());
  return out;
}

/// Comma objects (A, B, phi) for A, B from the component universes with
/// dim A + dim B <= max_dim, every phi = g pi for g in Hom_S(U (x) A, B), one
/// representative per isomorphism class within each (A, B) pair.
inline Universe build_comma_universe(const CommaContext& ctx, const Universe& ru, const Universe& su, std::size_t max_dim,
                                     std::size_t iso_cap = 16, std::uint64_t max_maps = 4096) {
  Universe out;
  out.label = "T[" + ru.label + "," + su.label + "]";
  for (std::size_t i = 0; i < ru.size(); ++i)
    for (std::size_t j = 0; j < su.size(); ++j) {
      const auto& a = ru.members[i];
      const auto& b = su.members[j];
      if (a.dim + b.dim > max_dim) continue;
      const auto fa = tensor_over(ctx.u, a);
      const auto homs = hom_basis(fa.module, b);
      if (saturating_pow(ctx.p(), homs.size(), max_maps + 1) > max_maps)
        throw Error("build_comma_universe: too many structure maps for (" + ru.names[i] + "," + su.names[j] + ")");
      std::vector<ModuleRep> reps;
      const std::string base = "(" + ru.names[i] + "," + su.names[j] + ")";
      for_each_combination(ctx.p(), homs.size(), [&](const std::vector<Residue>& coeffs) {
        const FpMatrix g = combination(homs, coeffs, b.dim, fa.module.dim, ctx.p());
        const ModuleRep m = to_T_module(ctx, {a, b, g * fa.projection});
        for (const auto& r : reps)
          if (is_isomorphic(r, m, iso_cap)) return true;
        reps.push_back(m);
        return true;
      });
      for (std::size_t k = 0; k < reps.size(); ++k) out.add(k == 0 ? base : base + "#" + std::to_string(k), reps[k]);
    }
  return out;
}

/// 0 -> x --f--> y --g--> z -> 0 is exact.
inline bool is_short_exact(const ModuleMap& f, const ModuleMap& g) {
  if (f.target.dim != g.source.dim) return false;
  return is_injective(f) && is_surjective(g) && (g.matrix * f.matrix).is_zero() &&
         rank(f.matrix) + rank(g.matrix) == f.target.dim;
}

}  // namespace commacat
