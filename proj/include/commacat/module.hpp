#pragma once

// Modules over a finite-dimensional algebra, given by one action matrix per
// basis element, and the homological toolkit built on them.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "commacat/algebra.hpp"
#include "commacat/fp_matrix.hpp"

namespace commacat {

enum class Side { left, right };

inline const char* to_string(Side s) { return s == Side::left ? "left" : "right"; }

/// A module of dimension `dim`. For left modules action[i] is v -> e_i v;
/// for right modules action[i] is v -> v e_i, so that
/// action(e_i e_j) = action[j] * action[i].
struct ModuleRep {
  AlgebraPtr algebra;
  Side side = Side::left;
  std::size_t dim = 0;
  std::vector<FpMatrix> action;

  Residue p() const { return algebra->p(); }

  FpMatrix act(const std::vector<Residue>& coeffs) const {
    FpMatrix out(p(), dim, dim);
    for (std::size_t k = 0; k < coeffs.size(); ++k)
      if (coeffs[k]) out = out + action[k].scaled(coeffs[k]);
    return out;
  }
};

struct ModuleMap {
  ModuleRep source;
  ModuleRep target;
  FpMatrix matrix;  // target.dim x source.dim
};

inline ModuleRep zero_module(AlgebraPtr a, Side side = Side::left) {
  ModuleRep m{a, side, 0, {}};
  for (std::size_t i = 0; i < a->dim(); ++i) m.action.emplace_back(a->p(), 0, 0);
  return m;
}

inline ValidationReport validate_module(const ModuleRep& m) {
  if (!m.algebra) return ValidationReport{{"module has no algebra"}};
  return detail::check_action(*m.algebra, m.action, m.dim, m.side == Side::right);
}

inline void require_compatible(const ModuleRep& a, const ModuleRep& b, const char* where) {
  if (!same_algebra(a.algebra, b.algebra)) throw Error(std::string(where) + ": algebra mismatch");
  if (a.side != b.side) throw Error(std::string(where) + ": side mismatch");
}

inline bool is_module_map(const ModuleRep& source, const ModuleRep& target, const FpMatrix& f) {
  if (f.rows() != target.dim || f.cols() != source.dim) return false;
  for (std::size_t i = 0; i < source.action.size(); ++i)
    if (target.action[i] * f != f * source.action[i]) return false;
  return true;
}

inline ModuleMap identity_map(const ModuleRep& m) { return {m, m, FpMatrix::identity(m.p(), m.dim)}; }

inline ModuleMap compose(const ModuleMap& g, const ModuleMap& f) {
  return {f.source, g.target, g.matrix * f.matrix};
}

/// Basis of Hom(m, n) as plain matrices (n.dim x m.dim).
inline std::vector<FpMatrix> hom_basis(const ModuleRep& m, const ModuleRep& n) {
  require_compatible(m, n, "hom_space");
  if (m.dim == 0 || n.dim == 0) return {};
  MatrixSystem sys(m.p());
  const auto x = sys.add_variable(n.dim, m.dim);
  const Residue minus_one = m.p() - 1;
  for (std::size_t i = 0; i < m.action.size(); ++i) {
    const MatrixSystem::Term terms[] = {{1, &n.action[i], x, nullptr}, {minus_one, nullptr, x, &m.action[i]}};
    sys.add_equation(terms);
  }
  std::vector<FpMatrix> out;
  for (auto& sol : sys.solution_basis()) out.push_back(std::move(sol[0]));
  return out;
}

inline std::vector<ModuleMap> hom_space(const ModuleRep& m, const ModuleRep& n) {
  std::vector<ModuleMap> out;
  for (auto& f : hom_basis(m, n)) out.push_back({m, n, std::move(f)});
  return out;
}

inline std::size_t hom_dim(const ModuleRep& m, const ModuleRep& n) { return hom_basis(m, n).size(); }

/// Linear combination sum_k coeffs[k] * basis[k].
inline FpMatrix combination(const std::vector<FpMatrix>& basis, const std::vector<Residue>& coeffs,
                            std::size_t rows, std::size_t cols, Residue p) {
  FpMatrix out(p, rows, cols);
  for (std::size_t k = 0; k < basis.size(); ++k)
    if (coeffs[k]) out = out + basis[k].scaled(coeffs[k]);
  return out;
}

/// Hom(f, x): Hom(f.target, x) -> Hom(f.source, x), h -> h f, is surjective.
inline bool precomposition_surjective(const ModuleMap& f, const ModuleRep& x) {
  const auto h0 = hom_basis(f.target, x);
  const auto h1 = hom_basis(f.source, x);
  if (h1.empty()) return true;
  const std::size_t len = x.dim * f.source.dim;
  FpMatrix stacked(x.p(), h0.size(), len);
  for (std::size_t i = 0; i < h0.size(); ++i) {
    const FpMatrix c = h0[i] * f.matrix;
    for (std::size_t j = 0; j < len; ++j) stacked.set(i, j, c.entries()[j]);
  }
  return rank(stacked) == h1.size();
}

struct DirectSum {
  ModuleRep module;
  std::vector<ModuleMap> injections;
  std::vector<ModuleMap> projections;
};

inline DirectSum direct_sum(const AlgebraPtr& algebra, Side side, const std::vector<ModuleRep>& ms) {
  ModuleRep sum = zero_module(algebra, side);
  for (const auto& m : ms) {
    require_compatible(sum, m, "direct_sum");
    for (std::size_t i = 0; i < sum.action.size(); ++i) sum.action[i] = block_diagonal(sum.action[i], m.action[i]);
    sum.dim += m.dim;
  }
  DirectSum out{sum, {}, {}};
  std::size_t off = 0;
  const Residue p = algebra->p();
  for (const auto& m : ms) {
    FpMatrix inj(p, sum.dim, m.dim), proj(p, m.dim, sum.dim);
    for (std::size_t i = 0; i < m.dim; ++i) {
      inj.set(off + i, i, 1);
      proj.set(i, off + i, 1);
    }
    out.injections.push_back({m, sum, inj});
    out.projections.push_back({sum, m, proj});
    off += m.dim;
  }
  return out;
}

inline ModuleRep direct_sum(const ModuleRep& a, const ModuleRep& b) {
  return direct_sum(a.algebra, a.side, {a, b}).module;
}

inline ModuleRep power(const ModuleRep& m, std::size_t k) {
  return direct_sum(m.algebra, m.side, std::vector<ModuleRep>(k, m)).module;
}

struct Submodule {
  ModuleRep module;
  ModuleMap inclusion;
};

struct Quotient {
  ModuleRep module;
  ModuleMap projection;
  FpMatrix section;
};

/// The submodule spanned by the columns of `vectors`; throws if that span is
/// not invariant under the action.
inline Submodule submodule(const ModuleRep& m, const FpMatrix& vectors) {
  const FpMatrix basis = column_space_basis(vectors);
  const std::size_t r = basis.cols();
  ModuleRep sub{m.algebra, m.side, r, {}};
  const Residue p = m.p();
  if (r == 0) {
    sub = zero_module(m.algebra, m.side);
    return {sub, {sub, m, FpMatrix(p, m.dim, 0)}};
  }
  const FpMatrix linv = left_inverse(basis);
  for (const auto& a : m.action) {
    const FpMatrix image = a * basis;
    const FpMatrix induced = linv * image;
    if (basis * induced != image) throw Error("submodule: span is not invariant under the action");
    sub.action.push_back(induced);
  }
  return {sub, {sub, m, basis}};
}

/// Smallest submodule containing the columns of `vectors`.
inline Submodule generated_submodule(const ModuleRep& m, const FpMatrix& vectors) {
  std::vector<FpMatrix> parts;
  for (const auto& a : m.action) parts.push_back(a * vectors);
  return submodule(m, hstack(m.p(), m.dim, parts));
}

inline Quotient quotient_module(const ModuleRep& m, const FpMatrix& sub_vectors) {
  const auto q = quotient_space(m.dim, sub_vectors);
  ModuleRep quo{m.algebra, m.side, q.projection.rows(), {}};
  for (const auto& a : m.action) {
    if (!((q.projection * a) * sub_vectors).is_zero())
      throw Error("quotient_module: subspace is not invariant under the action");
    quo.action.push_back(q.projection * a * q.section);
  }
  return {quo, {m, quo, q.projection}, q.section};
}

struct ImageKernelCokernel {
  Submodule image;
  Submodule kernel;
  Quotient cokernel;
};

inline ImageKernelCokernel image_kernel_cokernel(const ModuleMap& f) {
  const FpMatrix k = kernel_basis(f.matrix);
  return {submodule(f.target, f.matrix), submodule(f.source, k), quotient_module(f.target, f.matrix)};
}

inline bool is_surjective(const ModuleMap& f) { return rank(f.matrix) == f.target.dim; }
inline bool is_injective(const ModuleMap& f) { return rank(f.matrix) == f.source.dim; }

/// Relations (x r) (x) y - x (x) (r y) of a balanced tensor product, one column
/// per relation, in the first-factor-major basis x_i (x) y_j -> i * n2 + j.
inline FpMatrix balancing_relations(const std::vector<FpMatrix>& first_right, std::size_t n1,
                                    const std::vector<FpMatrix>& second_left, std::size_t n2, Residue p) {
  std::vector<FpMatrix> parts;
  const FpMatrix i1 = FpMatrix::identity(p, n1), i2 = FpMatrix::identity(p, n2);
  for (std::size_t r = 0; r < first_right.size(); ++r)
    parts.push_back(kron(first_right[r], i2) - kron(i1, second_left[r]));
  return hstack(p, n1 * n2, parts);
}

/// Dimension of M (x)_A N for a right module M and a left module N.
inline std::size_t balanced_tensor_dim(const ModuleRep& right, const ModuleRep& left) {
  if (!same_algebra(right.algebra, left.algebra)) throw Error("tensor: algebra mismatch");
  if (right.side != Side::right || left.side != Side::left) throw Error("tensor: expects right (x) left");
  const auto rel = balancing_relations(right.action, right.dim, left.action, left.dim, right.p());
  return right.dim * left.dim - rank(rel);
}

/// U (x)_R A as a left S-module. `projection` maps the plain tensor space
/// (basis u_i (x) a_j at index i * dim A + j) onto the module.
struct TensorProduct {
  ModuleRep module;
  FpMatrix projection;
  FpMatrix section;
  FpMatrix relations;
};

inline void require_bimodule_source(const Bimodule& u, const ModuleRep& a, const char* where) {
  if (!same_algebra(u.right_algebra, a.algebra) || a.side != Side::left)
    throw Error(std::string(where) + ": module must be a left module over the bimodule's right algebra");
}

inline TensorProduct tensor_over(const Bimodule& u, const ModuleRep& a) {
  require_bimodule_source(u, a, "tensor_over");
  const Residue p = a.p();
  const FpMatrix rel = balancing_relations(u.right_action, u.dim, a.action, a.dim, p);
  auto q = quotient_space(u.dim * a.dim, rel);
  ModuleRep m{u.left_algebra, Side::left, q.projection.rows(), {}};
  const FpMatrix ia = FpMatrix::identity(p, a.dim);
  for (const auto& ls : u.left_action) m.action.push_back(q.projection * kron(ls, ia) * q.section);
  return {std::move(m), std::move(q.projection), std::move(q.section), rel};
}

/// U (x) f between the tensor modules of f's source and target.
inline ModuleMap tensor_map(const Bimodule& u, const ModuleMap& f) {
  const auto src = tensor_over(u, f.source);
  const auto tgt = tensor_over(u, f.target);
  const FpMatrix big = kron(FpMatrix::identity(f.matrix.p(), u.dim), f.matrix);
  return {src.module, tgt.module, tgt.projection * big * src.section};
}

/// Sum of the images of all homomorphisms from the generators into m.
inline Submodule trace_of(const std::vector<ModuleRep>& generators, const ModuleRep& m) {
  std::vector<FpMatrix> images;
  for (const auto& g : generators)
    for (auto& f : hom_basis(g, m)) images.push_back(std::move(f));
  if (images.empty()) return submodule(m, FpMatrix(m.p(), m.dim, 0));
  return submodule(m, hstack(m.p(), m.dim, images));
}

/// x is a quotient of a finite power of t.
inline bool gen_member(const ModuleRep& t, const ModuleRep& x) {
  return trace_of({t}, x).module.dim == x.dim;
}

class IsoCapExceeded : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline std::vector<std::size_t> rank_profile(const ModuleRep& m) {
  std::vector<std::size_t> r;
  for (const auto& a : m.action) r.push_back(rank(a));
  return r;
}

}  // namespace detail

/// An invertible module map m -> n if one exists. The search is exhaustive
/// over Hom(m, n), so it is capped at `cap` basis elements.
inline std::optional<FpMatrix> isomorphism(const ModuleRep& m, const ModuleRep& n, std::size_t cap = 16) {
  require_compatible(m, n, "is_isomorphic");
  if (m.dim != n.dim) return std::nullopt;
  if (m.dim == 0) return FpMatrix(m.p(), 0, 0);
  if (detail::rank_profile(m) != detail::rank_profile(n)) return std::nullopt;
  const auto basis = hom_basis(m, n);
  if (basis.size() != hom_dim(m, m) || basis.size() != hom_dim(n, n)) return std::nullopt;
  if (basis.size() > cap)
    throw IsoCapExceeded("isomorphism search over Hom of dimension " + std::to_string(basis.size()) +
                         " exceeds cap " + std::to_string(cap));
  std::optional<FpMatrix> found;
  for_each_combination(m.p(), basis.size(), [&](const std::vector<Residue>& c) {
    FpMatrix f = combination(basis, c, n.dim, m.dim, m.p());
    if (rank(f) == m.dim) {
      found = std::move(f);
      return false;
    }
    return true;
  });
  return found;
}

inline bool is_isomorphic(const ModuleRep& m, const ModuleRep& n, std::size_t cap = 16) {
  return isomorphism(m, n, cap).has_value();
}

struct Extensions {
  std::vector<ModuleRep> middles;  // split extension first; non-isomorphic unless Hom is too large to search
  std::size_t ext_dim = 0;         // dimension of cocycles modulo coboundaries
  bool truncated = false;
};

/// Middle terms E of extensions 0 -> n -> E -> m -> 0, with E = n (+) m as a
/// vector space and action [[n(a), c(a)], [0, m(a)]]. An `iso_cap` of 0 skips
/// the isomorphism dedupe.
inline Extensions extension_middle_terms(const ModuleRep& m, const ModuleRep& n, std::size_t cap = 64,
                                         std::size_t iso_cap = 16) {
  require_compatible(m, n, "extension_middle_terms");
  const FDAlgebra& alg = *m.algebra;
  const Residue p = m.p();
  const std::size_t d = alg.dim();
  Extensions out;
  if (m.dim == 0 || n.dim == 0) {
    out.middles.push_back(direct_sum(n, m));
    return out;
  }
  const bool right = m.side == Side::right;
  MatrixSystem sys(p);
  std::vector<std::size_t> c(d);
  for (std::size_t k = 0; k < d; ++k) c[k] = sys.add_variable(n.dim, m.dim);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      // left: n(e_i) c_j + c_i m(e_j) = sum_k mul_ijk c_k
      // right: n(e_j) c_i + c_j m(e_i) = sum_k mul_ijk c_k
      const std::size_t a = right ? j : i, b = right ? i : j;
      std::vector<MatrixSystem::Term> terms{{1, &n.action[a], c[b], nullptr}, {1, nullptr, c[a], &m.action[b]}};
      for (std::size_t k = 0; k < d; ++k)
        if (alg.mul(i, j, k)) terms.push_back({static_cast<Residue>(p - alg.mul(i, j, k)), nullptr, c[k], nullptr});
      sys.add_equation(terms);
    }
  {
    std::vector<MatrixSystem::Term> unit_terms;
    for (std::size_t k = 0; k < d; ++k)
      if (alg.unit()[k]) unit_terms.push_back({alg.unit()[k], nullptr, c[k], nullptr});
    sys.add_equation(unit_terms);
  }
  const auto z = sys.solution_basis();
  const std::size_t block = n.dim * m.dim;
  auto flatten = [&](const std::vector<FpMatrix>& cs) {
    std::vector<Residue> v;
    v.reserve(block * d);
    for (const auto& ck : cs) v.insert(v.end(), ck.entries().begin(), ck.entries().end());
    return v;
  };
  FpMatrix zmat(p, block * d, z.size());
  for (std::size_t j = 0; j < z.size(); ++j) {
    const auto v = flatten(z[j]);
    for (std::size_t r = 0; r < v.size(); ++r) zmat.set(r, j, v[r]);
  }
  // coboundaries c_k = n(e_k) h - h m(e_k), expressed in cocycle coordinates
  FpMatrix bcoords(p, z.size(), block);
  for (std::size_t e = 0; e < block; ++e) {
    FpMatrix h(p, n.dim, m.dim);
    h.set(e / m.dim, e % m.dim, 1);
    std::vector<FpMatrix> cs;
    for (std::size_t k = 0; k < d; ++k) cs.push_back(n.action[k] * h - h * m.action[k]);
    const auto v = flatten(cs);
    const auto x = solve(zmat, v);
    if (!x) throw Error("extension_middle_terms: coboundary outside cocycle space");
    for (std::size_t r = 0; r < x->size(); ++r) bcoords.set(r, e, (*x)[r]);
  }
  const auto q = quotient_space(z.size(), bcoords);
  const FpMatrix reps = zmat * q.section;  // columns: representatives of Ext classes
  out.ext_dim = reps.cols();
  const std::uint64_t total = saturating_pow(p, out.ext_dim, cap);
  out.truncated = total > cap;
  std::size_t visited = 0;
  for_each_combination(p, out.ext_dim, [&](const std::vector<Residue>& coeffs) {
    if (visited++ >= cap) return false;
    std::vector<Residue> cv(block * d, 0);
    for (std::size_t j = 0; j < coeffs.size(); ++j)
      if (coeffs[j])
        for (std::size_t r = 0; r < cv.size(); ++r) cv[r] = add_mod(cv[r], mul_mod(coeffs[j], reps(r, j), p), p);
    ModuleRep e{m.algebra, m.side, n.dim + m.dim, {}};
    for (std::size_t k = 0; k < d; ++k) {
      FpMatrix a = block_diagonal(n.action[k], m.action[k]);
      a.set_block(0, n.dim, FpMatrix(p, n.dim, m.dim, std::vector<Residue>(cv.begin() + k * block, cv.begin() + (k + 1) * block)));
      e.action.push_back(std::move(a));
    }
    bool seen = false;
    if (iso_cap > 0)
      for (const auto& prev : out.middles) {
        try {
          seen = is_isomorphic(prev, e, iso_cap);
        } catch (const IsoCapExceeded&) {
          seen = false;  // kept as a possible duplicate
        }
        if (seen) break;
      }
    if (!seen) out.middles.push_back(std::move(e));
    return true;
  });
  return out;
}

/// The algebra acting on itself by multiplication.
inline ModuleRep regular_module(const AlgebraPtr& a, Side side = Side::left) {
  const std::size_t d = a->dim();
  ModuleRep m{a, side, d, {}};
  for (std::size_t i = 0; i < d; ++i) {
    FpMatrix act(a->p(), d, d);
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) act.set(k, j, side == Side::left ? a->mul(i, j, k) : a->mul(j, i, k));
    m.action.push_back(std::move(act));
  }
  return m;
}

/// The linear dual of the algebra as a left module: (s f)(x) = f(x s).
inline ModuleRep dual_module(const AlgebraPtr& s) {
  const auto right_regular = regular_module(s, Side::right);
  ModuleRep m{s, Side::left, s->dim(), {}};
  for (const auto& a : right_regular.action) m.action.push_back(a.transpose());
  return m;
}

}  // namespace commacat
