#pragma once

// Finite-dimensional unital associative algebras given by structure
// constants, bimodules, and the lower-triangular algebra built from them.

#include <memory>
#include <string>
#include <vector>

#include "commacat/fp_matrix.hpp"

namespace commacat {

struct ValidationReport {
  std::vector<std::string> violations;

  bool valid() const { return violations.empty(); }
  void add(std::string v) { violations.push_back(std::move(v)); }
  void merge(const ValidationReport& other, const std::string& prefix = {}) {
    for (const auto& v : other.violations) violations.push_back(prefix + v);
  }
};

/// Algebra over F_p with basis e_0..e_{d-1}; e_i * e_j = sum_k mul(i,j,k) e_k.
class FDAlgebra {
 public:
  FDAlgebra(Residue p, std::size_t dim, std::vector<Residue> structure, std::vector<Residue> unit)
      : p_(p), dim_(dim), mul_(std::move(structure)), unit_(std::move(unit)) {
    require_prime(p);
    if (mul_.size() != dim * dim * dim)
      throw Error("structure constants: expected " + std::to_string(dim * dim * dim) + " entries, got " +
                  std::to_string(mul_.size()));
    if (unit_.size() != dim) throw Error("unit: expected " + std::to_string(dim) + " coordinates");
    for (auto& c : mul_) c %= p;
    for (auto& c : unit_) c %= p;
  }

  /// The ground field itself (dimension 1, e*e = e).
  static FDAlgebra field(Residue p) { return FDAlgebra(p, 1, {1}, {1}); }

  /// Truncated polynomial ring F_p[x]/(x^n) on the basis 1, x, ..., x^{n-1}.
  static FDAlgebra truncated_polynomial(Residue p, std::size_t n) {
    std::vector<Residue> m(n * n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; i + j < n; ++j) m[(i * n + j) * n + i + j] = 1;
    std::vector<Residue> unit(n, 0);
    if (n > 0) unit[0] = 1;
    return FDAlgebra(p, n, std::move(m), std::move(unit));
  }

  /// F_p^n with orthogonal idempotent basis.
  static FDAlgebra product_of_fields(Residue p, std::size_t n) {
    std::vector<Residue> m(n * n * n, 0);
    for (std::size_t i = 0; i < n; ++i) m[(i * n + i) * n + i] = 1;
    return FDAlgebra(p, n, std::move(m), std::vector<Residue>(n, 1));
  }

  Residue p() const { return p_; }
  std::size_t dim() const { return dim_; }
  Residue mul(std::size_t i, std::size_t j, std::size_t k) const { return mul_[(i * dim_ + j) * dim_ + k]; }
  const std::vector<Residue>& structure() const { return mul_; }
  const std::vector<Residue>& unit() const { return unit_; }

  std::vector<Residue> product(const std::vector<Residue>& x, const std::vector<Residue>& y) const {
    std::vector<Residue> out(dim_, 0);
    for (std::size_t i = 0; i < dim_; ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < dim_; ++j) {
        if (y[j] == 0) continue;
        const Residue c = mul_mod(x[i], y[j], p_);
        for (std::size_t k = 0; k < dim_; ++k)
          if (mul(i, j, k)) out[k] = add_mod(out[k], mul_mod(c, mul(i, j, k), p_), p_);
      }
    }
    return out;
  }

  std::vector<Residue> basis_vector(std::size_t i) const {
    std::vector<Residue> v(dim_, 0);
    v.at(i) = 1;
    return v;
  }

  friend bool operator==(const FDAlgebra& a, const FDAlgebra& b) {
    return a.p_ == b.p_ && a.dim_ == b.dim_ && a.mul_ == b.mul_ && a.unit_ == b.unit_;
  }

 private:
  Residue p_;
  std::size_t dim_;
  std::vector<Residue> mul_;
  std::vector<Residue> unit_;
};

using AlgebraPtr = std::shared_ptr<const FDAlgebra>;

inline AlgebraPtr make_algebra(FDAlgebra a) { return std::make_shared<const FDAlgebra>(std::move(a)); }

inline bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
  return a == b || (a && b && *a == *b);
}

inline std::string triple_name(std::size_t i, std::size_t j, std::size_t k) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")";
}

/// Lists every basis triple violating associativity and every basis element
/// on which the unit fails.
inline ValidationReport validate_algebra(const FDAlgebra& a) {
  ValidationReport rep;
  const std::size_t d = a.dim();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const auto ij = a.product(a.basis_vector(i), a.basis_vector(j));
      for (std::size_t k = 0; k < d; ++k) {
        const auto lhs = a.product(ij, a.basis_vector(k));
        const auto rhs = a.product(a.basis_vector(i), a.product(a.basis_vector(j), a.basis_vector(k)));
        if (lhs != rhs) rep.add("associativity violated at basis triple " + triple_name(i, j, k));
      }
    }
  for (std::size_t i = 0; i < d; ++i) {
    if (a.product(a.unit(), a.basis_vector(i)) != a.basis_vector(i))
      rep.add("unit fails on the left of e_" + std::to_string(i));
    if (a.product(a.basis_vector(i), a.unit()) != a.basis_vector(i))
      rep.add("unit fails on the right of e_" + std::to_string(i));
  }
  return rep;
}

/// An (S, R)-bimodule U. left_action[i] is the matrix of s_i acting on U;
/// right_action[j] is the matrix of u -> u * r_j (column convention).
struct Bimodule {
  AlgebraPtr left_algebra;   // S
  AlgebraPtr right_algebra;  // R
  std::size_t dim = 0;
  std::vector<FpMatrix> left_action;
  std::vector<FpMatrix> right_action;

  Residue p() const { return left_algebra->p(); }
};

inline Bimodule zero_bimodule(AlgebraPtr s, AlgebraPtr r) {
  const Residue p = s->p();
  Bimodule u{s, r, 0, {}, {}};
  for (std::size_t i = 0; i < s->dim(); ++i) u.left_action.emplace_back(p, 0, 0);
  for (std::size_t i = 0; i < r->dim(); ++i) u.right_action.emplace_back(p, 0, 0);
  return u;
}

namespace detail {

inline FpMatrix combine(const std::vector<FpMatrix>& mats, const std::vector<Residue>& coeffs, Residue p,
                        std::size_t n) {
  FpMatrix out(p, n, n);
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    if (coeffs[k]) out = out + mats[k].scaled(coeffs[k]);
  return out;
}

/// Checks that `action` is a left (or right, if `right`) module structure.
inline ValidationReport check_action(const FDAlgebra& a, const std::vector<FpMatrix>& action, std::size_t n,
                                     bool right) {
  ValidationReport rep;
  const Residue p = a.p();
  if (action.size() != a.dim()) {
    rep.add("expected " + std::to_string(a.dim()) + " action matrices, got " + std::to_string(action.size()));
    return rep;
  }
  for (std::size_t i = 0; i < action.size(); ++i)
    if (action[i].rows() != n || action[i].cols() != n || action[i].p() != p) {
      rep.add("action matrix " + std::to_string(i) + " has shape " + action[i].shape() + ", expected " +
              std::to_string(n) + "x" + std::to_string(n));
      return rep;
    }
  if (combine(action, a.unit(), p, n) != FpMatrix::identity(p, n)) rep.add("unit does not act as identity");
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) {
      const FpMatrix lhs = right ? action[j] * action[i] : action[i] * action[j];
      const FpMatrix rhs = combine(action, a.product(a.basis_vector(i), a.basis_vector(j)), p, n);
      if (lhs != rhs)
        rep.add("action not multiplicative on basis pair (" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
  return rep;
}

}  // namespace detail

inline ValidationReport validate_bimodule(const Bimodule& u) {
  ValidationReport rep;
  if (!u.left_algebra || !u.right_algebra) {
    rep.add("bimodule has no algebras");
    return rep;
  }
  if (u.left_algebra->p() != u.right_algebra->p()) rep.add("field mismatch between left and right algebras");
  rep.merge(detail::check_action(*u.left_algebra, u.left_action, u.dim, false), "left action: ");
  rep.merge(detail::check_action(*u.right_algebra, u.right_action, u.dim, true), "right action: ");
  if (!rep.valid()) return rep;
  for (std::size_t i = 0; i < u.left_action.size(); ++i)
    for (std::size_t j = 0; j < u.right_action.size(); ++j)
      if (u.left_action[i] * u.right_action[j] != u.right_action[j] * u.left_action[i])
        rep.add("actions do not commute: (s_" + std::to_string(i) + " u) r_" + std::to_string(j));
  return rep;
}

/// Block offsets of the triangular algebra basis: R-block, U-block, S-block.
struct TriangularLayout {
  std::size_t r_dim = 0, u_dim = 0, s_dim = 0;
  std::size_t r_offset() const { return 0; }
  std::size_t u_offset() const { return r_dim; }
  std::size_t s_offset() const { return r_dim + u_dim; }
  std::size_t dim() const { return r_dim + u_dim + s_dim; }
};

/// The algebra of formal matrices [[r, 0], [u, s]] with
/// (r,u,s)(r',u',s') = (rr', u r' + s u', ss').
inline FDAlgebra triangular_algebra(const FDAlgebra& r, const FDAlgebra& s, const Bimodule& u) {
  if (r.p() != s.p() || u.p() != r.p()) throw Error("triangular_algebra: field mismatch");
  if (*u.left_algebra != s || *u.right_algebra != r)
    throw Error("triangular_algebra: bimodule is not over the given algebras");
  {
    const auto rep_r = validate_algebra(r);
    const auto rep_s = validate_algebra(s);
    const auto rep_u = validate_bimodule(u);
    if (!rep_r.valid()) throw Error("triangular_algebra: invalid R: " + rep_r.violations.front());
    if (!rep_s.valid()) throw Error("triangular_algebra: invalid S: " + rep_s.violations.front());
    if (!rep_u.valid()) throw Error("triangular_algebra: invalid U: " + rep_u.violations.front());
  }
  const TriangularLayout L{r.dim(), u.dim, s.dim()};
  const std::size_t d = L.dim();
  std::vector<Residue> m(d * d * d, 0);
  auto put = [&](std::size_t i, std::size_t j, std::size_t k, Residue v) { m[(i * d + j) * d + k] = v; };
  for (std::size_t i = 0; i < r.dim(); ++i)
    for (std::size_t j = 0; j < r.dim(); ++j)
      for (std::size_t k = 0; k < r.dim(); ++k) put(i, j, k, r.mul(i, j, k));
  for (std::size_t i = 0; i < s.dim(); ++i)
    for (std::size_t j = 0; j < s.dim(); ++j)
      for (std::size_t k = 0; k < s.dim(); ++k) put(L.s_offset() + i, L.s_offset() + j, L.s_offset() + k, s.mul(i, j, k));
  // u_a * r_j = sum_b right_action[j](b, a) u_b
  for (std::size_t a = 0; a < u.dim; ++a)
    for (std::size_t j = 0; j < r.dim(); ++j)
      for (std::size_t b = 0; b < u.dim; ++b) put(L.u_offset() + a, L.r_offset() + j, L.u_offset() + b, u.right_action[j](b, a));
  // s_i * u_a = sum_b left_action[i](b, a) u_b
  for (std::size_t i = 0; i < s.dim(); ++i)
    for (std::size_t a = 0; a < u.dim; ++a)
      for (std::size_t b = 0; b < u.dim; ++b) put(L.s_offset() + i, L.u_offset() + a, L.u_offset() + b, u.left_action[i](b, a));
  std::vector<Residue> unit(d, 0);
  for (std::size_t i = 0; i < r.dim(); ++i) unit[L.r_offset() + i] = r.unit()[i];
  for (std::size_t i = 0; i < s.dim(); ++i) unit[L.s_offset() + i] = s.unit()[i];
  return FDAlgebra(r.p(), d, std::move(m), std::move(unit));
}

}  // namespace commacat
