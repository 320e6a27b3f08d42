#pragma once

// Projective presentations P1 -> P0 -> M -> 0, the class D_sigma of modules X
// with Hom(sigma, X) surjective, and silting / partial silting decisions
// relative to a given presentation.

#include <limits>
#include <string>
#include <vector>

#include "commacat/family.hpp"
#include "commacat/module.hpp"
#include "commacat/verdict.hpp"

namespace commacat {

/// sigma: P1 -> P0 between projective modules, and an epimorphism P0 -> M
/// whose kernel is the image of sigma.
struct Presentation {
  ModuleMap sigma;
  ModuleMap epi;

  const ModuleRep& p1() const { return sigma.source; }
  const ModuleRep& p0() const { return sigma.target; }
  const ModuleRep& target() const { return epi.target; }
};

inline ValidationReport validate_presentation(const Presentation& s) {
  ValidationReport rep;
  if (!is_module_map(s.sigma.source, s.sigma.target, s.sigma.matrix)) rep.add("sigma is not a module map");
  if (!is_module_map(s.epi.source, s.epi.target, s.epi.matrix)) rep.add("epi is not a module map");
  if (s.sigma.target.dim != s.epi.source.dim) rep.add("sigma target differs from epi source");
  if (!rep.valid()) return rep;
  if (!is_surjective(s.epi)) rep.add("P0 -> M is not surjective");
  if (!(s.epi.matrix * s.sigma.matrix).is_zero()) rep.add("composite P1 -> P0 -> M is not zero");
  else if (rank(s.sigma.matrix) != s.p0().dim - s.target().dim)
    rep.add("image of sigma is smaller than the kernel of P0 -> M");
  return rep;
}

/// Map from a power of the regular module onto the submodule generated by
/// the given vectors (generator k sends 1 to vectors[:, k]).
inline ModuleMap free_cover(const ModuleRep& m, const FpMatrix& vectors) {
  const ModuleRep reg = regular_module(m.algebra, m.side);
  const std::size_t g = vectors.cols(), d = reg.dim;
  const ModuleRep src = power(reg, g);
  FpMatrix f(m.p(), m.dim, g * d);
  for (std::size_t k = 0; k < g; ++k) {
    const FpMatrix v = vectors.block(0, k, m.dim, 1);
    for (std::size_t j = 0; j < d; ++j) f.set_block(0, k * d + j, m.action[j] * v);
  }
  return {src, m, f};
}

/// Greedy choice of columns generating the same submodule as all of them.
inline FpMatrix minimal_generators(const ModuleRep& m, const FpMatrix& vectors) {
  std::vector<std::size_t> keep;
  FpMatrix span(m.p(), m.dim, 0);
  for (std::size_t k = 0; k < vectors.cols(); ++k) {
    const FpMatrix v = vectors.block(0, k, m.dim, 1);
    if (span.cols() > 0 && span_contains(span, v)) continue;
    keep.push_back(k);
    span = generated_submodule(m, vectors.select_columns(keep)).inclusion.matrix;
  }
  return vectors.select_columns(keep);
}

/// Presentation by free modules: one generator of P0 per basis vector of m
/// and one generator of P1 per basis vector of the kernel. With `minimize`,
/// generators already in the submodule spanned by earlier ones are dropped.
inline Presentation free_presentation(const ModuleRep& m, bool minimize = false) {
  FpMatrix gens = FpMatrix::identity(m.p(), m.dim);
  if (minimize) gens = minimal_generators(m, gens);
  const ModuleMap epi = free_cover(m, gens);
  const Submodule ker = submodule(epi.source, kernel_basis(epi.matrix));
  FpMatrix kgens = ker.inclusion.matrix;
  if (minimize) kgens = minimal_generators(epi.source, kgens);
  const ModuleMap cover = free_cover(epi.source, kgens);
  return {cover, epi};
}

/// The presentation 0 -> P -> P of a projective module P.
inline Presentation projective_presentation(const ModuleRep& projective) {
  const ModuleRep zero = zero_module(projective.algebra, projective.side);
  return {{zero, projective, FpMatrix(projective.p(), projective.dim, 0)}, identity_map(projective)};
}

/// The presentation P -> 0 of the zero module.
inline Presentation zero_presentation(const ModuleRep& projective) {
  const ModuleRep zero = zero_module(projective.algebra, projective.side);
  return {{projective, zero, FpMatrix(projective.p(), 0, projective.dim)}, identity_map(zero)};
}

inline bool d_sigma_member(const Presentation& s, const ModuleRep& x) {
  require_compatible(s.p0(), x, "d_sigma_member");
  return precomposition_surjective(s.sigma, x);
}

inline Certificate d_sigma_certificate(std::string clause, const Presentation& s, const ModuleRep& x) {
  return {std::move(clause), CertKind::d_sigma_member, {s.p1(), s.p0(), x}, {s.sigma.matrix},
          d_sigma_member(s, x) ? 1 : 0};
}

inline ModuleFamily d_sigma_family(std::string label, Presentation s) {
  return {std::move(label), FamilyKind::d_sigma, [s = std::move(s)](const ModuleRep& x) { return d_sigma_member(s, x); }};
}

inline void require_presents(const Presentation& s, const ModuleRep& m, std::size_t iso_cap) {
  const ModuleRep& t = s.target();
  if (t.dim == m.dim && t.side == m.side && t.action == m.action) return;
  if (!is_isomorphic(t, m, iso_cap)) throw Error("presentation does not present the given module");
}

/// m lies in D_sigma and D_sigma, restricted to the universe, is closed under
/// sums of two members whose dimension stays within `sum_dim_bound`. Closure
/// under images and extensions holds for every D_sigma and is not re-checked.
inline Verdict is_partial_silting(const ModuleRep& m, const Presentation& s, const Universe& universe,
                                  std::size_t sum_dim_bound = std::numeric_limits<std::size_t>::max(),
                                  std::size_t iso_cap = 16) {
  require_presents(s, m, iso_cap);
  Verdict v{"partial-silting", Outcome::holds, {}, {}, {}, universe.hash()};
  if (!d_sigma_member(s, m)) {
    v.fail("module is not in D_sigma");
    v.certificates.push_back(d_sigma_certificate("module in D_sigma", s, m));
  }
  std::vector<std::size_t> in;
  for (std::size_t i = 0; i < universe.size(); ++i)
    if (d_sigma_member(s, universe.members[i])) in.push_back(i);
  for (std::size_t a = 0; a < in.size(); ++a)
    for (std::size_t b = a; b < in.size(); ++b) {
      const auto& x = universe.members[in[a]];
      const auto& y = universe.members[in[b]];
      if (x.dim + y.dim > sum_dim_bound) continue;
      const ModuleRep sum = direct_sum(x, y);
      if (!d_sigma_member(s, sum)) {
        v.fail("D_sigma not closed under the sum " + universe.names[in[a]] + " + " + universe.names[in[b]]);
        v.certificates.push_back(d_sigma_certificate("sum in D_sigma", s, sum));
      }
    }
  return v;
}

/// D_sigma and Gen m agree on every universe member.
inline Verdict is_silting(const ModuleRep& m, const Presentation& s, const Universe& universe, std::size_t iso_cap = 16) {
  require_presents(s, m, iso_cap);
  Verdict v{"silting", Outcome::holds, {}, {}, {}, universe.hash()};
  for (std::size_t i = 0; i < universe.size(); ++i) {
    const auto& u = universe.members[i];
    const bool in_d = d_sigma_member(s, u);
    const bool in_gen = gen_member(m, u);
    if (in_d == in_gen) continue;
    v.fail(universe.names[i] + (in_d ? " is in D_sigma but not in Gen" : " is in Gen but not in D_sigma"));
    v.certificates.push_back(d_sigma_certificate(universe.names[i] + " membership in D_sigma", s, u));
    v.certificates.push_back(gen_certificate(universe.names[i] + " membership in Gen", m, u));
  }
  return v;
}

/// Every map from f's source into a family member of the universe factors
/// through f.
inline bool is_left_approximation(const ModuleMap& f, const ModuleFamily& family, const Universe& universe) {
  for (const auto& x : universe.members)
    if (family.contains(x) && !precomposition_surjective(f, x)) return false;
  return true;
}

/// Witness that a module is a direct summand of copies(T): inclusion into and
/// retraction from T^copies composing to the identity.
struct AddWitness {
  std::size_t copies = 0;
  FpMatrix inclusion;
  FpMatrix retraction;
};

inline bool check_add_witness(const ModuleRep& t, const ModuleRep& x, const AddWitness& w) {
  const ModuleRep big = power(t, w.copies);
  return is_module_map(x, big, w.inclusion) && is_module_map(big, x, w.retraction) &&
         w.retraction * w.inclusion == FpMatrix::identity(x.p(), x.dim);
}

/// Checks a user-supplied sequence A --alpha--> T0 --beta--> T1 -> 0 from the
/// regular module: exactness, alpha a left D_sigma-approximation, and both
/// T0 and T1 summands of powers of T.
inline Verdict verify_silting_sequence(const ModuleRep& t, const Presentation& s, const ModuleMap& alpha,
                                       const ModuleMap& beta, const AddWitness& w0, const AddWitness& w1,
                                       const Universe& universe) {
  Verdict v{"silting-approximation-sequence", Outcome::holds, {}, {}, {}, universe.hash()};
  const ModuleRep reg = regular_module(t.algebra, t.side);
  if (alpha.source.dim != reg.dim || !is_module_map(alpha.source, alpha.target, alpha.matrix))
    v.fail("alpha is not a module map out of the regular module");
  if (!is_module_map(beta.source, beta.target, beta.matrix) || alpha.target.dim != beta.source.dim) {
    v.fail("beta is not a module map composable with alpha");
    return v;
  }
  if (!is_surjective(beta)) v.fail("beta is not surjective");
  if (!(beta.matrix * alpha.matrix).is_zero() || rank(alpha.matrix) != beta.source.dim - rank(beta.matrix))
    v.fail("sequence is not exact at T0");
  if (!check_add_witness(t, alpha.target, w0)) v.fail("T0 summand witness does not check");
  if (!check_add_witness(t, beta.target, w1)) v.fail("T1 summand witness does not check");
  if (!is_left_approximation(alpha, d_sigma_family("D_sigma", s), universe)) v.fail("alpha is not a left D_sigma-approximation");
  return v;
}

}  // namespace commacat
