#pragma once

// Torsion pairs and torsion classes decided on a finite universe.

#include <string>
#include <vector>

#include "commacat/family.hpp"
#include "commacat/verdict.hpp"

namespace commacat {

struct TorsionOptions {
  std::size_t iso_cap = 16;
  std::size_t ext_cap = 64;
  std::size_t map_cap = 256;  // maps enumerated per (member, target) pair for image closure
  std::size_t sum_dim_bound = 8;
};

/// hom_dim certificates from each generator into m (or from m into each
/// generator when `into` is false).
inline std::vector<Certificate> perp_certificates(const std::string& clause, const std::vector<ModuleRep>& gens,
                                                  const ModuleRep& m, bool into) {
  std::vector<Certificate> out;
  for (const auto& g : gens) out.push_back(into ? hom_dim_certificate(clause, g, m) : hom_dim_certificate(clause, m, g));
  return out;
}

/// (x, y) is a torsion pair on the universe: Hom(x, y) = 0; every member M
/// has its x-trace t in x with M / t in y; x^perp = y and ^perp y = x.
inline Verdict is_torsion_pair(const ModuleFamily& x, const ModuleFamily& y, const Universe& universe,
                               const TorsionOptions& = {}) {
  Verdict v{"torsion-pair[" + x.label + "," + y.label + "]", Outcome::holds, {}, {}, {}, universe.hash()};
  const auto xbits = membership(x, universe);
  const auto ybits = membership(y, universe);
  std::vector<ModuleRep> xs, ys;
  for (std::size_t i = 0; i < universe.size(); ++i) {
    if (xbits[i]) xs.push_back(universe.members[i]);
    if (ybits[i]) ys.push_back(universe.members[i]);
  }
  const auto& names = universe.names;

  for (std::size_t i = 0; i < universe.size(); ++i) {
    if (!xbits[i]) continue;
    for (std::size_t j = 0; j < universe.size(); ++j) {
      if (!ybits[j]) continue;
      if (hom_dim(universe.members[i], universe.members[j]) == 0) continue;
      v.fail("Hom(" + names[i] + ", " + names[j] + ") is nonzero");
      v.certificates.push_back(hom_dim_certificate("Hom vanishing", universe.members[i], universe.members[j]));
    }
  }

  for (std::size_t i = 0; i < universe.size(); ++i) {
    const auto& m = universe.members[i];
    const Submodule t = trace_of(xs, m);
    const Quotient q = quotient_module(m, t.inclusion.matrix);
    const bool t_ok = x.contains(t.module), q_ok = y.contains(q.module);
    if (t_ok && q_ok) continue;
    v.fail(names[i] + ": " + (t_ok ? "quotient by the trace is outside the torsion-free class"
                                   : "trace is outside the torsion class"));
    auto c = trace_certificate(names[i] + " trace", xs, m);
    v.certificates.push_back(std::move(c));
    v.certificates.push_back(dim_certificate(names[i] + (t_ok ? " quotient" : " trace"), t_ok ? q.module : t.module));
  }

  for (std::size_t i = 0; i < universe.size(); ++i) {
    const auto& m = universe.members[i];
    bool in_perp = true;
    for (const auto& g : xs) in_perp = in_perp && hom_dim(g, m) == 0;
    if (in_perp != ybits[i]) {
      v.fail(names[i] + (in_perp ? " is in x^perp but not in y" : " is in y but not in x^perp"));
      for (auto& c : perp_certificates(names[i] + " in x^perp", xs, m, true)) v.certificates.push_back(std::move(c));
    }
    bool in_lperp = true;
    for (const auto& g : ys) in_lperp = in_lperp && hom_dim(m, g) == 0;
    if (in_lperp != xbits[i]) {
      v.fail(names[i] + (in_lperp ? " is in ^perp y but not in x" : " is in x but not in ^perp y"));
      for (auto& c : perp_certificates(names[i] + " in ^perp y", ys, m, false)) v.certificates.push_back(std::move(c));
    }
  }
  return v;
}

/// Closure of the family's universe members under images of maps into
/// universe modules, sums of two members and extension middle terms.
inline Verdict is_torsion_class(const ModuleFamily& f, const Universe& universe, const TorsionOptions& opt = {}) {
  Verdict v{"torsion-class[" + f.label + "]", Outcome::holds, {}, {}, {}, universe.hash()};
  const auto bits = membership(f, universe);
  const auto& names = universe.names;
  std::vector<std::size_t> in;
  for (std::size_t i = 0; i < universe.size(); ++i)
    if (bits[i]) in.push_back(i);

  for (auto i : in) {
    const auto& x = universe.members[i];
    for (std::size_t j = 0; j < universe.size(); ++j) {
      const auto& m = universe.members[j];
      const auto basis = hom_basis(x, m);
      if (saturating_pow(x.p(), basis.size(), opt.map_cap) > opt.map_cap)
        v.notes.push_back("partial: maps " + names[i] + " -> " + names[j] + " truncated at " + std::to_string(opt.map_cap));
      std::size_t seen = 0;
      for_each_combination(x.p(), basis.size(), [&](const std::vector<Residue>& c) {
        if (seen++ >= opt.map_cap) return false;
        const FpMatrix g = combination(basis, c, m.dim, x.dim, x.p());
        const Submodule img = submodule(m, g);
        if (f.contains(img.module)) return true;
        v.fail("image of a map " + names[i] + " -> " + names[j] + " leaves the family");
        v.certificates.push_back(map_certificate("image " + names[i] + " -> " + names[j], {x, m, g}));
        return false;
      });
    }
  }

  for (std::size_t a = 0; a < in.size(); ++a)
    for (std::size_t b = a; b < in.size(); ++b) {
      const auto& x = universe.members[in[a]];
      const auto& y = universe.members[in[b]];
      if (x.dim + y.dim > opt.sum_dim_bound) continue;
      const ModuleRep s = direct_sum(x, y);
      if (f.contains(s)) continue;
      v.fail("sum " + names[in[a]] + " + " + names[in[b]] + " leaves the family");
      v.certificates.push_back(dim_certificate("sum " + names[in[a]] + " + " + names[in[b]], s));
    }

  for (auto i : in)
    for (auto j : in) {
      const auto& m = universe.members[i];
      const auto& n = universe.members[j];
      if (m.dim + n.dim > opt.sum_dim_bound) continue;
      const auto ext = extension_middle_terms(m, n, opt.ext_cap, 0);
      if (ext.truncated)
        v.notes.push_back("partial: extensions of " + names[i] + " by " + names[j] + " truncated at " +
                          std::to_string(opt.ext_cap));
      for (const auto& e : ext.middles) {
        if (f.contains(e)) continue;
        v.fail("an extension of " + names[i] + " by " + names[j] + " leaves the family");
        v.certificates.push_back(dim_certificate("extension of " + names[i] + " by " + names[j], e));
      }
    }
  return v;
}

}  // namespace commacat
