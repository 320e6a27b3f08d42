#pragma once

// Verdicts and replayable certificates. A certificate records one primitive
// fact (a Hom dimension, a trace dimension, a rank, ...) together with the raw
// modules and matrices it was computed from, so it can be re-checked later
// without any of the machinery that produced it.

#include <cstdint>
#include <string>
#include <vector>

#include "commacat/module.hpp"

namespace commacat {

enum class Outcome { holds, fails, out_of_scope };

inline const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::holds: return "holds";
    case Outcome::fails: return "fails";
    case Outcome::out_of_scope: return "out-of-scope";
  }
  return "?";
}

enum class CertKind {
  hom_dim,         // modules {m, n}: dim Hom(m, n)
  gen_member,      // modules {t, x}: x in Gen t (0/1)
  d_sigma_member,  // modules {P1, P0, x}, maps {sigma}: Hom(sigma, x) surjective (0/1)
  map_image_dim,   // modules {m, n}, maps {f}: f is a module map of the given rank
  trace_dim,       // modules {g_1, ..., g_k, m}: dim of the trace of the g_i in m
  isomorphic,      // modules {m, n}: m isomorphic to n (0/1)
  matrix_rank,     // maps {f}: rank of f
  module_dim,      // modules {m}: dim m
};

inline const char* to_string(CertKind k) {
  switch (k) {
    case CertKind::hom_dim: return "hom_dim";
    case CertKind::gen_member: return "gen_member";
    case CertKind::d_sigma_member: return "d_sigma_member";
    case CertKind::map_image_dim: return "map_image_dim";
    case CertKind::trace_dim: return "trace_dim";
    case CertKind::isomorphic: return "isomorphic";
    case CertKind::matrix_rank: return "matrix_rank";
    case CertKind::module_dim: return "module_dim";
  }
  return "?";
}

struct Certificate {
  std::string clause;
  CertKind kind = CertKind::hom_dim;
  std::vector<ModuleRep> modules;
  std::vector<FpMatrix> maps;
  std::int64_t expected = 0;
};

struct Verdict {
  std::string claim;
  Outcome result = Outcome::holds;
  std::vector<std::string> notes;
  std::vector<Certificate> certificates;
  std::vector<Verdict> sub;
  std::uint64_t universe_hash = 0;

  bool holds() const { return result == Outcome::holds; }
  void fail(std::string note) {
    result = Outcome::fails;
    notes.push_back(std::move(note));
  }
};

inline Certificate hom_dim_certificate(std::string clause, const ModuleRep& m, const ModuleRep& n) {
  return {std::move(clause), CertKind::hom_dim, {m, n}, {}, static_cast<std::int64_t>(hom_dim(m, n))};
}

inline Certificate gen_certificate(std::string clause, const ModuleRep& t, const ModuleRep& x) {
  return {std::move(clause), CertKind::gen_member, {t, x}, {}, gen_member(t, x) ? 1 : 0};
}

inline Certificate trace_certificate(std::string clause, const std::vector<ModuleRep>& gens, const ModuleRep& m) {
  Certificate c{std::move(clause), CertKind::trace_dim, gens, {}, 0};
  c.modules.push_back(m);
  c.expected = static_cast<std::int64_t>(trace_of(gens, m).module.dim);
  return c;
}

inline Certificate rank_certificate(std::string clause, const FpMatrix& f) {
  return {std::move(clause), CertKind::matrix_rank, {}, {f}, static_cast<std::int64_t>(rank(f))};
}

inline Certificate map_certificate(std::string clause, const ModuleMap& f) {
  return {std::move(clause), CertKind::map_image_dim, {f.source, f.target}, {f.matrix},
          static_cast<std::int64_t>(rank(f.matrix))};
}

inline Certificate dim_certificate(std::string clause, const ModuleRep& m) {
  return {std::move(clause), CertKind::module_dim, {m}, {}, static_cast<std::int64_t>(m.dim)};
}

/// Recomputes the certified fact from the stored data.
inline bool replay(const Certificate& c, std::size_t iso_cap = 16) {
  try {
    switch (c.kind) {
      case CertKind::hom_dim:
        return c.modules.size() == 2 && static_cast<std::int64_t>(hom_dim(c.modules[0], c.modules[1])) == c.expected;
      case CertKind::gen_member:
        return c.modules.size() == 2 && (gen_member(c.modules[0], c.modules[1]) ? 1 : 0) == c.expected;
      case CertKind::d_sigma_member: {
        if (c.modules.size() != 3 || c.maps.size() != 1) return false;
        if (!is_module_map(c.modules[0], c.modules[1], c.maps[0])) return false;
        const ModuleMap sigma{c.modules[0], c.modules[1], c.maps[0]};
        return (precomposition_surjective(sigma, c.modules[2]) ? 1 : 0) == c.expected;
      }
      case CertKind::map_image_dim:
        return c.modules.size() == 2 && c.maps.size() == 1 && is_module_map(c.modules[0], c.modules[1], c.maps[0]) &&
               static_cast<std::int64_t>(rank(c.maps[0])) == c.expected;
      case CertKind::trace_dim: {
        if (c.modules.empty()) return false;
        std::vector<ModuleRep> gens(c.modules.begin(), c.modules.end() - 1);
        return static_cast<std::int64_t>(trace_of(gens, c.modules.back()).module.dim) == c.expected;
      }
      case CertKind::isomorphic:
        return c.modules.size() == 2 && (is_isomorphic(c.modules[0], c.modules[1], iso_cap) ? 1 : 0) == c.expected;
      case CertKind::matrix_rank:
        return c.maps.size() == 1 && static_cast<std::int64_t>(rank(c.maps[0])) == c.expected;
      case CertKind::module_dim:
        return c.modules.size() == 1 && static_cast<std::int64_t>(c.modules[0].dim) == c.expected &&
               validate_module(c.modules[0]).valid();
    }
  } catch (const Error&) {
    return false;
  }
  return false;
}

/// Replays every certificate in the verdict tree; returns the failures.
inline std::vector<std::string> replay_all(const Verdict& v, std::size_t iso_cap = 16) {
  std::vector<std::string> bad;
  for (const auto& c : v.certificates)
    if (!replay(c, iso_cap)) bad.push_back(v.claim + ": " + c.clause);
  for (const auto& s : v.sub)
    for (auto& b : replay_all(s, iso_cap)) bad.push_back(std::move(b));
  return bad;
}

inline std::size_t count_certificates(const Verdict& v) {
  std::size_t n = v.certificates.size();
  for (const auto& s : v.sub) n += count_certificates(s);
  return n;
}

}  // namespace commacat
