#pragma once

// Families of modules: an intrinsic membership predicate, evaluated on finite
// universes of representatives.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "commacat/module.hpp"

namespace commacat {

enum class FamilyKind { explicit_list, gen, d_sigma, perp_left, perp_right, all, zero_only, comma_u, comma_b, comma_j, custom };

inline const char* to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::explicit_list: return "list";
    case FamilyKind::gen: return "gen";
    case FamilyKind::d_sigma: return "d_sigma";
    case FamilyKind::perp_left: return "perp_left";
    case FamilyKind::perp_right: return "perp_right";
    case FamilyKind::all: return "all";
    case FamilyKind::zero_only: return "zero";
    case FamilyKind::comma_u: return "comma_U";
    case FamilyKind::comma_b: return "comma_B";
    case FamilyKind::comma_j: return "comma_J";
    case FamilyKind::custom: return "custom";
  }
  return "?";
}

struct ModuleFamily {
  std::string label;
  FamilyKind kind = FamilyKind::custom;
  std::function<bool(const ModuleRep&)> member;

  bool contains(const ModuleRep& m) const { return member(m); }
};

/// Named representatives of isomorphism classes.
struct Universe {
  std::string label;
  std::vector<ModuleRep> members;
  std::vector<std::string> names;

  std::size_t size() const { return members.size(); }

  void add(std::string name, ModuleRep m) {
    names.push_back(std::move(name));
    members.push_back(std::move(m));
  }

  /// FNV-1a over dimensions and action entries, in order.
  std::uint64_t hash() const {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&](std::uint64_t v) {
      for (int b = 0; b < 8; ++b) {
        h ^= (v >> (8 * b)) & 0xffu;
        h *= 1099511628211ull;
      }
    };
    mix(members.size());
    for (const auto& m : members) {
      mix(m.dim);
      mix(m.side == Side::left ? 0 : 1);
      for (const auto& a : m.action)
        for (auto e : a.entries()) mix(e);
    }
    return h;
  }
};

inline std::vector<bool> membership(const ModuleFamily& f, const Universe& u) {
  std::vector<bool> bits;
  bits.reserve(u.size());
  for (const auto& m : u.members) bits.push_back(f.contains(m));
  return bits;
}

inline std::vector<ModuleRep> members_in(const ModuleFamily& f, const Universe& u) {
  std::vector<ModuleRep> out;
  for (const auto& m : u.members)
    if (f.contains(m)) out.push_back(m);
  return out;
}

inline ModuleFamily all_family(std::string label = "all") {
  return {std::move(label), FamilyKind::all, [](const ModuleRep&) { return true; }};
}

inline ModuleFamily zero_family(std::string label = "zero") {
  return {std::move(label), FamilyKind::zero_only, [](const ModuleRep& m) { return m.dim == 0; }};
}

/// Modules isomorphic to a listed representative (the zero module is always
/// included only when listed).
inline ModuleFamily explicit_family(std::string label, std::vector<ModuleRep> reps, std::size_t iso_cap = 16) {
  return {std::move(label), FamilyKind::explicit_list, [reps = std::move(reps), iso_cap](const ModuleRep& m) {
            for (const auto& r : reps)
              if (is_isomorphic(r, m, iso_cap)) return true;
            return false;
          }};
}

inline ModuleFamily gen_family(std::string label, ModuleRep t) {
  return {std::move(label), FamilyKind::gen, [t = std::move(t)](const ModuleRep& m) { return gen_member(t, m); }};
}

/// X^perp: modules receiving no nonzero map from a family member of the universe.
inline ModuleFamily perp_right(const ModuleFamily& f, const Universe& u, std::string label = {}) {
  auto gens = members_in(f, u);
  if (label.empty()) label = f.label + "^perp";
  return {std::move(label), FamilyKind::perp_right, [gens = std::move(gens)](const ModuleRep& y) {
            for (const auto& x : gens)
              if (hom_dim(x, y) != 0) return false;
            return true;
          }};
}

/// ^perp X: modules admitting no nonzero map to a family member of the universe.
inline ModuleFamily perp_left(const ModuleFamily& f, const Universe& u, std::string label = {}) {
  auto gens = members_in(f, u);
  if (label.empty()) label = "^perp" + f.label;
  return {std::move(label), FamilyKind::perp_left, [gens = std::move(gens)](const ModuleRep& y) {
            for (const auto& x : gens)
              if (hom_dim(y, x) != 0) return false;
            return true;
          }};
}

}  // namespace commacat
