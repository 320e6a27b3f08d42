#pragma once

#include <random>
#include <string>

#include "commacat/commacat.hpp"

namespace support {

using namespace commacat;

/// Fixtures are loaded once per test binary.
inline const Fixture& fixture(const std::string& name) {
  static const Fixture a2 = fixture_by_name("a2");
  static const Fixture dual = fixture_by_name("dual-numbers");
  return name == "a2" ? a2 : dual;
}

inline std::size_t index_of(const Universe& u, const std::string& name) {
  for (std::size_t i = 0; i < u.size(); ++i)
    if (u.names[i] == name) return i;
  throw Error("no universe member named " + name);
}

/// The T-module of a named member of the fixture's T-universe.
inline const ModuleRep& tmod(const Fixture& f, const std::string& name) {
  return f.setting.t.members[index_of(f.setting.t, name)];
}

inline CommaObject object(const Fixture& f, const std::string& name) {
  return from_T_module(*f.setting.ctx, tmod(f, name)).object;
}

inline const ModuleRep& module(const Fixture& f, const std::string& name) { return f.ws->modules.at(name).module; }
inline const Presentation& presentation(const Fixture& f, const std::string& name) {
  return f.ws->presentations.at(name).presentation;
}

/// Names of the universe members satisfying pred, in universe order.
template <class Pred>
std::vector<std::string> members_where(const Universe& u, Pred pred) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < u.size(); ++i)
    if (pred(u.members[i])) out.push_back(u.names[i]);
  return out;
}

inline FpMatrix random_matrix(std::mt19937& rng, Residue p, std::size_t r, std::size_t c) {
  std::uniform_int_distribution<Residue> d(0, p - 1);
  FpMatrix m(p, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, d(rng));
  return m;
}


}  // namespace support
