#pragma once

#include <optional>
#include <string>
#include <vector>

#include "geo/groups.hpp"

namespace geo {

/// Reported run of the geodesic-automaton construction for a named group:
/// GW_i merged at k gave an automaton with `states` states.
struct ReportedRun {
  std::size_t i = 0;
  std::size_t k = 0;
  std::size_t states = 0;
};

struct Fixture {
  std::string name;
  std::string description;
  GroupSpec spec;
  std::optional<ReportedRun> reported;
};

GroupSpec free_group_spec(std::size_t rank);
/// Z^n with unit generators a, A, b, B, ...
GroupSpec free_abelian_spec(std::size_t n);
/// Z = <x> with symbols 1 (identity), x, X.
GroupSpec cyclic_with_identity_spec(const std::string& x, const std::string& inverse);
/// Z^2 over the nine symbols (x, y) with x in {1, a, A}, y in {1, b, B}.
GroupSpec z2_nine_spec();
GroupSpec dihedral_artin_spec(unsigned m);
/// a, b, t, u = at, v = bt with ab = ba, t^2 = 1, tat = b.
GroupSpec example1_spec();
/// Coxeter group on a, b, c, d: (ab)^3 = (bc)^3 = (cd)^3 = (da)^3 = (ac)^2 = (bd)^2 = 1.
GroupSpec example5_spec();
/// (<a> x <b>) * <c> over the nine Z^2 symbols plus c, C.
GroupSpec z2_free_z_spec();

std::vector<Fixture> fixtures();
/// Accepts the fixture names and the aliases example2..example4.
Fixture fixture(const std::string& name);

}  // namespace geo
