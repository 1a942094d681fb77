#pragma once

#include <vector>

#include "tsurf/geometry.hpp"

namespace tsurf {

// Finitely generated subgroup of the plane.
struct ModuleDesc {
  std::vector<Vec2> generators;
  int rank_z = 0;
  int span_dim = 0;
  // Z-basis (rank_z vectors), present iff rank_z == span_dim.
  std::optional<std::vector<Vec2>> lattice_basis;

  bool is_lattice() const { return lattice_basis.has_value(); }
};

ModuleDesc make_module(std::vector<Vec2> generators);

// Z-membership of v in the module.
bool z_contains(const ModuleDesc& m, const Vec2& v);
// Membership in the Q-span of the generators.
bool q_contains(const ModuleDesc& m, const Vec2& v);

// Real span dimension of a set of vectors.
int real_span_dim(const std::vector<Vec2>& vs);

}  // namespace tsurf
