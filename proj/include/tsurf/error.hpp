#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tsurf {

enum class ErrorCode {
  division_by_zero,
  tower_mismatch,
  not_algebraic,
  reducible_polynomial,
  bad_isolating_interval,
  undecidable_comparison,
  parse_error,
  malformed_permutation,
  not_connected,
  non_parallel_gluing,
  unmatched_edge,
  malformed_polygon,
  no_cone_points,
  overlapping_slits,
  incongruent_gluing,
  starts_on_slit_interior,
  parallel_vectors,
  fewer_than_four_slopes,
  slope_rational,
  constraint_violation,
  orbit_cap_exceeded,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tsurf
