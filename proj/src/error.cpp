#include "tsurf/error.hpp"

namespace tsurf {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::division_by_zero: return "division-by-zero";
    case ErrorCode::tower_mismatch: return "tower-mismatch";
    case ErrorCode::not_algebraic: return "not-algebraic";
    case ErrorCode::reducible_polynomial: return "reducible-polynomial";
    case ErrorCode::bad_isolating_interval: return "bad-isolating-interval";
    case ErrorCode::undecidable_comparison: return "undecidable-comparison";
    case ErrorCode::parse_error: return "parse-error";
    case ErrorCode::malformed_permutation: return "malformed-permutation";
    case ErrorCode::not_connected: return "not-connected";
    case ErrorCode::non_parallel_gluing: return "non-parallel-gluing";
    case ErrorCode::unmatched_edge: return "unmatched-edge";
    case ErrorCode::malformed_polygon: return "malformed-polygon";
    case ErrorCode::no_cone_points: return "no-cone-points";
    case ErrorCode::overlapping_slits: return "overlapping-slits";
    case ErrorCode::incongruent_gluing: return "incongruent-gluing";
    case ErrorCode::starts_on_slit_interior: return "starts-on-slit-interior";
    case ErrorCode::parallel_vectors: return "parallel-vectors";
    case ErrorCode::fewer_than_four_slopes: return "fewer-than-four-slopes";
    case ErrorCode::slope_rational: return "slope-rational";
    case ErrorCode::constraint_violation: return "constraint-violation";
    case ErrorCode::orbit_cap_exceeded: return "orbit-cap-exceeded";
  }
  return "unknown";
}

}  // namespace tsurf
