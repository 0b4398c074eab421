#pragma once

#include <stdexcept>
#include <string>

namespace mcf {

enum class errc {
  non_manifold_edge,
  inconsistent_orientation,
  degenerate_face,
  parse_error,
  unsupported_format,
  ill_conditioned_fit,
  seed_outside_ball,
  empty_intersection,
  curvature_hypothesis_violated,
  multi_valued,
  step_rejected,
  blowup_detected,
  topology_changed,
  time_beyond_T,
  insufficient_approach,
  hypothesis_violated,
  trajectory_too_short,
  chain_unbounded,
  resolution_too_coarse,
  series_too_short,
  not_two_sheet,
  not_graphical,
  empty_domain,
  insufficient_times,
  nonpositive_gap_at_base,
  cfl_violation,
  not_compactly_supported,
  structure_conditions_fail,
  unknown_probe,
  invalid_argument,
  io_error,
};

const char* errc_name(errc c);

class error : public std::runtime_error {
public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

} // namespace mcf
