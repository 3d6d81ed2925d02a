#ifndef WAVETAIL_CONFIG_HPP
#define WAVETAIL_CONFIG_HPP

#include "wavetail/wavedata.hpp"

#include <iosfwd>
#include <string>

namespace wavetail {

/// Parse a simulation config from INI-style text:
///
///   label = p3-reference
///   l = 1
///   eps = 0.1 0.05
///   observers = 10 20
///
///   [bump]                 # repeatable; one profile component each
///   amplitude = 1.0
///   center = 1.0
///   width = 0.8
///   smoothness = 8
///
///   [term]                 # repeatable; one source term each
///   c = 1.0
///   p = 3
///   q = 0
///   alpha = 0
///   beta = 0
///
///   [grid]
///   dr = 0.03125
///   r_out = 200
///   cfl = 0.25
///   t_max = 160
///   sample_dt = 0.25
///
/// '#' starts a comment anywhere on a line; top-level keys must precede the
/// first section.  Unknown keys and sections are hard errors, reported as
/// "<name>:<line>: ...".  The parsed struct is returned unvalidated --
/// callers decide which parts (grid, observers, ...) their use requires.
SimulationConfig parse_config(std::istream& in,
                              const std::string& name = "<config>");

/// parse_config on the contents of a file.
SimulationConfig load_config(const std::string& path);

/// Deterministic canonical text of a config: fixed key order, full-precision
/// numbers.  Reparsing it reproduces the config exactly.
std::string canonical_config(const SimulationConfig& config);

/// 64-bit FNV-1a hash of the canonical text, as 16 hex digits.  Stamped
/// into every data product so series can be traced to their configs.
std::string config_hash(const SimulationConfig& config);

}  // namespace wavetail

#endif
