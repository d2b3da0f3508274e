#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "berry/family.hpp"

namespace berry {

struct RunConfig {
  int m = 2;
  std::optional<int> dim;  // empty = auto (default_dimension per point)
  double h = 1e-4;
  int samples = 2048;
  std::string grid;        // "", "default", or a path
  cplx lambda{0.0};
  cplx mu{0.0};
  std::string out;         // empty = stdout
  std::string format = "json";
  std::string loop;        // loop file for the holonomy command
  std::string source = "closed";
  bool richardson = false;
  bool comparison_mode = false;
  std::map<std::string, double> tolerances;

  /// Throws std::invalid_argument on the first bad field.
  void validate() const;

  /// tolerances[name] if overridden, else fallback.
  double tolerance(const std::string& name, double fallback) const;

  /// Grid points: the configured grid, or the single (lambda, mu) point.
  std::vector<ParameterPoint> points() const;
  /// Truncation for a point: the fixed dim, or default_dimension.
  int dimension_for(const ParameterPoint& p) const;
};

/// Magnitudes {0, 0.5, 1} for lambda and mu with phases {0, pi/4} each,
/// duplicates removed.
std::vector<ParameterPoint> default_grid();

/// One point per non-empty line: "<lambda> <mu>", complex syntax "re+imi";
/// '#' starts a comment.
std::vector<ParameterPoint> read_grid_file(const std::string& path);

/// Key-value config file: "key = value" per line, '#' comments. Keys mirror
/// the long flag names (m, dim, step, samples, lambda, mu, grid, out, format,
/// loop, source, richardson, tolerance.<name>).
void apply_config_file(const std::string& path, RunConfig& cfg);

/// Worker count from BERRY_HOLONOMY_THREADS (default: hardware concurrency).
int thread_cap();

}  // namespace berry
