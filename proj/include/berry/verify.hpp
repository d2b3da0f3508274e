#pragma once

#include "berry/json_io.hpp"
#include "berry/run_config.hpp"

namespace berry {

struct VerifyOutcome {
  json payload;
  bool pass = false;
};

/// Default tolerances of the cross-check sections.
inline constexpr double kConnectionTol = 1e-6;
inline constexpr double kCurvatureTol = 1e-5;
inline constexpr double kFSquaredTol = 1e-5;
inline constexpr double kBchTol = 1e-8;
inline constexpr double kDerivativeTol = 1e-8;
inline constexpr double kCommutatorTol = 1e-12;

/// Closed vs oracle connection, closed vs oracle curvature, F^2 three-way
/// check, BCH identities, derivative identities and operator commutators.
/// Sections carry "status": "pass" | "fail" (F^2 may also report
/// "discrepancy" when the closed form disagrees with both wedge oracles that
/// agree with each other; that does not fail the run).
VerifyOutcome run_verification(const RunConfig& cfg);

}  // namespace berry
