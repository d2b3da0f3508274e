#pragma once

// JSON encoding: complex numbers as [re, im], matrices as row-major nested
// arrays of complex pairs.

#include <string>

#include "json.hpp"

#include "berry/connection.hpp"
#include "berry/curvature.hpp"
#include "berry/family.hpp"
#include "berry/fock.hpp"
#include "berry/holonomy.hpp"
#include "berry/oracle.hpp"

namespace berry {

using nlohmann::json;

json encode(cplx z);
json encode(const Matrix& m);
cplx decode_complex(const json& j);
Matrix decode_matrix(const json& j);

/// Parses "re", "re+imi", "re-imi", "imi", "i", "-i" (exponents allowed).
cplx parse_complex(const std::string& text);

void to_json(json& j, const ParameterPoint& p);
void from_json(const json& j, ParameterPoint& p);
void to_json(json& j, const IdentityReport& r);
void to_json(json& j, const BchReport& r);
void to_json(json& j, const SpectrumReport& r);
void to_json(json& j, const ConnectionCoeffs& c);
void to_json(json& j, const ConnectionMatrices& c);
void to_json(json& j, const DerivativeIdentityReport& r);
void to_json(json& j, const CurvatureForm& f);
void to_json(json& j, const FourFormValue& f);
void to_json(json& j, const ChernTraces& t);
void to_json(json& j, const GlobalFormReport& r);
void to_json(json& j, const ConvergenceReport& r);
void to_json(json& j, const HolonomyResult& r);
void to_json(json& j, const SmallLoopReport& r);

/// Loop file:
///   {"samples": 256,
///    "pieces": [{"type": "line", "from": P, "to": P, "samples": n?},
///               {"type": "circle", "plane": "lambda"|"mu", "center": P, "radius": r}]}
/// with P = {"lambda": [re, im], "mu": [re, im]}. Per-piece "samples"
/// overrides the file-level default.
LoopPath loop_from_json(const json& j);

}  // namespace berry
