#pragma once

#include <json.hpp>

#include "entwit/chsh.hpp"
#include "entwit/gaussian.hpp"
#include "entwit/operator.hpp"
#include "entwit/sampler.hpp"

// JSON schemas for the serialized value types. Doubles are written by the
// shortest round-trip encoding, so a dump/parse cycle reproduces every entry
// exactly.
namespace entwit {

using Json = nlohmann::json;

// { "dim": n, "re": [row-major], "im": [row-major] }
void to_json(Json& j, const Operator& op);
Operator operator_from_json(const Json& j);

// { "basis_a", "basis_b", "p": [[..],[..]] }
void to_json(Json& j, const CorrelationMatrix& m);

// { "correlations": [a1b1, a1b2, a2b1, a2b2], "value", "settings_rad", "verdict" }
// plus "std_error" and "margin" for finite-statistics results.
void to_json(Json& j, const ChshResult& r);

// { "dxm", "dpp", "product", "bound", "verdict" }
void to_json(Json& j, const EprReidResult& r);

// { "counts": [[..],[..]], "n", "theta_a", "theta_b" }
void to_json(Json& j, const CountTable& t);

// { "w", "L", "lambda", "alpha"?, "Lc"? }
SpdcConfig spdc_config_from_json(const Json& j);

}  // namespace entwit
