#pragma once

#include <span>
#include <string>

#include <json.hpp>

#include "olct/fields.hpp"
#include "olct/params.hpp"
#include "olct/theorems.hpp"

namespace olct {

using Json = nlohmann::ordered_json;

/// {"a", "b", "c", "d", "tau", "eta"}
Json to_json(const OlctParams& p);
/// Reads the six keys and validates. Throws Error(parse) or Error(invalid_params).
OlctParams params_from_json(const Json& j);

/// {"params", "n_max", "r_nodes", "profiles": {"n": [[re, im], ...]}}
Json to_json(const HarmonicSpectrum& s, const OlctParams& p);

Json to_json(const VerificationReport& r);
Json to_json(std::span<const VerificationReport> reports);

/// Serializes with every double in "%.17g"; non-finite numbers become null.
std::string dump(const Json& j, int indent = 2);

}  // namespace olct
