#pragma once

#include <json.hpp>

#include "hamcert/certify.hpp"
#include "hamcert/pseudorandom.hpp"

namespace hamcert {

inline constexpr int kSchemaVersion = 1;

nlohmann::json certificate_to_json(const Certificate& cert, std::size_t n);
// Throws InputError on malformed documents or vertices outside [0, n).
Certificate certificate_from_json(const nlohmann::json& j, std::size_t n);

// {schema_version, verdict, cycle?, certificate?, stats}; the trace is added
// under "trace" when requested.
nlohmann::json outcome_to_json(const Outcome& outcome, std::size_t n, bool with_trace = false);
// Reads back the verdict part (cycle or certificate) of outcome_to_json.
Outcome outcome_from_json(const nlohmann::json& j, std::size_t n);

nlohmann::json recipe_to_json(const HnRecipe& recipe);

}  // namespace hamcert
