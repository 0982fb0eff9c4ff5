#pragma once

#include <optional>
#include <string>

#include "json.hpp"

namespace ehq {

/// Machine-readable report plus the process exit code contract:
/// 0 = checks pass / verdict produced, 2 = inconclusive verdict,
/// 3 = validation failure, 4 = config error.
struct Report {
    nlohmann::ordered_json doc;
    int exit_code = 0;
};

std::string tool_version();

/// Parse a JSON job file; throws ConfigError with the offending path/field.
nlohmann::json load_json_file(const std::string& path);

/// Symbolic transcendence check (criteria engine).  Config fields:
///   case: "A" | "B" | "custom"
///   gens (optional), lattice (custom; rows of integer exponent vectors),
///   extra_relations (optional rows added to the case lattice),
///   epsilons (optional: 8 monomials as {gen: "num/den", ...} objects),
///   b_factors (optional override of the telescoper input: list of
///   {shift: monomial, arg_power, exponent}).
Report run_check(const nlohmann::json& config);

struct ValidateOverrides {
    std::optional<int> trunc;
    std::optional<int> nodes;
    std::optional<unsigned> seed;
};

/// Numeric residual suite over the config's NumericParams ("numeric" object
/// with p, q, eps as [re,im] pairs, trunc, nodes, seed, samples, tolerances).
/// Window violations are reported per check, not fatal.
Report run_validate(const nlohmann::json& config, const ValidateOverrides& ov = {});

/// Tabulate theta, Gamma, A, f at the requested points ([re,im] array), with
/// per-point error entries for poles/window violations.
Report run_eval(const nlohmann::json& config, const nlohmann::json& points);

}  // namespace ehq
