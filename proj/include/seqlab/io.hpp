#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "seqlab/characterize.hpp"
#include "seqlab/coeff_vector.hpp"
#include "seqlab/space.hpp"

namespace seqlab {

inline constexpr const char* kToolName = "seqlab";
inline constexpr const char* kVersion = "0.1.0";

/// Space description schema:
///   {"family": "lp", "p": 2}
///   {"family": "c0"}
///   {"family": "lorentz", "p": 1, "weights": {"rule": "harmonic"}}
///       rules: {"rule": "power", "s": 0.5}, {"rule": "list", "values": [1, 0.5]}
///   {"family": "tsirelson", "theta": 0.5}
///   {"family": "summing"}
/// Optional "unconditional" / "symmetric" booleans must match the family.
SpaceSpec space_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SpaceSpec& spec);

/// Reads and parses a space file; failures raise ConfigError.
SpaceSpec load_space(const std::filesystem::path& path);

/// 17 significant digits, '.' decimal point, independent of locale.
std::string format_double(double v);
/// Entries joined by ';' (safe inside a CSV field).
std::string format_vector(const CoeffVector& v);

nlohmann::json to_json(const CoeffVector& v);
nlohmann::json to_json(const GrowthTable& table);
nlohmann::json to_json(const PowerFit& fit);
nlohmann::json to_json(const SandwichResult& s);
nlohmann::json to_json(const EquivalenceEstimate& e);
nlohmann::json to_json(const ClassifyConfig& c);
nlohmann::json to_json(const Verdict& v);

}  // namespace seqlab
