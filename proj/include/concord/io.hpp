#pragma once
// JSON wire formats. Serialization is deterministic and order-preserving;
// reals are written with 12 significant digits.

#include <filesystem>
#include <string>
#include <vector>

#include "concord/argumentation.hpp"
#include "concord/consensus.hpp"
#include "concord/trust.hpp"

namespace concord::io {

// Nearest double to the 12-significant-digit decimal rendering of x.
double round12(double x);

// {"arguments": ["a", ...], "attacks": [["a","e"], ...]}
ArgumentationFramework parse_af(const std::string& text);
std::string af_to_json(const ArgumentationFramework& af);

// {"name": "w1", "values": {"a": 0.38, ...}}
WeightingFunction parse_weighting(const std::string& text);
std::string weighting_to_json(const WeightingFunction& w);

// Array of weighting objects; a single object parses as a one-element list.
// Names must be unique.
std::vector<WeightingFunction> parse_weightings(const std::string& text);
std::string weightings_to_json(const std::vector<WeightingFunction>& ws);

// {"agents": ["A1", ...], "rows": [[0.75, 0.15, 0.1, 0], ...]}
TrustMatrix parse_trust_matrix(const std::string& text);
std::string trust_matrix_to_json(const TrustMatrix& m);

// {"agents": [...], "considered": {"A1": ["w1", ...], ...},
//  "scores": {"A1": {"w1": 0.4, ...}, ...}}
// M is the union of the considered sets in first-appearance order.
ScoringProfile parse_profile(const std::string& text);
std::string profile_to_json(const ScoringProfile& p);

// Mirrors ConsensusResult's fields; "aggregated" is null when absent.
ConsensusResult parse_result(const std::string& text);
std::string result_to_json(const ConsensusResult& r);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

}  // namespace concord::io
