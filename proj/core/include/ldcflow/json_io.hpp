#pragma once

// JSON forms of networks, solutions and combinatorial instances. Numbers are
// written as exact strings ("p/q" or integers); on input a rational may be a
// string ("p/q", integer or finite decimal) or a JSON integer.

#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "ldcflow/network.hpp"
#include "ldcflow/reductions.hpp"

namespace ldc {

using Json = nlohmann::json;

Rational rational_from_json(const Json& j);
Json rational_to_json(const Rational& r);

Network network_from_json(const Json& j);
Json network_to_json(const Network& n);

struct SolutionDocument {
  Solution solution;
  /// Present when the solution lives on a sub-network.
  std::optional<SwitchSet> switched;
};

SolutionDocument solution_from_json(const Json& j);
Json solution_to_json(const Solution& sol, const SwitchSet* switched = nullptr);

ExactCover3Instance exact_cover_from_json(const Json& j);
SubsetSumInstance subset_sum_from_json(const Json& j);
HamiltonianInstance hamiltonian_from_json(const Json& j);
Json instance_to_json(const ExactCover3Instance& inst);
Json instance_to_json(const SubsetSumInstance& inst);
Json instance_to_json(const HamiltonianInstance& inst);

/// Io if the file cannot be read, Parse if it is not JSON.
Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace ldc
