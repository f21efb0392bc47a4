#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "domino/lift.hpp"
#include "domino/orbit.hpp"
#include "domino/solver.hpp"
#include "domino/substitution.hpp"
#include "domino/superposition.hpp"
#include "domino/surface.hpp"

namespace domino::io {

using nlohmann::json;

// Unreadable or malformed input; the message names the source and the location.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

Substitution substitution_from_json(const json& j);
json to_json(const Substitution& sub);

json to_json(const OrbitPatch& patch);
std::string to_dot(const OrbitGraphPatch& g, const Substitution& sub);

json to_json(const SymbolAlphabet& alphabet);
json to_json(const SuperSymbol& s, std::size_t rule_index);

NNForbiddenSet nn_forbidden_from_json(const json& j);
json to_json(const NNForbiddenSet& fs);

std::string ball_to_dot(const surface::CayleyBallPatch& ball);
json to_json(const surface::DirectionPatch& patch);

std::vector<surface::OrbitPattern> orbit_patterns_from_json(const json& j);
json to_json(const surface::OrbitPattern& p);
json to_json(const surface::CayleyPattern& p);

solver::PatchInstance instance_from_json(const json& j);
json to_json(const solver::PatchInstance& inst);
json to_json(const solver::SolveResult& r, const solver::PatchInstance& inst);

// "next" or a non-negative integer.
int edge_label_from_json(const json& j);
json edge_label_to_json(int label);

}  // namespace domino::io
