#pragma once

#include <string>
#include <vector>

#include "envs/environment.hpp"
#include "json.hpp"

namespace llf {

// Build a concrete environment from a scenario description, e.g.
//   {"kind":"bitwise","length":3,"target":"101"}
//   {"kind":"reasoning","length":2,"steps":2,"target":[0,1],"feedback":"demonstration"}
//   {"kind":"wordle","target":"totem"}
//   {"kind":"battleship","rows":6,"cols":6,"ships":[{"row":0,"col":0,"length":5,"horizontal":true},...]}
//   {"kind":"minesweeper","rows":5,"cols":5,"mines":[[0,1],[2,3]]}
EnvironmentModel make_environment(const nlohmann::json& scenario);

// Draw a concrete scenario of the given kind from a seed; `params` may pin
// sizes (length, rows, dictionary, ...). Used by the multi-scenario harness.
nlohmann::json random_scenario(const std::string& kind, std::uint64_t seed,
                               const nlohmann::json& params);

const std::vector<std::string>& builtin_wordle_dictionary();

}  // namespace llf
