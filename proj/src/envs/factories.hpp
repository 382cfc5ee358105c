#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "envs/environment.hpp"

namespace llf {

// Example-1 style environment: actions and hypotheses are all 0-1 strings of
// length L; reward 1 iff the guess equals the hypothesis's target; feedback
// reports per-bit correctness. flip_prob > 0 flips each feedback bit
// independently (the stochastic variant; feedback stays unbiased).
EnvironmentModel make_bitwise(int length, const std::string& target,
                              double flip_prob = 0.0);

enum class ReasoningFeedback { Reward, FirstErrorIndex, FirstErrorCorrection, Demonstration };

ReasoningFeedback reasoning_feedback_from_string(const std::string& s);
std::string to_string(ReasoningFeedback kind);

// Reasoning-chain environment: hypotheses are all |S|^L step sequences,
// reward 1 iff every step matches, feedback per the chosen kind.
EnvironmentModel make_reasoning(int length, int step_count,
                                const std::vector<int>& target,
                                ReasoningFeedback kind);

// First-incorrect-letter Wordle. Feedback strings are bit-exact:
//   "The first letter 'a' is incorrect."
EnvironmentModel make_wordle(const std::vector<std::string>& dictionary,
                             const std::string& target, int max_turns = 10);

struct ShipPlacement {
  int row = 0;
  int col = 0;
  int length = 0;
  bool horizontal = true;
};

// Battleship with ships of lengths {5,4,3}. Hidden rewards:
// miss 0.0, hit-not-sunk 0.5, sinking shot 1.0, repeated shot 0.0.
EnvironmentModel make_battleship(int rows, int cols,
                                 const std::vector<ShipPlacement>& layout,
                                 int max_turns = 20,
                                 std::size_t hypothesis_cap = 10000,
                                 std::uint64_t hypothesis_seed = 0);

// Minesweeper. Hidden rewards: safe reveal 0.2, solving reveal 1.0,
// already-revealed cell -0.2, mine 0.0 (episode ends).
EnvironmentModel make_minesweeper(int rows, int cols,
                                  const std::set<std::pair<int, int>>& mines,
                                  int max_turns = 20,
                                  std::size_t hypothesis_cap = 10000,
                                  std::uint64_t hypothesis_seed = 0);

// enumerate / sample all valid battleship layouts (exposed for tests)
std::vector<std::vector<ShipPlacement>> enumerate_battleship_layouts(
    int rows, int cols, std::size_t cap, std::uint64_t seed,
    const std::vector<ShipPlacement>* must_include);

}  // namespace llf
