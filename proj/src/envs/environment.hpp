#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "core/random.hpp"
#include "core/types.hpp"

namespace llf {

// Per-episode mutable state. Stateless environments only use the base fields.
struct EpisodeState {
  int turn = 0;
  bool done = false;
  Rng rng{0};  // feedback noise, when the environment has any
  virtual ~EpisodeState() = default;
};

struct StepOutcome {
  std::string observation;
  double hidden_reward = 0.0;
  bool terminal = false;  // env-specific termination, before the turn limit
};

// What agents are allowed to know: the action set, the hypothesis list
// (without the truth index), the reward mapping and the verifier loss.
struct ProblemView {
  const ActionSpace* actions = nullptr;
  const std::vector<Hypothesis>* hypotheses = nullptr;
  RewardFn reward;
  LossFn loss;
  // loss of every hypothesis against one (action, observation); single parse
  std::function<std::vector<double>(ActionId, const std::string&)> loss_row;
  // reward extracted from feedback, g(a, o) in [0,1]; absent when the
  // environment's feedback does not decode to a bounded scalar
  std::function<double(ActionId, const std::string&)> extract_reward;

  std::size_t n_actions() const { return actions->size(); }
  std::size_t n_hypotheses() const { return hypotheses->size(); }
};

class EnvironmentModel {
 public:
  std::string name;
  ActionSpace actions;
  HypothesisSpace hypotheses;
  RewardFn reward;  // r_eta(a); equals the per-step hidden reward on
                    // stateless environments, a first-step proxy on games
  LossFn loss;
  std::function<std::vector<double>(ActionId, const std::string&)> loss_row;
  std::function<FeedbackDistribution(HypId)> feedback;  // f_eta, stateless projection
  int max_turns = 0;
  std::function<double(ActionId, const std::string&)> extract_reward;  // may be null

  // episode machinery; implementations must be deterministic in (state, action)
  std::function<std::unique_ptr<EpisodeState>(std::uint64_t seed)> make_state;
  std::function<StepOutcome(EpisodeState&, ActionId)> apply;
  // max hidden reward attainable at this state (harness-side regret reference)
  std::function<double(const EpisodeState&)> best_step_reward;

  ProblemView problem_view() const;

  // all observations any hypothesis can emit, deduplicated in first-seen order
  std::vector<std::string> observation_universe(std::size_t budget = 1000000) const;
};

// Interaction protocol step: draws the observation, increments the turn,
// sets done on terminal condition or turn == max_turns.
StepOutcome step(const EnvironmentModel& env, EpisodeState& state, ActionId a);

// helpers shared by the grid games
std::string cell_name(int row, int col);  // "A1" style, row letter + 1-based column
std::string render_grid(int rows, int cols,
                        const std::function<char(int, int)>& cell);

std::string number_word(int n);  // 1 -> "one" ... 12 -> "twelve"
std::string ordinal_word(int n); // 1 -> "first" ... 5 -> "fifth"

}  // namespace llf
