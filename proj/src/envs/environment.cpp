#include "envs/environment.hpp"

#include <stdexcept>
#include <unordered_set>

namespace llf {

ProblemView EnvironmentModel::problem_view() const {
  ProblemView v;
  v.actions = &actions;
  v.hypotheses = &hypotheses.items;
  v.reward = reward;
  v.loss = loss;
  v.loss_row = loss_row;
  v.extract_reward = extract_reward;
  return v;
}

std::vector<std::string> EnvironmentModel::observation_universe(std::size_t budget) const {
  if (hypotheses.size() * actions.size() > budget)
    throw std::runtime_error("observation set not enumerable within budget");
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (HypId h = 0; h < hypotheses.size(); ++h) {
    FeedbackDistribution fd = feedback(h);
    for (ActionId a = 0; a < actions.size(); ++a) {
      for (const auto& w : fd.at(a)) {
        if (seen.insert(w.obs).second) out.push_back(w.obs);
      }
    }
  }
  return out;
}

StepOutcome step(const EnvironmentModel& env, EpisodeState& state, ActionId a) {
  if (state.done) throw std::runtime_error("episode finished");
  if (a >= env.actions.size()) throw std::invalid_argument("action out of range");
  StepOutcome out = env.apply(state, a);
  state.turn += 1;
  if (out.terminal || state.turn >= env.max_turns) state.done = true;
  return out;
}

std::string cell_name(int row, int col) {
  std::string s;
  s += static_cast<char>('A' + row);
  s += std::to_string(col + 1);
  return s;
}

std::string render_grid(int rows, int cols,
                        const std::function<char(int, int)>& cell) {
  std::string out = " ";
  for (int c = 0; c < cols; ++c) {
    out += ' ';
    out += std::to_string(c + 1);
  }
  out += '\n';
  for (int r = 0; r < rows; ++r) {
    out += static_cast<char>('A' + r);
    for (int c = 0; c < cols; ++c) {
      out += ' ';
      out += cell(r, c);
    }
    if (r + 1 < rows) out += '\n';
  }
  return out;
}

std::string number_word(int n) {
  static const char* words[] = {"zero", "one", "two",   "three", "four",
                                "five", "six", "seven", "eight", "nine",
                                "ten",  "eleven", "twelve"};
  if (n < 0 || n > 12) return std::to_string(n);
  return words[n];
}

std::string ordinal_word(int n) {
  static const char* words[] = {"zeroth", "first", "second", "third", "fourth", "fifth",
                                "sixth", "seventh", "eighth", "ninth", "tenth"};
  if (n < 0 || n > 10) return std::to_string(n) + "th";
  return words[n];
}

}  // namespace llf
