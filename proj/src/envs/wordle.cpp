#include <algorithm>
#include <memory>
#include <stdexcept>

#include "envs/factories.hpp"

namespace llf {
namespace {

constexpr const char* kWinMessage = "You guessed the word correctly!";

struct WordleState : EpisodeState {};

// 0 = exact match, else 1-based index of the first differing character
int first_mismatch(const std::string& guess, const std::string& target) {
  for (std::size_t i = 0; i < guess.size(); ++i)
    if (guess[i] != target[i]) return static_cast<int>(i) + 1;
  return 0;
}

std::string mismatch_feedback(const std::string& guess, int pos) {
  return "The " + ordinal_word(pos) + " letter '" + guess[pos - 1] + "' is incorrect.";
}

// recover the mismatch position from an emitted feedback string
int parse_position(const std::string& obs) {
  if (obs == kWinMessage) return 0;
  const std::string head = "The ";
  const auto sp = obs.find(' ', head.size());
  const std::string ord = obs.substr(head.size(), sp - head.size());
  for (int i = 1; i <= 5; ++i)
    if (ordinal_word(i) == ord) return i;
  throw std::invalid_argument("unrecognized wordle feedback: " + obs);
}

}  // namespace

EnvironmentModel make_wordle(const std::vector<std::string>& dictionary,
                             const std::string& target, int max_turns) {
  if (dictionary.empty()) throw std::invalid_argument("dictionary must be nonempty");
  for (const auto& w : dictionary)
    if (w.size() != 5) throw std::invalid_argument("all words must have length 5: " + w);
  const auto it = std::find(dictionary.begin(), dictionary.end(), target);
  if (it == dictionary.end()) throw std::invalid_argument("target not in dictionary");
  if (max_turns < 1) throw std::invalid_argument("max_turns must be positive");

  EnvironmentModel env;
  env.name = "wordle";
  env.actions = ActionSpace(dictionary);
  env.hypotheses.items.reserve(dictionary.size());
  for (const auto& w : dictionary) env.hypotheses.items.push_back({w, w});
  env.hypotheses.truth_index = static_cast<std::size_t>(it - dictionary.begin());
  env.max_turns = max_turns;

  const std::vector<std::string> words = dictionary;
  env.reward = [words](HypId h, ActionId a) { return h == a ? 1.0 : 0.0; };

  auto loss_one = [words](ActionId a, int obs_pos, HypId h) {
    return first_mismatch(words[a], words[h]) == obs_pos ? 0.0 : 1.0;
  };
  env.loss = [loss_one](ActionId a, const std::string& obs, HypId h) {
    return loss_one(a, parse_position(obs), h);
  };
  const std::size_t n = dictionary.size();
  env.loss_row = [loss_one, n](ActionId a, const std::string& obs) {
    const int pos = parse_position(obs);
    std::vector<double> row(n);
    for (HypId h = 0; h < n; ++h) row[h] = loss_one(a, pos, h);
    return row;
  };

  auto emit = [words](HypId h, ActionId a) -> std::string {
    const int pos = first_mismatch(words[a], words[h]);
    return pos == 0 ? kWinMessage : mismatch_feedback(words[a], pos);
  };
  env.feedback = [emit, n](HypId h) {
    FeedbackDistribution fd(n);
    for (ActionId a = 0; a < n; ++a) fd.set(a, {{emit(h, a), 1.0}});
    return fd;
  };

  const HypId truth = env.hypotheses.truth_index;
  env.make_state = [](std::uint64_t seed) {
    auto s = std::make_unique<WordleState>();
    s->rng = Rng(seed);
    return s;
  };
  env.apply = [emit, truth](EpisodeState&, ActionId a) {
    StepOutcome out;
    out.observation = emit(truth, a);
    out.hidden_reward = a == truth ? 1.0 : 0.0;
    out.terminal = a == truth;
    return out;
  };
  env.best_step_reward = [](const EpisodeState& st) { return st.done ? 0.0 : 1.0; };
  env.extract_reward = [](ActionId, const std::string& obs) {
    return obs == kWinMessage ? 1.0 : 0.0;
  };
  return env;
}

}  // namespace llf
