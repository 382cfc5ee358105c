#include <cmath>
#include <memory>
#include <stdexcept>

#include "envs/factories.hpp"

namespace llf {
namespace {

struct ReasoningState : EpisodeState {};

std::string token(int k) { return "s" + std::to_string(k + 1); }

std::string seq_text(const std::vector<int>& steps) {
  std::string out;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (i) out += ' ';
    out += token(steps[i]);
  }
  return out;
}

// 0 = all steps correct, else 1-based index of the first incorrect step
int first_error(const std::vector<int>& action, const std::vector<int>& solution) {
  for (std::size_t i = 0; i < action.size(); ++i)
    if (action[i] != solution[i]) return static_cast<int>(i) + 1;
  return 0;
}

}  // namespace

ReasoningFeedback reasoning_feedback_from_string(const std::string& s) {
  if (s == "reward") return ReasoningFeedback::Reward;
  if (s == "first_error_index") return ReasoningFeedback::FirstErrorIndex;
  if (s == "first_error_correction") return ReasoningFeedback::FirstErrorCorrection;
  if (s == "demonstration") return ReasoningFeedback::Demonstration;
  throw std::invalid_argument("unknown reasoning feedback kind: " + s);
}

std::string to_string(ReasoningFeedback kind) {
  switch (kind) {
    case ReasoningFeedback::Reward: return "reward";
    case ReasoningFeedback::FirstErrorIndex: return "first_error_index";
    case ReasoningFeedback::FirstErrorCorrection: return "first_error_correction";
    case ReasoningFeedback::Demonstration: return "demonstration";
  }
  throw std::logic_error("unreachable");
}

EnvironmentModel make_reasoning(int length, int step_count,
                                const std::vector<int>& target,
                                ReasoningFeedback kind) {
  if (length < 1 || step_count < 1) throw std::invalid_argument("invalid reasoning sizes");
  double count = std::pow(static_cast<double>(step_count), length);
  if (count > 4096.0) throw std::invalid_argument("hypothesis space too large");
  if (static_cast<int>(target.size()) != length)
    throw std::invalid_argument("target length mismatch");
  for (int t : target)
    if (t < 0 || t >= step_count) throw std::invalid_argument("target step out of range");

  const int L = length;
  const int S = step_count;
  const std::size_t n = static_cast<std::size_t>(count);

  // all step sequences in lexicographic order; used as both actions and hypotheses
  std::vector<std::vector<int>> seqs(n, std::vector<int>(L, 0));
  for (std::size_t v = 0; v < n; ++v) {
    std::size_t x = v;
    for (int i = L - 1; i >= 0; --i) {
      seqs[v][i] = static_cast<int>(x % S);
      x /= S;
    }
  }

  EnvironmentModel env;
  env.name = "reasoning_" + to_string(kind);
  std::vector<std::string> texts(n);
  for (std::size_t v = 0; v < n; ++v) texts[v] = seq_text(seqs[v]);
  env.actions = ActionSpace(texts);
  env.hypotheses.items.reserve(n);
  for (std::size_t v = 0; v < n; ++v) env.hypotheses.items.push_back({texts[v], texts[v]});
  std::size_t truth = 0;
  for (int i = 0; i < L; ++i) truth = truth * S + static_cast<std::size_t>(target[i]);
  env.hypotheses.truth_index = truth;
  env.max_turns = 1 << 20;

  // actions and hypotheses share indexing, so the sparse reward is an id match
  env.reward = [](HypId h, ActionId a) { return h == a ? 1.0 : 0.0; };

  // observation renderings per kind
  auto emit = [seqs, kind, L](HypId h, ActionId a) -> std::string {
    const int fe = first_error(seqs[a], seqs[h]);
    switch (kind) {
      case ReasoningFeedback::Reward:
        return fe == 0 ? "reward 1" : "reward 0";
      case ReasoningFeedback::FirstErrorIndex:
        return fe == 0 ? "all steps correct"
                       : "first incorrect step: " + std::to_string(fe);
      case ReasoningFeedback::FirstErrorCorrection:
        return fe == 0 ? "all steps correct"
                       : "first incorrect step: " + std::to_string(fe) +
                             "; correct step: " + token(seqs[h][fe - 1]);
      case ReasoningFeedback::Demonstration:
        return "correct sequence: " + seq_text(seqs[h]);
    }
    throw std::logic_error("unreachable");
  };

  // parse an emitted observation back into its semantic content
  struct Parsed {
    int index = -1;        // 0 = all correct, >0 first error (index kinds)
    int reward = -1;       // reward kind
    std::string demo;      // demonstration kind
    std::string correction;  // correction kind token
  };
  auto parse = [kind](const std::string& obs) {
    Parsed p;
    switch (kind) {
      case ReasoningFeedback::Reward:
        p.reward = obs == "reward 1" ? 1 : 0;
        break;
      case ReasoningFeedback::FirstErrorIndex:
        p.index = obs == "all steps correct"
                      ? 0
                      : std::stoi(obs.substr(std::string("first incorrect step: ").size()));
        break;
      case ReasoningFeedback::FirstErrorCorrection: {
        if (obs == "all steps correct") {
          p.index = 0;
        } else {
          const auto sep = obs.find("; correct step: ");
          p.index = std::stoi(obs.substr(std::string("first incorrect step: ").size(),
                                         sep - std::string("first incorrect step: ").size()));
          p.correction = obs.substr(sep + std::string("; correct step: ").size());
        }
        break;
      }
      case ReasoningFeedback::Demonstration:
        p.demo = obs.substr(std::string("correct sequence: ").size());
        break;
    }
    return p;
  };

  // verifier loss per kind; 0 exactly when eta would emit the same observation
  auto loss_of = [seqs, kind, L, parse](ActionId a, const Parsed& p, HypId h) -> double {
    const int fe = first_error(seqs[a], seqs[h]);
    switch (kind) {
      case ReasoningFeedback::Reward:
        return (fe == 0 ? 1 : 0) == p.reward ? 0.0 : 1.0;
      case ReasoningFeedback::FirstErrorIndex: {
        const double d = static_cast<double>(p.index - fe);
        return d * d / (static_cast<double>(L) * L);
      }
      case ReasoningFeedback::FirstErrorCorrection: {
        if (p.index == 0) {
          // feedback asserts the whole action is correct
          int mism = 0;
          for (int i = 0; i < L; ++i) mism += seqs[a][i] != seqs[h][i];
          return static_cast<double>(mism) / L;
        }
        int bad = 0;
        for (int i = 0; i < p.index - 1; ++i) bad += seqs[h][i] != seqs[a][i];
        bad += token(seqs[h][p.index - 1]) != p.correction ? 1 : 0;
        return static_cast<double>(bad) / L;
      }
      case ReasoningFeedback::Demonstration:
        return seq_text(seqs[h]) == p.demo ? 0.0 : 1.0;
    }
    throw std::logic_error("unreachable");
  };

  env.loss = [parse, loss_of](ActionId a, const std::string& obs, HypId h) {
    return loss_of(a, parse(obs), h);
  };
  env.loss_row = [parse, loss_of, n](ActionId a, const std::string& obs) {
    const auto p = parse(obs);
    std::vector<double> row(n);
    for (HypId h = 0; h < n; ++h) row[h] = loss_of(a, p, h);
    return row;
  };

  const std::size_t n_act = env.actions.size();
  env.feedback = [emit, n_act](HypId h) {
    FeedbackDistribution fd(n_act);
    for (ActionId a = 0; a < n_act; ++a) fd.set(a, {{emit(h, a), 1.0}});
    return fd;
  };

  const HypId truth_id = env.hypotheses.truth_index;
  env.make_state = [](std::uint64_t seed) {
    auto s = std::make_unique<ReasoningState>();
    s->rng = Rng(seed);
    return s;
  };
  env.apply = [emit, truth_id](EpisodeState&, ActionId a) {
    StepOutcome out;
    out.observation = emit(truth_id, a);
    out.hidden_reward = a == truth_id ? 1.0 : 0.0;
    out.terminal = false;
    return out;
  };
  env.best_step_reward = [](const EpisodeState&) { return 1.0; };

  env.extract_reward = [kind, parse](ActionId a, const std::string& obs) {
    const auto p = parse(obs);
    switch (kind) {
      case ReasoningFeedback::Reward: return p.reward == 1 ? 1.0 : 0.0;
      case ReasoningFeedback::FirstErrorIndex:
      case ReasoningFeedback::FirstErrorCorrection: return p.index == 0 ? 1.0 : 0.0;
      case ReasoningFeedback::Demonstration: return 0.0;  // placeholder, replaced below
    }
    return 0.0;
  };
  if (kind == ReasoningFeedback::Demonstration) {
    auto texts_copy = texts;
    env.extract_reward = [texts_copy, parse](ActionId a, const std::string& obs) {
      return parse(obs).demo == texts_copy[a] ? 1.0 : 0.0;
    };
  }
  return env;
}

}  // namespace llf
