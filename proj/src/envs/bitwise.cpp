#include <memory>
#include <stdexcept>

#include "envs/factories.hpp"

namespace llf {
namespace {

// observation rendering: correctness pattern -> canonical text
std::string render_bit_feedback(const std::vector<int>& correct) {
  const int L = static_cast<int>(correct.size());
  bool all = true;
  for (int c : correct) all = all && (c == 1);
  if (all && L >= 2) return "all " + number_word(L) + " bits correct";
  std::string out;
  for (int i = 0; i < L; ++i) {
    if (i) out += "; ";
    out += "bit " + std::to_string(i + 1) + (correct[i] ? " correct" : " incorrect");
  }
  return out;
}

// inverse of the rendering; the loss works on the pattern
std::vector<int> parse_bit_feedback(const std::string& obs, int L) {
  std::vector<int> correct(L, 1);
  if (obs.rfind("all ", 0) == 0) return correct;
  std::size_t pos = 0;
  int idx = 0;
  while (idx < L) {
    std::size_t bit = obs.find("bit ", pos);
    if (bit == std::string::npos) break;
    std::size_t sp = obs.find(' ', bit + 4);
    int b = std::stoi(obs.substr(bit + 4, sp - bit - 4)) - 1;
    bool ok = obs.compare(sp + 1, 9, "incorrect") != 0;
    if (b >= 0 && b < L) correct[b] = ok ? 1 : 0;
    pos = sp + 1;
    ++idx;
  }
  return correct;
}

std::string bits_to_string(unsigned v, int L) {
  std::string s(L, '0');
  for (int i = 0; i < L; ++i)
    if (v & (1u << (L - 1 - i))) s[i] = '1';
  return s;
}

struct BitwiseState : EpisodeState {};

}  // namespace

EnvironmentModel make_bitwise(int length, const std::string& target, double flip_prob) {
  if (length < 1 || length > 12) throw std::invalid_argument("hypothesis space too large");
  if (static_cast<int>(target.size()) != length)
    throw std::invalid_argument("target length mismatch");
  for (char c : target)
    if (c != '0' && c != '1') throw std::invalid_argument("target must be a 0-1 string");
  if (flip_prob < 0.0 || flip_prob >= 0.5)
    throw std::invalid_argument("flip probability must lie in [0, 0.5)");

  const int L = length;
  const unsigned n = 1u << L;

  std::vector<std::string> strings(n);
  for (unsigned v = 0; v < n; ++v) strings[v] = bits_to_string(v, L);

  EnvironmentModel env;
  env.name = flip_prob > 0.0 ? "bitwise_noisy" : "bitwise";
  env.actions = ActionSpace(strings);
  env.hypotheses.items.reserve(n);
  for (unsigned v = 0; v < n; ++v) env.hypotheses.items.push_back({strings[v], strings[v]});
  unsigned target_v = 0;
  for (int i = 0; i < L; ++i)
    if (target[i] == '1') target_v |= 1u << (L - 1 - i);
  env.hypotheses.truth_index = target_v;
  env.max_turns = 1 << 20;  // bandit: no terminal condition of its own

  auto correctness = [L, strings](HypId h, ActionId a) {
    std::vector<int> c(L);
    for (int i = 0; i < L; ++i) c[i] = strings[h][i] == strings[a][i] ? 1 : 0;
    return c;
  };

  env.reward = [strings](HypId h, ActionId a) { return strings[h] == strings[a] ? 1.0 : 0.0; };

  env.loss = [L, correctness](ActionId a, const std::string& obs, HypId h) {
    const std::vector<int> got = parse_bit_feedback(obs, L);
    const std::vector<int> want = correctness(h, a);
    int mism = 0;
    for (int i = 0; i < L; ++i) mism += got[i] != want[i];
    return static_cast<double>(mism) / L;
  };

  const std::size_t n_hyp = env.hypotheses.size();
  env.loss_row = [L, n_hyp, strings, correctness](ActionId a, const std::string& obs) {
    const std::vector<int> got = parse_bit_feedback(obs, L);
    std::vector<double> row(n_hyp);
    for (HypId h = 0; h < n_hyp; ++h) {
      const std::vector<int> want = correctness(h, a);
      int mism = 0;
      for (int i = 0; i < L; ++i) mism += got[i] != want[i];
      row[h] = static_cast<double>(mism) / L;
    }
    return row;
  };

  const std::size_t n_act = env.actions.size();
  if (flip_prob == 0.0) {
    env.feedback = [n_act, correctness](HypId h) {
      FeedbackDistribution fd(n_act);
      for (ActionId a = 0; a < n_act; ++a)
        fd.set(a, {{render_bit_feedback(correctness(h, a)), 1.0}});
      return fd;
    };
  } else {
    // explicit product distribution over flip patterns
    env.feedback = [n_act, L, flip_prob, correctness](HypId h) {
      FeedbackDistribution fd(n_act);
      for (ActionId a = 0; a < n_act; ++a) {
        std::vector<WeightedObs> support;
        const std::vector<int> base = correctness(h, a);
        const unsigned patterns = 1u << L;
        for (unsigned m = 0; m < patterns; ++m) {
          std::vector<int> c = base;
          double p = 1.0;
          for (int i = 0; i < L; ++i) {
            if (m & (1u << i)) {
              c[i] ^= 1;
              p *= flip_prob;
            } else {
              p *= 1.0 - flip_prob;
            }
          }
          support.push_back({render_bit_feedback(c), p});
        }
        fd.set(a, std::move(support));
      }
      return fd;
    };
  }

  const HypId truth = env.hypotheses.truth_index;
  env.make_state = [](std::uint64_t seed) {
    auto s = std::make_unique<BitwiseState>();
    s->rng = Rng(seed);
    return s;
  };
  env.apply = [L, truth, flip_prob, correctness](EpisodeState& st, ActionId a) {
    StepOutcome out;
    std::vector<int> c = correctness(truth, a);
    if (flip_prob > 0.0)
      for (int i = 0; i < L; ++i)
        if (st.rng.bernoulli(flip_prob)) c[i] ^= 1;
    out.observation = render_bit_feedback(c);
    out.hidden_reward = (a == truth) ? 1.0 : 0.0;
    out.terminal = false;
    return out;
  };
  env.best_step_reward = [](const EpisodeState&) { return 1.0; };
  env.extract_reward = [L](ActionId, const std::string& obs) {
    const std::vector<int> got = parse_bit_feedback(obs, L);
    for (int c : got)
      if (!c) return 0.0;
    return 1.0;
  };
  return env;
}

}  // namespace llf
