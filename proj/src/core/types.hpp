#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace llf {

using ActionId = std::size_t;
using HypId = std::size_t;

// Finite ordered action set. Identity is the canonical text rendering.
class ActionSpace {
 public:
  ActionSpace() = default;
  explicit ActionSpace(std::vector<std::string> texts);

  std::size_t size() const { return texts_.size(); }
  const std::string& text(ActionId a) const { return texts_.at(a); }
  const std::vector<std::string>& texts() const { return texts_; }
  std::optional<ActionId> find(const std::string& text) const;

 private:
  std::vector<std::string> texts_;
};

struct Hypothesis {
  std::string id;    // stable identifier, unique within a space
  std::string text;  // canonical rendering; hypothesis identity
};

// Finite hypothesis space. truth_index is environment-side only; agents see
// the hypotheses through ProblemView which does not carry it.
struct HypothesisSpace {
  std::vector<Hypothesis> items;
  std::size_t truth_index = 0;

  std::size_t size() const { return items.size(); }
  const Hypothesis& truth() const { return items.at(truth_index); }
  void validate() const;
};

struct WeightedObs {
  std::string obs;
  double prob = 0.0;
};

// Explicit finite support per action. Slots left empty are "undefined at a".
class FeedbackDistribution {
 public:
  FeedbackDistribution() = default;
  explicit FeedbackDistribution(std::size_t n_actions) : per_action_(n_actions) {}

  void set(ActionId a, std::vector<WeightedObs> support);
  bool defined(ActionId a) const {
    return a < per_action_.size() && !per_action_[a].empty();
  }
  const std::vector<WeightedObs>& at(ActionId a) const;

 private:
  std::vector<std::vector<WeightedObs>> per_action_;
};

// eval(eta, a) in [0,1], deterministic
using RewardFn = std::function<double(HypId, ActionId)>;
// eval(a, obs, eta) in [0,1], deterministic
using LossFn = std::function<double(ActionId, const std::string&, HypId)>;

struct InteractionRecord {
  int step = 0;
  ActionId action = 0;
  std::string observation;
  double hidden_reward = 0.0;  // harness-side only
};

// What an agent is allowed to see of one step. Deliberately has no
// hidden_reward member; tests static_assert on this.
struct AgentStepView {
  int step = 0;
  ActionId action = 0;
  std::string observation;
};

using AgentView = std::vector<AgentStepView>;

class History {
 public:
  void push(ActionId action, std::string observation, double hidden_reward);
  const std::vector<InteractionRecord>& records() const { return records_; }
  const AgentView& agent_view() const { return view_; }
  std::size_t size() const { return records_.size(); }

 private:
  std::vector<InteractionRecord> records_;
  AgentView view_;
};

// E_{o ~ fd(a)}[ loss(a, o, eta) ]
double expected_verifier_loss(const FeedbackDistribution& fd, ActionId a,
                              HypId eta, const LossFn& loss);

// min_{eta' in H} E_{o ~ fd(a)}[ loss(a, o, eta') ]
double ell_min(const FeedbackDistribution& fd, ActionId a,
               const HypothesisSpace& space, const LossFn& loss);

// sum over records of loss(action, observation, eta); 0 on empty history
double empirical_loss(const AgentView& hist, HypId eta, const LossFn& loss);
double empirical_loss(const History& hist, HypId eta, const LossFn& loss);

}  // namespace llf
