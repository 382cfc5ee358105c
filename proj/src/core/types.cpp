#include "core/types.hpp"

#include <cmath>
#include <unordered_set>

namespace llf {

ActionSpace::ActionSpace(std::vector<std::string> texts) : texts_(std::move(texts)) {
  if (texts_.empty()) throw std::invalid_argument("action space must be nonempty");
  std::unordered_set<std::string> seen;
  for (const auto& t : texts_) {
    if (!seen.insert(t).second)
      throw std::invalid_argument("duplicate canonical action rendering: " + t);
  }
}

std::optional<ActionId> ActionSpace::find(const std::string& text) const {
  for (ActionId i = 0; i < texts_.size(); ++i)
    if (texts_[i] == text) return i;
  return std::nullopt;
}

void HypothesisSpace::validate() const {
  if (items.empty()) throw std::invalid_argument("hypothesis space must be nonempty");
  if (truth_index >= items.size())
    throw std::invalid_argument("truth index out of range");
  std::unordered_set<std::string> ids;
  for (const auto& h : items)
    if (!ids.insert(h.id).second)
      throw std::invalid_argument("duplicate hypothesis id: " + h.id);
}

void FeedbackDistribution::set(ActionId a, std::vector<WeightedObs> support) {
  if (a >= per_action_.size()) per_action_.resize(a + 1);
  double total = 0.0;
  for (const auto& w : support) {
    if (w.prob < 0.0) throw std::invalid_argument("negative probability in feedback support");
    total += w.prob;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument("feedback support probabilities must sum to 1");
  per_action_[a] = std::move(support);
}

const std::vector<WeightedObs>& FeedbackDistribution::at(ActionId a) const {
  if (!defined(a)) throw std::out_of_range("action not in support");
  return per_action_[a];
}

void History::push(ActionId action, std::string observation, double hidden_reward) {
  const int step = static_cast<int>(records_.size());
  records_.push_back({step, action, observation, hidden_reward});
  view_.push_back({step, action, std::move(observation)});
}

double expected_verifier_loss(const FeedbackDistribution& fd, ActionId a,
                              HypId eta, const LossFn& loss) {
  double acc = 0.0;
  for (const auto& w : fd.at(a)) acc += w.prob * loss(a, w.obs, eta);
  return acc;
}

double ell_min(const FeedbackDistribution& fd, ActionId a,
               const HypothesisSpace& space, const LossFn& loss) {
  if (space.size() == 0) throw std::invalid_argument("ell_min over empty hypothesis space");
  double best = 1.0;
  for (HypId h = 0; h < space.size(); ++h)
    best = std::min(best, expected_verifier_loss(fd, a, h, loss));
  return best;
}

double empirical_loss(const AgentView& hist, HypId eta, const LossFn& loss) {
  double acc = 0.0;
  for (const auto& r : hist) acc += loss(r.action, r.observation, eta);
  return acc;
}

double empirical_loss(const History& hist, HypId eta, const LossFn& loss) {
  return empirical_loss(hist.agent_view(), eta, loss);
}

}  // namespace llf
