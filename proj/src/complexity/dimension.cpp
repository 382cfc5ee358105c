#include "complexity/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace llf {

namespace {
constexpr double kTol = 1e-9;
}

FiniteInstance FiniteInstance::from_env(const EnvironmentModel& env) {
  FiniteInstance inst;
  inst.n_actions = env.actions.size();
  inst.n_hyps = env.hypotheses.size();
  inst.feedback.reserve(inst.n_hyps);
  for (HypId h = 0; h < inst.n_hyps; ++h) inst.feedback.push_back(env.feedback(h));
  inst.loss = env.loss;
  inst.reward = env.reward;
  return inst;
}

DependenceTables DependenceTables::transfer(const FiniteInstance& inst, double loss_scale) {
  DependenceTables t;
  t.n_actions = inst.n_actions;
  t.n_hyps = inst.n_hyps;

  // expected loss of every hypothesis under every emitter, per action
  std::vector<std::vector<std::vector<double>>> exp_loss(inst.n_hyps);
  for (HypId em = 0; em < inst.n_hyps; ++em) {
    exp_loss[em].assign(inst.n_hyps, std::vector<double>(inst.n_actions, 0.0));
    for (ActionId a = 0; a < inst.n_actions; ++a) {
      for (const auto& w : inst.feedback[em].at(a)) {
        for (HypId h = 0; h < inst.n_hyps; ++h)
          exp_loss[em][h][a] += w.prob * inst.loss(a, w.obs, h);
      }
    }
  }
  std::vector<std::vector<double>> lmin(inst.n_hyps,
                                        std::vector<double>(inst.n_actions, 1.0));
  for (HypId em = 0; em < inst.n_hyps; ++em)
    for (ActionId a = 0; a < inst.n_actions; ++a)
      for (HypId h = 0; h < inst.n_hyps; ++h)
        lmin[em][a] = std::min(lmin[em][a], exp_loss[em][h][a]);

  for (HypId i = 0; i < inst.n_hyps; ++i)
    for (HypId j = 0; j < inst.n_hyps; ++j) {
      if (i == j) continue;
      t.pairs.emplace_back(i, j);
      std::vector<double> c(inst.n_actions), g(inst.n_actions);
      for (ActionId a = 0; a < inst.n_actions; ++a) {
        c[a] = std::max(0.0, (exp_loss[j][i][a] - lmin[j][a]) * loss_scale);
        g[a] = std::abs(inst.reward(i, a) - inst.reward(j, a));
      }
      t.cost.push_back(std::move(c));
      t.gap.push_back(std::move(g));
    }
  return t;
}

DependenceTables DependenceTables::eluder(const FiniteInstance& inst) {
  DependenceTables t;
  t.n_actions = inst.n_actions;
  t.n_hyps = inst.n_hyps;
  for (HypId i = 0; i < inst.n_hyps; ++i)
    for (HypId j = 0; j < inst.n_hyps; ++j) {
      if (i == j) continue;
      t.pairs.emplace_back(i, j);
      std::vector<double> c(inst.n_actions), g(inst.n_actions);
      for (ActionId a = 0; a < inst.n_actions; ++a) {
        g[a] = std::abs(inst.reward(i, a) - inst.reward(j, a));
        c[a] = g[a] * g[a];
      }
      t.cost.push_back(std::move(c));
      t.gap.push_back(std::move(g));
    }
  return t;
}

bool dependent_on(const DependenceTables& t, ActionId a,
                  std::span<const ActionId> preds, double sum_level,
                  double gap_level) {
  const double budget = sum_level * sum_level + kTol;
  for (std::size_t p = 0; p < t.pairs.size(); ++p) {
    if (t.gap[p][a] <= gap_level + kTol) continue;
    double s = 0.0;
    for (ActionId q : preds) {
      s += t.cost[p][q];
      if (s > budget) break;
    }
    if (s <= budget) return false;  // witness pair: close on preds, far at a
  }
  return true;
}

namespace {

// Exhaustive longest-independent-sequence search at one (sum, gap) level.
//
// Dependence is monotone in the predecessor multiset, so candidate sets only
// shrink along a branch. Nodes are memoized by the predecessor multiset
// (element order inside a prefix never affects what can still follow).
class Searcher {
 public:
  Searcher(const DependenceTables& t, double sum_level, double gap_level,
           std::size_t node_budget)
      : t_(t),
        budget_(sum_level * sum_level + kTol),
        gap_level_(gap_level),
        node_budget_(node_budget),
        n_pairs_(t.pairs.size()) {}

  // throws on unbounded instances
  std::pair<int, std::vector<ActionId>> run() {
    witnesses_.assign(t_.n_actions, {});
    for (std::size_t p = 0; p < n_pairs_; ++p)
      for (ActionId a = 0; a < t_.n_actions; ++a)
        if (t_.gap[p][a] > gap_level_ + kTol) {
          witnesses_[a].push_back(p);
          if (t_.cost[p][a] <= kTol)
            throw std::runtime_error(
                "dimension unbounded: an action stays independent under repetition");
        }
    sums_.assign(n_pairs_, 0.0);
    best_ = 0;
    best_seq_.clear();
    seq_.clear();
    nodes_ = 0;
    dfs();
    return {best_, best_seq_};
  }

  const std::set<double>& seen_sums() const { return seen_sums_; }

 private:
  bool independent(ActionId a) const {
    for (std::size_t p : witnesses_[a])
      if (sums_[p] <= budget_) return true;
    return false;
  }

  void dfs() {
    if (++nodes_ > node_budget_)
      throw std::runtime_error("instance too large for exact search");
    std::vector<ActionId> cands;
    for (ActionId a = 0; a < t_.n_actions; ++a)
      if (independent(a)) cands.push_back(a);

    if (static_cast<int>(seq_.size()) > best_) {
      best_ = static_cast<int>(seq_.size());
      best_seq_ = seq_;
    }
    if (cands.empty()) return;
    const int optimistic = static_cast<int>(seq_.size() + cands.size());
    if (optimistic <= best_) return;

    // When no candidate can repeat, a full-length chain must end with an
    // element independent of all the others; if none qualifies the subtree
    // cannot beat the incumbent by more than the slack.
    if (optimistic == best_ + 1) {
      bool any_repeat = false;
      for (ActionId a : cands) {
        for (std::size_t p : witnesses_[a])
          if (sums_[p] + t_.cost[p][a] <= budget_) {
            any_repeat = true;
            break;
          }
        if (any_repeat) break;
      }
      if (!any_repeat) {
        std::vector<double> all(n_pairs_, 0.0);
        for (ActionId b : cands)
          for (std::size_t p = 0; p < n_pairs_; ++p) all[p] += t_.cost[p][b];
        bool closing = false;
        for (ActionId a : cands) {
          for (std::size_t p : witnesses_[a]) {
            if (sums_[p] + all[p] - t_.cost[p][a] <= budget_) {
              closing = true;
              break;
            }
          }
          if (closing) break;
        }
        if (!closing) return;
      }
    }

    auto key = seq_;
    std::sort(key.begin(), key.end());
    std::string packed(key.size() * sizeof(ActionId), '\0');
    std::memcpy(packed.data(), key.data(), packed.size());
    if (!visited_.insert(std::move(packed)).second) return;

    for (ActionId a : cands) {
      seq_.push_back(a);
      for (std::size_t p = 0; p < n_pairs_; ++p) sums_[p] += t_.cost[p][a];
      if (collect_sums_)
        for (std::size_t p = 0; p < n_pairs_; ++p)
          if (sums_[p] > kTol) seen_sums_.insert(sums_[p]);
      dfs();
      for (std::size_t p = 0; p < n_pairs_; ++p) sums_[p] -= t_.cost[p][a];
      seq_.pop_back();
    }
  }

 public:
  bool collect_sums_ = false;

 private:
  const DependenceTables& t_;
  double budget_;
  double gap_level_;
  std::size_t node_budget_;
  std::size_t n_pairs_ = 0;
  std::vector<std::vector<std::size_t>> witnesses_;
  std::vector<double> sums_;
  std::vector<ActionId> seq_;
  std::vector<ActionId> best_seq_;
  int best_ = 0;
  std::size_t nodes_ = 0;
  std::unordered_set<std::string> visited_;
  std::set<double> seen_sums_;
};

}  // namespace

DimensionReport longest_independent_sequence(const DependenceTables& t, double eps,
                                             const DimensionOptions& opts) {
  if (eps <= 0.0) throw std::invalid_argument("epsilon must be positive");
  if (t.n_actions > opts.max_actions || t.n_hyps > opts.max_hyps)
    throw std::runtime_error("instance too large for exact search");

  DimensionReport report;
  report.epsilon = eps;

  auto run_level = [&](double level, bool collect, std::set<double>* sums_out) {
    Searcher s(t, level, level, opts.node_budget);
    s.collect_sums_ = collect;
    auto [d, seq] = s.run();
    if (collect && sums_out) *sums_out = s.seen_sums();
    return std::make_pair(d, seq);
  };

  if (opts.policy == QuantifierPolicy::ExactEpsilon) {
    auto [d, seq] = run_level(eps, false, nullptr);
    report.dimension = d;
    report.witness = std::move(seq);
    report.epsilon_prime_used = eps;
    return report;
  }

  // Threshold grid: independence status changes only where a gap crosses the
  // level or an accumulated cost crosses its square. Levels are capped at 1,
  // the reward range.
  std::set<double> levels{eps};
  for (std::size_t p = 0; p < t.pairs.size(); ++p)
    for (ActionId a = 0; a < t.n_actions; ++a) {
      const double g = t.gap[p][a];
      if (g >= eps && g <= 1.0) levels.insert(g);
      const double c = t.cost[p][a];
      if (c > kTol) {
        const double r = std::sqrt(c);
        if (r >= eps && r <= 1.0) levels.insert(r);
      }
    }
  std::set<double> seen;
  {
    std::set<double> collected;
    run_level(eps, true, &collected);
    for (double s : collected) {
      const double r = std::sqrt(s);
      if (r >= eps && r <= 1.0) levels.insert(r);
    }
  }
  report.dimension = -1;
  for (double level : levels) {
    auto [d, seq] = run_level(level, false, nullptr);
    if (d > report.dimension) {
      report.dimension = d;
      report.witness = seq;
      report.epsilon_prime_used = level;
    }
  }
  return report;
}

DimensionReport transfer_eluder_dim(const FiniteInstance& inst, double eps,
                                    const DimensionOptions& opts) {
  return longest_independent_sequence(DependenceTables::transfer(inst), eps, opts);
}

DimensionReport eluder_dim(const FiniteInstance& inst, double eps,
                           const DimensionOptions& opts) {
  return longest_independent_sequence(DependenceTables::eluder(inst), eps, opts);
}

bool validate_witness(const DependenceTables& t, const DimensionReport& report) {
  if (static_cast<int>(report.witness.size()) != report.dimension) return false;
  for (std::size_t k = 0; k < report.witness.size(); ++k) {
    std::span<const ActionId> preds(report.witness.data(), k);
    if (dependent_on(t, report.witness[k], preds, report.epsilon_prime_used,
                     report.epsilon_prime_used))
      return false;
  }
  return true;
}

}  // namespace llf
