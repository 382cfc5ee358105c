#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "envs/environment.hpp"

namespace llf {

// A finite LLF instance reduced to what the complexity quantities need.
// Environments produce one; tests also build synthetic ones directly.
struct FiniteInstance {
  std::size_t n_actions = 0;
  std::size_t n_hyps = 0;
  std::vector<FeedbackDistribution> feedback;  // indexed by hypothesis
  LossFn loss;
  RewardFn reward;

  static FiniteInstance from_env(const EnvironmentModel& env);
};

// Pairwise quantities of the dependence definitions, precomputed:
//   cost[p][a] = E_{o~f_{eta'}(a)}[ loss(a,o,eta) ] - ell_min_{eta'}(a)
//   gap[p][a]  = | r_eta(a) - r_eta'(a) |
// over ordered pairs p = (eta, eta'), eta != eta'.
struct DependenceTables {
  std::size_t n_actions = 0;
  std::size_t n_hyps = 0;
  std::vector<std::pair<HypId, HypId>> pairs;
  std::vector<std::vector<double>> cost;
  std::vector<std::vector<double>> gap;

  static DependenceTables transfer(const FiniteInstance& inst, double loss_scale = 1.0);
  static DependenceTables eluder(const FiniteInstance& inst);
};

// Def.-style dependence check with separate thresholds: every pair whose
// accumulated cost over `preds` is <= sum_level^2 must have gap <= gap_level.
bool dependent_on(const DependenceTables& t, ActionId a,
                  std::span<const ActionId> preds, double sum_level,
                  double gap_level);

inline bool transfer_dependent(const DependenceTables& t, ActionId a,
                               std::span<const ActionId> preds, double eps) {
  return dependent_on(t, a, preds, eps, eps);
}

struct DimensionReport {
  double epsilon = 0.0;
  int dimension = 0;
  std::vector<ActionId> witness;
  double epsilon_prime_used = 0.0;
};

enum class QuantifierPolicy {
  ExactEpsilon,   // evaluate independence at eps itself (the level the paper's
                  // proofs and worked values use)
  ThresholdGrid,  // max over the finite grid of status-change levels >= eps
};

struct DimensionOptions {
  std::size_t max_actions = 64;
  std::size_t max_hyps = 256;
  std::size_t node_budget = 50000000;
  QuantifierPolicy policy = QuantifierPolicy::ExactEpsilon;
};

// Longest sequence in which every element is independent of its predecessors,
// by exhaustive depth-first search (exact; throws when the instance exceeds
// the budget or the dimension is unbounded).
DimensionReport longest_independent_sequence(const DependenceTables& t, double eps,
                                             const DimensionOptions& opts = {});

DimensionReport transfer_eluder_dim(const FiniteInstance& inst, double eps,
                                    const DimensionOptions& opts = {});
DimensionReport eluder_dim(const FiniteInstance& inst, double eps,
                           const DimensionOptions& opts = {});

// re-checks the reported witness element by element; used by tests
bool validate_witness(const DependenceTables& t, const DimensionReport& report);

}  // namespace llf
