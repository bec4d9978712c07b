#pragma once

#include "mew/rep.hpp"

namespace mew::detail {

/// Insertion DP conditioned on the closure; `model.sigma` fixes the
/// insertion order.
RankDistribution rim_poset_dp(Candidate c, const RimModel& model, const PosetClosure& closure,
                              const RepOptions& options);

/// RIM with rows 1/i over the given insertion order.
RimModel uniform_rim(const Ranking& sigma);

/// Insertion order for a uniform poset: identity or a topological order,
/// whichever has the smaller cover width.
Ranking uniform_insertion_order(const PosetClosure& closure);

std::vector<std::vector<double>> fixed_rank_counts(const PosetClosure& closure);

double binomial(std::size_t n, std::size_t k);

}  // namespace mew::detail
