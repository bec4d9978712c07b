#pragma once

// Generative ranking models: the uniform distribution, Mallows, the Repeated
// Insertion Model (RIM) and the ranking version of the Repeated Selection
// Model (rRSM).

#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

#include "mew/preferences.hpp"
#include "mew/random.hpp"

namespace mew {

/// Every ranking equally likely.
struct UniformModel {
  friend bool operator==(const UniformModel&, const UniformModel&) = default;
};

/// Pr(r) proportional to phi^KendallTau(sigma, r), 0 < phi <= 1.
struct MallowsModel {
  Ranking sigma;
  double phi = 1.0;
  friend bool operator==(const MallowsModel&, const MallowsModel&) = default;
};

/// Inserts sigma[i] at position j of the partial ranking with probability
/// pi[i][j] (both 0-based here); row i has i + 1 entries.
struct RimModel {
  Ranking sigma;
  std::vector<std::vector<double>> pi;

  /// 1-based accessor: probability of inserting the i-th item at position j.
  double insertion(std::size_t i, std::size_t j) const { return pi[i - 1][j - 1]; }
  friend bool operator==(const RimModel&, const RimModel&) = default;
};

/// At step i selects the j-th remaining reference item with probability
/// pi[i][j] (0-based); row i has m - i entries.
struct RsmModel {
  Ranking sigma;
  std::vector<std::vector<double>> pi;

  double selection(std::size_t i, std::size_t j) const { return pi[i - 1][j - 1]; }
  friend bool operator==(const RsmModel&, const RsmModel&) = default;
};

using RankingModel = std::variant<UniformModel, MallowsModel, RimModel, RsmModel>;

/// Row sums must be 1 within this tolerance.
inline constexpr double kRowSumTolerance = 1e-12;

/// Throws invalid_parameter (or validation_error for a bad reference
/// ranking) when a model's invariants fail over m candidates.
void validate(const MallowsModel& model, std::size_t m);
void validate(const RimModel& model, std::size_t m);
void validate(const RsmModel& model, std::size_t m);
void validate(const RankingModel& model, std::size_t m);

/// Number of candidate pairs ordered differently by a and b.
std::size_t kendall_tau(const Ranking& a, const Ranking& b);

double rim_probability(const Ranking& r, const RimModel& model);
double rsm_probability(const Ranking& r, const RsmModel& model);
/// phi^D / Z with Z = prod_i (1 + phi + ... + phi^(i-1)).
double mallows_probability(const Ranking& r, const MallowsModel& model);
double probability(const Ranking& r, const RankingModel& model);

/// pi(i, j) = phi^(i-j) / (1 + phi + ... + phi^(i-1)).
RimModel mallows_to_rim(const MallowsModel& model);
/// pi(i, j) = phi^(j-1) / (1 + phi + ... + phi^(m-i)).
RsmModel mallows_to_rsm(const MallowsModel& model);

Ranking sample(const RimModel& model, Rng& rng);
Ranking sample(const RsmModel& model, Rng& rng);
Ranking sample(const RimModel& model, std::uint64_t seed);
Ranking sample(const RsmModel& model, std::uint64_t seed);

}  // namespace mew
