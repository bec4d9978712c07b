#include "mew/ranking_models.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mew/error.hpp"

namespace mew {

namespace {

// 1 + phi + ... + phi^(n-1), summed term by term so phi = 1 stays exact.
double geometric_sum(double phi, std::size_t n) {
  double sum = 0.0;
  double term = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    sum += term;
    term *= phi;
  }
  return sum;
}

void check_sigma(const Ranking& sigma, std::size_t m) {
  if (sigma.size() != m) {
    throw Error(Errc::validation_error, "reference ranking has " + std::to_string(sigma.size()) +
                                            " items, expected " + std::to_string(m));
  }
}

void check_rows(const std::vector<std::vector<double>>& pi, std::size_t m, bool insertion,
                const char* name) {
  if (pi.size() != m) {
    throw Error(Errc::invalid_parameter, std::string(name) + " needs " + std::to_string(m) + " rows");
  }
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t width = insertion ? i + 1 : m - i;
    if (pi[i].size() != width) {
      throw Error(Errc::invalid_parameter, std::string(name) + " row " + std::to_string(i + 1) +
                                               " must have " + std::to_string(width) + " entries");
    }
    double sum = 0.0;
    for (double p : pi[i]) {
      if (!(p >= 0.0 && p <= 1.0)) {
        throw Error(Errc::invalid_parameter,
                    std::string(name) + " entries must lie in [0, 1]");
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > kRowSumTolerance) {
      throw Error(Errc::invalid_parameter, std::string(name) + " row " + std::to_string(i + 1) +
                                               " does not sum to 1");
    }
  }
}

}  // namespace

void validate(const MallowsModel& model, std::size_t m) {
  check_sigma(model.sigma, m);
  if (!(model.phi > 0.0 && model.phi <= 1.0)) {
    throw Error(Errc::invalid_parameter, "Mallows dispersion must lie in (0, 1]");
  }
}

void validate(const RimModel& model, std::size_t m) {
  check_sigma(model.sigma, m);
  check_rows(model.pi, m, true, "RIM insertion matrix");
}

void validate(const RsmModel& model, std::size_t m) {
  check_sigma(model.sigma, m);
  check_rows(model.pi, m, false, "RSM selection matrix");
}

void validate(const RankingModel& model, std::size_t m) {
  std::visit(
      [&](const auto& mod) {
        if constexpr (!std::is_same_v<std::decay_t<decltype(mod)>, UniformModel>) {
          validate(mod, m);
        }
      },
      model);
}

std::size_t kendall_tau(const Ranking& a, const Ranking& b) {
  if (a.size() != b.size()) throw Error(Errc::validation_error, "rankings differ in length");
  const auto rb = b.ranks();
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      if (rb[a[i]] > rb[a[j]]) ++d;
    }
  }
  return d;
}

double rim_probability(const Ranking& r, const RimModel& model) {
  const std::size_t m = model.sigma.size();
  const auto rank = r.ranks();
  double p = 1.0;
  for (std::size_t i = 0; i < m; ++i) {
    // Position of sigma[i] among sigma[0..i] in r's relative order.
    std::size_t position = 1;
    for (std::size_t k = 0; k < i; ++k) {
      if (rank[model.sigma[k]] < rank[model.sigma[i]]) ++position;
    }
    p *= model.pi[i][position - 1];
  }
  return p;
}

double rsm_probability(const Ranking& r, const RsmModel& model) {
  const std::size_t m = model.sigma.size();
  std::vector<Candidate> remaining(model.sigma.order().begin(), model.sigma.order().end());
  double p = 1.0;
  for (std::size_t i = 0; i < m; ++i) {
    auto it = std::find(remaining.begin(), remaining.end(), r[i]);
    const auto j = static_cast<std::size_t>(it - remaining.begin());
    p *= model.pi[i][j];
    remaining.erase(it);
  }
  return p;
}

double mallows_probability(const Ranking& r, const MallowsModel& model) {
  double z = 1.0;
  for (std::size_t i = 1; i <= model.sigma.size(); ++i) z *= geometric_sum(model.phi, i);
  return std::pow(model.phi, static_cast<double>(kendall_tau(model.sigma, r))) / z;
}

double probability(const Ranking& r, const RankingModel& model) {
  return std::visit(
      [&](const auto& mod) -> double {
        using T = std::decay_t<decltype(mod)>;
        if constexpr (std::is_same_v<T, UniformModel>) {
          double f = 1.0;
          for (std::size_t i = 2; i <= r.size(); ++i) f *= static_cast<double>(i);
          return 1.0 / f;
        } else if constexpr (std::is_same_v<T, MallowsModel>) {
          return mallows_probability(r, mod);
        } else if constexpr (std::is_same_v<T, RimModel>) {
          return rim_probability(r, mod);
        } else {
          return rsm_probability(r, mod);
        }
      },
      model);
}

RimModel mallows_to_rim(const MallowsModel& model) {
  const std::size_t m = model.sigma.size();
  RimModel out{model.sigma, std::vector<std::vector<double>>(m)};
  for (std::size_t i = 1; i <= m; ++i) {
    const double norm = geometric_sum(model.phi, i);
    auto& row = out.pi[i - 1];
    row.resize(i);
    for (std::size_t j = 1; j <= i; ++j) {
      row[j - 1] = std::pow(model.phi, static_cast<double>(i - j)) / norm;
    }
  }
  return out;
}

RsmModel mallows_to_rsm(const MallowsModel& model) {
  const std::size_t m = model.sigma.size();
  RsmModel out{model.sigma, std::vector<std::vector<double>>(m)};
  for (std::size_t i = 1; i <= m; ++i) {
    const std::size_t width = m - i + 1;
    const double norm = geometric_sum(model.phi, width);
    auto& row = out.pi[i - 1];
    row.resize(width);
    for (std::size_t j = 1; j <= width; ++j) {
      row[j - 1] = std::pow(model.phi, static_cast<double>(j - 1)) / norm;
    }
  }
  return out;
}

Ranking sample(const RimModel& model, Rng& rng) {
  std::vector<Candidate> partial;
  partial.reserve(model.sigma.size());
  for (std::size_t i = 0; i < model.sigma.size(); ++i) {
    const std::size_t j = rng.categorical(model.pi[i]);
    partial.insert(partial.begin() + static_cast<std::ptrdiff_t>(j), model.sigma[i]);
  }
  return Ranking(std::move(partial));
}

Ranking sample(const RsmModel& model, Rng& rng) {
  std::vector<Candidate> remaining(model.sigma.order().begin(), model.sigma.order().end());
  std::vector<Candidate> out;
  out.reserve(remaining.size());
  for (std::size_t i = 0; i < model.sigma.size(); ++i) {
    const std::size_t j = rng.categorical(model.pi[i]);
    out.push_back(remaining[j]);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(j));
  }
  return Ranking(std::move(out));
}

Ranking sample(const RimModel& model, std::uint64_t seed) {
  Rng rng(seed);
  return sample(model, rng);
}

Ranking sample(const RsmModel& model, std::uint64_t seed) {
  Rng rng(seed);
  return sample(model, rng);
}

}  // namespace mew
