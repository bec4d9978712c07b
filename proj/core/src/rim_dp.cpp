// Insertion dynamic programs conditioned on observations, and exact
// fixed-rank counting over order ideals.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <unordered_map>

#include "mew/error.hpp"
#include "rep_internal.hpp"

namespace mew {

namespace detail {

RimModel uniform_rim(const Ranking& sigma) {
  const std::size_t m = sigma.size();
  RimModel model{sigma, std::vector<std::vector<double>>(m)};
  for (std::size_t i = 0; i < m; ++i) model.pi[i].assign(i + 1, 1.0 / static_cast<double>(i + 1));
  return model;
}

Ranking uniform_insertion_order(const PosetClosure& closure) {
  Ranking identity = Ranking::identity(closure.size());
  Ranking topo(closure.topological_order());
  if (cover_width(topo.order(), closure) < cover_width(identity.order(), closure)) return topo;
  return identity;
}

RankDistribution rim_poset_dp(Candidate c, const RimModel& model, const PosetClosure& closure,
                              const RepOptions& options) {
  if (!closure.has_relations()) return rep_rim(c, model);
  const std::size_t m = model.sigma.size();
  const auto order = model.sigma.order();
  const auto schedule = tracking_schedule(order, closure);

  std::size_t width = 0;
  for (const auto& s : schedule) width = std::max(width, s.size());
  if (width > options.cover_width_cap) {
    throw Error(Errc::cover_width_exceeded, "cover width " + std::to_string(width) +
                                                " exceeds the cap of " +
                                                std::to_string(options.cover_width_cap));
  }
  const unsigned bits = static_cast<unsigned>(std::bit_width(m));
  if ((width + 1) * bits > 64) {
    throw Error(Errc::cover_width_exceeded,
                "cover width " + std::to_string(width) + " is too large for m = " +
                    std::to_string(m));
  }
  const std::uint64_t mask = (std::uint64_t{1} << bits) - 1;

  std::size_t c_step = 0;
  while (order[c_step] != c) ++c_step;

  // slots[i]: items whose positions are kept after step i.
  std::vector<std::vector<Candidate>> slots(m);
  for (std::size_t i = 0; i < m; ++i) {
    slots[i] = schedule[i];
    if (i >= c_step && std::find(slots[i].begin(), slots[i].end(), c) == slots[i].end()) {
      slots[i].push_back(c);
    }
  }

  std::unordered_map<std::uint64_t, double> cur{{0, 1.0}};
  std::unordered_map<std::uint64_t, double> next;
  std::vector<std::size_t> pos(width + 2);
  std::vector<std::size_t> ext(width + 2);
  std::vector<int> rel;
  std::vector<std::size_t> source;
  const std::vector<Candidate> none;

  for (std::size_t i = 0; i < m; ++i) {
    const Candidate x = order[i];
    const auto& prev = i == 0 ? none : slots[i - 1];
    const std::size_t sp = prev.size();

    rel.assign(sp, 0);
    for (std::size_t k = 0; k < sp; ++k) {
      if (closure.precedes(prev[k], x)) rel[k] = 1;
      else if (closure.precedes(x, prev[k])) rel[k] = -1;
    }
    // Where each kept slot comes from in prev + [x].
    source.clear();
    for (Candidate y : slots[i]) {
      if (y == x) {
        source.push_back(sp);
      } else {
        source.push_back(static_cast<std::size_t>(std::find(prev.begin(), prev.end(), y) -
                                                  prev.begin()));
      }
    }

    const auto& row = model.pi[i];
    next.clear();
    next.reserve(cur.size() * 2);
    for (const auto& [key, mass] : cur) {
      std::size_t lo = 1;
      std::size_t hi = i + 1;
      for (std::size_t k = 0; k < sp; ++k) {
        pos[k] = static_cast<std::size_t>((key >> (bits * k)) & mask);
        if (rel[k] > 0) lo = std::max(lo, pos[k] + 1);
        else if (rel[k] < 0) hi = std::min(hi, pos[k]);
      }
      for (std::size_t j = lo; j <= hi; ++j) {
        const double w = row[j - 1];
        if (w == 0.0) continue;
        for (std::size_t k = 0; k < sp; ++k) ext[k] = pos[k] + (pos[k] >= j ? 1 : 0);
        ext[sp] = j;
        std::uint64_t out = 0;
        for (std::size_t k = 0; k < source.size(); ++k) {
          out |= static_cast<std::uint64_t>(ext[source[k]]) << (bits * k);
        }
        next[out] += mass * w;
      }
    }
    std::swap(cur, next);
  }

  RankDistribution dist{std::vector<double>(m, 0.0)};
  double total = 0.0;
  for (const auto& [key, mass] : cur) {
    dist.probs[static_cast<std::size_t>(key & mask) - 1] += mass;
    total += mass;
  }
  if (!(total > 0.0)) {
    throw Error(Errc::zero_posterior, "the observation has zero probability under the model");
  }
  for (double& p : dist.probs) p /= total;
  return dist;
}

std::vector<std::vector<double>> fixed_rank_counts(const PosetClosure& closure) {
  const std::size_t m = closure.size();
  if (m > 24) throw Error(Errc::too_large, "order-ideal counting supports at most 24 candidates");
  const std::size_t full = (std::size_t{1} << m) - 1;
  std::vector<std::uint32_t> above(m, 0), below(m, 0);
  for (Candidate a = 0; a < m; ++a) {
    for (Candidate b = 0; b < m; ++b) {
      if (closure.precedes(a, b)) {
        above[b] |= std::uint32_t{1} << a;
        below[a] |= std::uint32_t{1} << b;
      }
    }
  }
  // prefix[S]: orderings of S as the top |S| ranks; suffix[T]: orderings of
  // T as the bottom |T| ranks.
  std::vector<double> prefix(full + 1, 0.0), suffix(full + 1, 0.0);
  prefix[0] = 1.0;
  suffix[0] = 1.0;
  for (std::size_t s = 0; s <= full; ++s) {
    if (prefix[s] != 0.0) {
      for (Candidate x = 0; x < m; ++x) {
        const std::size_t bit = std::size_t{1} << x;
        if (!(s & bit) && (above[x] & s) == above[x]) prefix[s | bit] += prefix[s];
      }
    }
    if (suffix[s] != 0.0) {
      for (Candidate x = 0; x < m; ++x) {
        const std::size_t bit = std::size_t{1} << x;
        if (!(s & bit) && (below[x] & s) == below[x]) suffix[s | bit] += suffix[s];
      }
    }
  }
  std::vector<std::vector<double>> counts(m, std::vector<double>(m, 0.0));
  for (std::size_t s = 0; s <= full; ++s) {
    if (prefix[s] == 0.0) continue;
    const auto j = static_cast<std::size_t>(std::popcount(s));
    for (Candidate c = 0; c < m; ++c) {
      const std::size_t bit = std::size_t{1} << c;
      if ((s & bit) || (above[c] & s) != above[c]) continue;
      counts[c][j] += prefix[s] * suffix[full & ~(s | bit)];
    }
  }
  return counts;
}

}  // namespace detail

RankDistribution rep_rim_poset(Candidate c, const RimModel& model, const PartialOrder& p,
                               const RepOptions& options) {
  PosetClosure closure(p, model.sigma.size());
  return detail::rim_poset_dp(c, model, closure, options);
}

RankDistribution rep_uniform_poset(Candidate c, const PartialOrder& p, std::size_t m,
                                   const RepOptions& options) {
  PosetClosure closure(p, m);
  if (!closure.has_relations()) return rep_uniform(m);
  return detail::rim_poset_dp(c, detail::uniform_rim(detail::uniform_insertion_order(closure)),
                              closure, options);
}

std::vector<std::vector<double>> fixed_rank_counts(const PartialOrder& p, std::size_t m) {
  return detail::fixed_rank_counts(PosetClosure(p, m));
}

RankDistribution rep_rim_truncated(Candidate c, const RimModel& model,
                                   const TruncatedRanking& tr) {
  const std::size_t m = model.sigma.size();
  // 0 = middle, 1 = top, 2 = bottom; index = place inside top/bottom.
  std::vector<int> zone(m, 0);
  std::vector<std::size_t> index(m, 0);
  for (std::size_t k = 0; k < tr.top.size(); ++k) {
    zone[tr.top[k]] = 1;
    index[tr.top[k]] = k;
  }
  for (std::size_t k = 0; k < tr.bottom.size(); ++k) {
    zone[tr.bottom[k]] = 2;
    index[tr.bottom[k]] = k;
  }
  std::vector<bool> inserted(m, false);
  std::size_t n_top = 0, n_mid = 0;

  // before: mass while c is not yet placed; q[k - 1]: mass with c at k.
  double before = 1.0;
  std::vector<double> q(m, 0.0), nq(m, 0.0);
  bool placed = false;

  for (std::size_t i = 0; i < m; ++i) {
    const Candidate x = model.sigma[i];
    const auto& row = model.pi[i];
    std::size_t lo = 0, hi = 0;
    if (zone[x] == 1) {
      std::size_t ahead = 0;
      for (std::size_t k = 0; k < index[x]; ++k) ahead += inserted[tr.top[k]] ? 1 : 0;
      lo = hi = 1 + ahead;
    } else if (zone[x] == 2) {
      std::size_t ahead = 0;
      for (std::size_t k = 0; k < index[x]; ++k) ahead += inserted[tr.bottom[k]] ? 1 : 0;
      lo = hi = n_top + n_mid + 1 + ahead;
    } else {
      lo = n_top + 1;
      hi = n_top + n_mid + 1;
    }

    if (x == c) {
      for (std::size_t j = lo; j <= hi; ++j) q[j - 1] = before * row[j - 1];
      placed = true;
    } else if (!placed) {
      double w = 0.0;
      for (std::size_t j = lo; j <= hi; ++j) w += row[j - 1];
      before *= w;
    } else {
      std::fill(nq.begin(), nq.end(), 0.0);
      for (std::size_t k = 1; k <= i; ++k) {
        if (q[k - 1] == 0.0) continue;
        for (std::size_t j = lo; j <= hi; ++j) {
          nq[(j <= k ? k + 1 : k) - 1] += q[k - 1] * row[j - 1];
        }
      }
      std::swap(q, nq);
    }
    inserted[x] = true;
    if (zone[x] == 1) ++n_top;
    else if (zone[x] == 0) ++n_mid;
  }

  double total = 0.0;
  for (double v : q) total += v;
  if (!(total > 0.0)) {
    throw Error(Errc::zero_posterior, "the truncated ranking has zero probability under the model");
  }
  for (double& v : q) v /= total;
  return RankDistribution{std::move(q)};
}

}  // namespace mew
