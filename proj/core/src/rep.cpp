#include "mew/rep.hpp"

#include <algorithm>
#include <span>
#include <string>

#include "mew/error.hpp"
#include "rep_internal.hpp"

namespace mew {

namespace detail {

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) {
    r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return r;
}

}  // namespace detail

namespace {

void check_candidate(Candidate c, std::size_t m) {
  if (c >= m) {
    throw Error(Errc::unknown_candidate, "candidate index " + std::to_string(c) +
                                             " outside 0.." + std::to_string(m - 1));
  }
}

// Listed items must be in range and appear once across all the lists.
void mark_listed(std::span<const Candidate> list, std::vector<bool>& seen) {
  for (Candidate x : list) {
    check_candidate(x, seen.size());
    if (seen[x]) throw Error(Errc::overlap_violation, "candidate listed twice");
    seen[x] = true;
  }
}

void check_partition(const PartitionedPreference& pp, std::size_t m) {
  std::vector<bool> seen(m, false);
  for (const auto& b : pp.buckets) mark_listed(b, seen);
  mark_listed(pp.missing, seen);
}

RankDistribution normalized(std::vector<double> weights) {
  double total = 0.0;
  for (double w : weights) total += w;
  for (double& w : weights) w /= total;
  return RankDistribution{std::move(weights)};
}

RankDistribution point_mass(std::size_t m, std::size_t rank) {
  RankDistribution d{std::vector<double>(m, 0.0)};
  d.probs[rank - 1] = 1.0;
  return d;
}

// Bucket holding c, with the sizes of the earlier buckets and of c's own.
struct BucketPosition {
  bool found = false;
  std::size_t before = 0;
  std::size_t own = 0;
  std::size_t listed = 0;  // candidates in all buckets
  std::size_t index = 0;
};

BucketPosition locate(Candidate c, const PartitionedPreference& pref) {
  BucketPosition out;
  for (std::size_t b = 0; b < pref.buckets.size(); ++b) {
    const auto& bucket = pref.buckets[b];
    if (!out.found && std::find(bucket.begin(), bucket.end(), c) != bucket.end()) {
      out.found = true;
      out.own = bucket.size();
      out.before = out.listed;
      out.index = b;
    }
    out.listed += bucket.size();
  }
  return out;
}

}  // namespace

double RankDistribution::expected_score(const ScoringRule& rule) const {
  if (rule.size() != probs.size()) {
    throw Error(Errc::invalid_rule, "rule has " + std::to_string(rule.size()) +
                                        " ranks, distribution has " +
                                        std::to_string(probs.size()));
  }
  double e = 0.0;
  const auto s = rule.scores();
  for (std::size_t j = 0; j < probs.size(); ++j) e += probs[j] * s[j];
  return e;
}

void validate(const Voter& voter, const CandidateSet& candidates) {
  if (voter.weight == 0) throw Error(Errc::validation_error, "voter weight must be positive");
  validate(voter.model, candidates.size());
  if (voter.observation) validate(*voter.observation, candidates);
}

RankDistribution rep_uniform(std::size_t m) {
  return RankDistribution{std::vector<double>(m, 1.0 / static_cast<double>(m))};
}

RankDistribution rep_fully_partitioned(Candidate c, const PartitionedPreference& fp,
                                       std::size_t m) {
  check_candidate(c, m);
  check_partition(fp, m);
  const auto where = locate(c, fp);
  if (!where.found || where.listed != m || !fp.missing.empty()) {
    throw Error(Errc::validation_error, "expected a fully partitioned preference containing c");
  }
  RankDistribution d{std::vector<double>(m, 0.0)};
  for (std::size_t j = where.before + 1; j <= where.before + where.own; ++j) {
    d.probs[j - 1] = 1.0 / static_cast<double>(where.own);
  }
  return d;
}

RankDistribution rep_partial_chain(Candidate c, const PartialChain& pc, std::size_t m) {
  check_candidate(c, m);
  std::vector<bool> seen(m, false);
  mark_listed(pc.chain, seen);
  auto it = std::find(pc.chain.begin(), pc.chain.end(), c);
  if (it == pc.chain.end()) return rep_uniform(m);
  const auto left = static_cast<std::size_t>(it - pc.chain.begin());
  const std::size_t right = pc.chain.size() - 1 - left;
  std::vector<double> w(m, 0.0);
  for (std::size_t j = 1; j <= m; ++j) {
    w[j - 1] = detail::binomial(j - 1, left) * detail::binomial(m - j, right);
  }
  return normalized(std::move(w));
}

RankDistribution rep_partially_partitioned(Candidate c, const PartitionedPreference& pp,
                                           std::size_t m) {
  check_candidate(c, m);
  check_partition(pp, m);
  const auto where = locate(c, pp);
  if (!where.found) return rep_uniform(m);
  const std::size_t kl = where.before;
  const std::size_t kc = where.own;
  const std::size_t kr = where.listed - kl - kc;
  std::vector<double> w(m, 0.0);
  for (std::size_t j = 1; j <= m; ++j) {
    double sum = 0.0;
    for (std::size_t x = 0; x < kc; ++x) {
      sum += detail::binomial(j - 1, kl + x) * detail::binomial(m - j, kr + kc - 1 - x);
    }
    w[j - 1] = sum;
  }
  return normalized(std::move(w));
}

RankDistribution rep_truncated(Candidate c, const TruncatedRanking& tr, std::size_t m) {
  std::vector<bool> seen(m, false);
  mark_listed(tr.top, seen);
  mark_listed(tr.bottom, seen);
  return rep_fully_partitioned(c, to_partitioned(tr, m), m);
}

RankDistribution rep_rim(Candidate c, const RimModel& model) {
  const std::size_t m = model.sigma.size();
  check_candidate(c, m);
  // before: mass of the empty state; q[k - 1]: mass of {c at k}.
  double before = 1.0;
  std::vector<double> q(m, 0.0), nq(m, 0.0);
  bool placed = false;
  for (std::size_t i = 1; i <= m; ++i) {
    const auto& row = model.pi[i - 1];
    if (model.sigma[i - 1] == c) {
      for (std::size_t j = 1; j <= i; ++j) q[j - 1] = before * row[j - 1];
      placed = true;
      continue;
    }
    if (!placed) continue;
    std::fill(nq.begin(), nq.end(), 0.0);
    for (std::size_t k = 1; k < i; ++k) {
      if (q[k - 1] == 0.0) continue;
      for (std::size_t j = 1; j <= i; ++j) {
        nq[(j <= k ? k + 1 : k) - 1] += q[k - 1] * row[j - 1];
      }
    }
    std::swap(q, nq);
  }
  return RankDistribution{std::move(q)};
}

namespace {

// Shared pass of the selection DP: out[k - 1] = Pr(c at k) for k <= last.
std::vector<double> rsm_pass(Candidate c, const RsmModel& model, std::size_t last) {
  const std::size_t m = model.sigma.size();
  check_candidate(c, m);
  const std::size_t alpha0 = model.sigma.rank_of(c) - 1;
  const std::size_t others = m - 1;
  // q[alpha]: mass of state (alpha, beta) with beta = remaining - alpha.
  std::vector<double> q(alpha0 + 1, 0.0), nq(alpha0 + 1, 0.0);
  q[alpha0] = 1.0;
  std::vector<double> out(m, 0.0);
  for (std::size_t i = 1; i <= last; ++i) {
    const auto& row = model.pi[i - 1];
    const std::size_t remaining = others - (i - 1);
    double hit = 0.0;
    for (std::size_t a = 0; a <= alpha0; ++a) {
      if (q[a] != 0.0) hit += q[a] * row[a];
    }
    out[i - 1] = hit;
    if (i == last) break;
    std::fill(nq.begin(), nq.end(), 0.0);
    for (std::size_t a = 0; a <= alpha0; ++a) {
      if (q[a] == 0.0 || a > remaining) continue;
      const std::size_t b = remaining - a;
      if (a > 0) {
        double w = 0.0;
        for (std::size_t j = 1; j <= a; ++j) w += row[j - 1];
        nq[a - 1] += q[a] * w;
      }
      if (b > 0) {
        double w = 0.0;
        for (std::size_t j = a + 2; j <= a + 1 + b; ++j) w += row[j - 1];
        nq[a] += q[a] * w;
      }
    }
    std::swap(q, nq);
  }
  return out;
}

}  // namespace

double rep_rsm(Candidate c, std::size_t k, const RsmModel& model) {
  const std::size_t m = model.sigma.size();
  if (k < 1 || k > m) {
    throw Error(Errc::rank_out_of_range,
                "rank " + std::to_string(k) + " outside 1.." + std::to_string(m));
  }
  return rsm_pass(c, model, k)[k - 1];
}

RankDistribution rep_rsm_all(Candidate c, const RsmModel& model) {
  return RankDistribution{rsm_pass(c, model, model.sigma.size())};
}

RankDistribution rep_mallows_partitioned(Candidate c, const MallowsModel& model,
                                         const PartitionedPreference& fp) {
  const std::size_t m = model.sigma.size();
  check_candidate(c, m);
  const auto where = locate(c, fp);
  if (!where.found || where.listed != m || !fp.missing.empty()) {
    throw Error(Errc::validation_error, "expected a fully partitioned preference containing c");
  }
  const auto& bucket = fp.buckets[where.index];
  // Reference order restricted to the bucket, relabelled 0..K-1.
  std::vector<Candidate> local_of(m, 0);
  std::vector<bool> in_bucket(m, false);
  for (Candidate x : bucket) in_bucket[x] = true;
  std::vector<Candidate> order;
  for (Candidate x : model.sigma.order()) {
    if (in_bucket[x]) {
      local_of[x] = static_cast<Candidate>(order.size());
      order.push_back(static_cast<Candidate>(order.size()));
    }
  }
  MallowsModel local{Ranking(std::move(order)), model.phi};
  const auto inner = rep_rim(local_of[c], mallows_to_rim(local));
  RankDistribution d{std::vector<double>(m, 0.0)};
  for (std::size_t j = 0; j < inner.size(); ++j) d.probs[where.before + j] = inner.probs[j];
  return d;
}

// ---------------------------------------------------------------------------
// Dispatch

namespace {

enum class Route {
  uniform,
  fully_partitioned,
  partially_partitioned,
  chain,
  uniform_poset_table,
  uniform_poset_dp,
  rim,
  rsm,
  mallows_partitioned,
  rim_truncated,
  rim_poset,
  point,
};

bool is_uniform(const RankingModel& model) {
  if (std::holds_alternative<UniformModel>(model)) return true;
  if (const auto* mal = std::get_if<MallowsModel>(&model)) return mal->phi == 1.0;
  return false;
}

}  // namespace

struct VoterRep::Impl {
  std::size_t m = 0;
  RepOptions options;
  Route route = Route::uniform;
  std::optional<Observation> observation;
  RimModel rim;
  RsmModel rsm;
  MallowsModel mallows;
  PartitionedPreference partition;
  TruncatedRanking truncated;
  std::optional<PosetClosure> closure;
  std::vector<std::vector<double>> table;  // per-candidate distributions
  std::vector<std::size_t> point_rank;
};

VoterRep::VoterRep(const Voter& voter, std::size_t m, const RepOptions& options)
    : impl_(std::make_unique<Impl>()) {
  Impl& s = *impl_;
  s.m = m;
  s.options = options;
  const auto& model = voter.model;
  const Observation* obs = voter.observation ? &*voter.observation : nullptr;

  if (obs != nullptr) {
    if (const auto* r = std::get_if<Ranking>(obs)) {
      if (!(probability(*r, model) > 0.0)) {
        throw Error(Errc::zero_posterior, "the observed ranking has zero probability");
      }
      s.route = Route::point;
      s.point_rank = r->ranks();
      return;
    }
  }

  if (is_uniform(model)) {
    if (obs == nullptr) {
      s.route = Route::uniform;
      return;
    }
    std::visit(
        [&](const auto& o) {
          using T = std::decay_t<decltype(o)>;
          if constexpr (std::is_same_v<T, PartialOrder>) {
            s.closure.emplace(o, m);
            if (!s.closure->has_relations()) {
              s.route = Route::uniform;
            } else if (m <= options.ideal_counting_max_m) {
              s.route = Route::uniform_poset_table;
              auto counts = detail::fixed_rank_counts(*s.closure);
              for (auto& row : counts) {
                double total = 0.0;
                for (double v : row) total += v;
                for (double& v : row) v /= total;
              }
              s.table = std::move(counts);
            } else {
              s.route = Route::uniform_poset_dp;
              s.rim = detail::uniform_rim(detail::uniform_insertion_order(*s.closure));
            }
          } else if constexpr (std::is_same_v<T, PartitionedPreference>) {
            s.partition = o;
            s.route = is_fully_partitioned(o, m) && o.missing.empty()
                          ? Route::fully_partitioned
                          : Route::partially_partitioned;
          } else if constexpr (std::is_same_v<T, PartialChain>) {
            s.observation = o;
            s.route = Route::chain;
          } else if constexpr (std::is_same_v<T, TruncatedRanking>) {
            s.partition = to_partitioned(o, m);
            s.route = Route::fully_partitioned;
          }
        },
        *obs);
    return;
  }

  if (const auto* rsm = std::get_if<RsmModel>(&model)) {
    if (obs != nullptr) {
      throw Error(Errc::unsupported,
                  "rank estimation for an RSM model with an observation has no exact solver");
    }
    s.rsm = *rsm;
    s.route = Route::rsm;
    return;
  }

  const auto* mal = std::get_if<MallowsModel>(&model);
  s.rim = mal != nullptr ? mallows_to_rim(*mal) : std::get<RimModel>(model);
  if (obs == nullptr) {
    s.route = Route::rim;
    return;
  }
  if (mal != nullptr) {
    const PartitionedPreference* fp = nullptr;
    PartitionedPreference converted;
    if (const auto* tr = std::get_if<TruncatedRanking>(obs)) {
      converted = to_partitioned(*tr, m);
      fp = &converted;
    } else if (const auto* pp = std::get_if<PartitionedPreference>(obs)) {
      if (is_fully_partitioned(*pp, m) && pp->missing.empty()) fp = pp;
    }
    if (fp != nullptr) {
      s.mallows = *mal;
      s.partition = *fp;
      s.route = Route::mallows_partitioned;
      return;
    }
  } else if (const auto* tr = std::get_if<TruncatedRanking>(obs)) {
    s.truncated = *tr;
    s.route = Route::rim_truncated;
    return;
  }
  s.closure.emplace(to_partial_order(*obs, m), m);
  s.route = s.closure->has_relations() ? Route::rim_poset : Route::rim;
}

VoterRep::~VoterRep() = default;
VoterRep::VoterRep(VoterRep&&) noexcept = default;
VoterRep& VoterRep::operator=(VoterRep&&) noexcept = default;

RankDistribution VoterRep::distribution(Candidate c) const {
  const Impl& s = *impl_;
  check_candidate(c, s.m);
  switch (s.route) {
    case Route::uniform: return rep_uniform(s.m);
    case Route::fully_partitioned: return rep_fully_partitioned(c, s.partition, s.m);
    case Route::partially_partitioned: return rep_partially_partitioned(c, s.partition, s.m);
    case Route::chain: return rep_partial_chain(c, std::get<PartialChain>(*s.observation), s.m);
    case Route::uniform_poset_table: return RankDistribution{s.table[c]};
    case Route::uniform_poset_dp: return detail::rim_poset_dp(c, s.rim, *s.closure, s.options);
    case Route::rim: return rep_rim(c, s.rim);
    case Route::rsm: return rep_rsm_all(c, s.rsm);
    case Route::mallows_partitioned: return rep_mallows_partitioned(c, s.mallows, s.partition);
    case Route::rim_truncated: return rep_rim_truncated(c, s.rim, s.truncated);
    case Route::rim_poset: return detail::rim_poset_dp(c, s.rim, *s.closure, s.options);
    case Route::point: return point_mass(s.m, s.point_rank[c]);
  }
  throw Error(Errc::unsupported, "unreachable solver route");
}

double VoterRep::expected_score(Candidate c, const ScoringRule& rule) const {
  return distribution(c).expected_score(rule);
}

RankDistribution rep_dispatch(Candidate c, const Voter& voter, std::size_t m,
                              const RepOptions& options) {
  return VoterRep(voter, m, options).distribution(c);
}

}  // namespace mew
