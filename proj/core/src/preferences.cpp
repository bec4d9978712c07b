#include "mew/preferences.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>

#include "mew/error.hpp"

namespace mew {

// ---------------------------------------------------------------------------
// CandidateSet / Ranking / PartialOrder

CandidateSet::CandidateSet(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.size() < 2) {
    throw Error(Errc::validation_error, "a candidate set needs at least 2 candidates");
  }
  index_.reserve(names_.size());
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!index_.emplace(names_[i], static_cast<Candidate>(i)).second) {
      throw Error(Errc::validation_error, "duplicate candidate '" + names_[i] + "'");
    }
  }
}

CandidateSet CandidateSet::numbered(std::size_t m) {
  std::vector<std::string> names;
  names.reserve(m);
  for (std::size_t i = 1; i <= m; ++i) names.push_back("c" + std::to_string(i));
  return CandidateSet(std::move(names));
}

std::optional<Candidate> CandidateSet::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Candidate CandidateSet::index_of(std::string_view name) const {
  if (auto c = find(name)) return *c;
  throw Error(Errc::unknown_candidate, "unknown candidate '" + std::string(name) + "'");
}

Ranking::Ranking(std::vector<Candidate> order) : order_(std::move(order)) {
  std::vector<bool> seen(order_.size(), false);
  for (Candidate c : order_) {
    if (c >= order_.size()) {
      throw Error(Errc::validation_error, "ranking entry out of range");
    }
    if (seen[c]) throw Error(Errc::overlap_violation, "ranking repeats a candidate");
    seen[c] = true;
  }
}

Ranking Ranking::identity(std::size_t m) {
  std::vector<Candidate> order(m);
  std::iota(order.begin(), order.end(), Candidate{0});
  return Ranking(std::move(order));
}

std::size_t Ranking::rank_of(Candidate c) const {
  auto it = std::find(order_.begin(), order_.end(), c);
  if (it == order_.end()) throw Error(Errc::unknown_candidate, "candidate not in ranking");
  return static_cast<std::size_t>(it - order_.begin()) + 1;
}

std::vector<std::size_t> Ranking::ranks() const {
  std::vector<std::size_t> out(order_.size());
  for (std::size_t p = 0; p < order_.size(); ++p) out[order_[p]] = p + 1;
  return out;
}

PartialOrder::PartialOrder(std::vector<Preference> pairs) : pairs_(std::move(pairs)) {
  std::sort(pairs_.begin(), pairs_.end());
  pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
}

// ---------------------------------------------------------------------------
// Validation

namespace {

void check_known(Candidate c, std::size_t m) {
  if (c >= m) {
    throw Error(Errc::unknown_candidate,
                "candidate index " + std::to_string(c) + " outside the candidate set");
  }
}

// Marks every id in `items`, rejecting unknown and repeated ones.
void mark_disjoint(std::span<const Candidate> items, std::vector<bool>& seen,
                   const char* what) {
  for (Candidate c : items) {
    check_known(c, seen.size());
    if (seen[c]) {
      throw Error(Errc::overlap_violation,
                  std::string(what) + " lists candidate " + std::to_string(c) + " twice");
    }
    seen[c] = true;
  }
}

}  // namespace

void validate(const Ranking& ranking, const CandidateSet& candidates) {
  if (ranking.size() != candidates.size()) {
    throw Error(Errc::validation_error, "ranking length " + std::to_string(ranking.size()) +
                                            " does not match " +
                                            std::to_string(candidates.size()) + " candidates");
  }
}

void validate(const PartialOrder& order, const CandidateSet& candidates) {
  PosetClosure closure(order, candidates.size());
  (void)closure;
}

void validate(const PartitionedPreference& pref, const CandidateSet& candidates) {
  std::vector<bool> seen(candidates.size(), false);
  for (const auto& bucket : pref.buckets) {
    if (bucket.empty()) throw Error(Errc::validation_error, "empty bucket");
    mark_disjoint(bucket, seen, "partitioned preference");
  }
  mark_disjoint(pref.missing, seen, "partitioned preference");
}

void validate(const PartialChain& chain, const CandidateSet& candidates) {
  std::vector<bool> seen(candidates.size(), false);
  mark_disjoint(chain.chain, seen, "partial chain");
}

void validate(const TruncatedRanking& truncated, const CandidateSet& candidates) {
  std::vector<bool> seen(candidates.size(), false);
  mark_disjoint(truncated.top, seen, "truncated ranking");
  mark_disjoint(truncated.bottom, seen, "truncated ranking");
}

void validate(const Observation& observation, const CandidateSet& candidates) {
  std::visit([&](const auto& o) { validate(o, candidates); }, observation);
}

bool is_fully_partitioned(const PartitionedPreference& pref, std::size_t m) {
  std::size_t covered = 0;
  for (const auto& b : pref.buckets) covered += b.size();
  return covered == m;
}

// ---------------------------------------------------------------------------
// Conversions

namespace {

void chain_pairs(std::span<const Candidate> chain, std::vector<Preference>& out) {
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) out.push_back({chain[i], chain[i + 1]});
}

void bucket_pairs(const std::vector<std::vector<Candidate>>& buckets,
                  std::vector<Preference>& out) {
  for (std::size_t b = 0; b + 1 < buckets.size(); ++b) {
    for (Candidate hi : buckets[b]) {
      for (Candidate lo : buckets[b + 1]) out.push_back({hi, lo});
    }
  }
}

}  // namespace

PartitionedPreference to_partitioned(const TruncatedRanking& truncated, std::size_t m) {
  PartitionedPreference out;
  std::vector<bool> fixed(m, false);
  for (Candidate c : truncated.top) {
    out.buckets.push_back({c});
    fixed[c] = true;
  }
  for (Candidate c : truncated.bottom) fixed[c] = true;
  std::vector<Candidate> middle;
  for (Candidate c = 0; c < m; ++c) {
    if (!fixed[c]) middle.push_back(c);
  }
  if (!middle.empty()) out.buckets.push_back(std::move(middle));
  for (Candidate c : truncated.bottom) out.buckets.push_back({c});
  return out;
}

PartialOrder to_partial_order(const Observation& observation, std::size_t m) {
  std::vector<Preference> pairs;
  std::visit(
      [&](const auto& o) {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, Ranking>) {
          chain_pairs(o.order(), pairs);
        } else if constexpr (std::is_same_v<T, PartialOrder>) {
          pairs = o.pairs();
        } else if constexpr (std::is_same_v<T, PartitionedPreference>) {
          bucket_pairs(o.buckets, pairs);
        } else if constexpr (std::is_same_v<T, PartialChain>) {
          chain_pairs(o.chain, pairs);
        } else {
          bucket_pairs(to_partitioned(o, m).buckets, pairs);
        }
      },
      observation);
  return PartialOrder(std::move(pairs));
}

// ---------------------------------------------------------------------------
// PosetClosure

PosetClosure::PosetClosure(const PartialOrder& order, std::size_t m)
    : m_(m), words_((m + 63) / 64), reach_(m * ((m + 63) / 64), 0),
      covered_by_(m), covers_(m) {
  std::vector<std::vector<Candidate>> succ(m);
  for (const auto& p : order.pairs()) {
    check_known(p.better, m);
    check_known(p.worse, m);
    if (p.better == p.worse) {
      throw Error(Errc::cycle_detected, "candidate " + std::to_string(p.better) +
                                            " is preferred to itself");
    }
    succ[p.better].push_back(p.worse);
  }
  has_relations_ = !order.empty();

  // Reachability by iterative DFS from every node.
  std::vector<Candidate> stack;
  for (Candidate a = 0; a < m; ++a) {
    std::uint64_t* row = &reach_[a * words_];
    stack.assign(succ[a].begin(), succ[a].end());
    while (!stack.empty()) {
      Candidate b = stack.back();
      stack.pop_back();
      std::uint64_t mask = std::uint64_t{1} << (b % 64);
      if (row[b / 64] & mask) continue;
      row[b / 64] |= mask;
      for (Candidate n : succ[b]) stack.push_back(n);
    }
    if (bit(a, a)) {
      throw Error(Errc::cycle_detected,
                  "preference cycle through candidate " + std::to_string(a));
    }
  }

  // a covers b iff a > b and no c with a > c > b, i.e. desc(a) and anc(b)
  // do not intersect. anc(b) is read column-wise, so build the transpose.
  std::vector<std::uint64_t> ancestors(m * words_, 0);
  for (Candidate a = 0; a < m; ++a) {
    for (Candidate b = 0; b < m; ++b) {
      if (bit(a, b)) ancestors[b * words_ + a / 64] |= std::uint64_t{1} << (a % 64);
    }
  }
  for (Candidate a = 0; a < m; ++a) {
    for (Candidate b = 0; b < m; ++b) {
      if (!bit(a, b)) continue;
      bool direct = true;
      for (std::size_t w = 0; w < words_ && direct; ++w) {
        direct = (reach_[a * words_ + w] & ancestors[b * words_ + w]) == 0;
      }
      if (direct) {
        covers_[a].push_back(b);
        covered_by_[b].push_back(a);
      }
    }
  }
}

bool PosetClosure::bit(Candidate a, Candidate b) const {
  return (reach_[a * words_ + b / 64] >> (b % 64)) & 1U;
}

bool PosetClosure::precedes(Candidate a, Candidate b) const { return bit(a, b); }

std::size_t PosetClosure::descendant_count(Candidate c) const {
  std::size_t n = 0;
  for (std::size_t w = 0; w < words_; ++w) n += std::popcount(reach_[c * words_ + w]);
  return n;
}

std::size_t PosetClosure::ancestor_count(Candidate c) const {
  std::size_t n = 0;
  for (Candidate a = 0; a < m_; ++a) n += bit(a, c) ? 1 : 0;
  return n;
}

std::vector<Candidate> PosetClosure::topological_order() const {
  std::vector<std::size_t> indegree(m_, 0);
  for (Candidate a = 0; a < m_; ++a) {
    for (Candidate b : covers_[a]) ++indegree[b];
  }
  std::vector<Candidate> out;
  out.reserve(m_);
  std::vector<bool> done(m_, false);
  while (out.size() < m_) {
    for (Candidate c = 0; c < m_; ++c) {
      if (done[c] || indegree[c] != 0) continue;
      done[c] = true;
      out.push_back(c);
      for (Candidate b : covers_[c]) --indegree[b];
      break;
    }
  }
  return out;
}

bool PosetClosure::consistent(const Ranking& ranking) const {
  auto ranks = ranking.ranks();
  for (Candidate a = 0; a < m_; ++a) {
    for (Candidate b : covers_[a]) {
      if (ranks[a] > ranks[b]) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

void extend(std::vector<std::size_t>& pending_preds,
            const std::vector<std::vector<Candidate>>& succ, std::vector<bool>& used,
            std::vector<Candidate>& prefix,
            const std::function<void(std::span<const Candidate>)>& visit) {
  const std::size_t m = used.size();
  if (prefix.size() == m) {
    visit(prefix);
    return;
  }
  for (Candidate c = 0; c < m; ++c) {
    if (used[c] || pending_preds[c] != 0) continue;
    used[c] = true;
    prefix.push_back(c);
    for (Candidate s : succ[c]) --pending_preds[s];
    extend(pending_preds, succ, used, prefix, visit);
    for (Candidate s : succ[c]) ++pending_preds[s];
    prefix.pop_back();
    used[c] = false;
  }
}

}  // namespace

void for_each_linear_extension(const PartialOrder& order, std::size_t m,
                               const std::function<void(std::span<const Candidate>)>& visit,
                               EnumerationOptions options) {
  if (m > options.max_candidates) {
    throw Error(Errc::too_large, "enumerating linear extensions over " + std::to_string(m) +
                                     " candidates exceeds the cap of " +
                                     std::to_string(options.max_candidates));
  }
  // Rejects cycles and out-of-range items before the search starts.
  PosetClosure closure(order, m);
  (void)closure;
  std::vector<std::vector<Candidate>> succ(m);
  std::vector<std::size_t> pending(m, 0);
  for (const auto& p : order.pairs()) {
    succ[p.better].push_back(p.worse);
    ++pending[p.worse];
  }
  std::vector<bool> used(m, false);
  std::vector<Candidate> prefix;
  prefix.reserve(m);
  extend(pending, succ, used, prefix, visit);
}

std::vector<Ranking> linear_extensions(const PartialOrder& order, std::size_t m,
                                       EnumerationOptions options) {
  std::vector<Ranking> out;
  for_each_linear_extension(
      order, m,
      [&](std::span<const Candidate> r) { out.emplace_back(std::vector<Candidate>(r.begin(), r.end())); },
      options);
  return out;
}

std::vector<Ranking> linear_extensions(const PartialOrder& order,
                                       const CandidateSet& candidates,
                                       EnumerationOptions options) {
  return linear_extensions(order, candidates.size(), options);
}

// ---------------------------------------------------------------------------
// Cover width

std::vector<std::vector<Candidate>> tracking_schedule(
    std::span<const Candidate> insertion_order, const PosetClosure& closure) {
  const std::size_t m = insertion_order.size();
  std::vector<std::size_t> step(closure.size(), 0);
  for (std::size_t i = 0; i < m; ++i) step[insertion_order[i]] = i;

  // Last step at which some cover-related item of x is inserted.
  std::vector<std::size_t> release(closure.size(), 0);
  for (Candidate x : insertion_order) {
    std::size_t last = step[x];
    for (Candidate y : closure.covers(x)) last = std::max(last, step[y]);
    for (Candidate y : closure.covered_by(x)) last = std::max(last, step[y]);
    release[x] = last;
  }

  std::vector<std::vector<Candidate>> schedule(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k <= i; ++k) {
      Candidate y = insertion_order[k];
      if (release[y] > i) schedule[i].push_back(y);
    }
  }
  return schedule;
}

std::size_t cover_width(std::span<const Candidate> sigma, const PosetClosure& closure) {
  std::size_t width = 0;
  for (const auto& tracked : tracking_schedule(sigma, closure)) {
    width = std::max(width, tracked.size());
  }
  return width;
}

std::size_t cover_width(const Ranking& sigma, const PartialOrder& order) {
  PosetClosure closure(order, sigma.size());
  return cover_width(sigma.order(), closure);
}

// ---------------------------------------------------------------------------
// Rank bounds

namespace {

void fill_chain_bounds(std::span<const Candidate> chain, std::size_t m,
                       std::vector<RankRange>& out) {
  const std::size_t len = chain.size();
  for (std::size_t p = 0; p < len; ++p) out[chain[p]] = {p + 1, m - (len - 1 - p)};
}

}  // namespace

std::vector<RankRange> rank_bounds_all(const Observation* observation, std::size_t m) {
  std::vector<RankRange> out(m, RankRange{1, m});
  if (observation == nullptr) return out;
  std::visit(
      [&](const auto& o) {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, Ranking>) {
          fill_chain_bounds(o.order(), m, out);
        } else if constexpr (std::is_same_v<T, PartialChain>) {
          fill_chain_bounds(o.chain, m, out);
        } else if constexpr (std::is_same_v<T, PartialOrder>) {
          if (o.empty()) return;
          PosetClosure closure(o, m);
          for (Candidate c = 0; c < m; ++c) {
            out[c] = {1 + closure.ancestor_count(c), m - closure.descendant_count(c)};
          }
        } else if constexpr (std::is_same_v<T, PartitionedPreference>) {
          std::size_t total = 0;
          for (const auto& b : o.buckets) total += b.size();
          std::size_t before = 0;
          for (const auto& b : o.buckets) {
            const std::size_t after = total - before - b.size();
            for (Candidate c : b) out[c] = {before + 1, m - after};
            before += b.size();
          }
        } else {
          const std::size_t t = o.top.size();
          const std::size_t b = o.bottom.size();
          for (Candidate c = 0; c < m; ++c) out[c] = {t + 1, m - b};
          for (std::size_t p = 0; p < t; ++p) out[o.top[p]] = {p + 1, p + 1};
          for (std::size_t q = 0; q < b; ++q) {
            const std::size_t r = m - b + q + 1;
            out[o.bottom[q]] = {r, r};
          }
        }
      },
      *observation);
  return out;
}

RankRange rank_bounds(Candidate c, const Observation& observation, std::size_t m) {
  check_known(c, m);
  return rank_bounds_all(&observation, m)[c];
}

}  // namespace mew
