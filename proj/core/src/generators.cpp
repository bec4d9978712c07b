#include "mew/generators.hpp"

#include <array>
#include <string>
#include <utility>

#include "mew/error.hpp"

namespace mew {

namespace {

constexpr std::array<std::pair<GenKind, std::string_view>, 15> kNames{{
    {GenKind::poset, "poset"},
    {GenKind::partitioned, "partitioned"},
    {GenKind::partial_partitioned, "partial-partitioned"},
    {GenKind::chain, "chain"},
    {GenKind::truncated, "truncated"},
    {GenKind::mallows, "mallows"},
    {GenKind::rim, "rim"},
    {GenKind::rsm, "rsm"},
    {GenKind::mallows_poset, "mallows+poset"},
    {GenKind::mallows_partitioned, "mallows+partitioned"},
    {GenKind::mallows_partial_partitioned, "mallows+partial-partitioned"},
    {GenKind::mallows_chain, "mallows+chain"},
    {GenKind::mallows_truncated, "mallows+truncated"},
    {GenKind::rim_poset, "rim+poset"},
    {GenKind::rim_truncated, "rim+truncated"},
}};

enum class ObsKind { none, poset, partitioned, partial_partitioned, chain, truncated };
enum class ModelKind { uniform, mallows, rim, rsm };

struct Shape {
  ModelKind model;
  ObsKind obs;
};

Shape shape_of(GenKind kind) {
  switch (kind) {
    case GenKind::poset: return {ModelKind::uniform, ObsKind::poset};
    case GenKind::partitioned: return {ModelKind::uniform, ObsKind::partitioned};
    case GenKind::partial_partitioned: return {ModelKind::uniform, ObsKind::partial_partitioned};
    case GenKind::chain: return {ModelKind::uniform, ObsKind::chain};
    case GenKind::truncated: return {ModelKind::uniform, ObsKind::truncated};
    case GenKind::mallows: return {ModelKind::mallows, ObsKind::none};
    case GenKind::rim: return {ModelKind::rim, ObsKind::none};
    case GenKind::rsm: return {ModelKind::rsm, ObsKind::none};
    case GenKind::mallows_poset: return {ModelKind::mallows, ObsKind::poset};
    case GenKind::mallows_partitioned: return {ModelKind::mallows, ObsKind::partitioned};
    case GenKind::mallows_partial_partitioned:
      return {ModelKind::mallows, ObsKind::partial_partitioned};
    case GenKind::mallows_chain: return {ModelKind::mallows, ObsKind::chain};
    case GenKind::mallows_truncated: return {ModelKind::mallows, ObsKind::truncated};
    case GenKind::rim_poset: return {ModelKind::rim, ObsKind::poset};
    case GenKind::rim_truncated: return {ModelKind::rim, ObsKind::truncated};
  }
  return {ModelKind::uniform, ObsKind::none};
}

std::vector<Candidate> shuffled(std::size_t m, Rng& rng) {
  std::vector<Candidate> items(m);
  for (std::size_t i = 0; i < m; ++i) items[i] = static_cast<Candidate>(i);
  for (std::size_t i = m; i > 1; --i) std::swap(items[i - 1], items[rng.uniform_index(i)]);
  return items;
}

Observation draw_observation(ObsKind kind, const GenSpec& spec, const RsmModel& selection,
                             Rng& rng) {
  const std::size_t m = spec.m;
  switch (kind) {
    case ObsKind::poset: {
      std::vector<double> p(m - 1);
      for (double& x : p) x = rng.uniform(0.0, spec.p_max);
      return sample_rsm_poset(selection, p, rng);
    }
    case ObsKind::partitioned:
    case ObsKind::partial_partitioned: {
      const bool partial = kind == ObsKind::partial_partitioned;
      const auto items = shuffled(m, rng);
      PartitionedPreference pref;
      pref.buckets.resize(spec.k);
      for (std::size_t b = 0; b < spec.k; ++b) pref.buckets[b].push_back(items[b]);
      const std::size_t slots = spec.k + (partial ? 1 : 0);
      for (std::size_t i = spec.k; i < m; ++i) {
        const std::size_t b = rng.uniform_index(slots);
        if (b < spec.k) pref.buckets[b].push_back(items[i]);
        else pref.missing.push_back(items[i]);
      }
      return pref;
    }
    case ObsKind::chain: {
      auto items = shuffled(m, rng);
      items.resize(spec.k);
      return PartialChain{std::move(items)};
    }
    case ObsKind::truncated: {
      const auto items = shuffled(m, rng);
      TruncatedRanking tr;
      tr.top.assign(items.begin(), items.begin() + static_cast<std::ptrdiff_t>(spec.t));
      tr.bottom.assign(items.end() - static_cast<std::ptrdiff_t>(spec.b), items.end());
      return tr;
    }
    case ObsKind::none: break;
  }
  throw Error(Errc::invalid_parameter, "no observation to draw");
}

Profile build(const GenSpec& spec, Shape shape) {
  validate(spec);
  Rng shared = Rng::stream(spec.seed, 0);
  const Ranking sigma = random_ranking(spec.m, shared);
  const MallowsModel mallows{sigma, spec.phi};
  const RsmModel selection = mallows_to_rsm(mallows);

  RankingModel model = UniformModel{};
  switch (shape.model) {
    case ModelKind::uniform: break;
    case ModelKind::mallows: model = mallows; break;
    case ModelKind::rim: model = mallows_to_rim(mallows); break;
    case ModelKind::rsm: model = selection; break;
  }

  Profile profile{CandidateSet::numbered(spec.m), {}};
  profile.voters.reserve(spec.n);
  for (std::size_t i = 0; i < spec.n; ++i) {
    Voter v;
    v.model = model;
    if (shape.obs != ObsKind::none) {
      Rng rng = Rng::stream(spec.seed, i + 1);
      v.observation = draw_observation(shape.obs, spec, selection, rng);
    }
    profile.voters.push_back(std::move(v));
  }
  return profile;
}

void require(GenSpec spec, std::initializer_list<ObsKind> allowed) {
  const ObsKind obs = shape_of(spec.kind).obs;
  for (ObsKind k : allowed) {
    if (k == obs) return;
  }
  throw Error(Errc::invalid_parameter,
              "generator does not produce kind '" + std::string(to_string(spec.kind)) + "'");
}

}  // namespace

std::string_view to_string(GenKind kind) noexcept {
  for (const auto& [k, name] : kNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::optional<GenKind> parse_gen_kind(std::string_view name) {
  for (const auto& [k, n] : kNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

std::vector<GenKind> all_gen_kinds() {
  std::vector<GenKind> out;
  for (const auto& [k, name] : kNames) out.push_back(k);
  return out;
}

void validate(const GenSpec& spec) {
  if (spec.m < 2) throw Error(Errc::invalid_parameter, "m must be at least 2");
  if (spec.n < 1) throw Error(Errc::invalid_parameter, "n must be at least 1");
  if (!(spec.phi > 0.0 && spec.phi <= 1.0)) {
    throw Error(Errc::invalid_parameter, "phi must lie in (0, 1]");
  }
  if (!(spec.p_max >= 0.0 && spec.p_max <= 1.0)) {
    throw Error(Errc::invalid_parameter, "p_max must lie in [0, 1]");
  }
  const ObsKind obs = shape_of(spec.kind).obs;
  if (obs == ObsKind::partitioned || obs == ObsKind::partial_partitioned ||
      obs == ObsKind::chain) {
    if (spec.k < 1 || spec.k > spec.m) {
      throw Error(Errc::invalid_k, "k must lie in 1..m, got " + std::to_string(spec.k));
    }
  }
  if (obs == ObsKind::truncated && spec.t + spec.b > spec.m) {
    throw Error(Errc::invalid_parameter, "t + b must not exceed m");
  }
}

PartialOrder sample_rsm_poset(const RsmModel& model, std::span<const double> p, Rng& rng) {
  const std::size_t m = model.sigma.size();
  if (p.size() + 1 < m) throw Error(Errc::invalid_parameter, "need m - 1 pair probabilities");
  std::vector<Candidate> rest(model.sigma.order().begin(), model.sigma.order().end());
  std::vector<Preference> pairs;
  for (std::size_t i = 0; i + 1 < m; ++i) {
    const std::size_t j = rng.categorical(model.pi[i]);
    const Candidate chosen = rest[j];
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(j));
    for (Candidate other : rest) {
      if (rng.uniform01() < p[i]) pairs.push_back({chosen, other});
    }
  }
  return PartialOrder(std::move(pairs));
}

Ranking random_ranking(std::size_t m, Rng& rng) { return Ranking(shuffled(m, rng)); }

Profile gen_posets(const GenSpec& spec) {
  require(spec, {ObsKind::poset});
  return build(spec, shape_of(spec.kind));
}

Profile gen_partitioned(const GenSpec& spec) {
  require(spec, {ObsKind::partitioned, ObsKind::partial_partitioned});
  return build(spec, shape_of(spec.kind));
}

Profile gen_chains(const GenSpec& spec) {
  require(spec, {ObsKind::chain});
  return build(spec, shape_of(spec.kind));
}

Profile gen_truncated(const GenSpec& spec) {
  require(spec, {ObsKind::truncated});
  return build(spec, shape_of(spec.kind));
}

Profile gen_model_profile(const GenSpec& spec) {
  if (shape_of(spec.kind).model == ModelKind::uniform) {
    throw Error(Errc::invalid_parameter, "kind '" + std::string(to_string(spec.kind)) +
                                             "' has no ranking model");
  }
  return build(spec, shape_of(spec.kind));
}

Profile generate(const GenSpec& spec) { return build(spec, shape_of(spec.kind)); }

}  // namespace mew
