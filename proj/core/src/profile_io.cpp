#include "mew/profile_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "mew/error.hpp"

namespace mew {

namespace {

using Json = nlohmann::ordered_json;

// Context for error messages: which voter and field is being read.
struct Where {
  std::optional<std::size_t> voter;
  std::string field;

  [[noreturn]] void fail(Errc code, const std::string& what) const {
    std::string msg = field.empty() ? what : "field '" + field + "': " + what;
    if (voter) throw Error(code, msg, *voter);
    throw Error(code, msg);
  }
};

const Json& member(const Json& obj, const char* key, Where w) {
  w.field = key;
  if (!obj.is_object() || !obj.contains(key)) w.fail(Errc::parse_error, "missing");
  return obj.at(key);
}

Candidate read_candidate(const Json& j, const CandidateSet& cs, const Where& w) {
  if (!j.is_string()) w.fail(Errc::parse_error, "expected a candidate name");
  const auto c = cs.find(j.get<std::string>());
  if (!c) w.fail(Errc::unknown_candidate, "unknown candidate '" + j.get<std::string>() + "'");
  return *c;
}

std::vector<Candidate> read_list(const Json& j, const CandidateSet& cs, const Where& w) {
  if (!j.is_array()) w.fail(Errc::parse_error, "expected a list of candidate names");
  std::vector<Candidate> out;
  for (const auto& x : j) out.push_back(read_candidate(x, cs, w));
  return out;
}

std::vector<std::vector<Candidate>> read_buckets(const Json& j, const CandidateSet& cs,
                                                 const Where& w) {
  if (!j.is_array()) w.fail(Errc::parse_error, "expected a list of buckets");
  std::vector<std::vector<Candidate>> out;
  for (const auto& b : j) out.push_back(read_list(b, cs, w));
  return out;
}

std::vector<std::vector<double>> read_matrix(const Json& j, const Where& w) {
  if (!j.is_array()) w.fail(Errc::parse_error, "expected a list of rows");
  std::vector<std::vector<double>> out;
  for (const auto& row : j) {
    if (!row.is_array()) w.fail(Errc::parse_error, "expected a row of numbers");
    auto& r = out.emplace_back();
    for (const auto& x : row) {
      if (!x.is_number()) w.fail(Errc::parse_error, "expected a number");
      r.push_back(x.get<double>());
    }
  }
  return out;
}

Ranking read_ranking(const Json& j, const CandidateSet& cs, const Where& w) {
  auto order = read_list(j, cs, w);
  if (order.size() != cs.size()) {
    w.fail(Errc::validation_error, "a ranking must list all " + std::to_string(cs.size()) +
                                       " candidates");
  }
  try {
    return Ranking(std::move(order));
  } catch (const Error& e) {
    w.fail(e.code(), e.what());
  }
}

std::optional<RankingModel> read_model(const std::string& type, const Json& j,
                                       const CandidateSet& cs, Where w) {
  if (type == "uniform") return UniformModel{};
  if (type == "mallows") {
    MallowsModel m{read_ranking(member(j, "sigma", w), cs, {w.voter, "sigma"}), 0.0};
    const Json& phi = member(j, "phi", w);
    if (!phi.is_number()) w.fail(Errc::parse_error, "phi must be a number");
    m.phi = phi.get<double>();
    return m;
  }
  if (type == "rim" || type == "rsm") {
    Ranking sigma = read_ranking(member(j, "sigma", w), cs, {w.voter, "sigma"});
    auto pi = read_matrix(member(j, "pi", w), {w.voter, "pi"});
    if (type == "rim") return RimModel{std::move(sigma), std::move(pi)};
    return RsmModel{std::move(sigma), std::move(pi)};
  }
  return std::nullopt;
}

std::optional<Observation> read_observation(const std::string& type, const Json& j,
                                            const CandidateSet& cs, Where w) {
  if (type == "ranking") return read_ranking(member(j, "ranking", w), cs, {w.voter, "ranking"});
  if (type == "poset") {
    const Json& pairs = member(j, "pairs", w);
    Where pw{w.voter, "pairs"};
    if (!pairs.is_array()) pw.fail(Errc::parse_error, "expected a list of pairs");
    std::vector<Preference> out;
    for (const auto& p : pairs) {
      if (!p.is_array() || p.size() != 2) pw.fail(Errc::parse_error, "pairs are [better, worse]");
      out.push_back({read_candidate(p[0], cs, pw), read_candidate(p[1], cs, pw)});
    }
    return PartialOrder(std::move(out));
  }
  if (type == "partitioned" || type == "partial_partitioned") {
    PartitionedPreference pp;
    pp.buckets = read_buckets(member(j, "buckets", w), cs, {w.voter, "buckets"});
    if (type == "partial_partitioned") {
      pp.missing = j.contains("missing") ? read_list(j.at("missing"), cs, {w.voter, "missing"})
                                         : std::vector<Candidate>{};
    } else {
      std::size_t listed = 0;
      for (const auto& b : pp.buckets) listed += b.size();
      if (listed != cs.size()) {
        Where{w.voter, "buckets"}.fail(Errc::validation_error,
                                       "a fully partitioned preference must cover every candidate");
      }
    }
    return pp;
  }
  if (type == "chain") return PartialChain{read_list(member(j, "chain", w), cs, {w.voter, "chain"})};
  if (type == "truncated") {
    TruncatedRanking tr;
    tr.top = read_list(member(j, "top", w), cs, {w.voter, "top"});
    tr.bottom = read_list(member(j, "bottom", w), cs, {w.voter, "bottom"});
    return tr;
  }
  return std::nullopt;
}

std::string type_of(const Json& j, const Where& w) {
  const Json& t = member(j, "type", w);
  if (!t.is_string()) Where{w.voter, "type"}.fail(Errc::parse_error, "type must be a string");
  return t.get<std::string>();
}

Voter read_voter(const Json& j, const CandidateSet& cs, std::size_t index) {
  Where w{index, ""};
  if (!j.is_object()) w.fail(Errc::parse_error, "a voter must be an object");
  Voter v;
  if (j.contains("weight")) {
    const Json& wt = j.at("weight");
    if (!wt.is_number_integer() || wt.get<long long>() < 1) {
      Where{index, "weight"}.fail(Errc::validation_error, "weight must be a positive integer");
    }
    v.weight = wt.get<std::uint64_t>();
  }
  const std::string type = type_of(j, w);
  if (type == "combined") {
    const Json& mj = member(j, "model", w);
    const Json& oj = member(j, "observation", w);
    Where mw{index, "model"};
    Where ow{index, "observation"};
    auto model = read_model(type_of(mj, mw), mj, cs, mw);
    if (!model) mw.fail(Errc::parse_error, "unknown model type '" + type_of(mj, mw) + "'");
    auto obs = read_observation(type_of(oj, ow), oj, cs, ow);
    if (!obs) ow.fail(Errc::parse_error, "unknown observation type '" + type_of(oj, ow) + "'");
    v.model = std::move(*model);
    v.observation = std::move(*obs);
  } else if (auto model = read_model(type, j, cs, w)) {
    v.model = std::move(*model);
  } else if (auto obs = read_observation(type, j, cs, w)) {
    v.observation = std::move(*obs);
  } else {
    Where{index, "type"}.fail(Errc::parse_error, "unknown voter type '" + type + "'");
  }
  try {
    validate(v, cs);
  } catch (const Error& e) {
    throw e.with_voter(index);
  }
  return v;
}

// Serialization.

Json names(std::span<const Candidate> xs, const CandidateSet& cs) {
  Json out = Json::array();
  for (Candidate c : xs) out.push_back(cs.name(c));
  return out;
}

Json model_json(const RankingModel& model, const CandidateSet& cs) {
  Json out = Json::object();
  std::visit(
      [&](const auto& mod) {
        using T = std::decay_t<decltype(mod)>;
        if constexpr (std::is_same_v<T, UniformModel>) {
          out["type"] = "uniform";
        } else if constexpr (std::is_same_v<T, MallowsModel>) {
          out["type"] = "mallows";
          out["sigma"] = names(mod.sigma.order(), cs);
          out["phi"] = mod.phi;
        } else {
          out["type"] = std::is_same_v<T, RimModel> ? "rim" : "rsm";
          out["sigma"] = names(mod.sigma.order(), cs);
          out["pi"] = mod.pi;
        }
      },
      model);
  return out;
}

Json observation_json(const Observation& obs, const CandidateSet& cs) {
  Json out = Json::object();
  std::visit(
      [&](const auto& o) {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, Ranking>) {
          out["type"] = "ranking";
          out["ranking"] = names(o.order(), cs);
        } else if constexpr (std::is_same_v<T, PartialOrder>) {
          out["type"] = "poset";
          Json pairs = Json::array();
          for (const auto& p : o.pairs()) {
            pairs.push_back(Json::array({cs.name(p.better), cs.name(p.worse)}));
          }
          out["pairs"] = std::move(pairs);
        } else if constexpr (std::is_same_v<T, PartitionedPreference>) {
          const bool full = o.missing.empty() && is_fully_partitioned(o, cs.size());
          out["type"] = full ? "partitioned" : "partial_partitioned";
          Json buckets = Json::array();
          for (const auto& b : o.buckets) buckets.push_back(names(b, cs));
          out["buckets"] = std::move(buckets);
          if (!full) out["missing"] = names(o.missing, cs);
        } else if constexpr (std::is_same_v<T, PartialChain>) {
          out["type"] = "chain";
          out["chain"] = names(o.chain, cs);
        } else {
          out["type"] = "truncated";
          out["top"] = names(o.top, cs);
          out["bottom"] = names(o.bottom, cs);
        }
      },
      obs);
  return out;
}

Json voter_json(const Voter& v, const CandidateSet& cs) {
  const bool uniform = std::holds_alternative<UniformModel>(v.model);
  Json out = Json::object();
  if (v.observation && !uniform) {
    out["type"] = "combined";
    out["weight"] = v.weight;
    out["model"] = model_json(v.model, cs);
    out["observation"] = observation_json(*v.observation, cs);
    return out;
  }
  Json body = v.observation ? observation_json(*v.observation, cs) : model_json(v.model, cs);
  out["type"] = body["type"];
  out["weight"] = v.weight;
  for (auto it = body.begin(); it != body.end(); ++it) {
    if (it.key() != "type") out[it.key()] = it.value();
  }
  return out;
}

}  // namespace

Profile parse_profile(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw Error(Errc::parse_error, e.what());
  }
  const Where top{std::nullopt, ""};
  if (!doc.is_object()) top.fail(Errc::parse_error, "a profile document must be an object");
  if (doc.contains("format")) {
    const Json& f = doc.at("format");
    if (!f.is_number_integer() || f.get<int>() != 1) {
      Where{std::nullopt, "format"}.fail(Errc::parse_error, "unsupported format version");
    }
  }
  const Json& cj = member(doc, "candidates", top);
  if (!cj.is_array()) Where{std::nullopt, "candidates"}.fail(Errc::parse_error, "expected a list");
  std::vector<std::string> cand_names;
  for (const auto& c : cj) {
    if (!c.is_string()) {
      Where{std::nullopt, "candidates"}.fail(Errc::parse_error, "names must be strings");
    }
    cand_names.push_back(c.get<std::string>());
  }
  Profile profile;
  profile.candidates = CandidateSet(std::move(cand_names));
  const Json& vj = member(doc, "voters", top);
  if (!vj.is_array()) Where{std::nullopt, "voters"}.fail(Errc::parse_error, "expected a list");
  if (vj.empty()) Where{std::nullopt, "voters"}.fail(Errc::validation_error, "no voters");
  for (std::size_t i = 0; i < vj.size(); ++i) {
    profile.voters.push_back(read_voter(vj[i], profile.candidates, i));
  }
  return profile;
}

std::string serialize_profile(const Profile& profile, int indent) {
  Json doc = Json::object();
  doc["format"] = 1;
  doc["candidates"] = profile.candidates.names();
  Json voters = Json::array();
  for (const auto& v : profile.voters) voters.push_back(voter_json(v, profile.candidates));
  doc["voters"] = std::move(voters);
  return doc.dump(indent) + "\n";
}

Profile load_profile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::parse_error, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_profile(buf.str());
}

void save_profile(const Profile& profile, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::parse_error, "cannot write '" + path + "'");
  out << serialize_profile(profile);
}

Profile ratings_to_partitions(const std::vector<RatingRow>& rows, std::size_t top_m,
                              RatingsMode mode) {
  if (top_m < 2) throw Error(Errc::invalid_parameter, "keep at least 2 items");
  std::map<std::string, std::size_t> frequency;
  for (const auto& r : rows) ++frequency[r.item];
  std::vector<std::pair<std::string, std::size_t>> items(frequency.begin(), frequency.end());
  std::stable_sort(items.begin(), items.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  if (items.size() > top_m) items.resize(top_m);
  if (items.size() < 2) throw Error(Errc::empty_input, "fewer than 2 rated items");

  std::vector<std::string> kept;
  for (const auto& [name, n] : items) kept.push_back(name);
  CandidateSet cs(kept);

  // Ratings per voter in first-appearance order; a repeated (voter, item)
  // keeps the last rating.
  std::vector<std::string> voter_order;
  std::unordered_map<std::string, std::map<Candidate, double>> by_voter;
  for (const auto& r : rows) {
    const auto c = cs.find(r.item);
    if (!c) continue;
    auto [it, fresh] = by_voter.try_emplace(r.voter);
    if (fresh) voter_order.push_back(r.voter);
    it->second[*c] = r.rating;
  }

  Profile profile{cs, {}};
  for (const auto& name : voter_order) {
    const auto& ratings = by_voter[name];
    if (ratings.empty()) continue;
    if (mode == RatingsMode::full && ratings.size() != cs.size()) continue;
    std::map<double, std::vector<Candidate>, std::greater<>> groups;
    for (const auto& [c, rating] : ratings) groups[rating].push_back(c);
    PartitionedPreference pref;
    for (auto& [rating, bucket] : groups) pref.buckets.push_back(std::move(bucket));
    if (mode == RatingsMode::partial) {
      for (Candidate c = 0; c < cs.size(); ++c) {
        if (!ratings.contains(c)) pref.missing.push_back(c);
      }
    }
    profile.voters.push_back(Voter{UniformModel{}, Observation(std::move(pref)), 1});
  }
  if (profile.voters.empty()) throw Error(Errc::empty_input, "no voter rated the kept items");
  return profile;
}

std::vector<RatingRow> parse_ratings_csv(std::string_view text) {
  std::vector<RatingRow> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto a = line.find(',');
    const auto b = a == std::string::npos ? a : line.find(',', a + 1);
    if (b == std::string::npos) {
      throw Error(Errc::parse_error, "line " + std::to_string(lineno) + ": expected voter,item,rating");
    }
    const std::string value = line.substr(b + 1);
    char* end = nullptr;
    const double rating = std::strtod(value.c_str(), &end);
    if (value.empty() || end != value.c_str() + value.size()) {
      if (rows.empty() && lineno == 1) continue;  // header
      throw Error(Errc::parse_error, "line " + std::to_string(lineno) + ": bad rating '" + value + "'");
    }
    rows.push_back({line.substr(0, a), line.substr(a + 1, b - a - 1), rating});
  }
  if (rows.empty()) throw Error(Errc::empty_input, "no ratings");
  return rows;
}

}  // namespace mew
