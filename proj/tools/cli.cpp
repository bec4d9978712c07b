#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "mew/engine.hpp"
#include "mew/error.hpp"
#include "mew/generators.hpp"
#include "mew/mpw.hpp"
#include "mew/oracle.hpp"
#include "mew/profile_io.hpp"

namespace mew::cli {

namespace {

using Json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::parse_error, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// "-" means stdout.
void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::parse_error, "cannot write '" + path + "'");
  f << text;
}

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(12) << v;
  return s.str();
}

std::string join_names(const Profile& p, const std::vector<Candidate>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out += (i ? " " : "") + p.candidates.name(xs[i]);
  }
  return out;
}

Json names_json(const Profile& p, const std::vector<Candidate>& xs) {
  Json a = Json::array();
  for (Candidate c : xs) a.push_back(p.candidates.name(c));
  return a;
}

struct Common {
  std::string profile;
  std::string rule;
  std::string output = "table";
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--profile", c.profile, "Profile document")->required();
  cmd->add_option("--rule", c.rule,
                  "plurality | veto | borda | k-approval:K | custom:s1,...,sm")
      ->required();
  cmd->add_option("--output", c.output, "Result format")
      ->check(CLI::IsMember({"table", "json"}));
}

int run_mew(const Common& c, bool no_pruning, bool no_grouping, std::size_t workers,
            std::size_t cw_cap, std::ostream& out) {
  const Profile profile = load_profile(c.profile);
  const ScoringRule rule = parse_rule(c.rule, profile.candidates.size());
  MewOptions opts;
  opts.pruning = !no_pruning;
  opts.grouping = !no_grouping;
  opts.rep.cover_width_cap = cw_cap;
  const MewResult r = workers > 0 ? mew_parallel(profile, rule, workers, opts)
                                  : mew(profile, rule, opts);
  const auto& names = profile.candidates;
  if (c.output == "json") {
    Json doc;
    doc["command"] = "mew";
    doc["rule"] = rule.describe();
    doc["winners"] = names_json(profile, r.winners);
    Json scores = Json::object();
    for (Candidate x = 0; x < names.size(); ++x) {
      if (r.expected_scores[x]) scores[names.name(x)] = *r.expected_scores[x];
    }
    doc["expected_scores"] = std::move(scores);
    Json pruned = Json::object();
    for (Candidate x : r.pruned) {
      pruned[names.name(x)] = {{"ub", r.bounds.ub[x]}, {"lb", r.bounds.lb[x]}};
    }
    doc["pruned"] = std::move(pruned);
    doc["stats"] = {{"voters", r.stats.voters},
                    {"groups", r.stats.groups},
                    {"groups_processed", r.stats.groups_processed},
                    {"voters_processed", r.stats.voters_processed},
                    {"prunings", r.stats.prunings},
                    {"rep_calls", r.stats.rep_calls},
                    {"wall_seconds", r.stats.wall_seconds}};
    out << doc.dump(2) << "\n";
    return kExitOk;
  }
  out << "winners: " << join_names(profile, r.winners) << "\n";
  for (Candidate w : r.winners) {
    out << "score " << names.name(w) << " " << fmt(*r.expected_scores[w]) << "\n";
  }
  out << "\ncandidate\texpected_score\n";
  for (Candidate x = 0; x < names.size(); ++x) {
    out << names.name(x) << "\t";
    if (r.expected_scores[x]) out << fmt(*r.expected_scores[x]);
    else out << "pruned (ub " << fmt(r.bounds.ub[x]) << ")";
    out << "\n";
  }
  out << "\ngroups " << r.stats.groups << ", processed " << r.stats.groups_processed
      << ", pruned " << r.stats.prunings << ", " << fmt(r.stats.wall_seconds) << " s\n";
  return kExitOk;
}

int run_mpw(const Common& c, std::uint64_t state_cap, std::ostream& out) {
  const Profile profile = load_profile(c.profile);
  const ScoringRule rule = parse_rule(c.rule, profile.candidates.size());
  MpwOptions opts;
  opts.state_cap = state_cap;
  const MpwResult r = mpw(profile, rule, opts);
  const auto& names = profile.candidates;
  if (c.output == "json") {
    Json doc;
    doc["command"] = "mpw";
    doc["rule"] = rule.describe();
    doc["winners"] = names_json(profile, r.winners);
    Json probs = Json::object();
    for (Candidate x = 0; x < names.size(); ++x) probs[names.name(x)] = r.win_probs[x];
    doc["win_probs"] = std::move(probs);
    doc["worlds_explored"] = r.worlds_explored;
    out << doc.dump(2) << "\n";
    return kExitOk;
  }
  out << "winners: " << join_names(profile, r.winners) << "\n";
  for (Candidate w : r.winners) {
    out << "probability " << names.name(w) << " " << fmt(r.win_probs[w]) << "\n";
  }
  out << "\ncandidate\twin_probability\n";
  for (Candidate x = 0; x < names.size(); ++x) {
    out << names.name(x) << "\t" << fmt(r.win_probs[x]) << "\n";
  }
  out << "\nstates " << r.worlds_explored << "\n";
  return kExitOk;
}

int run_oracle(const Common& c, std::ostream& out) {
  const Profile profile = load_profile(c.profile);
  const ScoringRule rule = parse_rule(c.rule, profile.candidates.size());
  const auto opts = default_oracle_options();
  const auto scores = oracle_expected_scores(profile, rule, opts);
  const auto wins = oracle_mpw(profile, rule, opts);
  const auto& names = profile.candidates;
  if (c.output == "json") {
    Json doc;
    doc["command"] = "oracle";
    doc["rule"] = rule.describe();
    Json s = Json::object(), w = Json::object();
    for (Candidate x = 0; x < names.size(); ++x) {
      s[names.name(x)] = scores[x];
      w[names.name(x)] = wins[x];
    }
    doc["expected_scores"] = std::move(s);
    doc["win_probs"] = std::move(w);
    out << doc.dump(2) << "\n";
    return kExitOk;
  }
  out << "candidate\texpected_score\twin_probability\n";
  for (Candidate x = 0; x < names.size(); ++x) {
    out << names.name(x) << "\t" << fmt(scores[x]) << "\t" << fmt(wins[x]) << "\n";
  }
  return kExitOk;
}

// Bench specs: comma-separated key=value pairs, e.g.
// kind=poset,m=10,n=1000,phi=0.5,p_max=0.1,rule=plurality,pruning=1,grouping=1
struct BenchSpec {
  GenSpec gen;
  std::string rule = "plurality";
  bool pruning = true;
  bool grouping = true;
  std::size_t workers = 0;
  std::string solver = "mew";
};

bool parse_flag(const std::string& v) {
  if (v == "1" || v == "on" || v == "true") return true;
  if (v == "0" || v == "off" || v == "false") return false;
  throw Error(Errc::parse_error, "expected on/off, got '" + v + "'");
}

BenchSpec parse_bench_spec(const std::string& text) {
  BenchSpec b;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw Error(Errc::parse_error, "bad bench field '" + item + "'");
    const std::string key = item.substr(0, eq);
    const std::string val = item.substr(eq + 1);
    try {
      if (key == "kind") {
        auto k = parse_gen_kind(val);
        if (!k) throw Error(Errc::parse_error, "unknown kind '" + val + "'");
        b.gen.kind = *k;
      } else if (key == "m") b.gen.m = std::stoul(val);
      else if (key == "n") b.gen.n = std::stoul(val);
      else if (key == "phi") b.gen.phi = std::stod(val);
      else if (key == "p_max" || key == "p-max") b.gen.p_max = std::stod(val);
      else if (key == "k") b.gen.k = std::stoul(val);
      else if (key == "t") b.gen.t = std::stoul(val);
      else if (key == "b") b.gen.b = std::stoul(val);
      else if (key == "seed") b.gen.seed = std::stoull(val);
      else if (key == "rule") b.rule = val;
      else if (key == "pruning") b.pruning = parse_flag(val);
      else if (key == "grouping") b.grouping = parse_flag(val);
      else if (key == "workers") b.workers = std::stoul(val);
      else if (key == "solver") {
        if (val != "mew" && val != "mpw") throw Error(Errc::parse_error, "solver is mew or mpw");
        b.solver = val;
      } else {
        throw Error(Errc::parse_error, "unknown bench field '" + key + "'");
      }
    } catch (const std::invalid_argument&) {
      throw Error(Errc::parse_error, "bad value for '" + key + "'");
    } catch (const std::out_of_range&) {
      throw Error(Errc::parse_error, "value out of range for '" + key + "'");
    }
  }
  validate(b.gen);
  return b;
}

int run_bench(const std::string& spec_arg, std::size_t repeat, const std::string& dest,
              std::ostream& out) {
  std::vector<std::string> lines;
  if (std::filesystem::exists(spec_arg)) {
    std::istringstream in(read_file(spec_arg));
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      lines.push_back(line);
    }
  } else {
    lines.push_back(spec_arg);
  }
  if (repeat == 0) throw Error(Errc::invalid_parameter, "repeat must be positive");

  std::ostringstream csv;
  csv << "kind,m,n,rule,flags,mean_seconds,stddev_seconds\n";
  for (const auto& line : lines) {
    const BenchSpec b = parse_bench_spec(line);
    const Profile profile = generate(b.gen);
    const ScoringRule rule = parse_rule(b.rule, b.gen.m);
    std::vector<double> times;
    for (std::size_t r = 0; r < repeat; ++r) {
      const auto t0 = std::chrono::steady_clock::now();
      if (b.solver == "mpw") {
        (void)mpw(profile, rule);
      } else {
        MewOptions opts;
        opts.pruning = b.pruning;
        opts.grouping = b.grouping;
        if (b.workers > 0) (void)mew_parallel(profile, rule, b.workers, opts);
        else (void)mew(profile, rule, opts);
      }
      times.push_back(
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    double mean = 0.0;
    for (double t : times) mean += t;
    mean /= static_cast<double>(times.size());
    double var = 0.0;
    for (double t : times) var += (t - mean) * (t - mean);
    const double sd = times.size() > 1 ? std::sqrt(var / static_cast<double>(times.size() - 1)) : 0.0;
    csv << to_string(b.gen.kind) << "," << b.gen.m << "," << b.gen.n << "," << rule.describe()
        << ",solver=" << b.solver << ";pruning=" << b.pruning << ";grouping=" << b.grouping
        << ";workers=" << b.workers << ";phi=" << b.gen.phi << ";p_max=" << b.gen.p_max
        << ";k=" << b.gen.k << ";t=" << b.gen.t << ";b=" << b.gen.b << ";seed=" << b.gen.seed
        << "," << std::setprecision(9) << mean << "," << sd << "\n";
  }
  write_output(dest == "csv" ? "-" : dest, csv.str(), out);
  return kExitOk;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Most expected winner of elections with uncertain preferences", "mew"};
  app.require_subcommand(1);

  Common mew_c, mpw_c, oracle_c;
  bool no_pruning = false, no_grouping = false;
  std::size_t workers = 0;
  std::size_t cw_cap = RepOptions{}.cover_width_cap;
  auto* mew_cmd = app.add_subcommand("mew", "Most expected winner");
  add_common(mew_cmd, mew_c);
  mew_cmd->add_flag("--no-pruning", no_pruning, "Disable candidate pruning");
  mew_cmd->add_flag("--no-grouping", no_grouping, "Disable voter grouping");
  mew_cmd->add_option("--parallel", workers, "Worker threads (implies no pruning)");
  mew_cmd->add_option("--cw-cap", cw_cap, "Cover width cap for poset solvers");

  std::uint64_t state_cap = MpwOptions{}.state_cap;
  auto* mpw_cmd = app.add_subcommand("mpw", "Most probable winner");
  add_common(mpw_cmd, mpw_c);
  mpw_cmd->add_option("--state-cap", state_cap, "Score-vector state cap");

  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force scores and win probabilities");
  add_common(oracle_cmd, oracle_c);

  GenSpec gen;
  std::string gen_kind, gen_out = "-";
  auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic profile");
  gen_cmd->add_option("kind", gen_kind, "Profile kind")->required();
  gen_cmd->add_option("--m", gen.m, "Candidates")->required();
  gen_cmd->add_option("--n", gen.n, "Voters")->required();
  gen_cmd->add_option("--phi", gen.phi, "Mallows dispersion");
  gen_cmd->add_option("--p-max", gen.p_max, "Pair probability ceiling for posets");
  gen_cmd->add_option("--k", gen.k, "Buckets or chain length");
  gen_cmd->add_option("--t", gen.t, "Truncated top length");
  gen_cmd->add_option("--b", gen.b, "Truncated bottom length");
  gen_cmd->add_option("--seed", gen.seed, "Seed")->required();
  gen_cmd->add_option("--out", gen_out, "Output path, - for stdout");

  std::string bench_spec, bench_out = "csv";
  std::size_t repeat = 10;
  auto* bench_cmd = app.add_subcommand("bench", "Time solvers on generated profiles");
  bench_cmd->add_option("--spec", bench_spec, "key=value,... spec or a file of specs")
      ->required();
  bench_cmd->add_option("--repeat", repeat, "Runs per spec");
  bench_cmd->add_option("--out", bench_out, "csv for stdout, or a file path");

  std::string ratings_path, ingest_mode = "partial", ingest_out = "-";
  std::size_t top_m = 0;
  auto* ingest_cmd = app.add_subcommand("ingest", "Convert voter,item,rating CSV to a profile");
  ingest_cmd->add_option("--ratings", ratings_path, "Ratings CSV")->required();
  ingest_cmd->add_option("--top-m", top_m, "Most-rated items to keep")->required();
  ingest_cmd->add_option("--mode", ingest_mode, "full or partial")
      ->check(CLI::IsMember({"full", "partial"}));
  ingest_cmd->add_option("--out", ingest_out, "Output path, - for stdout");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*mew_cmd) return run_mew(mew_c, no_pruning, no_grouping, workers, cw_cap, out);
    if (*mpw_cmd) return run_mpw(mpw_c, state_cap, out);
    if (*oracle_cmd) return run_oracle(oracle_c, out);
    if (*gen_cmd) {
      auto kind = parse_gen_kind(gen_kind);
      if (!kind) throw Error(Errc::parse_error, "unknown profile kind '" + gen_kind + "'");
      gen.kind = *kind;
      write_output(gen_out, serialize_profile(generate(gen)), out);
      return kExitOk;
    }
    if (*bench_cmd) return run_bench(bench_spec, repeat, bench_out, out);
    if (*ingest_cmd) {
      const auto rows = parse_ratings_csv(read_file(ratings_path));
      const auto mode = ingest_mode == "full" ? RatingsMode::full : RatingsMode::partial;
      write_output(ingest_out, serialize_profile(ratings_to_partitions(rows, top_m, mode)), out);
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_resource_error(e.code()) ? kExitResource : kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

int cli_main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return cli_main(args, std::cout, std::cerr);
}

}  // namespace mew::cli
