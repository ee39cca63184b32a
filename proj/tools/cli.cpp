#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>

#include "CLI11.hpp"

#include "qrsum/bounds.hpp"
#include "qrsum/char_sums.hpp"
#include "qrsum/error.hpp"
#include "qrsum/io.hpp"
#include "qrsum/search.hpp"
#include "qrsum/sumset.hpp"
#include "qrsum/sweeps.hpp"

namespace qrsum::cli {

namespace {

using io::json;

struct Options {
  std::int64_t p = 0;
  std::vector<std::int64_t> tuple;
  std::size_t k = 4;
  std::size_t bins = 40;
  std::uint64_t samples = 0;
  std::uint64_t budget = EnumerationOptions{}.budget;
  std::uint64_t seed = kDefaultSeed;
  int workers = 0;
  std::string output;
  std::string format;
  std::int64_t from = 3;
  std::int64_t to = 61;
  std::int64_t min_a = 2;
  std::int64_t min_b = 2;
  bool symmetric = false;
  bool no_theorem1 = false;
  bool no_lemma5 = false;
  std::uint64_t node_limit = 1'000'000'000;
  bool timing = false;
  std::string report_dir;
  std::vector<std::int64_t> set_a;
  std::vector<std::int64_t> set_b;
  double eta = 0.25;
  double delta = 1.0;
  std::vector<std::int64_t> unconditional_primes = {11, 31, 101};
  std::vector<std::int64_t> conditional_primes = {31, 101, 499};
  std::uint64_t pairs = 1000;
  std::uint64_t instances = 500;
  std::int64_t theorem2_max = 1'000'000;
};

// Result of one command: text to emit and whether every check held.
struct Outcome {
  std::string text;
  bool ok = true;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int default_workers() {
  if (const char* env = std::getenv(kWorkersEnv)) {
    try {
      return std::max(0, std::stoi(env));
    } catch (const std::exception&) {
    }
  }
  return 0;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

EnumerationMode mode_of(const Options& o) {
  if (o.samples == 0) return Exhaustive{};
  return Sampled{o.samples, o.seed};
}

SearchConfig search_config(const Options& o, Prime p) {
  SearchConfig c{p};
  c.min_size_a = o.min_a;
  c.min_size_b = o.min_b;
  c.use_theorem1_pruning = !o.no_theorem1;
  c.use_lemma5_pruning = !o.no_lemma5;
  c.symmetric_only = o.symmetric;
  c.node_limit = o.node_limit;
  c.worker_count = o.workers;
  return c;
}

bool want_csv(const Options& o, const char* fallback) {
  const std::string f = o.format.empty() ? fallback : o.format;
  return f == "csv";
}

void require_json(const Options& o, const char* cmd) {
  if (!o.format.empty() && o.format != "json")
    throw UsageError(std::string(cmd) + " only writes json; csv is available for hist, sweep and verify-range");
}

// Both bounds are decided from the extreme sums, which is enough because
// they are monotone in S.
bool distribution_within_bounds(const SumDistribution& dist) {
  if (dist.total == 0) return true;
  const auto lo = dist.min_value(), hi = dist.max_value();
  bool ok = weil_holds(lo, dist.k, dist.modulus) && weil_holds(hi, dist.k, dist.modulus);
  if (dist.k % 2 == 0) ok = ok && wan_holds(hi, dist.k, dist.modulus);
  return ok;
}

Outcome cmd_charsum(const Options& o) {
  require_json(o, "charsum");
  const Prime p(o.p);
  const KTuple t(p, o.tuple);
  const auto rec = char_sum(t, p);
  json j = io::to_json(rec);
  bool ok = rec.weil_ok.value_or(true) && rec.wan_ok.value_or(true);
  if (t.distinct()) {
    const auto shifted = shift_reduced_sum(t, p);
    j["shift_reduced"] = shifted;
    ok = ok && shifted == rec.value + 1;
  } else {
    j["shift_reduced"] = nullptr;
  }
  return {dump(j), ok};
}

Outcome cmd_ck(const Options& o) {
  require_json(o, "ck");
  const Prime p(o.p);
  const auto ck = ck_empirical(o.k, p, mode_of(o), {o.budget, o.workers});
  json j = io::to_json(ck, o.k, p, o.samples == 0);
  bool ok = weil_holds(ck.max_sum, o.k, p);
  j["weil_ok"] = ok;
  if (o.k % 2 == 0 && o.k >= 2) {
    const bool wan = wan_holds(ck.max_sum, o.k, p);
    j["wan_ok"] = wan;
    ok = ok && wan;
  } else {
    j["wan_ok"] = nullptr;
  }
  return {dump(j), ok};
}

Outcome cmd_hist(const Options& o) {
  if (o.k % 2 || o.k < 4) throw Error(ErrorCode::OddK, "vertical histograms need an even k >= 4");
  if (o.bins < 2) throw Error(ErrorCode::InvalidArgument, "need at least two bins");
  const Prime p(o.p);
  const auto dist = sum_distribution(o.k, p, mode_of(o), {o.budget, o.workers});
  const auto h = histogram_of(dist, o.bins);
  const bool ok = distribution_within_bounds(dist);
  if (want_csv(o, "json")) return {io::histogram_csv(h), ok};
  json j = {{"p", p.value()}, {"k", o.k}, {"mode", o.samples == 0 ? "exhaustive" : "sampled"}};
  if (o.samples) j["seed"] = o.seed;
  j["histogram"] = io::to_json(h);
  j["semicircle_discrepancy"] = o.k == 4 ? json(semicircle_discrepancy(dist)) : json(nullptr);
  j["bounds_ok"] = ok;
  return {dump(j), ok};
}

Outcome cmd_sweep(const Options& o) {
  const auto sweep = horizontal_sweep(o.tuple, o.from, o.to, o.bins, o.workers);
  bool ok = true;
  for (const auto& pt : sweep.points) {
    const Prime p(pt.p);
    ok = ok && weil_holds(pt.sum, o.tuple.size(), p) && wan_holds(pt.sum, o.tuple.size(), p);
  }
  if (want_csv(o, "json")) return {io::histogram_csv(sweep.histogram), ok};
  json j = io::to_json(sweep);
  j["shifts"] = o.tuple;
  j["from"] = o.from;
  j["to"] = o.to;
  j["bounds_ok"] = ok;
  return {dump(j), ok};
}

Outcome cmd_sumset(const Options& o) {
  require_json(o, "sumset");
  const Prime p(o.p);
  const FpSet a(p, o.set_a), b(p, o.set_b);
  const auto prof = build_profile(a, b);
  json j = io::to_json(prof, a, b);
  json checks = json::object();
  bool ok = true;
  auto record = [&](const std::string& name, bool passed) {
    checks[name] = passed;
    ok = ok && passed;
  };
  for (double theta : kSweepThetas) {
    record("holder_" + io::format_double(theta), check_holder(prof, theta));
    record("kappa_one_" + io::format_double(theta), check_kappa_one(prof, theta));
  }
  record("kappa_two", check_kappa_two(prof));
  record("tau_bound", check_tau_bound(prof));
  j["unconditional"] = checks;

  const bool in_residues = check_subset_residues(a, b);
  j["sumset_in_residues"] = in_residues;
  if (in_residues) {
    const auto cert = certify_pair(a, b);
    j["certificate"] = io::to_json(cert);
    ok = ok && cert.all_passed;
  } else {
    j["certificate"] = nullptr;
  }
  const bool decomposition = prof.support == residue_set(p);
  j["decomposes_residues"] = decomposition;
  if (decomposition && a.size() >= 2 && b.size() >= 2) ok = false;
  return {dump(j), ok};
}

Outcome cmd_bounds(const Options& o) {
  require_json(o, "bounds");
  const Prime p(o.p);
  json j = {{"p", p.value()}};
  j["size_range"] = io::to_json(admissible_size_range(p));
  j["theorem1"] = {{"lower", theorem1_lower(p)}, {"upper", theorem1_upper(p)}};
  j["theorem2_lower_bound"] = theorem2_lower_bound(p);
  const auto t3 = theorem3_bounds(o.eta, p);
  j["theorem3"] = {{"eta", o.eta}, {"energy_min", t3.energy_min}, {"size_min", t3.size_min}};
  const auto db = proposition_delta_bounds(o.delta, p);
  j["delta_bounds"] = {{"delta", o.delta},
                       {"lower_A", db.lower_a},
                       {"upper_A", db.upper_a},
                       {"lower_B", db.lower_b},
                       {"upper_B", db.upper_b}};
  bool ok = true;
  if (!o.set_a.empty() || !o.set_b.empty()) {
    const auto cert = certify_pair(FpSet(p, o.set_a), FpSet(p, o.set_b));
    j["certificate"] = io::to_json(cert);
    ok = cert.all_passed;
  }
  return {dump(j), ok};
}

Outcome cmd_search(const Options& o) {
  require_json(o, "search");
  const Prime p(o.p);
  const auto report = search(search_config(o, p));
  json j = io::to_json(report);
  const bool found = !report.decompositions_found.empty();
  j["verdict"] = to_string(found ? Verdict::Found : report.exhaustive ? Verdict::NoDecomposition
                                                                        : Verdict::Inconclusive);
  // Singleton decompositions always exist, so they are not a surprise.
  const bool surprise = found && o.min_a >= 2 && o.min_b >= 2;
  return {dump(j), !surprise};
}

Outcome cmd_verify_range(const Options& o, std::ostream& err) {
  if (!o.format.empty() && o.format != "csv" && o.format != "json")
    throw UsageError("format must be json or csv");
  if (o.from > o.to) throw UsageError("--from must not exceed --to");
  auto templ = search_config(o, Prime(3));
  const auto rows = verify_conjecture_range(o.from, o.to, templ);
  bool ok = true;
  for (const auto& r : rows) {
    if (r.verdict != Verdict::Found) continue;
    ok = false;
    for (const auto& d : r.report.decompositions_found)
      err << "FOUND p=" << r.p << " A=" << json(d.a).dump() << " B=" << json(d.b).dump() << "\n";
  }
  if (!o.report_dir.empty()) {
    std::filesystem::create_directories(o.report_dir);
    for (const auto& r : rows) {
      std::ofstream f(std::filesystem::path(o.report_dir) / ("search_p" + std::to_string(r.p) + ".json"));
      f << dump(io::to_json(r.report));
    }
  }
  if (want_csv(o, "csv")) return {io::range_csv(rows, o.timing), ok};
  json arr = json::array();
  for (const auto& r : rows) {
    json row = {{"p", r.p}, {"verdict", to_string(r.verdict)}, {"nodes", r.nodes}};
    row["seconds"] = o.timing ? json(r.seconds) : json(nullptr);
    row["report"] = io::to_json(r.report);
    arr.push_back(std::move(row));
  }
  return {dump(arr), ok};
}

Outcome cmd_verify_lemmas(const Options& o) {
  require_json(o, "verify-lemmas");
  json j = {{"seed", o.seed}};
  bool ok = true;
  json uncond = json::array();
  for (auto q : o.unconditional_primes) {
    const auto s = sweep_unconditional(Prime(q), o.pairs, o.seed, o.workers);
    ok = ok && s.failures() == 0;
    uncond.push_back(io::to_json(s));
  }
  j["unconditional"] = uncond;
  json cond = json::array();
  for (auto q : o.conditional_primes) {
    const auto s = sweep_conditional(Prime(q), o.instances, o.seed, o.workers);
    ok = ok && s.failures() == 0 && s.generated == s.requested;
    cond.push_back(io::to_json(s));
  }
  j["conditional"] = cond;
  if (o.theorem2_max > 0) {
    const auto step = verify_theorem2_step(o.theorem2_max);
    ok = ok && step.holds;
    j["theorem2_step"] = io::to_json(step);
    j["theorem2_step"]["p_max"] = o.theorem2_max;
  }
  j["all_passed"] = ok;
  return {dump(j), ok};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  o.workers = default_workers();

  CLI::App app{"Quadratic-residue character sums and additive decompositions of the squares mod p"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  app.set_help_all_flag("--help-all", "Help for every command");
  app.add_option("--seed", o.seed, "Seed for every sampled quantity");
  app.add_option("--workers", o.workers, std::string("OpenMP workers; 0 uses the runtime default. Default from ") +
                                             kWorkersEnv);
  app.add_option("-o,--output", o.output, "Write the result to this file instead of standard output");
  app.add_option("--format", o.format, "json (default) or csv where available")
      ->check(CLI::IsMember({"json", "csv"}));

  auto prime_opt = [&](CLI::App* sub, bool required = true) {
    auto* opt = sub->add_option("--p", o.p, "Odd prime modulus");
    if (required) opt->required();
  };
  auto pruning_opts = [&](CLI::App* sub) {
    sub->add_flag("--no-theorem1", o.no_theorem1, "Disable the sqrt(p)/4 + 1/8 <= |A| <= 2 sqrt(p) - 1 size rule");
    sub->add_flag("--no-lemma5", o.no_lemma5, "Disable the |A| >= 5 rule");
    sub->add_option("--node-limit", o.node_limit, "Abort (verdict inconclusive) after this many nodes");
  };

  auto* charsum = app.add_subcommand(
      "charsum", "S_k(a; p) = sum_x chi((x+a_1)...(x+a_k)) for one shift vector, with the Weil check "
                 "|S| <= (k-1) sqrt(p), the check S <= (k-2) sqrt(p) - 1 for even k, and the shift-reduced sum");
  prime_opt(charsum);
  charsum->add_option("--tuple", o.tuple, "Shifts a_1,...,a_k")->delimiter(',')->required();

  auto* ck = app.add_subcommand("ck", "c_k(p) = max_a S_k(a; p) / sqrt(p) over pairwise-distinct shift vectors");
  prime_opt(ck);
  ck->add_option("--k", o.k, "Tuple length")->required();
  ck->add_option("--samples", o.samples, "Random tuples to draw; 0 enumerates all");
  ck->add_option("--budget", o.budget, "Largest exhaustive enumeration allowed");

  auto* hist = app.add_subcommand(
      "hist", "Histogram of (S_k(a; p) + 1)/sqrt(p) over shift vectors a at fixed p, with the semicircle "
              "density sqrt(4 - t^2)/(2 pi) for k = 4 and the sup-norm CDF discrepancy");
  prime_opt(hist);
  hist->add_option("--k", o.k, "Even tuple length >= 4");
  hist->add_option("--bins", o.bins, "Equal-width bins on [-(k-2), k-2]");
  hist->add_option("--samples", o.samples, "Random tuples to draw; 0 enumerates all");
  hist->add_option("--budget", o.budget, "Largest exhaustive enumeration allowed");

  auto* sweep = app.add_subcommand(
      "sweep", "Histogram of (S_k(a; p) + 1)/sqrt(p) for fixed shifts a as p runs over the primes in a range");
  sweep->add_option("--tuple", o.tuple, "Shifts a_1,...,a_k (even k >= 4)")->delimiter(',')->required();
  sweep->add_option("--from", o.from, "Smallest p");
  sweep->add_option("--to", o.to, "Largest p");
  sweep->add_option("--bins", o.bins, "Equal-width bins on [-(k-2), k-2]");

  auto* sumset = app.add_subcommand(
      "sumset", "Representation function r(x) of A + B with M_0 = |A+B|, M_1 = |A||B|, energy E(A,B) and the "
                "count of unique sums, checked against the unconditional inequalities; when A + B lies in the "
                "squares the two conditional size lemmas are certified too");
  prime_opt(sumset);
  sumset->add_option("--A", o.set_a, "Elements of A")->delimiter(',')->required();
  sumset->add_option("--B", o.set_b, "Elements of B")->delimiter(',')->required();

  auto* bounds = app.add_subcommand(
      "bounds", "Sizes a decomposition A + B = R_p would need: the sqrt(p)/4 + 1/8 <= |A| <= 2 sqrt(p) - 1 range, "
                "the feasible (|A|,|B|) lattice, sqrt(p)/log 2 - 1.6, the energy bounds in eta and the bounds for "
                "|A| = delta |B|; optionally certifies a given pair");
  prime_opt(bounds);
  bounds->add_option("--eta", o.eta, "eta in [0, 1/2)");
  bounds->add_option("--delta", o.delta, "delta in (1/8, 1]");
  bounds->add_option("--A", o.set_a, "Optional A with A + B inside the squares")->delimiter(',');
  bounds->add_option("--B", o.set_b, "Optional B")->delimiter(',');

  auto* search_cmd = app.add_subcommand(
      "search", "Exhaustive branch-and-bound for pairs with A + B = R_p, the set of nonzero squares mod p");
  prime_opt(search_cmd);
  search_cmd->add_option("--min-a", o.min_a, "Smallest |A|");
  search_cmd->add_option("--min-b", o.min_b, "Smallest |B|");
  search_cmd->add_flag("--symmetric", o.symmetric, "Only look for A + A = R_p");
  pruning_opts(search_cmd);

  auto* range = app.add_subcommand(
      "verify-range", "Search every odd prime in a range for A + B = R_p with |A|, |B| >= 2 and tabulate verdicts");
  range->add_option("--from", o.from, "Smallest p");
  range->add_option("--to", o.to, "Largest p");
  range->add_flag("--timing", o.timing, "Fill the seconds column (output then varies between runs)");
  range->add_option("--report-dir", o.report_dir, "Also write one search report JSON per prime here");
  pruning_opts(range);

  auto* lemmas = app.add_subcommand(
      "verify-lemmas", "Seeded sweeps of the unconditional sumset inequalities on random pairs, the conditional "
                       "size lemmas on random pairs with A + B inside the squares, and the numeric inequality "
                       "behind sqrt(p)/log 2 - 1.6 for 37 <= p <= p_max");
  lemmas->add_option("--primes", o.unconditional_primes, "Primes for the unconditional sweep")->delimiter(',');
  lemmas->add_option("--pairs", o.pairs, "Random pairs per prime");
  lemmas->add_option("--conditional-primes", o.conditional_primes, "Primes for the conditional sweep")
      ->delimiter(',');
  lemmas->add_option("--instances", o.instances, "Instances per prime");
  lemmas->add_option("--theorem2-max", o.theorem2_max, "Largest p for the numeric step; 0 skips it");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    if (e.get_exit_code() == 0) return 0;
    err << "run with --help for usage\n";
    return 2;
  }

  Outcome result;
  try {
    auto* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    if (name == "charsum") result = cmd_charsum(o);
    else if (name == "ck") result = cmd_ck(o);
    else if (name == "hist") result = cmd_hist(o);
    else if (name == "sweep") result = cmd_sweep(o);
    else if (name == "sumset") result = cmd_sumset(o);
    else if (name == "bounds") result = cmd_bounds(o);
    else if (name == "search") result = cmd_search(o);
    else if (name == "verify-range") result = cmd_verify_range(o, err);
    else result = cmd_verify_lemmas(o);
  } catch (const Error& e) {
    err << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  if (o.output.empty()) {
    out << result.text;
  } else {
    std::ofstream f(o.output, std::ios::binary);
    if (!f) {
      err << "error: cannot write " << o.output << "\n";
      return 2;
    }
    f << result.text;
  }
  return result.ok ? 0 : 1;
}

}  // namespace qrsum::cli
