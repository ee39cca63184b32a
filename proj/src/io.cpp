#include "qrsum/io.hpp"

#include <cmath>

#include <fmt/format.h>

namespace qrsum::io {

namespace {

json optional_bool(const std::optional<bool>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

std::string format_double(double x) { return fmt::format("{}", x); }

json to_json(const CharSumRecord& rec) {
  json tuple = json::array();
  for (auto c : rec.tuple.coords()) tuple.push_back(c);
  return {{"p", rec.tuple.modulus().value()},
          {"k", rec.tuple.k()},
          {"tuple", tuple},
          {"distinct", rec.tuple.distinct()},
          {"value", rec.value},
          {"normalized", rec.normalized},
          {"shifted_normalized", rec.shifted_normalized},
          {"weil_ok", optional_bool(rec.weil_ok)},
          {"wan_ok", optional_bool(rec.wan_ok)}};
}

json to_json(const CkEstimate& ck, std::size_t k, Prime p, bool exhaustive) {
  return {{"p", p.value()},      {"k", k},         {"mode", exhaustive ? "exhaustive" : "sampled"},
          {"max_sum", ck.max_sum}, {"ck", ck.value}, {"tuples", ck.tuples}};
}

json to_json(const RepProfile& prof, const FpSet& a, const FpSet& b) {
  json nonzero = json::array();
  for (std::size_t x = 0; x < prof.rep_counts.size(); ++x)
    if (prof.rep_counts[x]) nonzero.push_back({x, prof.rep_counts[x]});
  return {{"p", prof.modulus.value()}, {"A", a.elements()},       {"B", b.elements()},
          {"support", prof.support.elements()}, {"r_nonzero", nonzero}, {"M0", prof.m0},
          {"M1", prof.m1},             {"E", prof.energy},        {"unique", prof.unique_count}};
}

json to_json(const BoundsCertificate& cert) {
  json checks = json::array();
  for (const auto& c : cert.named_checks)
    checks.push_back({{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"passed", c.passed}});
  return {{"p", cert.modulus.value()}, {"checks", checks}, {"all_passed", cert.all_passed}};
}

json to_json(const SizeRange& range) {
  json lattice = json::array();
  for (auto [a, b] : range.lattice) lattice.push_back({a, b});
  return {{"lower_A", range.lower_a},         {"upper_A", range.upper_a},   {"product_min", range.product_min},
          {"product_max", range.product_max}, {"feasible", range.feasible}, {"lattice", lattice}};
}

json to_json(const SearchReport& report) {
  const auto& c = report.config;
  json found = json::array();
  for (const auto& d : report.decompositions_found) found.push_back({{"A", d.a}, {"B", d.b}});
  // worker_count is left out: reports are identical for any worker count.
  return {{"p", c.modulus.value()},
          {"config",
           {{"min_size_A", c.min_size_a},
            {"min_size_B", c.min_size_b},
            {"use_theorem1_pruning", c.use_theorem1_pruning},
            {"use_lemma5_pruning", c.use_lemma5_pruning},
            {"symmetric_only", c.symmetric_only},
            {"node_limit", c.node_limit}}},
          {"decompositions_found", found},
          {"nodes_explored", report.nodes_explored},
          {"prune_counts", report.prune_counts},
          {"exhaustive", report.exhaustive},
          {"size_range_empty", report.size_range_empty}};
}

json to_json(const Theorem2StepReport& rep) {
  json j = {{"holds", rep.holds},
            {"primes_checked", rep.primes_checked},
            {"smallest_passing", rep.smallest_passing},
            {"tightest_prime", rep.tightest_prime},
            {"min_margin", static_cast<double>(rep.min_margin)}};
  j["first_failure"] = rep.first_failure ? json(*rep.first_failure) : json(nullptr);
  return j;
}

json to_json(const Histogram& h) {
  json bins = json::array();
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    json bin = {{"left", h.bin_edges[i]}, {"right", h.bin_edges[i + 1]}, {"count", h.counts[i]}};
    bin["reference_density"] = h.reference_density ? json((*h.reference_density)[i]) : json(nullptr);
    bins.push_back(std::move(bin));
  }
  return {{"bins", bins},           {"total", h.total},         {"mean", h.statistic_mean},
          {"variance", h.statistic_variance}, {"min", h.min_value}, {"max", h.max_value}};
}

json to_json(const SweepResult& sweep) {
  json points = json::array();
  for (const auto& pt : sweep.points)
    points.push_back({{"p", pt.p}, {"sum", pt.sum}, {"shifted_normalized", pt.shifted_normalized}});
  return {{"histogram", to_json(sweep.histogram)}, {"points", points}, {"skipped", sweep.skipped}};
}

json to_json(const UnconditionalSweep& s) {
  json holder = json::object(), kappa_one = json::object();
  for (std::size_t t = 0; t < kSweepThetas.size(); ++t) {
    holder[format_double(kSweepThetas[t])] = s.holder_failures[t];
    kappa_one[format_double(kSweepThetas[t])] = s.kappa_one_failures[t];
  }
  return {{"p", s.p},
          {"pairs", s.pairs},
          {"holder_failures", holder},
          {"kappa_one_failures", kappa_one},
          {"kappa_two_failures", s.kappa_two_failures},
          {"tau_failures", s.tau_failures},
          {"chain_failures", s.chain_failures},
          {"energy_checked", s.energy_checked},
          {"energy_mismatches", s.energy_mismatches},
          {"failures", s.failures()}};
}

json to_json(const ConditionalSweep& s) {
  return {{"p", s.p},
          {"requested", s.requested},
          {"generated", s.generated},
          {"construction_failures", s.construction_failures},
          {"ab_bound_failures", s.ab_bound_failures},
          {"p_ab_failures", s.p_ab_failures},
          {"failures", s.failures()}};
}

std::string histogram_csv(const Histogram& h) {
  std::string out = "bin_left,bin_right,count,reference_density\n";
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    out += fmt::format("{},{},{},", format_double(h.bin_edges[i]), format_double(h.bin_edges[i + 1]), h.counts[i]);
    if (h.reference_density) out += format_double((*h.reference_density)[i]);
    out += '\n';
  }
  return out;
}

std::string range_csv(const std::vector<RangeRow>& rows, bool with_timing) {
  std::string out = "p,verdict,nodes,seconds\n";
  for (const auto& r : rows)
    out += fmt::format("{},{},{},{}\n", r.p, to_string(r.verdict), r.nodes,
                       with_timing ? format_double(r.seconds) : std::string());
  return out;
}

}  // namespace qrsum::io
