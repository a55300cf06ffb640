// freerot: command-line front end for the partition lattice, the cumulant
// transforms and the verification scenarios.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "freerot/cumulants.hpp"
#include "freerot/partition.hpp"
#include "freerot/scenarios.hpp"

using namespace freerot;
using nlohmann::json;

namespace {

std::vector<Rational> parse_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw std::invalid_argument("empty entry in list '" + text + "'");
    out.push_back(parse_rational(item.substr(b, e - b + 1)));
  }
  return out;
}

std::vector<Scalar> to_scalars(const std::vector<Rational>& v) { return {v.begin(), v.end()}; }

json scalars_json(const std::vector<Scalar>& v) {
  json a = json::array();
  for (const auto& s : v) a.push_back(s.to_string());
  return a;
}

void append_line(const std::string& path, const json& j) {
  std::ofstream f(path, std::ios::app);
  f << j.dump() << '\n';
  if (!f) throw std::runtime_error("cannot append to " + path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact free-probability engine and *-algebra proof kernel"};
  app.require_subcommand(1);

  int d = 2, n = 4, n_max = 6, b_degree = 2, degree_bound = 4, order = 6;
  unsigned threads = 1;
  std::uint64_t seed = 1;
  std::string out_path, transcript_dir, kappa_text, moments_text, counts_text = "4,100,10000";
  bool list = false, mobius = false;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--out", out_path, "Append the JSON result as one line to this file");
    sub->add_option("--threads", threads, "Worker threads")->check(CLI::Range(1u, 256u));
    sub->add_option("--seed", seed, "Seed for randomized checks");
  };

  auto* nc = app.add_subcommand("nc", "Enumerate NC(n) and its Möbius values");
  nc->add_option("--n", n, "Ground set size")->required();
  nc->add_flag("--list", list, "Print the partitions");
  nc->add_flag("--mobius", mobius, "Print mu(p, 1_n) for each partition");
  common(nc);

  auto* cum = app.add_subcommand("cumulants", "Moment and cumulant transforms");
  cum->require_subcommand(1);
  auto* convert = cum->add_subcommand("convert", "Convert between moments and free cumulants");
  convert->add_option("--kappa", kappa_text, "Comma-separated cumulants kappa_1..kappa_N");
  convert->add_option("--moments", moments_text, "Comma-separated moments m_1..m_N");
  convert->add_option("--order", order, "Number of moments to produce from cumulants");
  common(convert);
  auto* semi = cum->add_subcommand("check-semicircle", "Decide whether a truncated law is semicircular");
  semi->add_option("--kappa", kappa_text, "Comma-separated cumulants")->required();
  common(semi);

  auto* verify = app.add_subcommand("verify", "Run a verification scenario");
  verify->require_subcommand(1);
  std::map<std::string, CLI::App*> scenarios;
  for (const char* name : {"even", "odd", "d2", "hplus", "ominus", "equiv", "semicircle"}) {
    auto* sub = verify->add_subcommand(name);
    sub->add_option("--d", d, "Matrix size");
    sub->add_option("--n", n, "Cumulant order");
    sub->add_option("--n-max", n_max, "Largest cumulant order");
    sub->add_option("--b-degree", b_degree, "Total degree of interleaved monomials");
    sub->add_option("--degree-bound", degree_bound, "Membership search degree bound");
    sub->add_option("--transcript-dir", transcript_dir, "Write transcripts here, named by hash");
    common(sub);
    scenarios[name] = sub;
  }

  auto* clt = app.add_subcommand("clt", "Free central limit demo in exact arithmetic");
  clt->add_option("--order", order, "Highest moment")->check(CLI::Range(2, 8));
  clt->add_option("--counts", counts_text, "Comma-separated perfect-square counts");
  clt->add_option("--kappa", kappa_text, "Base cumulants (default: centred free Poisson)");
  common(clt);

  CLI11_PARSE(app, argc, argv);

  try {
    json result;
    int code = 0;
    if (nc->parsed()) {
      const auto lattice = NCLattice::get(n);
      result = {{"n", n}, {"count", lattice->partitions().size()}};
      if (list || mobius) {
        json rows = json::array();
        for (std::size_t k = 0; k < lattice->partitions().size(); ++k) {
          json r = {{"partition", lattice->partitions()[k].to_string()}};
          if (mobius) r["mobius"] = lattice->mobius(k);
          rows.push_back(r);
        }
        result["partitions"] = rows;
      }
    } else if (convert->parsed()) {
      if (kappa_text.empty() == moments_text.empty()) throw std::invalid_argument("give exactly one of --kappa, --moments");
      if (!kappa_text.empty()) {
        const DistributionSpec spec(to_scalars(parse_list(kappa_text)));
        result = {{"kappa", scalars_json(spec.cumulants())}, {"moments", scalars_json(moments_from_cumulants(spec, order))}};
      } else {
        const auto m = to_scalars(parse_list(moments_text));
        result = {{"moments", scalars_json(m)}, {"kappa", scalars_json(cumulants_from_moments(m).cumulants())}};
      }
    } else if (semi->parsed()) {
      const auto check = is_semicircular(DistributionSpec(to_scalars(parse_list(kappa_text))));
      result = {{"semicircular", check.semicircular}, {"mean", check.mean.to_string()},
                {"variance", check.variance.to_string()}};
    } else if (clt->parsed()) {
      std::vector<Integer> counts;
      for (const auto& c : parse_list(counts_text)) {
        if (c.get_den() != 1) throw std::invalid_argument("counts must be integers");
        counts.push_back(c.get_num());
      }
      std::optional<DistributionSpec> base;
      if (!kappa_text.empty()) base = DistributionSpec(to_scalars(parse_list(kappa_text)));
      const Report rep = clt_demo(order, counts, base);
      result = rep.to_json();
      code = rep.exit_code();
    } else {
      ScenarioOptions opt;
      opt.threads = threads;
      opt.seed = seed;
      if (!transcript_dir.empty()) opt.transcript_dir = transcript_dir;
      Report rep;
      if (scenarios["even"]->parsed()) rep = scenario_even(d, n, opt);
      else if (scenarios["odd"]->parsed()) rep = scenario_odd(d, n, opt);
      else if (scenarios["d2"]->parsed()) rep = scenario_d2_remark(n, opt);
      else if (scenarios["hplus"]->parsed()) rep = scenario_hplus_preservation(d, n_max, b_degree, opt);
      else if (auto* om = scenarios["ominus"]; om->parsed())
        rep = scenario_o_minus_one(om->count("--d") ? d : 3, degree_bound, opt);
      else if (scenarios["equiv"]->parsed()) rep = scenario_relation_equivalence(d, opt);
      else rep = scenario_semicircle_conclusion(d, n_max, opt);
      result = rep.to_json();
      code = rep.exit_code();
      std::cerr << rep.scenario << ": " << result["totals"].dump() << " exit " << code << '\n';
    }
    std::cout << result.dump(2) << '\n';
    if (!out_path.empty()) append_line(out_path, result);
    return code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
