#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "f237/cli.hpp"

using namespace f237;

namespace {
std::vector<long> parse_longs(const std::string& s) {
  std::vector<long> v;
  std::stringstream ss(s);
  std::string t;
  while (std::getline(ss, t, ','))
    if (!t.empty()) v.push_back(std::stol(t));
  return v;
}

std::vector<std::string> parse_words(const std::string& s) {
  std::vector<std::string> v;
  std::stringstream ss(s);
  std::string t;
  while (std::getline(ss, t, ','))
    if (!t.empty()) v.push_back(t);
  return v;
}

std::string scalar(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

// plain text: one key per line, arrays of scalars joined, arrays of objects one per line
void print_text(const json& doc) {
  for (auto& [k, v] : doc.items()) {
    if (v.is_array() && std::all_of(v.begin(), v.end(), [](const json& e) { return e.is_primitive(); })) {
      std::cout << k << ":";
      for (auto& e : v) std::cout << " " << scalar(e);
      std::cout << "\n";
    } else if (v.is_array()) {
      std::cout << k << ":\n";
      for (auto& e : v) std::cout << "  " << e.dump() << "\n";
    } else {
      std::cout << k << ": " << scalar(v) << "\n";
    }
  }
}

int emit(const json& doc, bool as_json) {
  if (as_json)
    std::cout << doc.dump(2) << "\n";
  else
    print_text(doc);
  return doc.value("ok", false) ? 0 : 1;
}
}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"f237: Fermat (2,3,7) descent, Klein quartic twists and their Jacobians"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "JSON output")->configurable(false);

  long box = 1000;
  auto* classify = app.add_subcommand("classify-cns49", "CM j-invariants from the ns(49) Thue box search");
  classify->add_option("--box", box, "Thue box half-width")->check(CLI::PositiveNumber);

  auto* fermat = app.add_subcommand("fermat", "generalized Fermat equations a^2 + tag b^3 = 27 c^7");
  fermat->require_subcommand(1);
  auto* fsearch = fermat->add_subcommand("search", "search solutions with |c| <= c-max");
  int tag = 28;
  long cmax = 300;
  bool primitive = false;
  fsearch->add_option("--tag", tag, "28 or 196")->check(CLI::IsMember({28, 196}));
  fsearch->add_option("--cmax", cmax, "bound on |c|")->check(CLI::PositiveNumber);
  fsearch->add_flag("--primitive", primitive, "all primitive solutions, not only star");

  auto* curves = app.add_subcommand("curves", "Frey curves attached to a solution");
  curves->require_subcommand(1);
  auto* cbuild = curves->add_subcommand("build", "Frey curve, minimal twist, j and Kraus pair");
  std::string solution = "1,-1,-1";
  int ctag = 28;
  cbuild->add_option("--solution", solution, "a,b,c");
  cbuild->add_option("--tag", ctag, "28 or 196")->check(CLI::IsMember({28, 196}));

  auto* cong = app.add_subcommand("congruence", "trace tables and mod-7 congruences");
  cong->require_subcommand(1);
  cong->add_subcommand("table", "a_l of the rational newforms at l in {3,5,11,13}");

  auto* cartan = app.add_subcommand("cartan", "Cartan and exotic groups");
  cartan->require_subcommand(1);
  auto* cverify = cartan->add_subcommand("verify", "orders, exotic group, subspace lemma");
  long cp = 7;
  cverify->add_option("--p", cp, "odd prime <= 13");

  auto* quartic = app.add_subcommand("quartic", "plane quartic models");
  quartic->require_subcommand(1);
  auto* qpoints = quartic->add_subcommand("points", "rational points of bounded height");
  std::string model = "XE3";
  long height = 10;
  qpoints->add_option("--model", model, "XE1..XE4");
  qpoints->add_option("--height", height, "coordinate bound")->check(CLI::PositiveNumber);

  auto* jac = app.add_subcommand("jacobian", "Jacobian over F_p");
  jac->require_subcommand(1);
  auto* jzeta = jac->add_subcommand("zeta", "L-polynomial and #J(F_p)");
  std::string jmodel = "XE3", check = "D4-relation";
  long jp = 13;
  jzeta->add_option("--model", jmodel, "XE1..XE4");
  jzeta->add_option("--p", jp, "good prime");
  auto* jrel = jac->add_subcommand("relation", "relation check among known divisor classes");
  jrel->add_option("--model", jmodel, "XE3");
  jrel->add_option("--p", jp, "good prime");
  jrel->add_option("--check", check, "D4-relation");

  auto* sieve = app.add_subcommand("sieve", "Mordell-Weil sieve");
  sieve->require_subcommand(1);
  auto* srun = sieve->add_subcommand("run", "intersect coset systems at p and auxiliary primes");
  std::string smodel = "XE3", aux = "23", gens = "D1,D2,D3";
  long sp = 11;
  srun->add_option("--model", smodel, "XE2, XE3 or XE4");
  srun->add_option("--p", sp, "target prime");
  srun->add_option("--aux", aux, "comma-separated auxiliary primes");
  srun->add_option("--gens", gens, "D1,D2,D3 on XE3; P1 on XE2 and XE4");

  auto* vall = app.add_subcommand("verify-all", "run the acceptance checks");
  std::string config, only;
  bool timings = false, mutate = false;
  int jobs = 0;
  vall->add_option("--config", config, "JSON config file")->check(CLI::ExistingFile);
  vall->add_option("--only", only, "comma-separated check ids");
  vall->add_option("--jobs", jobs, "concurrent checks");
  vall->add_flag("--timings", timings, "include runtimes");
  vall->add_flag("--mutate-e2", mutate, "perturb E2 (sensitivity run)");

  for (auto* s : {classify, fsearch, cbuild, cverify, qpoints, jzeta, jrel, srun, vall})
    s->add_flag("--json", as_json, "JSON output");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*classify) return emit(cmd_classify_cns49(box), as_json);
    if (*fsearch) return emit(cmd_fermat_search(tag, cmax, primitive), as_json);
    if (*cbuild) {
      auto v = parse_words(solution);
      if (v.size() != 3) throw std::invalid_argument("--solution needs a,b,c");
      return emit(cmd_curves_build(v[0], v[1], v[2], ctag), as_json);
    }
    if (*cong) return emit(cmd_congruence_table(), as_json);
    if (*cverify) return emit(cmd_cartan_verify(cp), as_json);
    if (*qpoints) return emit(cmd_quartic_points(model_index(model), height), as_json);
    if (*jzeta) return emit(cmd_jacobian_zeta(model_index(jmodel), jp), as_json);
    if (*jrel) {
      if (model_index(jmodel) != 3 || check != "D4-relation")
        throw std::invalid_argument("only --model XE3 --check D4-relation is available");
      return emit(cmd_jacobian_relation(jp), as_json);
    }
    if (*srun) return emit(cmd_sieve_run(model_index(smodel), sp, parse_longs(aux), parse_words(gens)), as_json);
    if (*vall) {
      RunConfig cfg;
      if (!config.empty()) {
        std::ifstream in(config);
        cfg = RunConfig::from_json(json::parse(in));
      }
      if (!only.empty())
        for (long i : parse_longs(only)) cfg.only.push_back(static_cast<int>(i));
      if (jobs > 0) cfg.jobs = jobs;
      if (mutate) cfg.mutate_e2 = true;
      cfg.validate();
      auto reps = verify_all(cfg);
      auto doc = report_json(reps, cfg, timings);
      if (as_json)
        std::cout << doc.dump(2) << "\n";
      else
        for (auto& r : reps) std::cout << report_line(r, timings) << "\n";
      return doc["ok"].get<bool>() ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
