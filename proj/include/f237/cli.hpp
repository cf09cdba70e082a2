#pragma once
#include <string>
#include <vector>

#include "json.hpp"

namespace f237 {

using json = nlohmann::ordered_json;

struct RunConfig {
  long c_max = 300;
  long c_max_196 = 20;
  long thue_box = 1000;
  long point_height = 100;
  std::vector<long> gcd_primes{3, 5, 11, 13, 29};
  std::vector<long> axiom_primes{3, 5, 11};
  long axiom_triples = 1000;
  long seven_bound = 100;
  std::vector<long> relation_primes{3, 5, 11};
  long sieve_p = 11;
  std::vector<long> sieve_aux{23};
  long index_lemma_instances = 200;
  unsigned long seed = 20260;
  int jobs = 1;
  bool mutate_e2 = false;  // sensitivity run: perturb a6 of E2
  std::vector<int> only;   // empty: all checks

  static RunConfig from_json(const json& j);  // unknown keys are rejected
  json to_json() const;
  void validate() const;
};

struct SubCheck {
  std::string label;
  bool pass = false;
  std::string detail;
};

struct CheckReport {
  int id = 0;
  std::string title;
  std::string statement;
  std::vector<SubCheck> subs;
  double seconds = 0;
  bool pass() const;
};

CheckReport run_check(int id, const RunConfig& cfg);
// sorted by id; runs up to cfg.jobs checks at a time
std::vector<CheckReport> verify_all(const RunConfig& cfg);
json report_json(const std::vector<CheckReport>& reps, const RunConfig& cfg, bool timings);
// one line per check
std::string report_line(const CheckReport& r, bool timings);

int model_index(const std::string& name);  // XE1..XE4

// subcommand bodies; each returns a json document with a top-level "ok"
json cmd_classify_cns49(long box);
json cmd_fermat_search(int tag, long c_max, bool primitive);
json cmd_curves_build(const std::string& a, const std::string& b, const std::string& c, int tag);
json cmd_congruence_table();
json cmd_cartan_verify(long p);
json cmd_quartic_points(int model, long height);
json cmd_jacobian_zeta(int model, long p);
json cmd_jacobian_relation(long p);
json cmd_sieve_run(int model, long p, const std::vector<long>& aux, const std::vector<std::string>& gens);

}  // namespace f237
