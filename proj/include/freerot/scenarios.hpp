#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "freerot/cumulants.hpp"
#include "freerot/kernel.hpp"
#include "freerot/models.hpp"

namespace freerot {

enum class Verdict { Verified, Refuted, Inconclusive };

/// claim: part of the theorem being reproduced; control: a run expected to
/// fail; probe: an exploratory question whose answer is recorded, not asserted.
enum class Role { Claim, Control, Probe };

std::string to_string(Verdict v);  // "verified", "refuted-with-witness", "inconclusive"
std::string to_string(Role r);

struct CaseResult {
  std::string key;
  Verdict verdict = Verdict::Inconclusive;
  Role role = Role::Claim;
  std::optional<Verdict> expected;  // controls only
  nlohmann::json witness;           // null when absent
  std::string transcript_hash;      // empty when the case ran no session
  nlohmann::json detail;            // bounds, counts, notes

  /// Claims pass when verified, controls when they match `expected`, probes always.
  bool passed() const;
};

struct SoundnessSummary {
  std::size_t sessions = 0;
  std::size_t facts = 0;
  int models = 0;
  nlohmann::json violations = nlohmann::json::array();
};

struct Report {
  std::string scenario;
  nlohmann::json params;
  std::vector<CaseResult> cases;
  /// Transcripts by hash, kept when ScenarioOptions::keep_transcripts is set.
  std::map<std::string, nlohmann::json> transcripts;
  SoundnessSummary soundness;
  double duration_ms = 0;

  /// {scenario, params, cases, totals, soundness, duration_ms, version}.
  nlohmann::json to_json() const;
  /// 0 all claims verified and controls as expected; 2 a claim refuted, a
  /// control unexpected or a soundness violation; 3 a claim inconclusive.
  int exit_code() const;
  const CaseResult* find(const std::string& key) const;
};

struct ScenarioOptions {
  unsigned threads = 1;
  std::uint64_t seed = 1;
  /// Random signed-permutation points per soundness check.
  int soundness_models = 20;
  bool keep_transcripts = false;
  std::optional<std::filesystem::path> transcript_dir;
  std::size_t max_rows = 2'000'000;
};

extern const char* const kVersion;

/// Facts of the session (skipping preset relations unless asked) evaluated at
/// random signed-permutation points; returns one record per nonzero value.
nlohmann::json soundness_violations(const Session& s, std::mt19937_64& rng, int models, bool include_preset = false);

Report scenario_even(int d, int n, const ScenarioOptions& opt = {});
Report scenario_odd(int d, int n, const ScenarioOptions& opt = {});
Report scenario_d2_remark(int n, const ScenarioOptions& opt = {});
Report scenario_hplus_preservation(int d, int n_max, int b_degree, const ScenarioOptions& opt = {});
Report scenario_o_minus_one(int d, int degree_bound, const ScenarioOptions& opt = {});
Report scenario_relation_equivalence(int d, const ScenarioOptions& opt = {});
Report scenario_semicircle_conclusion(int d, int n_max, const ScenarioOptions& opt = {});

/// Moments of clt_scaled_spec(base, N) against the semicircle, for each N in counts.
/// `base` defaults to the centred free Poisson law (kappa_1 = 0, kappa_n = 1).
Report clt_demo(int order, const std::vector<Integer>& counts, std::optional<DistributionSpec> base = std::nullopt);

}  // namespace freerot
