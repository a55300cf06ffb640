#include <fstream>

#include "freerot/errors.hpp"

#include "scenario_support.hpp"

namespace freerot {

using nlohmann::json;

const char* const kVersion = "0.1.0";

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Verified: return "verified";
    case Verdict::Refuted: return "refuted-with-witness";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::string to_string(Role r) {
  switch (r) {
    case Role::Claim: return "claim";
    case Role::Control: return "control";
    case Role::Probe: return "probe";
  }
  return "?";
}

bool CaseResult::passed() const {
  switch (role) {
    case Role::Claim: return verdict == Verdict::Verified;
    case Role::Control: return expected && verdict == *expected;
    case Role::Probe: return true;
  }
  return false;
}

json Report::to_json() const {
  json cases_j = json::array();
  json totals = {{"verified", 0}, {"refuted-with-witness", 0}, {"inconclusive", 0}, {"claims", 0},
                 {"controls", 0}, {"probes", 0}, {"failed", 0}};
  for (const auto& c : cases) {
    json cj = {{"key", c.key}, {"verdict", to_string(c.verdict)}, {"role", to_string(c.role)}};
    if (c.expected) cj["expected"] = to_string(*c.expected);
    if (!c.witness.is_null()) cj["witness"] = c.witness;
    cj["transcript_hash"] = c.transcript_hash.empty() ? json(nullptr) : json(c.transcript_hash);
    if (!c.detail.is_null()) cj["detail"] = c.detail;
    cases_j.push_back(std::move(cj));
    totals[to_string(c.verdict)] = totals[to_string(c.verdict)].get<int>() + 1;
    const std::string role_key = to_string(c.role) + "s";
    totals[role_key] = totals[role_key].get<int>() + 1;
    if (!c.passed()) totals["failed"] = totals["failed"].get<int>() + 1;
  }
  return {{"scenario", scenario},
          {"params", params},
          {"cases", cases_j},
          {"totals", totals},
          {"soundness",
           {{"sessions", soundness.sessions},
            {"facts", soundness.facts},
            {"models", soundness.models},
            {"violations", soundness.violations}}},
          {"duration_ms", duration_ms},
          {"version", kVersion}};
}

int Report::exit_code() const {
  bool refuted = !soundness.violations.empty();
  bool inconclusive = false;
  for (const auto& c : cases) {
    if (c.passed()) continue;
    if (c.role == Role::Claim && c.verdict == Verdict::Inconclusive)
      inconclusive = true;
    else
      refuted = true;
  }
  return refuted ? 2 : inconclusive ? 3 : 0;
}

const CaseResult* Report::find(const std::string& key) const {
  for (const auto& c : cases)
    if (c.key == key) return &c;
  return nullptr;
}

json soundness_violations(const Session& s, std::mt19937_64& rng, int models, bool include_preset) {
  json out = json::array();
  std::set<Param> params;
  for (const auto& f : s.facts())
    for (const auto& p : f.poly.params()) params.insert(p);
  for (int m = 0; m < models; ++m) {
    const MatrixModel model = random_signed_permutation_model(s.d(), rng);
    const auto values = random_parameter_values(params, rng);
    for (std::size_t k = 0; k < s.fact_count(); ++k) {
      const Fact& f = s.fact(k);
      if (!include_preset && f.origin == FactOrigin::Preset) continue;
      const RationalMatrix v = model.eval(f.poly, values);
      if (!v.is_zero())
        out.push_back({{"fact", k}, {"label", f.label}, {"poly", to_text(f.poly)}, {"model", model.name},
                       {"value", v.to_string()}});
    }
  }
  return out;
}

namespace detail {

json failure_witness(const std::exception& e) {
  json w = {{"reason", e.what()}};
  if (const auto* ci = dynamic_cast<const CertificateInvalid*>(&e)) w["residual"] = to_text(ci->residual());
  return w;
}

Verdict failure_verdict(const std::exception& e) {
  return dynamic_cast<const ResourceError*>(&e) ? Verdict::Inconclusive : Verdict::Refuted;
}

std::string tuple_text(std::span<const int> v) {
  std::string s = "(";
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
  return s + ")";
}

std::string entry_key(int i, int j) { return "u[" + std::to_string(i) + "," + std::to_string(j) + "]"; }

SessionRecord record_session(const Session& s, const ScenarioOptions& opt, std::uint64_t stream,
                             bool include_preset) {
  SessionRecord rec;
  json t = s.transcript();
  rec.hash = sha256_hex(t.dump());
  if (opt.keep_transcripts || opt.transcript_dir) rec.transcript = std::move(t);
  std::seed_seq seq{static_cast<std::uint32_t>(opt.seed), static_cast<std::uint32_t>(opt.seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  std::mt19937_64 rng(seq);
  rec.violations = soundness_violations(s, rng, opt.soundness_models, include_preset);
  for (const auto& f : s.facts())
    if (include_preset || f.origin != FactOrigin::Preset) ++rec.facts;
  return rec;
}

void merge_record(Report& rep, SessionRecord&& rec, const ScenarioOptions& opt) {
  ++rep.soundness.sessions;
  rep.soundness.facts += rec.facts;
  rep.soundness.models = opt.soundness_models;
  for (auto& v : rec.violations) {
    v["transcript_hash"] = rec.hash;
    rep.soundness.violations.push_back(std::move(v));
  }
  if (rec.transcript.is_null()) return;
  if (opt.transcript_dir) {
    std::filesystem::create_directories(*opt.transcript_dir);
    const auto path = *opt.transcript_dir / (rec.hash + ".json");
    if (!std::filesystem::exists(path)) {
      std::ofstream f(path);
      f << rec.transcript.dump();
      if (!f) throw std::runtime_error("cannot write transcript " + path.string());
    }
  }
  if (opt.keep_transcripts) rep.transcripts.emplace(rec.hash, std::move(rec.transcript));
}

}  // namespace detail

}  // namespace freerot
