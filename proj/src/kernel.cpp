#include "freerot/kernel.hpp"

#include <openssl/evp.h>

#include <cstdio>

#include "freerot/errors.hpp"

namespace freerot {

using nlohmann::json;

std::string to_string(FactOrigin o) {
  switch (o) {
    case FactOrigin::Preset:
      return "preset";
    case FactOrigin::Assumed:
      return "assumed";
    case FactOrigin::Derived:
      return "derived";
  }
  return "?";
}

std::string to_string(PositiveForm f) {
  switch (f) {
    case PositiveForm::Unit:
      return "unit";
    case PositiveForm::Square:
      return "square";
    case PositiveForm::OneMinusSquare:
      return "one-minus-square";
  }
  return "?";
}

namespace {

PositiveForm parse_form(const std::string& s) {
  if (s == "unit") return PositiveForm::Unit;
  if (s == "square") return PositiveForm::Square;
  if (s == "one-minus-square") return PositiveForm::OneMinusSquare;
  throw std::invalid_argument("unknown positive form " + s);
}

json gen_json(Generator g) { return json::array({g.row, g.col}); }
Generator gen_from(const json& j) { return Generator(j.at(0).get<int>(), j.at(1).get<int>()); }

json upoly_json(const UPoly& p) {
  json a = json::array();
  for (const auto& c : p.coeffs()) a.push_back(to_string(c));
  return a;
}

UPoly upoly_from(const json& j) {
  std::vector<Rational> c;
  for (const auto& x : j) c.push_back(parse_rational(x.get<std::string>()));
  return UPoly(std::move(c));
}

json word_json(const Word& w) {
  json a = json::array();
  for (const auto& g : w) a.push_back(gen_json(g));
  return a;
}

Word word_from(const json& j) {
  Word w;
  for (const auto& g : j) w.push_back(gen_from(g));
  return w;
}

FreePolynomial positive_sum(const std::vector<PositiveTerm>& terms, int d) {
  FreePolynomial s(d);
  for (const auto& t : terms) {
    FreePolynomial h = FreePolynomial::unit(d);
    if (t.form == PositiveForm::Square)
      h = gen_power(d, t.g.row, t.g.col, 2);
    else if (t.form == PositiveForm::OneMinusSquare)
      h = FreePolynomial::unit(d) - gen_power(d, t.g.row, t.g.col, 2);
    s += adjoint(t.q) * h * t.q;
  }
  return s;
}

FreePolynomial positive_output(const PositiveTerm& t, int d) {
  switch (t.form) {
    case PositiveForm::Unit:
      return t.q;
    case PositiveForm::Square:
      return gen(d, t.g.row, t.g.col) * t.q;
    case PositiveForm::OneMinusSquare:
      return (FreePolynomial::unit(d) - gen_power(d, t.g.row, t.g.col, 2)) * t.q;
  }
  return {};
}

}  // namespace

FreePolynomial certificate_residual(const Certificate& c, const std::vector<Fact>& facts) {
  FreePolynomial r = c.target;
  for (const auto& t : c.terms) {
    if (t.fact >= facts.size()) throw std::out_of_range("certificate cites fact " + std::to_string(t.fact));
    const FreePolynomial& f = facts[t.fact].poly;
    r -= t.left * (t.adjoint ? adjoint(f) : f) * t.right;
  }
  return r;
}

Session::Session(Presentation presentation) : pres_(std::move(presentation)) {
  for (const auto& rel : pres_.relations()) {
    const std::string text = to_text(rel.poly);
    by_text_.try_emplace(text, facts_.size());
    facts_.push_back({rel.poly, FactOrigin::Preset, "preset", rel.label, {}});
  }
}

std::optional<std::size_t> Session::find(const FreePolynomial& p) const {
  auto it = by_text_.find(to_text(p));
  if (it == by_text_.end()) return std::nullopt;
  return it->second;
}

std::size_t Session::index_of(const std::string& label) const {
  for (std::size_t k = 0; k < facts_.size(); ++k)
    if (facts_[k].label == label) return k;
  throw std::out_of_range("no fact labelled " + label);
}

std::size_t Session::add_fact(FreePolynomial p, FactOrigin origin, std::string rule, std::string label,
                              std::vector<std::size_t> inputs) {
  if (auto k = find(p)) return *k;
  by_text_.emplace(to_text(p), facts_.size());
  facts_.push_back({std::move(p), origin, std::move(rule), std::move(label), std::move(inputs)});
  return facts_.size() - 1;
}

void Session::check_scalars(const FreePolynomial& p, const char* what) const {
  if (p.dim() != 0 && p.dim() != d())
    throw std::invalid_argument(std::string(what) + " lives over d=" + std::to_string(p.dim()) + ", session has d=" +
                                std::to_string(d()));
  for (const auto& [w, c] : p.terms())
    for (const auto& [m, q] : c.terms())
      for (const auto& [param, e] : m.factors())
        if (e < 0 && !nonzero_.count(param))
          throw std::invalid_argument(std::string(what) + " inverts " + param.to_string() +
                                      ", which is not declared nonzero");
}

void Session::validate_certificate(const Certificate& c) const {
  check_scalars(c.target, "certificate target");
  for (const auto& t : c.terms) {
    if (t.fact >= facts_.size())
      throw std::invalid_argument("certificate cites fact " + std::to_string(t.fact) + " of " +
                                  std::to_string(facts_.size()));
    check_scalars(t.left, "left multiplier");
    check_scalars(t.right, "right multiplier");
  }
}

std::vector<std::size_t> Session::inputs_of(const Certificate& c) const {
  std::set<std::size_t> in;
  for (const auto& t : c.terms) in.insert(t.fact);
  return {in.begin(), in.end()};
}

void Session::declare_nonzero(Param p) {
  nonzero_.insert(p);
  log_.push_back({{"rule", "declare_nonzero"}, {"param", json::array({p.order, p.var})}});
}

std::optional<std::size_t> Session::assume(const FreePolynomial& p, const std::string& label) {
  json entry = {{"rule", "assume"}, {"label", label}, {"poly", to_text(p)}};
  check_scalars(p, "assumption");
  if (p.is_zero()) {
    entry["outcome"] = "trivial";
    log_.push_back(entry);
    return std::nullopt;
  }
  const bool dup = find(p).has_value();
  const std::size_t k = add_fact(p, FactOrigin::Assumed, "assume", label, {});
  entry["outcome"] = dup ? "duplicate" : "accepted";
  entry["fact"] = k;
  log_.push_back(entry);
  return k;
}

std::size_t Session::check_certificate(const Certificate& c, const std::string& label) {
  json entry = {{"rule", "certificate"}, {"label", label}, {"certificate", certificate_to_json(c)}};
  try {
    validate_certificate(c);
    if (c.target.is_zero()) throw std::invalid_argument("certificate target is zero");
    FreePolynomial r = certificate_residual(c, facts_);
    if (!r.is_zero()) {
      entry["outcome"] = "rejected";
      entry["residual"] = to_text(r);
      log_.push_back(entry);
      throw CertificateInvalid("certificate for " + (label.empty() ? to_text(c.target) : label) +
                                   " leaves a nonzero residual",
                               std::move(r));
    }
  } catch (const CertificateInvalid&) {
    throw;
  } catch (const std::exception& e) {
    entry["outcome"] = "rejected";
    entry["reason"] = e.what();
    log_.push_back(entry);
    throw;
  }
  const std::size_t k = add_fact(c.target, FactOrigin::Derived, "certificate", label, inputs_of(c));
  entry["outcome"] = "accepted";
  entry["fact"] = k;
  log_.push_back(entry);
  return k;
}

std::vector<std::size_t> Session::positivity_split(const std::vector<PositiveTerm>& terms, const Certificate& witness,
                                                   const std::string& label) {
  json jt = json::array();
  for (const auto& t : terms) jt.push_back({{"q", to_text(t.q)}, {"g", gen_json(t.g)}, {"form", to_string(t.form)}});
  json entry = {{"rule", "positivity_split"}, {"label", label}, {"terms", jt}, {"witness", certificate_to_json(witness)}};
  auto reject = [&](const std::string& why) {
    entry["outcome"] = "rejected";
    entry["reason"] = why;
    log_.push_back(entry);
  };
  try {
    if (terms.empty()) throw std::invalid_argument("positivity split with no terms");
    for (const auto& t : terms) {
      check_scalars(t.q, "positivity term");
      if (t.form == PositiveForm::OneMinusSquare && !pres_.is_contraction(t.g))
        throw RuleNotApplicable(t.g.to_string() + " is not in the contraction set of " + pres_.name());
    }
    validate_certificate(witness);
    if (!(witness.target == positive_sum(terms, d())))
      throw RuleNotApplicable("witness target is not the declared sum of positive terms");
    FreePolynomial r = certificate_residual(witness, facts_);
    if (!r.is_zero()) {
      entry["residual"] = to_text(r);
      reject("witness leaves a nonzero residual");
      throw CertificateInvalid("positivity witness leaves a nonzero residual", std::move(r));
    }
  } catch (const CertificateInvalid&) {
    throw;
  } catch (const std::exception& e) {
    reject(e.what());
    throw;
  }
  const auto inputs = inputs_of(witness);
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    FreePolynomial o = positive_output(terms[k], d());
    if (o.is_zero()) continue;
    out.push_back(add_fact(std::move(o), FactOrigin::Derived, "positivity_split",
                           label.empty() ? label : label + "[" + std::to_string(k) + "]", inputs));
  }
  entry["outcome"] = "accepted";
  entry["facts"] = out;
  log_.push_back(entry);
  return out;
}

std::size_t Session::star_cancel(const FreePolynomial& p, const Certificate& witness, const std::string& label) {
  json entry = {{"rule", "star_cancel"}, {"label", label}, {"poly", to_text(p)}, {"witness", certificate_to_json(witness)}};
  try {
    check_scalars(p, "star_cancel target");
    if (p.is_zero()) throw std::invalid_argument("star_cancel target is zero");
    validate_certificate(witness);
    if (!(witness.target == p * adjoint(p))) throw RuleNotApplicable("witness target is not p p^*");
    FreePolynomial r = certificate_residual(witness, facts_);
    if (!r.is_zero()) {
      entry["outcome"] = "rejected";
      entry["residual"] = to_text(r);
      log_.push_back(entry);
      throw CertificateInvalid("star_cancel witness leaves a nonzero residual", std::move(r));
    }
  } catch (const CertificateInvalid&) {
    throw;
  } catch (const std::exception& e) {
    entry["outcome"] = "rejected";
    entry["reason"] = e.what();
    log_.push_back(entry);
    throw;
  }
  const std::size_t k = add_fact(p, FactOrigin::Derived, "star_cancel", label, inputs_of(witness));
  entry["outcome"] = "accepted";
  entry["fact"] = k;
  log_.push_back(entry);
  return k;
}

std::size_t Session::spectral_shrink(Generator g, const UPoly& p, const UPoly& q, const Certificate& witness,
                                     const std::string& label) {
  json entry = {{"rule", "spectral_shrink"}, {"label", label}, {"g", gen_json(g)}, {"p", upoly_json(p)},
                {"q", upoly_json(q)}, {"witness", certificate_to_json(witness)}};
  FreePolynomial out;
  try {
    if (g.row > d() || g.col > d()) throw std::invalid_argument("generator outside the matrix");
    if (p.is_zero()) throw std::invalid_argument("spectral_shrink needs p != 0");
    if (q.is_zero()) throw std::invalid_argument("spectral_shrink with q = 0 derives nothing");
    validate_certificate(witness);
    if (!(witness.target == evaluate_at(p, d(), g))) throw RuleNotApplicable("witness target is not p(g)");
    FreePolynomial r = certificate_residual(witness, facts_);
    if (!r.is_zero()) {
      entry["outcome"] = "rejected";
      entry["residual"] = to_text(r);
      log_.push_back(entry);
      throw CertificateInvalid("spectral witness leaves a nonzero residual", std::move(r));
    }
    RealRootReport roots;
    try {
      roots = real_roots(p);
    } catch (const std::range_error& e) {
      throw SpectralRefusal(e.what());
    }
    if (roots.irrational_roots > 0)
      throw SpectralRefusal(p.to_string() + " has " + std::to_string(roots.irrational_roots) +
                            " real root(s) that are not rational");
    json jr = json::array();
    for (const auto& x : roots.rational_roots) {
      jr.push_back(to_string(x));
      if (q(x) != 0)
        throw RuleNotApplicable("real root " + to_string(x) + " of " + p.to_string() + " is not a root of " +
                                q.to_string());
    }
    entry["roots"] = jr;
    out = evaluate_at(q, d(), g);
  } catch (const CertificateInvalid&) {
    throw;
  } catch (const std::exception& e) {
    entry["outcome"] = "rejected";
    entry["reason"] = e.what();
    log_.push_back(entry);
    throw;
  }
  const std::size_t k = add_fact(std::move(out), FactOrigin::Derived, "spectral_shrink", label, inputs_of(witness));
  entry["outcome"] = "accepted";
  entry["fact"] = k;
  log_.push_back(entry);
  return k;
}

json Session::transcript() const {
  return {{"format", "freerot-transcript/1"}, {"presentation", presentation_to_json(pres_)}, {"entries", log_}};
}

std::string Session::transcript_hash() const { return sha256_hex(transcript().dump()); }

json Session::fact_store() const {
  json a = json::array();
  for (const auto& f : facts_)
    a.push_back({{"poly", to_text(f.poly)},
                 {"origin", to_string(f.origin)},
                 {"rule", f.rule},
                 {"label", f.label},
                 {"inputs", f.inputs}});
  return a;
}

Session Session::replay(const json& transcript) {
  Session s(presentation_from_json(transcript.at("presentation")));
  const int d = s.d();
  for (const auto& e : transcript.at("entries")) {
    const std::string rule = e.at("rule").get<std::string>();
    const std::string label = e.value("label", std::string{});
    const std::string outcome = e.value("outcome", std::string("accepted"));
    const bool expect_reject = outcome == "rejected" || outcome == "resource";
    bool rejected = false;
    try {
      if (rule == "declare_nonzero") {
        s.declare_nonzero(Param{e.at("param").at(0).get<int>(), e.at("param").at(1).get<int>()});
      } else if (rule == "assume") {
        s.assume(parse_polynomial(e.at("poly").get<std::string>(), d), label);
      } else if (rule == "certificate") {
        s.check_certificate(certificate_from_json(e.at("certificate"), d), label);
      } else if (rule == "positivity_split") {
        std::vector<PositiveTerm> terms;
        for (const auto& t : e.at("terms"))
          terms.push_back({parse_polynomial(t.at("q").get<std::string>(), d), gen_from(t.at("g")),
                           parse_form(t.at("form").get<std::string>())});
        s.positivity_split(terms, certificate_from_json(e.at("witness"), d), label);
      } else if (rule == "star_cancel") {
        s.star_cancel(parse_polynomial(e.at("poly").get<std::string>(), d), certificate_from_json(e.at("witness"), d),
                      label);
      } else if (rule == "spectral_shrink") {
        s.spectral_shrink(gen_from(e.at("g")), upoly_from(e.at("p")), upoly_from(e.at("q")),
                          certificate_from_json(e.at("witness"), d), label);
      } else if (rule == "search") {
        SearchOptions opts;
        opts.max_rows = e.at("max_rows").get<std::size_t>();
        opts.use_adjoints = e.at("use_adjoints").get<bool>();
        s.search_membership(parse_polynomial(e.at("target").get<std::string>(), d), e.at("degree_bound").get<int>(),
                            opts, label);
      } else {
        throw std::runtime_error("unknown transcript rule " + rule);
      }
    } catch (const std::runtime_error& err) {
      if (!expect_reject) throw std::runtime_error("replay diverged at " + rule + ": " + err.what());
      rejected = true;
    } catch (const std::invalid_argument& err) {
      if (!expect_reject) throw std::runtime_error("replay diverged at " + rule + ": " + err.what());
      rejected = true;
    }
    if (expect_reject && !rejected) throw std::runtime_error("replay accepted an entry that was rejected: " + rule);
    if (!(s.log_.back() == e)) throw std::runtime_error("replay produced a different log entry for " + rule);
  }
  return s;
}

json presentation_to_json(const Presentation& p) {
  json rels = json::array();
  for (const auto& r : p.relations()) rels.push_back({{"label", r.label}, {"poly", to_text(r.poly)}});
  json rules = json::array();
  for (const auto& r : p.rules().rules())
    rules.push_back({{"pattern", word_json(r.pattern)}, {"sign", r.sign}, {"replacement", word_json(r.replacement)}});
  json contr = json::array();
  for (const auto& g : p.contractions()) contr.push_back(gen_json(g));
  json out = {{"name", p.name()},     {"d", p.d()},          {"relations", rels},
              {"rules", rules},       {"contractions", contr}, {"contraction_note", p.contraction_note()}};
  out["preset"] = p.preset_kind() ? json(to_string(*p.preset_kind())) : json(nullptr);
  return out;
}

Presentation presentation_from_json(const json& j) {
  const int d = j.at("d").get<int>();
  std::vector<Relation> rels;
  for (const auto& r : j.at("relations"))
    rels.push_back({r.at("label").get<std::string>(), parse_polynomial(r.at("poly").get<std::string>(), d)});
  std::vector<RewriteRule> rules;
  for (const auto& r : j.at("rules"))
    rules.emplace_back(word_from(r.at("pattern")), r.at("sign").get<int>(), word_from(r.at("replacement")));
  std::vector<Generator> contr;
  for (const auto& g : j.at("contractions")) contr.push_back(gen_from(g));
  std::optional<PresetKind> kind;
  if (!j.at("preset").is_null()) kind = parse_preset_kind(j.at("preset").get<std::string>());
  return Presentation(j.at("name").get<std::string>(), d, std::move(rels), RuleSet(std::move(rules)),
                      std::move(contr), j.at("contraction_note").get<std::string>(), kind);
}

json certificate_to_json(const Certificate& c) {
  json terms = json::array();
  for (const auto& t : c.terms) {
    json jt = {{"left", to_text(t.left)}, {"fact", t.fact}, {"right", to_text(t.right)}};
    if (t.adjoint) jt["adjoint"] = true;
    terms.push_back(jt);
  }
  return {{"target", to_text(c.target)}, {"terms", terms}};
}

Certificate certificate_from_json(const json& j, int d) {
  Certificate c;
  c.target = parse_polynomial(j.at("target").get<std::string>(), d);
  for (const auto& t : j.at("terms"))
    c.terms.push_back({parse_polynomial(t.at("left").get<std::string>(), d), t.at("fact").get<std::size_t>(),
                       parse_polynomial(t.at("right").get<std::string>(), d), t.value("adjoint", false)});
  return c;
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 digest failed");
  std::string hex;
  char buf[3];
  for (unsigned int k = 0; k < len; ++k) {
    std::snprintf(buf, sizeof buf, "%02x", md[k]);
    hex += buf;
  }
  return hex;
}

Certificate rewrite_certificate(const Presentation& pres, const FreePolynomial& p, FreePolynomial* reduced) {
  const int d = pres.d();
  Certificate c;
  FreePolynomial rest(d);
  for (const auto& [w, coeff] : p.terms()) {
    const auto r = reduce_word(w, pres.rules());
    // Replay the steps: each one peels off coeff * sign * scale * L * rel * R.
    Word cur = w;
    int sign = 1;
    for (const auto& step : r.steps) {
      const auto& rule = pres.rules().rules()[static_cast<std::size_t>(step.rule)];
      const std::size_t rel = pres.rule_relation(static_cast<std::size_t>(step.rule));
      Scalar lc = coeff;
      lc *= Rational(pres.rule_scale(static_cast<std::size_t>(step.rule)) * sign);
      Word left(cur.begin(), cur.begin() + static_cast<std::ptrdiff_t>(step.position));
      Word right(cur.begin() + static_cast<std::ptrdiff_t>(step.position) + 2, cur.end());
      c.add(FreePolynomial::monomial(d, left, lc), rel, FreePolynomial::monomial(d, right));
      if (rule.sign == 0) break;
      sign *= rule.sign;
      cur[step.position] = rule.replacement[0];
      cur[step.position + 1] = rule.replacement[1];
    }
    if (r.sign != 0) rest.add_term(r.word, r.sign < 0 ? -coeff : coeff);
  }
  c.target = p - rest;
  if (reduced) *reduced = rest;
  return c;
}

}  // namespace freerot
