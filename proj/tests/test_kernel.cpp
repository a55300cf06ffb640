#include <doctest.h>

#include <algorithm>
#include <random>

#include "freerot/errors.hpp"
#include "freerot/kernel.hpp"
#include "freerot/models.hpp"

using namespace freerot;

namespace {

FreePolynomial u(int d, int i, int j) { return gen(d, i, j); }
FreePolynomial one(int d) { return FreePolynomial::unit(d); }

Certificate single(const FreePolynomial& target, std::size_t fact, const FreePolynomial& left,
                   const FreePolynomial& right) {
  Certificate c;
  c.target = target;
  c.add(left, fact, right);
  return c;
}

}  // namespace

TEST_CASE("presets hold at signed permutation points") {
  std::mt19937_64 rng(1);
  for (auto kind : {PresetKind::OPlus, PresetKind::HPlus, PresetKind::OMinusOne})
    for (int d = 2; d <= 4; ++d) {
      const auto pres = Presentation::preset(kind, d);
      for (int k = 0; k < 10; ++k) CHECK(violated_relations(random_signed_permutation_model(d, rng), pres).empty());
    }
}

TEST_CASE("preset sizes and labels") {
  const auto hp = Presentation::preset(PresetKind::HPlus, 2);
  CHECK(hp.has_relation(normone_row(1)));
  CHECK(hp.has_relation(hplus_row(1, 1, 2)));
  CHECK(hp.has_relation(hplus_col(2, 1, 2)));
  const auto op = Presentation::preset(PresetKind::OPlus, 3);
  CHECK_FALSE(op.has_relation(hplus_row(1, 1, 2)));
  CHECK(op.contractions().size() == 9);
  const auto om = Presentation::preset(PresetKind::OMinusOne, 3);
  CHECK(om.has_relation(anti_label(Generator(1, 1), Generator(1, 2))));
  CHECK(om.has_relation(comm_label(Generator(1, 1), Generator(2, 2))));
  CHECK_THROWS(Presentation::preset(PresetKind::OPlus, 1));
  const auto dropped = hp.without("normone", "H+ without normone");
  CHECK_FALSE(dropped.has_relation(normone_row(1)));
  CHECK(dropped.contractions().empty());
}

TEST_CASE("certificates are accepted or rejected with a residual") {
  Session s(Presentation::preset(PresetKind::HPlus, 2));
  const std::size_t r = s.index_of(hplus_row(1, 1, 2));
  const auto target = u(2, 2, 1) * u(2, 1, 1) * u(2, 1, 2) * u(2, 2, 2);
  const std::size_t k = s.check_certificate(single(target, r, u(2, 2, 1), u(2, 2, 2)), "sandwich");
  CHECK(s.fact(k).poly == target);
  CHECK(s.fact(k).origin == FactOrigin::Derived);
  try {
    s.check_certificate(single(target + u(2, 1, 1), r, u(2, 2, 1), u(2, 2, 2)));
    FAIL("accepted a wrong certificate");
  } catch (const CertificateInvalid& e) {
    CHECK(e.residual() == u(2, 1, 1));
  }
  Certificate out_of_range;
  out_of_range.target = target;
  out_of_range.add(one(2), s.fact_count() + 3, one(2));
  CHECK_THROWS(s.check_certificate(out_of_range));
}

TEST_CASE("certificate acceptance is stable under fact permutation") {
  std::mt19937_64 rng(4);
  const int d = 2;
  const std::vector<FreePolynomial> extra{u(d, 1, 1) - u(d, 1, 1) * u(d, 1, 1) * u(d, 1, 1),
                                          u(d, 1, 2) * u(d, 2, 1) + u(d, 2, 2),
                                          FreePolynomial::constant(Scalar::param({3, 1}), d) * u(d, 2, 2)};
  const std::size_t base = Presentation::preset(PresetKind::OPlus, d).relations().size();
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::size_t> order{0, 1, 2};
    std::shuffle(order.begin(), order.end(), rng);
    Session a(Presentation::preset(PresetKind::OPlus, d));
    Session b(Presentation::preset(PresetKind::OPlus, d));
    for (auto e : extra) a.assume(e);
    for (auto k : order) b.assume(extra[k]);
    auto remap = [&](std::size_t f) {
      if (f < base) return f;
      return base + static_cast<std::size_t>(std::find(order.begin(), order.end(), f - base) - order.begin());
    };
    // A random combination of facts, and the same combination perturbed.
    Certificate c;
    c.target = FreePolynomial(d);
    std::uniform_int_distribution<std::size_t> pick(0, base + extra.size() - 1);
    std::uniform_int_distribution<int> side(1, d);
    for (int t = 0; t < 4; ++t) {
      const std::size_t f = pick(rng);
      const auto l = u(d, side(rng), side(rng)), r = u(d, side(rng), side(rng));
      c.add(l, f, r);
      c.target += l * a.fact(f).poly * r;
    }
    Certificate cb = c;
    for (auto& term : cb.terms) term.fact = remap(term.fact);
    CHECK_NOTHROW(a.check_certificate(c));
    CHECK_NOTHROW(b.check_certificate(cb));
    Certificate bad = c, badb = cb;
    bad.target += u(d, 2, 2);
    badb.target += u(d, 2, 2);
    CHECK_THROWS_AS(a.check_certificate(bad), CertificateInvalid);
    CHECK_THROWS_AS(b.check_certificate(badb), CertificateInvalid);
  }
}

TEST_CASE("assumptions") {
  Session s(Presentation::preset(PresetKind::OPlus, 2));
  CHECK_FALSE(s.assume(FreePolynomial(2)).has_value());
  const auto k = s.assume(u(2, 1, 1) * u(2, 1, 2), "x");
  REQUIRE(k.has_value());
  CHECK(s.assume(u(2, 1, 1) * u(2, 1, 2)) == k);
  CHECK(s.fact(*k).origin == FactOrigin::Assumed);
  CHECK(s.find(u(2, 1, 1) * u(2, 1, 2)) == k);
}

TEST_CASE("inverted parameters need a nonzero declaration") {
  Session s(Presentation::preset(PresetKind::OPlus, 2));
  const Param p{3, 1};
  const auto k = *s.assume(FreePolynomial::constant(Scalar::param(p), 2) * u(2, 1, 1));
  Certificate c;
  c.target = u(2, 1, 1);
  c.add(FreePolynomial::constant(Scalar::param(p, -1), 2), k, one(2));
  CHECK_THROWS(s.check_certificate(c));
  s.declare_nonzero(p);
  CHECK_NOTHROW(s.check_certificate(c));
}

TEST_CASE("positivity split") {
  // q1^* q1 + q2^* u11^2 q2 = 0 gives q1 = 0 and u11 q2 = 0.
  const int d = 2;
  Session s(Presentation::preset(PresetKind::OPlus, d));
  const auto q1 = u(d, 1, 2) * u(d, 2, 1), q2 = u(d, 2, 2);
  const std::vector<PositiveTerm> terms{{q1, Generator(1, 1), PositiveForm::Unit},
                                        {q2, Generator(1, 1), PositiveForm::Square}};
  const auto sum = adjoint(q1) * q1 + adjoint(q2) * u(d, 1, 1) * u(d, 1, 1) * q2;
  const auto k = *s.assume(sum);
  const auto outs = s.positivity_split(terms, single(sum, k, one(d), one(d)));
  REQUIRE(outs.size() == 2);
  CHECK(s.fact(outs[0]).poly == q1);
  CHECK(s.fact(outs[1]).poly == u(d, 1, 1) * q2);
  // The witness must certify exactly the declared sum.
  CHECK_THROWS_AS(s.positivity_split(terms, single(sum + u(d, 1, 1), k, one(d), one(d))), RuleNotApplicable);
}

TEST_CASE("positivity split needs contractions for 1 - g^2") {
  const int d = 2;
  Session s(Presentation::preset(PresetKind::OPlus, d).without("normone", "no norms"));
  const auto q = u(d, 1, 2);
  const auto sum = adjoint(q) * (one(d) - u(d, 1, 1) * u(d, 1, 1)) * q;
  const auto k = *s.assume(sum);
  CHECK_THROWS_AS(s.positivity_split({{q, Generator(1, 1), PositiveForm::OneMinusSquare}}, single(sum, k, one(d), one(d))),
                  RuleNotApplicable);
}

TEST_CASE("star cancellation") {
  const int d = 2;
  Session s(Presentation::preset(PresetKind::OPlus, d));
  const auto p = u(d, 1, 1) * u(d, 1, 2) - u(d, 2, 2);
  const auto k = *s.assume(p * adjoint(p));
  const auto f = s.star_cancel(p, single(p * adjoint(p), k, one(d), one(d)));
  CHECK(s.fact(f).poly == p);
  CHECK_THROWS_AS(s.star_cancel(u(d, 1, 1), single(p * adjoint(p), k, one(d), one(d))), RuleNotApplicable);
}

TEST_CASE("spectral shrink") {
  const int d = 2;
  Session s(Presentation::preset(PresetKind::OPlus, d));
  const Generator g(1, 2);
  const UPoly cubic({0, 1, 0, -1});  // t - t^3, roots -1 0 1
  const auto k = *s.assume(evaluate_at(cubic, d, g));
  const UPoly quartic({0, 0, 1, 0, -1});
  const auto f = s.spectral_shrink(g, cubic, quartic, single(evaluate_at(cubic, d, g), k, one(d), one(d)));
  CHECK(s.fact(f).poly == evaluate_at(quartic, d, g));
  // Root 1 of t - t^3 is not a root of t.
  CHECK_THROWS_AS(s.spectral_shrink(g, cubic, UPoly({0, 1}), single(evaluate_at(cubic, d, g), k, one(d), one(d))),
                  RuleNotApplicable);
  const UPoly irr({-2, 0, 1});
  const auto k2 = *s.assume(evaluate_at(irr, d, Generator(2, 1)));
  CHECK_THROWS_AS(s.spectral_shrink(Generator(2, 1), irr, UPoly({0, 1}),
                                    single(evaluate_at(irr, d, Generator(2, 1)), k2, one(d), one(d))),
                  SpectralRefusal);
}

TEST_CASE("rewrite certificates close") {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> idx(1, 3), len(1, 4), coef(-3, 3);
  for (auto kind : {PresetKind::HPlus, PresetKind::OMinusOne}) {
    const auto pres = Presentation::preset(kind, 3);
    for (int trial = 0; trial < 30; ++trial) {
      FreePolynomial p(3);
      for (int t = 0; t < 5; ++t) {
        Word w;
        for (int k = len(rng); k > 0; --k) w.emplace_back(idx(rng), idx(rng));
        p.add_term(w, coef(rng));
      }
      FreePolynomial reduced;
      const auto cert = rewrite_certificate(pres, p, &reduced);
      CHECK(reduced == monomial_reduce(p, pres.rules()));
      Session s(pres);
      Certificate shifted = cert;
      shifted.target = p - reduced;
      if (!shifted.target.is_zero()) CHECK_NOTHROW(s.check_certificate(shifted));
    }
  }
}

TEST_CASE("membership search finds and certifies a consequence") {
  Session s(Presentation::preset(PresetKind::HPlus, 2));
  // u11 u12 u21 lies in the ideal at degree 3.
  const auto target = u(2, 1, 1) * u(2, 1, 2) * u(2, 2, 1);
  const auto res = s.search_membership(target, 3);
  CHECK(res.member);
  REQUIRE(res.fact.has_value());
  CHECK(s.fact(*res.fact).poly == target);
  CHECK(certificate_residual(*res.certificate, s.facts()).is_zero());
}

TEST_CASE("membership search reports non-members and caps") {
  Session s(Presentation::preset(PresetKind::HPlus, 2));
  // u11 u22 is nonzero at the noncommuting point, so no bound can find it.
  const auto target = u(2, 1, 1) * u(2, 2, 2) - u(2, 2, 2) * u(2, 1, 1);
  CHECK_FALSE(hplus_noncommuting_model(2).eval(target).is_zero());
  const auto res = s.search_membership(target, 2);
  CHECK_FALSE(res.member);
  SearchOptions tiny;
  tiny.max_rows = 5;
  CHECK_THROWS_AS(s.search_membership(target, 3, tiny), ResourceError);
}

TEST_CASE("transcripts replay to the same fact store") {
  const int d = 2;
  Session s(Presentation::preset(PresetKind::HPlus, d));
  const Param p{4, 2};
  s.declare_nonzero(p);
  const auto k = *s.assume(FreePolynomial::constant(Scalar::param(p), d) * (u(d, 1, 1) - u(d, 1, 1) * u(d, 1, 1) * u(d, 1, 1)));
  Certificate c;
  c.target = u(d, 1, 1) - u(d, 1, 1) * u(d, 1, 1) * u(d, 1, 1);
  c.add(FreePolynomial::constant(Scalar::param(p, -1), d), k, one(d));
  const auto f = s.check_certificate(c, "divided");
  s.spectral_shrink(Generator(1, 1), UPoly({0, 1, 0, -1}), UPoly({0, 0, 1, 0, -1}), single(c.target, f, one(d), one(d)));
  s.search_membership(u(d, 1, 1) * u(d, 1, 2) * u(d, 2, 1), 3);
  try {
    s.check_certificate(single(u(d, 2, 2), f, one(d), one(d)));
  } catch (const CertificateInvalid&) {
  }
  const auto pp = u(d, 1, 2) * u(d, 1, 1);
  s.star_cancel(pp, single(pp * adjoint(pp), s.index_of(hplus_row(1, 1, 2)), u(d, 1, 2) * u(d, 1, 1), one(d)));

  const auto t = s.transcript();
  const Session r = Session::replay(t);
  CHECK(r.fact_store().dump() == s.fact_store().dump());
  CHECK(r.transcript().dump() == t.dump());
  CHECK(r.transcript_hash() == s.transcript_hash());
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");

  auto tampered = t;
  for (auto& e : tampered["entries"])
    if (e.value("label", "") == "divided") e["certificate"]["target"] = to_text(u(d, 1, 1));
  CHECK_THROWS(Session::replay(tampered));
}

TEST_CASE("presentation and certificate serialization") {
  const auto pres = Presentation::preset(PresetKind::OMinusOne, 3);
  const auto back = presentation_from_json(presentation_to_json(pres));
  CHECK(back.relations().size() == pres.relations().size());
  for (std::size_t k = 0; k < pres.relations().size(); ++k) {
    CHECK(back.relations()[k].label == pres.relations()[k].label);
    CHECK(back.relations()[k].poly == pres.relations()[k].poly);
  }
  Certificate c;
  c.target = u(3, 1, 1);
  c.add(u(3, 2, 2), 4, one(3), true);
  const auto c2 = certificate_from_json(certificate_to_json(c), 3);
  CHECK(c2.target == c.target);
  REQUIRE(c2.terms.size() == 1);
  CHECK(c2.terms[0].adjoint);
  CHECK(c2.terms[0].left == u(3, 2, 2));
}
