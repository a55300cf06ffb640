#include <doctest.h>

#include <algorithm>
#include <random>

#include "freerot/univariate.hpp"

using namespace freerot;

namespace {

UPoly linear(const Rational& root) { return UPoly({-root, 1}); }

UPoly from_roots(const std::vector<Rational>& roots) {
  UPoly p = UPoly::constant(1);
  for (const auto& r : roots) p = p * linear(r);
  return p;
}

}  // namespace

TEST_CASE("arithmetic and division") {
  const UPoly a({1, -2, 0, 3});
  const UPoly b({Rational(1, 2), 1});
  const auto dm = divmod(a, b);
  CHECK(dm.quotient * b + dm.remainder == a);
  CHECK(dm.remainder.degree() < b.degree());
  CHECK_THROWS(divmod(a, UPoly()));
  CHECK(UPoly({0, 0}).is_zero());
  CHECK(a.derivative() == UPoly({-2, 0, 9}));
  CHECK(a(2) == Rational(21));
}

TEST_CASE("gcd and square-free part") {
  const UPoly p = from_roots({1, 1, 2, Rational(-1, 3)});
  const UPoly q = from_roots({1, 5, 2});
  CHECK(gcd(p, q) == from_roots({1, 2}));
  CHECK(square_free_part(p) == from_roots({1, 2, Rational(-1, 3)}));
}

TEST_CASE("Sturm counts agree with sign changes on a fine grid") {
  // Roots are chosen on a grid of step 1/4 and the sampling grid has step
  // 1/8, so every simple root shows up as a sign change between samples.
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> pick(-12, 12);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<Rational> roots;
    for (int k = 0; k < 1 + trial % 5; ++k) {
      Rational r(pick(rng), 4);
      r.canonicalize();
      if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
    }
    UPoly p = from_roots(roots);
    if (trial % 3 == 1) p = p * UPoly({1, 0, 1});  // no real roots added
    int changes = 0;
    Rational prev = p(Rational(-4));
    for (int k = -31; k <= 32; ++k) {
      const Rational v = p(Rational(k, 8));
      if (v == 0) continue;
      if (prev != 0 && sgn(v) != sgn(prev)) ++changes;
      prev = v;
    }
    const Rational lo = -4, hi = 4;
    int zeros_on_grid = 0;
    for (const auto& r : roots)
      if (r > lo && r <= hi) ++zeros_on_grid;
    CHECK(count_real_roots(p) == static_cast<int>(roots.size()));
    CHECK(count_real_roots(p, lo, hi) == zeros_on_grid);
    // Sign changes see each root once (roots are simple); a root on the
    // sample grid is skipped and detected from its neighbours.
    CHECK(changes == zeros_on_grid);
  }
}

TEST_CASE("real roots split into rational and irrational") {
  const UPoly p = from_roots({1, Rational(-2, 3)}) * UPoly({-2, 0, 1}) * UPoly({1, 0, 1});
  const auto report = real_roots(p);
  CHECK(report.rational_roots == std::vector<Rational>{Rational(-2, 3), 1});
  CHECK(report.irrational_roots == 2);
  CHECK(count_real_roots(p) == 4);
  CHECK(rational_roots(UPoly({0, -1, 0, 1})) == std::vector<Rational>{-1, 0, 1});
  CHECK(count_real_roots(UPoly({-2, 0, 1}), 0, 2) == 1);
}

TEST_CASE("evaluation in the free algebra") {
  const UPoly p({0, 1, 0, -1});
  const FreePolynomial e = evaluate_at(p, 2, Generator(1, 2));
  CHECK(e == gen(2, 1, 2) - gen_power(2, 1, 2, 3));
  CHECK(evaluate_at(UPoly::constant(3), 2, Generator(1, 1)) == FreePolynomial::constant(3, 2));
}
