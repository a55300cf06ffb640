#include <doctest.h>

#include <random>

#include "freerot/cumulants.hpp"
#include "freerot/errors.hpp"

using namespace freerot;

namespace {

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

// Functional-equation recursion for moments from free cumulants:
// m_n = sum_{s=1..n} kappa_s * sum over compositions i_1+..+i_s = n-s of m_{i_1}..m_{i_s}.
std::vector<Rational> moments_by_recursion(const std::vector<Rational>& kappa, int order) {
  std::vector<Rational> m(static_cast<std::size_t>(order) + 1);
  m[0] = 1;
  for (int n = 1; n <= order; ++n) {
    // conv[s][t]: sum over compositions of t into s nonnegative parts of the product of moments.
    std::vector<std::vector<Rational>> conv(static_cast<std::size_t>(n) + 1,
                                            std::vector<Rational>(static_cast<std::size_t>(n) + 1));
    conv[0][0] = 1;
    for (int s = 1; s <= n; ++s)
      for (int t = 0; t <= n - s; ++t)
        for (int a = 0; a <= t; ++a) conv[s][t] += conv[s - 1][t - a] * m[a];
    Rational total = 0;
    for (int s = 1; s <= n && s <= static_cast<int>(kappa.size()); ++s) total += kappa[s - 1] * conv[s][n - s];
    m[n] = total;
  }
  return {m.begin() + 1, m.end()};
}

std::vector<Rational> rationals(const std::vector<Scalar>& v) {
  std::vector<Rational> out;
  for (const auto& s : v) out.push_back(s.rational_value());
  return out;
}

}  // namespace

TEST_CASE("moments agree with the functional-equation recursion") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const int order = 2 + trial % 7;
    std::vector<Rational> kappa;
    for (int k = 0; k < order; ++k) kappa.push_back(random_rational(rng));
    const DistributionSpec spec({kappa.begin(), kappa.end()});
    CHECK(rationals(moments_from_cumulants(spec, order)) == moments_by_recursion(kappa, order));
  }
}

TEST_CASE("moment-cumulant round trips are exact") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const int order = 2 + trial % 7;
    std::vector<Scalar> kappa;
    for (int k = 0; k < order; ++k) kappa.push_back(random_rational(rng));
    const DistributionSpec spec(kappa);
    const auto m = moments_from_cumulants(spec, order);
    CHECK(cumulants_from_moments(m) == spec);
  }
}

TEST_CASE("symbolic round trip") {
  const auto spec = DistributionSpec::symbolic(6, 2);
  const auto m = moments_from_cumulants(spec, 6);
  CHECK(m[1] == Scalar::param({2, 2}) + Scalar::param({1, 2}) * Scalar::param({1, 2}));
  CHECK(cumulants_from_moments(m) == spec);
}

TEST_CASE("semicircle moments are Catalan numbers") {
  const DistributionSpec semi({0, 1, 0, 0, 0, 0, 0, 0});
  const std::vector<Rational> expected{0, 1, 0, 2, 0, 5, 0, 14};
  CHECK(rationals(moments_from_cumulants(semi, 8)) == expected);
  CHECK(semicircle_moments(8) == expected);
  const auto check = is_semicircular(semi);
  CHECK(check.semicircular);
  CHECK(check.variance == Scalar(1));
}

TEST_CASE("semicircle detection") {
  CHECK_FALSE(is_semicircular(DistributionSpec({0, 1, 0, 1})).semicircular);
  CHECK(is_semicircular(DistributionSpec({3, 2, 0})).mean == Scalar(3));
  CHECK_THROWS(is_semicircular(DistributionSpec({0, 1})));
}

TEST_CASE("truncation") {
  const DistributionSpec spec({0, 1, 2});
  CHECK_THROWS_AS(spec.kappa(4), TruncationError);
  CHECK_THROWS_AS(moments_from_cumulants(spec, 4), TruncationError);
  CHECK_THROWS(DistributionSpec({1}));
}

TEST_CASE("joint moments of two free variables") {
  // phi(abab) = phi(a^2) phi(b)^2 + phi(a)^2 phi(b^2) - phi(a)^2 phi(b)^2 for free a, b.
  const auto fam = FreeFamilySpec::symbolic(2, 4, false);
  const auto ma = moments_from_cumulants(fam.spec(1), 2);
  const auto mb = moments_from_cumulants(fam.spec(2), 2);
  const Scalar abab = joint_free_moment(fam, std::vector<int>{1, 2, 1, 2});
  CHECK(abab == ma[1] * mb[0] * mb[0] + ma[0] * ma[0] * mb[1] - ma[0] * ma[0] * mb[0] * mb[0]);
  // phi(a b) = phi(a) phi(b), phi(a a b) = phi(a^2) phi(b).
  CHECK(joint_free_moment(fam, std::vector<int>{1, 2}) == ma[0] * mb[0]);
  CHECK(joint_free_moment(fam, std::vector<int>{1, 1, 2}) == ma[1] * mb[0]);
  // A single-variable word is the plain moment.
  CHECK(joint_free_moment(fam, std::vector<int>{2, 2, 2, 2}) == moments_from_cumulants(fam.spec(2), 4)[3]);
}

TEST_CASE("identical families share their marginal") {
  const auto fam = FreeFamilySpec::symbolic(3, 3, true);
  CHECK(fam.is_identical());
  CHECK(fam.kappa(3, 2) == Scalar::param({3, 1}));
  CHECK_THROWS(FreeFamilySpec({DistributionSpec({0, 1}), DistributionSpec({0, 2})}, true));
}

TEST_CASE("free CLT scaling against the multilinear expansion") {
  // (a_1 + .. + a_N)/sqrt(N) for N = 4 free copies: expand phi(S^k) over all
  // words in the copies and compare with the scaled cumulants.
  const DistributionSpec base({0, 1, Rational(1, 2), 3, -1, 2});
  const int copies = 4;
  const auto fam = FreeFamilySpec::identical(copies, base);
  const auto scaled = moments_from_cumulants(clt_scaled_spec(base, copies), 6);
  for (int k = 1; k <= 6; ++k) {
    Scalar total;
    std::vector<int> word(static_cast<std::size_t>(k), 1);
    while (true) {
      total += joint_free_moment(fam, word);
      std::size_t p = word.size();
      while (p > 0 && ++word[p - 1] > copies) word[--p] = 1;
      if (p == 0) break;
    }
    Rational norm = 1;
    for (int e = 0; e < k; ++e) norm /= 2;  // sqrt(4)^k
    CHECK(scaled[static_cast<std::size_t>(k - 1)] == total * Scalar(norm));
  }
}

TEST_CASE("free CLT fourth moment") {
  const DistributionSpec base({0, 1, 0, 7});
  for (int root : {1, 3, 10, 100}) {
    const Integer count = root * root;
    const auto m = moments_from_cumulants(clt_scaled_spec(base, count), 4);
    CHECK(m[3] == Scalar(2 + Rational(7) / Rational(count)));
  }
  const DistributionSpec same({0, 1, 2, 3});
  CHECK(clt_scaled_spec(same, 1) == same);
  CHECK_THROWS(clt_scaled_spec(base, 10));
}
