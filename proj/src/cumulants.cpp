#include "freerot/cumulants.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

#include "freerot/errors.hpp"
#include "freerot/partition.hpp"

namespace freerot {

DistributionSpec::DistributionSpec(std::vector<Scalar> kappa) : kappa_(std::move(kappa)) {
  if (kappa_.size() < 2) throw std::invalid_argument("a distribution spec needs at least two cumulants");
}

DistributionSpec DistributionSpec::symbolic(int order, int var) {
  std::vector<Scalar> k;
  for (int n = 1; n <= order; ++n) k.push_back(Scalar::param({n, var}));
  return DistributionSpec(std::move(k));
}

const Scalar& DistributionSpec::kappa(int n) const {
  if (n < 1 || n > order())
    throw TruncationError("cumulant of order " + std::to_string(n) + " requested from a spec truncated at " +
                          std::to_string(order()));
  return kappa_[static_cast<std::size_t>(n - 1)];
}

FreeFamilySpec::FreeFamilySpec(std::vector<DistributionSpec> specs, bool identical)
    : specs_(std::move(specs)), identical_(identical) {
  if (specs_.empty()) throw std::invalid_argument("a free family needs at least one variable");
  if (identical_)
    for (const auto& s : specs_)
      if (!(s == specs_.front())) throw std::invalid_argument("family flagged identical but marginals differ");
}

FreeFamilySpec FreeFamilySpec::identical(int d, const DistributionSpec& spec) {
  return FreeFamilySpec(std::vector<DistributionSpec>(static_cast<std::size_t>(d), spec), true);
}

FreeFamilySpec FreeFamilySpec::symbolic(int d, int order, bool identical) {
  if (identical) return FreeFamilySpec::identical(d, DistributionSpec::symbolic(order, 1));
  std::vector<DistributionSpec> specs;
  for (int i = 1; i <= d; ++i) specs.push_back(DistributionSpec::symbolic(order, i));
  return FreeFamilySpec(std::move(specs), false);
}

int FreeFamilySpec::order() const {
  int n = specs_.front().order();
  for (const auto& s : specs_) n = std::min(n, s.order());
  return n;
}

const DistributionSpec& FreeFamilySpec::spec(int var) const {
  if (var < 1 || var > d())
    throw std::invalid_argument("variable index " + std::to_string(var) + " outside 1.." + std::to_string(d()));
  return specs_[static_cast<std::size_t>(var - 1)];
}

namespace {

// Block-size multisets of NC(k) with their multiplicity and summed Möbius value.
struct SizeClass {
  std::int64_t count = 0;
  std::int64_t mobius = 0;
};

std::map<std::vector<int>, SizeClass> size_classes(int k) {
  auto lattice = NCLattice::get(k);
  std::map<std::vector<int>, SizeClass> out;
  const auto& parts = lattice->partitions();
  for (std::size_t idx = 0; idx < parts.size(); ++idx) {
    auto sizes = parts[idx].partition().block_sizes();
    std::sort(sizes.begin(), sizes.end());
    auto& c = out[sizes];
    ++c.count;
    c.mobius += lattice->mobius(idx);
  }
  return out;
}

}  // namespace

std::vector<Scalar> moments_from_cumulants(const DistributionSpec& spec, int m) {
  if (m > spec.order())
    throw TruncationError("moments up to order " + std::to_string(m) + " need cumulants up to that order");
  std::vector<Scalar> out;
  for (int k = 1; k <= m; ++k) {
    Scalar total;
    for (const auto& [sizes, cls] : size_classes(k)) {
      Scalar prod(1);
      for (int s : sizes) prod *= spec.kappa(s);
      prod *= Rational(cls.count);
      total += prod;
    }
    out.push_back(std::move(total));
  }
  return out;
}

DistributionSpec cumulants_from_moments(std::span<const Scalar> moments) {
  const int n = static_cast<int>(moments.size());
  std::vector<Scalar> kappa;
  for (int k = 1; k <= n; ++k) {
    Scalar total;
    for (const auto& [sizes, cls] : size_classes(k)) {
      if (cls.mobius == 0) continue;
      Scalar prod(1);
      for (int s : sizes) prod *= moments[static_cast<std::size_t>(s - 1)];
      prod *= Rational(cls.mobius);
      total += prod;
    }
    kappa.push_back(std::move(total));
  }
  return DistributionSpec(std::move(kappa));
}

Scalar joint_free_moment(const FreeFamilySpec& family, std::span<const int> word) {
  if (word.empty()) return Scalar(1);
  for (int v : word)
    if (v < 1 || v > family.d())
      throw std::invalid_argument("variable index " + std::to_string(v) + " outside 1.." +
                                  std::to_string(family.d()));
  const int n = static_cast<int>(word.size());
  if (n > family.order())
    throw TruncationError("word of length " + std::to_string(n) + " exceeds truncation order " +
                          std::to_string(family.order()));
  const SetPartition ker = kernel_partition(word);
  auto lattice = NCLattice::get(n);
  Scalar total;
  for (const auto& pi : lattice->partitions()) {
    const auto& p = pi.partition();
    if (!refines(p, ker)) continue;
    Scalar prod(1);
    for (const auto& block : p.blocks()) {
      const int var = word[static_cast<std::size_t>(block.front() - 1)];
      prod *= family.kappa(static_cast<int>(block.size()), var);
      if (prod.is_zero()) break;
    }
    total += prod;
  }
  return total;
}

SemicircleCheck is_semicircular(const DistributionSpec& spec) {
  if (spec.order() < 3) throw std::invalid_argument("semicircle test needs cumulants up to order 3 at least");
  SemicircleCheck out;
  out.semicircular = true;
  for (int n = 3; n <= spec.order(); ++n)
    if (!spec.kappa(n).is_zero()) out.semicircular = false;
  out.mean = spec.kappa(1);
  out.variance = spec.kappa(2);
  return out;
}

DistributionSpec clt_scaled_spec(const DistributionSpec& spec, const Integer& count) {
  if (count < 1) throw std::invalid_argument("count must be positive");
  if (!mpz_perfect_square_p(count.get_mpz_t()))
    throw std::invalid_argument("count " + count.get_str() + " is not a perfect square");
  if (!spec.kappa(1).is_zero()) throw std::invalid_argument("CLT scaling needs a centred spec (kappa_1 = 0)");
  Integer root;
  mpz_sqrt(root.get_mpz_t(), count.get_mpz_t());
  std::vector<Scalar> kappa;
  // kappa_n -> count^{1 - n/2} kappa_n = root^{2 - n} kappa_n
  for (int n = 1; n <= spec.order(); ++n) {
    Rational factor(1);
    if (n == 1) factor = Rational(root);
    for (int e = 2; e < n; ++e) factor /= Rational(root);
    Scalar k = spec.kappa(n);
    k *= factor;
    kappa.push_back(std::move(k));
  }
  return DistributionSpec(std::move(kappa));
}

std::vector<Rational> semicircle_moments(int m) {
  std::vector<Rational> out;
  for (int k = 1; k <= m; ++k) {
    if (k % 2) {
      out.emplace_back(0);
      continue;
    }
    const unsigned long half = static_cast<unsigned long>(k / 2);
    Integer binom;
    mpz_bin_uiui(binom.get_mpz_t(), 2 * half, half);
    out.emplace_back(binom, Integer(half + 1));
    out.back().canonicalize();
  }
  return out;
}

}  // namespace freerot
