#include <doctest.h>

#include <algorithm>
#include <functional>
#include <set>

#include "freerot/errors.hpp"
#include "freerot/partition.hpp"

using namespace freerot;

namespace {

// Every restricted growth string of length n.
std::vector<std::vector<int>> all_rgs(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> go = [&](int top) {
    if (static_cast<int>(cur.size()) == n) {
      out.push_back(cur);
      return;
    }
    for (int b = 0; b <= top + 1; ++b) {
      cur.push_back(b);
      go(std::max(top, b));
      cur.pop_back();
    }
  };
  go(-1);
  return out;
}

bool crosses(const std::vector<int>& lab) {
  const int n = static_cast<int>(lab.size());
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c)
        for (int e = c + 1; e < n; ++e)
          if (lab[a] == lab[c] && lab[b] == lab[e] && lab[a] != lab[b]) return true;
  return false;
}

std::int64_t catalan_by_recurrence(int n) {
  std::vector<std::int64_t> c{1};
  for (int m = 1; m <= n; ++m) {
    std::int64_t s = 0;
    for (int i = 0; i < m; ++i) s += c[i] * c[m - 1 - i];
    c.push_back(s);
  }
  return c[n];
}

}  // namespace

TEST_CASE("NC(n) matches a crossing filter over all set partitions") {
  for (int n = 1; n <= 8; ++n) {
    std::set<std::string> expected;
    for (const auto& lab : all_rgs(n))
      if (!crosses(lab)) expected.insert(SetPartition::from_labels(lab).to_string());
    std::set<std::string> got;
    for (const auto& p : enumerate_nc(n)) {
      CHECK(is_noncrossing(p.partition()));
      got.insert(p.to_string());
    }
    CHECK(got == expected);
    CHECK(enumerate_nc(n).size() == expected.size());
  }
}

TEST_CASE("NC counts follow the Catalan recurrence") {
  const std::int64_t listed[] = {1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796};
  for (int n = 1; n <= 10; ++n) {
    const auto count = static_cast<std::int64_t>(enumerate_nc(n).size());
    CHECK(count == catalan_by_recurrence(n));
    CHECK(count == listed[n - 1]);
  }
}

TEST_CASE("enumeration is sorted and unique") {
  const auto parts = enumerate_nc(7);
  CHECK(std::is_sorted(parts.begin(), parts.end()));
  CHECK(std::adjacent_find(parts.begin(), parts.end()) == parts.end());
}

TEST_CASE("crossing detection") {
  CHECK_FALSE(is_noncrossing(SetPartition::from_blocks(4, {{1, 3}, {2, 4}})));
  CHECK(is_noncrossing(SetPartition::from_blocks(4, {{1, 4}, {2, 3}})));
  CHECK(is_noncrossing(SetPartition::from_blocks(5, {{1, 5}, {2}, {3, 4}})));
  CHECK_THROWS_AS(NCPartition(SetPartition::from_blocks(4, {{1, 3}, {2, 4}})), std::invalid_argument);
}

TEST_CASE("set partition construction") {
  const auto p = SetPartition::from_blocks(5, {{4, 2}, {5, 1, 3}});
  CHECK(p.to_string() == SetPartition::from_labels(std::vector<int>{7, 3, 7, 3, 7}).to_string());
  CHECK(p.block_count() == 2);
  CHECK(p.blocks() == std::vector<std::vector<int>>{{1, 3, 5}, {2, 4}});
  CHECK_THROWS(SetPartition::from_blocks(3, {{1, 2}}));
  CHECK_THROWS(SetPartition::from_blocks(3, {{1, 2}, {2, 3}}));
  CHECK_THROWS(SetPartition::from_blocks(3, {{1, 2}, {4}}));
  CHECK(kernel_partition(std::vector<int>{2, 1, 2, 3}) == SetPartition::from_blocks(4, {{1, 3}, {2}, {4}}));
}

TEST_CASE("size limit") {
  CHECK_THROWS_AS(enumerate_nc(5, 4), SizeLimitError);
  CHECK_THROWS_AS(NCLattice::get(kDefaultNCLimit + 1), SizeLimitError);
}

TEST_CASE("refinement is a partial order with bottom and top") {
  const auto parts = enumerate_nc(5);
  const auto bottom = SetPartition::singletons(5);
  const auto top = SetPartition::single_block(5);
  for (const auto& p : parts) {
    CHECK(refines(p.partition(), p.partition()));
    CHECK(refines(bottom, p.partition()));
    CHECK(refines(p.partition(), top));
    for (const auto& q : parts) {
      if (refines(p, q) && refines(q, p)) CHECK(p == q);
      if (!refines(p, q)) continue;
      for (const auto& r : parts)
        if (refines(q, r)) CHECK(refines(p, r));
    }
  }
  CHECK_THROWS(refines(SetPartition::singletons(3), SetPartition::singletons(4)));
}

TEST_CASE("Moebius value at the bottom is a signed Catalan number") {
  for (int n = 1; n <= 8; ++n) {
    const std::int64_t sign = n % 2 == 1 ? 1 : -1;
    const NCPartition bottom(SetPartition::singletons(n));
    CHECK(mobius_to_top(bottom) == sign * catalan_by_recurrence(n - 1));
    const auto lat = NCLattice::get(n);
    CHECK(lat->mobius(static_cast<std::size_t>(lat->index_of(bottom.partition()))) == mobius_to_top(bottom));
  }
}

TEST_CASE("Moebius values satisfy the defining sum over upper intervals") {
  for (int n = 1; n <= 7; ++n) {
    const auto lat = NCLattice::get(n);
    const auto& parts = lat->partitions();
    const auto top = SetPartition::single_block(n);
    CHECK(lat->mobius(static_cast<std::size_t>(lat->index_of(top))) == 1);
    for (const auto& p : parts) {
      std::int64_t sum = 0;
      for (std::size_t k = 0; k < parts.size(); ++k)
        if (refines(p, parts[k])) sum += lat->mobius(k);
      CHECK(sum == (p.partition() == top ? 1 : 0));
    }
  }
}

TEST_CASE("Moebius values factor over blocks of the Kreweras complement") {
  // Closed form: mu(p, 1_n) is the product over blocks B of K(p) of
  // (-1)^(|B|-1) C_(|B|-1). K(p) is the coarsest partition of the primed
  // points 1'..n' that does not cross p on the interleaved circle 1 1' 2 2' ...
  for (int n = 1; n <= 7; ++n) {
    const auto lat = NCLattice::get(n);
    const auto& parts = lat->partitions();
    for (std::size_t k = 0; k < parts.size(); ++k) {
      const auto& p = parts[k].partition();
      std::vector<int> best_sizes;
      int best_blocks = n + 1;
      for (const auto& q : parts) {
        std::vector<int> lab(2 * static_cast<std::size_t>(n));
        for (int e = 1; e <= n; ++e) {
          lab[2 * (e - 1)] = p.block_of(e);
          lab[2 * (e - 1) + 1] = n + q.partition().block_of(e);
        }
        if (crosses(lab)) continue;
        if (q.partition().block_count() < best_blocks) {
          best_blocks = q.partition().block_count();
          best_sizes = q.partition().block_sizes();
        }
      }
      std::int64_t expected = 1;
      for (int s : best_sizes) expected *= (s % 2 == 1 ? 1 : -1) * catalan_by_recurrence(s - 1);
      CHECK(lat->mobius(k) == expected);
    }
  }
}
