#include <complex>

#include "doctest.h"
#include "dsqft/partitions.hpp"

using namespace dsqft;

TEST_CASE("partition counts are Bell numbers") {
  CHECK(set_partitions(1).size() == 1);
  CHECK(set_partitions(3).size() == 5);
  CHECK(set_partitions(4).size() == 15);
  CHECK(set_partitions(5).size() == 52);
  CHECK(bell_number(3) == 5);
  CHECK(bell_number(4) == 15);
  CHECK(bell_number(5) == 52);
  CHECK(bell_number(8) == 4140);
}

TEST_CASE("blocks are ascending and partition the index set") {
  for (const Partition& p : set_partitions(5)) {
    std::vector<bool> seen(5, false);
    for (const auto& blk : p) {
      REQUIRE(!blk.empty());
      for (std::size_t i = 0; i + 1 < blk.size(); ++i) CHECK(blk[i] < blk[i + 1]);
      for (int e : blk) {
        CHECK(!seen[e]);
        seen[e] = true;
      }
    }
    for (bool s : seen) CHECK(s);
  }
}

TEST_CASE("n=3 with only 2-blocks gives vanishing full 3-point") {
  SubsetTable t;
  t[{0}] = t[{1}] = t[{2}] = cplx(0, 0);
  t[{0, 1}] = cplx(1.5, 0.5);
  t[{0, 2}] = cplx(-0.3, 0.1);
  t[{1, 2}] = cplx(2.0, -1.0);
  t[{0, 1, 2}] = cplx(0, 0);
  CHECK(cluster_expand(t, 3) == cplx(0, 0));
}

TEST_CASE("n=4 pair partitions reproduce the Wick sum") {
  SubsetTable t;
  for (int i = 0; i < 4; ++i) t[{i}] = cplx(0, 0);
  auto w = [](int i, int j) { return cplx(1.0 + i, 0.5 * j); };
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) t[{i, j}] = w(i, j);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      for (int k = j + 1; k < 4; ++k) t[{i, j, k}] = cplx(0, 0);
  t[{0, 1, 2, 3}] = cplx(0, 0);
  const cplx expect = w(0, 1) * w(2, 3) + w(0, 2) * w(1, 3) + w(0, 3) * w(1, 2);
  CHECK(cluster_expand(t, 4) == expect);
}

TEST_CASE("moments <-> cumulants round trip on random tables up to n=6") {
  Rng64 rng(29);
  for (const int n : {2, 3, 4, 5, 6}) {
    SubsetTable trunc;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      std::vector<int> idx;
      for (int i = 0; i < n; ++i)
        if (mask & (1u << i)) idx.push_back(i);
      trunc[idx] = (idx.size() == 1)
                       ? cplx(0, 0)
                       : cplx(rng.next_gaussian(), rng.next_gaussian());
    }
    const SubsetTable moments = moments_from_cumulants(trunc, n);
    const SubsetTable back = cumulants_from_moments(moments, n);
    for (const auto& [key, val] : trunc) {
      const cplx got = back.at(key);
      CHECK(std::abs(got - val) <= 1e-12 * (1.0 + std::abs(val)));
    }
    // and the forward direction again (moments -> cumulants -> moments)
    const SubsetTable m2 = moments_from_cumulants(back, n);
    for (const auto& [key, val] : moments)
      CHECK(std::abs(m2.at(key) - val) <= 1e-12 * (1.0 + std::abs(val)));
  }
}

TEST_CASE("missing entries raise") {
  SubsetTable t;
  t[{0}] = cplx(0, 0);
  CHECK_THROWS_AS(cluster_expand(t, 2), std::out_of_range);
  CHECK_THROWS_AS(cumulants_from_moments(t, 2), std::out_of_range);
}

TEST_CASE("partitions with a fixed adjacent pair as a block factorize") {
  // class-3 structure: summing over all partitions that contain the block
  // {k, k+1} equals T[{k,k+1}] times the full cluster sum of the rest
  Rng64 rng(31);
  const int n = 5;
  SubsetTable trunc;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> idx;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) idx.push_back(i);
    trunc[idx] = (idx.size() == 1) ? cplx(0, 0)
                                   : cplx(rng.next_gaussian(), rng.next_gaussian());
  }
  const int k = 2;  // block {2,3}
  cplx class3(0, 0);
  for (const Partition& part : set_partitions(n)) {
    bool has_pair = false;
    for (const auto& blk : part)
      if (blk.size() == 2 && blk[0] == k && blk[1] == k + 1) has_pair = true;
    if (!has_pair) continue;
    cplx prod(1, 0);
    for (const auto& blk : part) prod *= trunc.at(blk);
    class3 += prod;
  }
  // remaining indices {0,1,4}: cluster sum over their partitions
  const std::vector<int> rest{0, 1, 4};
  cplx rest_sum(0, 0);
  for (const Partition& part : set_partitions(3)) {
    cplx prod(1, 0);
    for (auto blk : part) {
      for (int& e : blk) e = rest[e];
      prod *= trunc.at(blk);
    }
    rest_sum += prod;
  }
  const cplx expect = trunc.at({k, k + 1}) * rest_sum;
  CHECK(std::abs(class3 - expect) <= 1e-13 * (1.0 + std::abs(expect)));
}
