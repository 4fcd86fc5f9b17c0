#include "dsqft/partitions.hpp"

#include <stdexcept>

namespace dsqft {

namespace {

// restricted growth strings
void enumerate_rgs(int n, std::vector<int>& code, int pos, int maxv,
                   std::vector<Partition>& out) {
  if (pos == n) {
    Partition part(maxv + 1);
    for (int i = 0; i < n; ++i) part[code[i]].push_back(i);
    out.push_back(std::move(part));
    return;
  }
  for (int v = 0; v <= maxv + 1; ++v) {
    code[pos] = v;
    enumerate_rgs(n, code, pos + 1, std::max(maxv, v), out);
  }
}

// partitions of an arbitrary ascending index list
std::vector<Partition> partitions_of(const std::vector<int>& idx) {
  const int n = static_cast<int>(idx.size());
  std::vector<Partition> base = set_partitions(n);
  for (Partition& p : base)
    for (std::vector<int>& blk : p)
      for (int& e : blk) e = idx[e];
  return base;
}

}  // namespace

std::vector<Partition> set_partitions(int n) {
  if (n < 0) throw std::invalid_argument("set_partitions: n >= 0");
  std::vector<Partition> out;
  if (n == 0) {
    out.push_back({});
    return out;
  }
  std::vector<int> code(n, 0);
  enumerate_rgs(n, code, 1, 0, out);
  return out;
}

std::uint64_t bell_number(int n) {
  if (n < 0) throw std::invalid_argument("bell_number: n >= 0");
  // Bell triangle
  std::vector<std::vector<std::uint64_t>> tri{{1}};
  for (int i = 1; i <= n; ++i) {
    std::vector<std::uint64_t> row{tri.back().back()};
    for (std::uint64_t v : tri.back()) row.push_back(row.back() + v);
    tri.push_back(std::move(row));
  }
  return tri[n][0];
}

cplx cluster_expand(const SubsetTable& truncated, int n) {
  if (n < 1) throw std::invalid_argument("cluster_expand: n >= 1");
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  cplx total(0.0, 0.0);
  for (const Partition& part : set_partitions(n)) {
    cplx prod(1.0, 0.0);
    for (const std::vector<int>& blk : part) {
      auto it = truncated.find(blk);
      if (it == truncated.end())
        throw std::out_of_range("cluster_expand: missing truncated entry");
      prod *= it->second;
      if (prod == cplx(0.0, 0.0)) break;
    }
    total += prod;
  }
  return total;
}

SubsetTable cumulants_from_moments(const SubsetTable& moments, int n) {
  SubsetTable trunc;
  // subsets in order of increasing size (iterate bitmasks grouped by popcount)
  for (int size = 1; size <= n; ++size) {
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      if (__builtin_popcount(mask) != size) continue;
      std::vector<int> idx;
      for (int i = 0; i < n; ++i)
        if (mask & (1u << i)) idx.push_back(i);
      auto mit = moments.find(idx);
      if (mit == moments.end())
        throw std::out_of_range("cumulants_from_moments: missing moment entry");
      // T[S] = M[S] - sum over partitions with more than one block of prod T
      cplx correction(0.0, 0.0);
      std::vector<Partition> parts;
      {
        std::vector<Partition> base = set_partitions(size);
        for (Partition& p : base) {
          for (std::vector<int>& blk : p)
            for (int& e : blk) e = idx[e];
          parts.push_back(std::move(p));
        }
      }
      for (const Partition& part : parts) {
        if (part.size() <= 1) continue;
        cplx prod(1.0, 0.0);
        for (const std::vector<int>& blk : part) prod *= trunc.at(blk);
        correction += prod;
      }
      trunc[idx] = mit->second - correction;
    }
  }
  return trunc;
}

SubsetTable moments_from_cumulants(const SubsetTable& truncated, int n) {
  SubsetTable moments;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> idx;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) idx.push_back(i);
    cplx total(0.0, 0.0);
    for (const Partition& part : partitions_of(idx)) {
      cplx prod(1.0, 0.0);
      for (const std::vector<int>& blk : part) {
        auto it = truncated.find(blk);
        if (it == truncated.end())
          throw std::out_of_range("moments_from_cumulants: missing truncated entry");
        prod *= it->second;
      }
      total += prod;
    }
    moments[idx] = total;
  }
  return moments;
}

}  // namespace dsqft
