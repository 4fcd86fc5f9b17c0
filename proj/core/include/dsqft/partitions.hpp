#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "dsqft/numeric.hpp"

namespace dsqft {

// All partitions of {0..n-1} into disjoint nonempty blocks; each block is
// ascending and blocks are ordered by smallest element.
using Partition = std::vector<std::vector<int>>;
std::vector<Partition> set_partitions(int n);

std::uint64_t bell_number(int n);

// Tables keyed by the ascending index subset.
using SubsetTable = std::map<std::vector<int>, cplx>;

// moments from cumulants: full value of the whole index set {0..n-1} as the
// partition sum of products of truncated values. Throws std::out_of_range on
// a missing entry.
cplx cluster_expand(const SubsetTable& truncated, int n);

// full tables -> truncated tables (inverse of the cluster expansion),
// recursive over subsets. Input must contain every nonempty subset of
// {0..n-1}.
SubsetTable cumulants_from_moments(const SubsetTable& moments, int n);

// moments for every nonempty subset from a truncated table
SubsetTable moments_from_cumulants(const SubsetTable& truncated, int n);

}  // namespace dsqft
