#pragma once

#include <vector>

#include "fracto/algebra.hpp"
#include "fracto/report.hpp"

namespace fracto {

/// Bounded integer window 0..N-1 with the standard interval convexity and a
/// permutation-induced one; the fractoconvexity of interest is 1/{G1,G2}.
struct ZLineModel {
  int window_size = 0;
  std::vector<int> perm;
  std::vector<int> inv;
  ConvPtr g1;  // intervals
  ConvPtr g2;  // perm-image intervals
  Fractoconvexity f4;
};

ZLineModel build_zline(int window_size, std::vector<int> perm);

std::vector<int> identity_perm(int n);
std::vector<int> reversal_perm(int n);
std::vector<int> random_perm(int n, std::uint64_t seed);

/// Exhaustive: every member of F4 equals hull1 ^ hull2. The report also
/// counts members that are convex in neither input convexity.
Report check_prop4(const ZLineModel& model, int cap = 16);

SetFamily f4_members(const ZLineModel& model, int cap = 16);

}  // namespace fracto
