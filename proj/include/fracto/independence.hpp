#pragma once

#include <optional>
#include <vector>

#include "fracto/algebra.hpp"
#include "fracto/report.hpp"

namespace fracto {

struct IndependenceReport {
  bool independent = true;
  SetFamily domain;  // members of 1/{G_lambda} equal to their pair-hull
  std::vector<std::pair<Bits, Bits>> violations;  // (A, intersection of hulls)
};

/// Intersection of the hulls of A under every listed convexity.
Bits pair_hull(const std::vector<ConvPtr>& convs, const Bits& a);

IndependenceReport independence_domain(const std::vector<ConvPtr>& convs,
                                       int cap = kDefaultEnumCap);

/// Condition on A: the pair-hull of every <=3-point selection from A stays
/// inside A (selections with repetition collapse to smaller subsets).
bool condition_3_1(const Convexity& g1, const Convexity& g2, const Bits& a);

struct ConicalWitness {
  std::vector<int> prefix;  // the point set x_1..x_{k-1}
  int last = -1;            // x_k
  int unreachable = -1;     // the x with no (y_1, y_2) pair
};

struct ConicalResult {
  bool independent = false;
  std::optional<ConicalWitness> witness;
  long long instances = 0;
  bool exhaustive = true;
  std::uint64_t seed = 0;
};

/// Exchange-property scan over all prefix sets P with |P| >= 3 and every
/// last point (inside or outside P). Exhaustive; guarded by the cap.
ConicalResult is_conically_independent(const Convexity& g1, const Convexity& g2,
                                       int cap = kDefaultEnumCap);

/// Large-space variant: all |P| = 3 instances plus seeded samples of larger
/// prefixes. A false verdict is still definite (a witness is a witness).
ConicalResult conical_scan_sampled(const Convexity& g1, const Convexity& g2,
                                   std::uint64_t seed, int samples = 2000,
                                   int max_prefix = 6);

/// For every A satisfying the <=3-point condition, asserts A equals its
/// pair-hull. The scan result is the machine-checked hypothesis.
Report verify_lemma1(const Convexity& g1, const Convexity& g2,
                     const ConicalResult& scan, int cap = kDefaultEnumCap);

/// Every member of (3)-1/{G1,G2} is an element of independence.
Report verify_prop3(const Convexity& g1, const Convexity& g2,
                    const ConicalResult& scan, int cap = kDefaultEnumCap);

}  // namespace fracto
