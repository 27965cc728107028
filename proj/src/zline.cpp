#include "fracto/zline.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <random>

namespace fracto {

std::vector<int> identity_perm(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

std::vector<int> reversal_perm(int n) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = n - 1 - i;
  return p;
}

std::vector<int> random_perm(int n, std::uint64_t seed) {
  std::vector<int> p = identity_perm(n);
  std::mt19937_64 rng(seed);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

namespace {

Fractoconvexity make_f4(const ConvPtr& g1, const ConvPtr& g2) {
  // a block may not list one family twice; an interval-preserving perm
  // collapses F4 to 1/{G1}
  if (same_family(*g1, *g2))
    return Fractoconvexity::single_block({g1}, 1);
  return Fractoconvexity::single_block({g1, g2}, 1);
}

}  // namespace

ZLineModel build_zline(int window_size, std::vector<int> perm) {
  if (window_size < 2)
    throw WindowTooSmall("window must hold at least two integers");
  if (static_cast<int>(perm.size()) != window_size)
    throw NotAPermutation("perm length does not match the window size");
  std::vector<int> inv(window_size, -1);
  for (int i = 0; i < window_size; ++i) {
    if (perm[i] < 0 || perm[i] >= window_size || inv[perm[i]] != -1)
      throw NotAPermutation("perm is not a bijection of the window");
    inv[perm[i]] = i;
  }
  auto g1 = std::make_shared<Convexity>(make_interval_convexity(window_size, "G1"));
  auto g2 = std::make_shared<Convexity>(
      make_permuted_interval_convexity(perm, "G2"));
  Fractoconvexity f4 = make_f4(g1, g2);
  return ZLineModel{window_size, std::move(perm), std::move(inv),
                    std::move(g1), std::move(g2), std::move(f4)};
}

Report check_prop4(const ZLineModel& model, int cap) {
  auto t0 = std::chrono::steady_clock::now();
  check_enumerable(model.g1->space(), cap);
  const int n = model.window_size;
  Report rep;
  rep.name = "prop4";
  long long members = 0, neither = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Bits a = Bits::from_mask(n, mask);
    if (!model.f4.member(a)) continue;
    ++members;
    Bits ph = model.g1->hull(a);
    ph &= model.g2->hull(a);
    if (!(ph == a))
      rep.fail("A=" + a.str() + " pair-hull=" + ph.str());
    if (!model.g1->is_convex(a) && !model.g2->is_convex(a)) ++neither;
  }
  rep.count("subsets", std::int64_t{1} << n);
  rep.count("members", members);
  rep.count("members_convex_in_neither", neither);
  rep.count("violations", static_cast<long long>(rep.witnesses.size()));
  rep.timing_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
  return rep;
}

SetFamily f4_members(const ZLineModel& model, int cap) {
  return enumerate_members(model.f4, cap);
}

}  // namespace fracto
