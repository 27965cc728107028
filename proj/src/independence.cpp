#include "fracto/independence.hpp"

#include <algorithm>
#include <chrono>
#include <random>

namespace fracto {

Bits pair_hull(const std::vector<ConvPtr>& convs, const Bits& a) {
  if (convs.empty()) throw EmptyList("pair_hull on empty list");
  const GroundSpace& space = convs.front()->space();
  for (const auto& c : convs)
    if (!(c->space() == space))
      throw SpaceMismatch("convexities live on different ground spaces");
  Bits out = convs.front()->hull(a);
  for (std::size_t i = 1; i < convs.size(); ++i) out &= convs[i]->hull(a);
  return out;
}

IndependenceReport independence_domain(const std::vector<ConvPtr>& convs,
                                       int cap) {
  if (convs.empty()) throw EmptyList("independence_domain on empty list");
  check_enumerable(convs.front()->space(), cap);
  // listing the same family twice does not change 1/{...} membership
  std::vector<ConvPtr> uniq;
  for (const auto& c : convs) {
    bool dup = false;
    for (const auto& u : uniq)
      if (same_family(*u, *c)) dup = true;
    if (!dup) uniq.push_back(c);
  }
  auto f = Fractoconvexity::single_block(uniq, 1);
  SetFamily members = enumerate_members(f, cap);
  IndependenceReport rep;
  std::vector<Bits> domain;
  for (const auto& a : members.members()) {
    Bits ph = pair_hull(convs, a);
    if (ph == a) {
      domain.push_back(a);
    } else {
      rep.independent = false;
      rep.violations.emplace_back(a, ph);
    }
  }
  rep.domain = SetFamily(std::move(domain));
  return rep;
}

bool condition_3_1(const Convexity& g1, const Convexity& g2, const Bits& a) {
  if (!(g1.space() == g2.space()))
    throw SpaceMismatch("convexities live on different ground spaces");
  bool ok = true;
  for_each_small_subset(a, 3, [&](const Bits& b) {
    Bits ph = g1.hull(b);
    ph &= g2.hull(b);
    if (!a.includes(ph)) {
      ok = false;
      return false;
    }
    return true;
  });
  return ok;
}

namespace {

// One instance (P, x_k): every x in the joint hull of P u {x_k} must be
// reachable as hull_1{y_1, x_k} ^ hull_2{y_2, x_k} with y_1, y_2 from the
// joint hull of P.
bool conical_instance_ok(const Convexity& g1, const Convexity& g2,
                         const Bits& prefix_hull_joint, const Bits& p_with_last,
                         int last, int* unreachable) {
  Bits joint = g1.hull(p_with_last);
  joint &= g2.hull(p_with_last);
  const int n = joint.universe();
  auto ys = prefix_hull_joint.elements();
  for (int x : joint.elements()) {
    bool via1 = false, via2 = false;
    for (int y : ys) {
      Bits s(n);
      s.set(y);
      s.set(last);
      if (!via1 && g1.cached_hull(s).test(x)) via1 = true;
      if (!via2 && g2.cached_hull(s).test(x)) via2 = true;
      if (via1 && via2) break;
    }
    if (!(via1 && via2)) {
      if (unreachable) *unreachable = x;
      return false;
    }
  }
  return true;
}

bool run_instance(const Convexity& g1, const Convexity& g2, const Bits& prefix,
                  int last, ConicalResult& res) {
  Bits ph = g1.hull(prefix);
  ph &= g2.hull(prefix);
  Bits with_last = prefix;
  with_last.set(last);
  ++res.instances;
  int unreachable = -1;
  if (!conical_instance_ok(g1, g2, ph, with_last, last, &unreachable)) {
    res.independent = false;
    res.witness = ConicalWitness{prefix.elements(), last, unreachable};
    return false;
  }
  return true;
}

}  // namespace

ConicalResult is_conically_independent(const Convexity& g1, const Convexity& g2,
                                       int cap) {
  if (!(g1.space() == g2.space()))
    throw SpaceMismatch("convexities live on different ground spaces");
  check_enumerable(g1.space(), cap);
  const int n = g1.space().size;
  ConicalResult res;
  res.independent = true;
  // increasing prefix size, lexicographic within a size; first failure wins
  for (int psz = 3; psz <= n; ++psz) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      Bits p = Bits::from_mask(n, mask);
      if (p.count() != psz) continue;
      for (int last = 0; last < n; ++last) {
        if (!run_instance(g1, g2, p, last, res)) return res;
      }
    }
  }
  return res;
}

ConicalResult conical_scan_sampled(const Convexity& g1, const Convexity& g2,
                                   std::uint64_t seed, int samples,
                                   int max_prefix) {
  if (!(g1.space() == g2.space()))
    throw SpaceMismatch("convexities live on different ground spaces");
  const int n = g1.space().size;
  ConicalResult res;
  res.independent = true;
  res.exhaustive = false;
  res.seed = seed;
  // all 3-point prefixes, every last point
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        Bits p = Bits::of(n, {i, j, k});
        for (int last = 0; last < n; ++last)
          if (!run_instance(g1, g2, p, last, res)) return res;
      }
  // seeded larger prefixes
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::uniform_int_distribution<int> size_pick(4, std::max(4, max_prefix));
  for (int t = 0; t < samples; ++t) {
    int sz = std::min(size_pick(rng), n);
    Bits p(n);
    while (p.count() < sz) p.set(pick(rng));
    int last = pick(rng);
    if (!run_instance(g1, g2, p, last, res)) return res;
  }
  return res;
}

Report verify_lemma1(const Convexity& g1, const Convexity& g2,
                     const ConicalResult& scan, int cap) {
  if (!scan.independent)
    throw PreconditionNotChecked(
        "conical independence scan did not pass for this pair");
  auto t0 = std::chrono::steady_clock::now();
  check_enumerable(g1.space(), cap);
  const int n = g1.space().size;
  Report rep;
  rep.name = "lemma1";
  rep.seed = scan.seed;
  long long checked = 0, applicable = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Bits a = Bits::from_mask(n, mask);
    ++checked;
    if (!condition_3_1(g1, g2, a)) continue;
    ++applicable;
    Bits ph = g1.hull(a);
    ph &= g2.hull(a);
    if (!(ph == a))
      rep.fail("A=" + a.str() + " pair-hull=" + ph.str());
  }
  rep.count("subsets", checked);
  rep.count("condition_sets", applicable);
  rep.count("violations", static_cast<long long>(rep.witnesses.size()));
  rep.timing_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
  return rep;
}

Report verify_prop3(const Convexity& g1, const Convexity& g2,
                    const ConicalResult& scan, int cap) {
  if (g1.space().arity != 3 || g2.space().arity != 3)
    throw ArityMismatch("verify_prop3 needs arity 3 on both convexities");
  if (!scan.independent)
    throw PreconditionNotChecked(
        "conical independence scan did not pass for this pair");
  auto t0 = std::chrono::steady_clock::now();
  check_enumerable(g1.space(), cap);
  Report rep;
  rep.name = "prop3";
  rep.seed = scan.seed;
  std::vector<ConvPtr> convs = {std::make_shared<Convexity>(g1),
                                std::make_shared<Convexity>(g2)};
  auto idc = independence_domain(convs, cap);
  rep.count("members", static_cast<long long>(idc.domain.size() +
                                              idc.violations.size()));
  rep.count("violations", static_cast<long long>(idc.violations.size()));
  for (const auto& [a, ph] : idc.violations)
    rep.fail("A=" + a.str() + " pair-hull=" + ph.str());
  rep.timing_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
  return rep;
}

}  // namespace fracto
