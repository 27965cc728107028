#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "fracto/algebra.hpp"
#include "fracto/randgen.hpp"

using namespace fracto;

namespace {

// independent re-implementation of the membership quantifier
bool member_oracle(const Fractoconvexity& f, const Bits& a) {
  int n = f.space().arity;
  bool ok = true;
  for_each_small_subset(a, n, [&](const Bits& b) {
    bool served = false;
    for (const Block& blk : f.blocks()) {
      int hits = 0;
      for (const auto& g : blk.members)
        if (a.includes(g->cached_hull(b))) ++hits;
      if (hits >= blk.threshold) {
        served = true;
        break;
      }
    }
    if (!served) {
      ok = false;
      return false;
    }
    return true;
  });
  return ok;
}

ConvPtr ptr(Convexity c) { return std::make_shared<Convexity>(std::move(c)); }

}  // namespace

TEST_CASE("single-convexity fractoconvexity reduces to convexity") {
  std::mt19937_64 rng(1);
  GroundSpace space(7, 2);
  Convexity g = random_convexity(space, rng, "G");
  auto f = Fractoconvexity::single_block({ptr(g)}, 1);
  for (std::uint64_t m = 0; m < (1ull << 7); ++m) {
    Bits a = Bits::from_mask(7, m);
    CHECK(f.member(a) == g.is_convex(a));
  }
}

TEST_CASE("full pair block is exactly the intersection family") {
  std::mt19937_64 rng(2);
  GroundSpace space(6, 2);
  for (int t = 0; t < 10; ++t) {
    auto g1 = ptr(random_convexity(space, rng, "G1"));
    auto g2 = ptr(random_convexity(space, rng, "G2"));
    if (same_family(*g1, *g2)) continue;
    auto f = Fractoconvexity::single_block({g1, g2}, 2);
    SetFamily expected =
        SetFamily::intersection(enumerate_convex(*g1), enumerate_convex(*g2));
    CHECK(enumerate_members(f) == expected);
  }
}

TEST_CASE("threshold-1 pair admits members convex in neither input") {
  bool found = false;
  GroundSpace space(6, 2);
  for (std::uint64_t seed = 0; seed < 20 && !found; ++seed) {
    std::mt19937_64 rng(seed);
    auto g1 = ptr(random_convexity(space, rng, "G1"));
    auto g2 = ptr(random_convexity(space, rng, "G2"));
    if (same_family(*g1, *g2)) continue;
    auto f = Fractoconvexity::single_block({g1, g2}, 1);
    for (std::uint64_t m = 0; m < 64; ++m) {
      Bits a = Bits::from_mask(6, m);
      bool mem = f.member(a);
      CHECK(mem == member_oracle(f, a));
      if (mem && !g1->is_convex(a) && !g2->is_convex(a)) found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("membership agrees with the two-loop oracle on random instances") {
  std::mt19937_64 rng(3);
  GroundSpace space(6, 2);
  for (int t = 0; t < 30; ++t) {
    auto pool = random_convexity_pool(space, rng, 4);
    Fractoconvexity f = random_fracto(pool, rng);
    for (std::uint64_t m = 0; m < 64; ++m) {
      Bits a = Bits::from_mask(6, m);
      CHECK(f.member(a) == member_oracle(f, a));
    }
  }
}

TEST_CASE("is_multiconvex equals the full-block membership") {
  std::mt19937_64 rng(4);
  GroundSpace space(6, 2);
  for (int t = 0; t < 10; ++t) {
    auto g1 = ptr(random_convexity(space, rng, "G1"));
    auto g2 = ptr(random_convexity(space, rng, "G2"));
    if (same_family(*g1, *g2)) continue;
    auto f = Fractoconvexity::single_block({g1, g2}, 2);
    for (std::uint64_t m = 0; m < 64; ++m) {
      Bits a = Bits::from_mask(6, m);
      CHECK(is_multiconvex({g1, g2}, a) == f.member(a));
    }
    CHECK(is_multiconvex({g1}, Bits::of(6, {0, 2})) ==
          g1->is_convex(Bits::of(6, {0, 2})));
  }
}

TEST_CASE("multiconvex members form an intersection-closed family with X") {
  std::mt19937_64 rng(5);
  GroundSpace space(6, 2);
  auto pool = random_convexity_pool(space, rng, 3);
  auto f = Fractoconvexity::single_block(pool, 3);
  SetFamily fam = enumerate_members(f);
  CHECK(fam.contains(Bits::full(6)));
  for (const auto& a : fam.members())
    for (const auto& b : fam.members()) CHECK(fam.contains(a & b));
}

TEST_CASE("join is idempotent, commutative, associative") {
  std::mt19937_64 rng(6);
  GroundSpace space(6, 2);
  for (int t = 0; t < 20; ++t) {
    auto pool = random_convexity_pool(space, rng, 4);
    Fractoconvexity f1 = random_fracto(pool, rng);
    Fractoconvexity f2 = random_fracto(pool, rng);
    Fractoconvexity f3 = random_fracto(pool, rng);
    CHECK(family_equal(join(f1, f1), f1));
    CHECK(per_b_equal(join(f1, f2), join(f2, f1)));
    CHECK(per_b_equal(join(join(f1, f2), f3), join(f1, join(f2, f3))));
  }
}

TEST_CASE("shorter prefix block absorbs the longer one under join") {
  std::mt19937_64 rng(7);
  GroundSpace space(6, 2);
  for (int t = 0; t < 20; ++t) {
    auto pool = random_convexity_pool(space, rng, 4);
    auto shorter = Fractoconvexity::single_block({pool[0], pool[1]}, 2);
    auto longer = Fractoconvexity::single_block(
        {pool[0], pool[1], pool[2]}, 3);
    CHECK(family_equal(join(shorter, longer), shorter));
    CHECK(per_b_equal(join(shorter, longer), shorter));
  }
}

TEST_CASE("join membership is the per-B disjunction") {
  std::mt19937_64 rng(8);
  GroundSpace space(6, 2);
  for (int t = 0; t < 20; ++t) {
    auto pool = random_convexity_pool(space, rng, 4);
    Fractoconvexity f1 = random_fracto(pool, rng);
    Fractoconvexity f2 = random_fracto(pool, rng);
    Fractoconvexity j = join(f1, f2);
    for (std::uint64_t m = 0; m < 64; ++m) {
      Bits a = Bits::from_mask(6, m);
      bool ok = true;
      for_each_small_subset(a, 2, [&](const Bits& b) {
        if (!(f1.served(b, a) || f2.served(b, a))) {
          ok = false;
          return false;
        }
        return true;
      });
      CHECK(j.member(a) == ok);
    }
  }
}

TEST_CASE("meet of two singletons is the intersection convexity") {
  std::mt19937_64 rng(9);
  GroundSpace space(6, 2);
  for (int t = 0; t < 10; ++t) {
    auto g1 = ptr(random_convexity(space, rng, "G1"));
    auto g2 = ptr(random_convexity(space, rng, "G2"));
    if (same_family(*g1, *g2)) continue;
    auto f1 = Fractoconvexity::single_block({g1}, 1);
    auto f2 = Fractoconvexity::single_block({g2}, 1);
    auto both = ptr(intersect_convexities({g1, g2}, "G12"));
    auto direct = Fractoconvexity::single_block({both}, 1);
    CHECK(family_equal(meet(f1, f2), direct));
  }
}

TEST_CASE("meet is the membership conjunction") {
  std::mt19937_64 rng(10);
  GroundSpace space(6, 2);
  int triples = 0;
  while (triples < 200) {
    auto pool = random_convexity_pool(space, rng, 4);
    Fractoconvexity f1 = random_fracto(pool, rng);
    Fractoconvexity f2 = random_fracto(pool, rng);
    Fractoconvexity m12 = meet(f1, f2);
    std::uint64_t m = rng() & 63;
    Bits a = Bits::from_mask(6, m);
    CHECK(m12.member(a) == (f1.member(a) && f2.member(a)));
    ++triples;
  }
}

TEST_CASE("meet is idempotent extensionally") {
  std::mt19937_64 rng(11);
  GroundSpace space(6, 2);
  for (int t = 0; t < 10; ++t) {
    auto pool = random_convexity_pool(space, rng, 4);
    Fractoconvexity f = random_fracto(pool, rng);
    CHECK(family_equal(meet(f, f), f));
  }
}

TEST_CASE("normalize expands a 1-threshold block to singleton joins") {
  std::mt19937_64 rng(12);
  GroundSpace space(6, 2);
  auto pool = random_convexity_pool(space, rng, 3);
  auto f = Fractoconvexity::single_block(pool, 1);
  Fractoconvexity norm = normalize(f);
  REQUIRE(norm.blocks().size() == 3);
  for (const Block& b : norm.blocks()) {
    CHECK(b.threshold == 1);
    CHECK(b.members.size() == 1);
  }
  CHECK(per_b_equal(norm, f));
}

TEST_CASE("normalize of a full block is itself") {
  std::mt19937_64 rng(13);
  GroundSpace space(6, 2);
  auto pool = random_convexity_pool(space, rng, 3);
  auto f = Fractoconvexity::single_block(pool, 3);
  Fractoconvexity norm = normalize(f);
  REQUIRE(norm.blocks().size() == 1);
  CHECK(same_block(norm.blocks()[0], f.blocks()[0]));
}

TEST_CASE("normalize of 2-of-3 yields the three pair blocks") {
  std::mt19937_64 rng(14);
  GroundSpace space(6, 2);
  auto pool = random_convexity_pool(space, rng, 3);
  auto f = Fractoconvexity::single_block(pool, 2);
  Fractoconvexity norm = normalize(f);
  REQUIRE(norm.blocks().size() == 3);
  for (const Block& b : norm.blocks()) {
    CHECK(b.full());
    CHECK(b.members.size() == 2);
  }
  for (std::uint64_t m = 0; m < 64; ++m) {
    Bits a = Bits::from_mask(6, m);
    CHECK(norm.member(a) == f.member(a));
  }
}

TEST_CASE("normalize is per-B equivalent on random instances") {
  std::mt19937_64 rng(15);
  GroundSpace space(6, 2);
  for (int t = 0; t < 30; ++t) {
    auto pool = random_convexity_pool(space, rng, 4);
    Fractoconvexity f = random_fracto(pool, rng);
    CHECK(per_b_equal(normalize(f), f));
  }
}

TEST_CASE("absorption drops dominated full blocks") {
  std::mt19937_64 rng(16);
  GroundSpace space(6, 2);
  auto pool = random_convexity_pool(space, rng, 3);
  auto small = Fractoconvexity::single_block({pool[0]}, 1);
  auto big = Fractoconvexity::single_block({pool[0], pool[1]}, 2);
  Fractoconvexity norm = normalize(join(small, big));
  REQUIRE(norm.blocks().size() == 1);
  CHECK(norm.blocks()[0].members.size() == 1);
  CHECK(norm.blocks()[0].members[0]->id() == pool[0]->id());
}

TEST_CASE("simplify_prop1 is exact on one full block") {
  std::mt19937_64 rng(17);
  GroundSpace space(6, 2);
  for (int t = 0; t < 100; ++t) {
    auto pool = random_convexity_pool(space, rng, 2 + t % 3);
    auto f = Fractoconvexity::single_block(pool,
                                           static_cast<int>(pool.size()));
    Fractoconvexity s = simplify_prop1(f);
    CHECK(s.extensional_only());
    CHECK(family_equal(s, f));
    for (const Block& b : s.blocks()) {
      CHECK(b.threshold == 1);
      CHECK(b.members.size() == 1);
    }
  }
}

TEST_CASE("simplify_prop1 on a join can only lose members") {
  // replacing each full block by its intersection convexity strengthens the
  // per-B serving condition, so mixed-block members may drop out; the
  // surviving members always form a subset of the original family
  std::mt19937_64 rng(18);
  GroundSpace space(6, 2);
  bool strict_somewhere = false;
  for (int t = 0; t < 100; ++t) {
    auto pool = random_convexity_pool(space, rng, 4);
    Fractoconvexity f = normalize(random_fracto(pool, rng));
    Fractoconvexity s = simplify_prop1(f);
    bool equal = true;
    for (std::uint64_t m = 0; m < 64; ++m) {
      Bits a = Bits::from_mask(6, m);
      bool mo = f.member(a), ms = s.member(a);
      CHECK((!ms || mo));  // simplified members never exceed the original
      if (mo != ms) equal = false;
    }
    if (!equal) strict_somewhere = true;
    if (f.blocks().size() == 1) CHECK(equal);
  }
  CHECK(strict_somewhere);
}

TEST_CASE("simplify_prop1 of a singleton block is unchanged") {
  std::mt19937_64 rng(18);
  GroundSpace space(6, 2);
  auto g = ptr(random_convexity(space, rng, "G"));
  auto f = Fractoconvexity::single_block({g}, 1);
  Fractoconvexity s = simplify_prop1(f);
  REQUIRE(s.blocks().size() == 1);
  CHECK(same_family(*s.blocks()[0].members[0], *g));
}

TEST_CASE("simplify_prop1 requires full-block form") {
  std::mt19937_64 rng(19);
  GroundSpace space(6, 2);
  auto pool = random_convexity_pool(space, rng, 3);
  auto f = Fractoconvexity::single_block(pool, 2);  // not full
  CHECK_THROWS_AS(simplify_prop1(f), Error);
}

TEST_CASE("free convexity makes every subset a member") {
  auto free = ptr(make_discrete_convexity(5, 2, "free"));
  auto f = Fractoconvexity::single_block({free}, 1);
  CHECK(enumerate_members(f).size() == 32);
}

TEST_CASE("threshold-1 members include both input families") {
  std::mt19937_64 rng(20);
  GroundSpace space(6, 2);
  for (int t = 0; t < 10; ++t) {
    auto g1 = ptr(random_convexity(space, rng, "G1"));
    auto g2 = ptr(random_convexity(space, rng, "G2"));
    if (same_family(*g1, *g2)) continue;
    auto f = Fractoconvexity::single_block({g1, g2}, 1);
    SetFamily fam = enumerate_members(f);
    CHECK(SetFamily::set_union(enumerate_convex(*g1), enumerate_convex(*g2))
              .subset_of(fam));
  }
}

TEST_CASE("distributive and absorption laws hold extensionally") {
  std::mt19937_64 rng(21);
  GroundSpace space(6, 2);
  for (int t = 0; t < 60; ++t) {
    auto pool = random_convexity_pool(space, rng, 4);
    Fractoconvexity f1 = random_fracto(pool, rng);
    Fractoconvexity f2 = random_fracto(pool, rng);
    Fractoconvexity f3 = random_fracto(pool, rng);
    CHECK(family_equal(meet(join(f1, f2), f3),
                       join(meet(f1, f3), meet(f2, f3))));
    CHECK(family_equal(join(meet(f1, f2), f3),
                       meet(join(f1, f3), join(f2, f3))));
    CHECK(family_equal(meet(join(f1, f2), f1), f1));
    CHECK(family_equal(join(meet(f1, f2), f1), f1));
  }
}

TEST_CASE("semiconvex and biconvex reductions against direct encodings") {
  std::mt19937_64 rng(22);
  GroundSpace space(7, 2);
  for (int t = 0; t < 20; ++t) {
    auto g1 = ptr(random_convexity(space, rng, "G1"));
    auto g2 = ptr(random_convexity(space, rng, "G2"));
    if (same_family(*g1, *g2)) continue;
    auto semi = Fractoconvexity::single_block({g1, g2}, 1);
    auto bi = Fractoconvexity::single_block({g1, g2}, 2);
    for (std::uint64_t m = 0; m < (1ull << 7); ++m) {
      Bits a = Bits::from_mask(7, m);
      // direct encodings: for every pair x1,x2 in A,
      // semiconvex: hull1({x1,x2}) subset A or hull2({x1,x2}) subset A;
      // biconvex: both.
      bool semi_direct = true, bi_direct = true;
      auto elems = a.elements();
      for (std::size_t i = 0; i < elems.size() && (semi_direct || bi_direct);
           ++i) {
        for (std::size_t j = i; j < elems.size(); ++j) {
          Bits p = Bits::of(7, {elems[i], elems[j]});
          bool in1 = a.includes(g1->cached_hull(p));
          bool in2 = a.includes(g2->cached_hull(p));
          if (!(in1 || in2)) semi_direct = false;
          if (!(in1 && in2)) bi_direct = false;
        }
      }
      CHECK(semi.member(a) == semi_direct);
      CHECK(bi.member(a) == bi_direct);
    }
  }
}

TEST_CASE("block invariants are enforced") {
  std::mt19937_64 rng(23);
  GroundSpace space(6, 2);
  auto g1 = ptr(random_convexity(space, rng, "G1"));
  CHECK_THROWS(Fractoconvexity::single_block({g1}, 0));
  CHECK_THROWS(Fractoconvexity::single_block({g1}, 2));
  CHECK_THROWS_AS(Fractoconvexity::single_block({g1, g1}, 1), DuplicateId);
  Convexity copy = make_interval_convexity(6, "I1");
  Convexity copy2 = make_interval_convexity(6, "I2");
  // distinct ids but identical families are still rejected
  CHECK_THROWS_AS(
      Fractoconvexity::single_block({ptr(std::move(copy)), ptr(std::move(copy2))}, 1),
      DuplicateId);
}

TEST_CASE("join rejects mismatched spaces") {
  auto a = ptr(make_interval_convexity(5));
  auto b = ptr(make_interval_convexity(6));
  auto fa = Fractoconvexity::single_block({a}, 1);
  auto fb = Fractoconvexity::single_block({b}, 1);
  CHECK_THROWS_AS(join(fa, fb), SpaceMismatch);
  CHECK_THROWS_AS(meet(fa, fb), SpaceMismatch);
}
