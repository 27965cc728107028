#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "fracto/sphere.hpp"

using namespace fracto;

namespace {

// point-to-forward-ray distance marched along the base segment
double march_oracle(const Vec3& c, const Vec3& p, const Vec3& a, const Vec3& b,
                    int steps = 10000) {
  Vec3 d = (p - c).normalized();
  double best = 1e30;
  for (int i = 0; i <= steps; ++i) {
    double t = static_cast<double>(i) / steps;
    Vec3 q = a + (b - a) * t;
    double proj = std::max(0.0, (q - c).dot(d));
    best = std::min(best, (q - (c + d * proj)).norm());
  }
  return best;
}

}  // namespace

TEST_CASE("fibonacci sample is unit and gets a positive default tolerance") {
  SphereModel model = SphereModel::fibonacci(50, {Vec3{0, 0, 0}});
  CHECK(model.point_count() == 50);
  for (const auto& p : model.points()) CHECK(std::abs(p.norm() - 1.0) < 1e-9);
  CHECK(model.tol() > 0);
  CHECK(model.tol() < 1.0);
}

TEST_CASE("model construction validates its inputs") {
  CHECK_THROWS(SphereModel({Vec3{0, 0, 2}}, {Vec3{0, 0, 0}}, 0.1));
  CHECK_THROWS(SphereModel({Vec3{0, 0, 1}}, {Vec3{0, 0, 1}}, 0.1));
  CHECK_THROWS(SphereModel({Vec3{0, 0, 1}}, {Vec3{0, 0, 0}}, 0.0));
}

TEST_CASE("segments contain their endpoints and are symmetric") {
  SphereModel model = SphereModel::fibonacci(40, {Vec3{0, 0, 0}, Vec3{0, 0, 0.5}});
  for (int c = 0; c < 2; ++c)
    for (int x1 = 0; x1 < 40; x1 += 7)
      for (int x2 = 0; x2 < 40; x2 += 5) {
        Bits s = model.segment(c, x1, x2);
        CHECK(s.test(x1));
        CHECK(s.test(x2));
        CHECK(s == model.segment(c, x2, x1));
      }
  CHECK(model.segment(0, 3, 3) == Bits::of(40, {3}));
  CHECK_THROWS_AS(model.segment(2, 0, 1), UnknownCenter);
  CHECK_THROWS_AS(model.segment(0, 0, 40), OutOfRange);
}

TEST_CASE("a collinear vertex degenerates the segment to its endpoints") {
  std::vector<Vec3> pts = {Vec3{0, 0, 1}, Vec3{0, 0, -1}, Vec3{1, 0, 0},
                           Vec3{0, 1, 0}, Vec3{-1, 0, 0}, Vec3{0, -1, 0}};
  SphereModel model(pts, {Vec3{0, 0, 0}}, 0.5);
  CHECK(model.segment(0, 0, 1) == Bits::of(6, {0, 1}));
}

TEST_CASE("segment membership agrees with a dense ray-march oracle") {
  SphereModel model =
      SphereModel::fibonacci(60, {Vec3{0, 0, 0}, Vec3{0, 0, 0.5}});
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> pick(0, 59);
  for (int t = 0; t < 25; ++t) {
    int c = t % 2;
    int x1 = pick(rng), x2 = pick(rng);
    if (x1 == x2) continue;
    const Vec3& a = model.points()[x1];
    const Vec3& b = model.points()[x2];
    const Vec3& vc = model.centers()[c];
    Vec3 ab = b - a;
    if (ab.cross(vc - a).norm() / ab.norm() < 1e-9) continue;
    Bits s = model.segment(c, x1, x2);
    for (int p = 0; p < 60; ++p) {
      if (p == x1 || p == x2) continue;
      double d = march_oracle(vc, model.points()[p], a, b);
      if (std::abs(d - model.tol()) < 1e-6) continue;  // boundary ties
      CHECK(s.test(p) == (d <= model.tol()));
    }
  }
}

TEST_CASE("cone convexities pass the axiom check") {
  SphereModel model =
      SphereModel::fibonacci(18, {Vec3{0, 0, 0}, Vec3{0.2, 0.1, 0.4}});
  for (int c = 0; c < 2; ++c) {
    auto conv = model.convexity(c);
    AxiomReport rep = check_axioms(*conv);
    CHECK(rep.all_ok());
    CHECK(conv->space().arity == 2);
  }
}

TEST_CASE("the empty set is always regular") {
  auto w = is_regular({}, Vec3{0, 0, 0.3}, Vec3{0.1, 0, 0.3});
  REQUIRE(w.has_value());
  CHECK(w->strictly_contains(Vec3{0, 0, 0.3}));
  CHECK(w->strictly_contains(Vec3{0.1, 0, 0.3}));
}

TEST_CASE("southern points are separable from northern vertices") {
  std::vector<Vec3> south;
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  while (south.size() < 30) {
    Vec3 p{u(rng), u(rng), u(rng)};
    if (p.norm() < 1e-6) continue;
    p = p.normalized();
    if (p.z <= 0.0) south.push_back(p);
  }
  Vec3 c0{0, 0, 0.8}, c1{0.05, 0, 0.75};
  auto w = is_regular(south, c0, c1);
  REQUIRE(w.has_value());
  CHECK(w->strictly_contains(c0));
  CHECK(w->strictly_contains(c1));
  for (const auto& p : south) CHECK_FALSE(w->strictly_contains(p));
}

TEST_CASE("the full quasi-uniform sample is never regular") {
  SphereModel model = SphereModel::fibonacci(200, {Vec3{0, 0, 0.3}});
  auto w = is_regular(model.points(), Vec3{0, 0, 0.3}, Vec3{0.1, 0, 0.2});
  CHECK_FALSE(w.has_value());
  // probe: no random direction separates either
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 2000; ++t) {
    Vec3 dir{u(rng), u(rng), u(rng)};
    if (dir.norm() < 1e-6) continue;
    dir = dir.normalized();
    double top = -1e30;
    for (const auto& p : model.points()) top = std::max(top, dir.dot(p));
    double c = std::min(dir.dot(Vec3{0, 0, 0.3}), dir.dot(Vec3{0.1, 0, 0.2}));
    CHECK_FALSE(c > top);
  }
}

TEST_CASE("regularity witnesses are always sound on random sets") {
  SphereModel model = SphereModel::fibonacci(80, {Vec3{0, 0, 0.25}});
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> pick(0, 79);
  std::uniform_int_distribution<int> count(1, 12);
  Vec3 c0{0, 0, 0.25}, c1{0.15, 0.05, 0.2};
  int feasible = 0;
  for (int t = 0; t < 200; ++t) {
    std::vector<Vec3> pts;
    int m = count(rng);
    for (int i = 0; i < m; ++i) pts.push_back(model.points()[pick(rng)]);
    std::optional<Halfspace> w;
    try {
      w = is_regular(pts, c0, c1);
    } catch (const NumericalFailure&) {
      continue;
    }
    if (!w) continue;
    ++feasible;
    CHECK(std::abs(w->normal.norm() - 1.0) < 1e-9);
    CHECK(w->strictly_contains(c0));
    CHECK(w->strictly_contains(c1));
    for (const auto& p : pts) CHECK_FALSE(w->strictly_contains(p));
  }
  CHECK(feasible > 50);
}

TEST_CASE("subspace keeps exactly the points outside the open halfspace") {
  SphereModel model = SphereModel::fibonacci(60, {Vec3{0, 0, 0}});
  Halfspace h{Vec3{0, 0, 1}, 0.2};
  SubspaceModel sub(model, h);
  int expected = 0;
  for (const auto& p : model.points())
    if (!(p.z > 0.2)) ++expected;
  CHECK(sub.point_count() == expected);
  for (const auto& p : sub.points()) CHECK_FALSE(h.strictly_contains(p));
  CHECK_THROWS_AS(SubspaceModel(model, Halfspace{Vec3{0, 0, 1}, -2.0}),
                  EmptySubspace);
}

TEST_CASE("parallel halfspace keeps both centers at one height") {
  Vec3 c0{0.1, 0.2, 0.3}, c1{-0.2, 0.1, 0.25};
  Halfspace h = parallel_halfspace(c0, c1, 0.05);
  CHECK(std::abs(h.normal.dot(c1 - c0)) < 1e-12);
  CHECK(std::abs(h.normal.dot(c0) - h.normal.dot(c1)) < 1e-12);
  CHECK(h.strictly_contains(c0));
  CHECK(h.strictly_contains(c1));
}

TEST_CASE("regular semiconvex samples are elements of independence") {
  SphereModel model =
      SphereModel::fibonacci(40, {Vec3{0, 0, 0.3}, Vec3{0.1, 0.05, 0.25}}, 0.25);
  SphereExampleConfig cfg;
  cfg.samples = 40;
  cfg.seed = 3;
  Report rep = build_example1(model, 0, 1, cfg);
  CHECK(rep.passed());
  CHECK(rep.count("violations") == 0);
  CHECK(rep.count("regular_accepted") == 40);
}

TEST_CASE("restricted vertices on a subspace stay independent") {
  SphereModel model =
      SphereModel::fibonacci(40, {Vec3{0, 0, 0.3}, Vec3{0.1, 0.05, 0.25}}, 0.25);
  Halfspace h = parallel_halfspace(model.centers()[0], model.centers()[1], 0.1);
  SphereExampleConfig cfg;
  cfg.samples = 40;
  cfg.seed = 4;
  Report rep = build_example2(model, 0, 1, h, 3, cfg);
  CHECK(rep.passed());
  CHECK(rep.count("violations") == 0);
  Report one = build_example2(model, 0, 1, h, 1, cfg);
  CHECK(one.passed());
}

TEST_CASE("half-segment multiconvexities satisfy the sampled claims") {
  SphereModel model =
      SphereModel::fibonacci(40, {Vec3{0, 0, 0.3}, Vec3{0.1, 0.05, 0.25}}, 0.3);
  Halfspace h = parallel_halfspace(model.centers()[0], model.centers()[1], 0.2);
  SphereExampleConfig cfg;
  cfg.samples = 60;
  cfg.seed = 5;
  Example3Result res = build_example3(model, 0, 1, h, 2, cfg);
  CHECK(res.step_property.passed());
  CHECK(res.hull_identity.passed());
  CHECK(res.conical.passed());
  CHECK(res.prop3.passed());
  CHECK(res.all_passed());
}
