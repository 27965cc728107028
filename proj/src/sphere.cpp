#include "fracto/sphere.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>

namespace fracto {

double Vec3::norm() const { return std::sqrt(dot(*this)); }

Vec3 Vec3::normalized() const {
  double n = norm();
  if (n < 1e-15) throw NumericalFailure("cannot normalize a zero vector");
  return {x / n, y / n, z / n};
}

namespace {

double clamp01(double t) { return t < 0 ? 0 : (t > 1 ? 1 : t); }

class Timer {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - t0_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

}  // namespace

double ray_segment_distance(const Vec3& origin, const Vec3& through,
                            const Vec3& a, const Vec3& b) {
  // the ray is capped well past the unit ball, which is all we ever probe
  Vec3 d1 = (through - origin) * 4.0;
  Vec3 d2 = b - a;
  Vec3 r = origin - a;
  double a11 = d1.dot(d1), a22 = d2.dot(d2), a12 = d1.dot(d2);
  double b1 = -d1.dot(r), b2 = d2.dot(r);
  if (a22 < 1e-18) {
    // degenerate segment
    double t = a11 < 1e-18 ? 0.0 : clamp01(b1 / a11);
    return (origin + d1 * t - a).norm();
  }
  // convex quadratic over the unit box: the minimum is either interior or on
  // one of the four edges, so evaluate every candidate
  auto dist = [&](double t, double s) {
    return (origin + d1 * t - (a + d2 * s)).norm();
  };
  double det = a11 * a22 - a12 * a12;
  double best = dist(0.0, clamp01(b2 / a22));
  auto consider = [&](double t, double s) {
    best = std::min(best, dist(clamp01(t), clamp01(s)));
  };
  if (det > 1e-15 * a11 * a22)
    consider((b1 * a22 + a12 * b2) / det, (a11 * b2 + a12 * b1) / det);
  consider(1.0, (a12 + b2) / a22);
  if (a11 >= 1e-18) {
    consider(b1 / a11, 0.0);
    consider((b1 + a12) / a11, 1.0);
  }
  return best;
}

SphereModel::SphereModel(std::vector<Vec3> points, std::vector<Vec3> centers,
                         double tol)
    : points_(std::move(points)), centers_(std::move(centers)), tol_(tol) {
  if (points_.empty()) throw Error("sphere model needs sample points");
  for (const auto& p : points_)
    if (std::abs(p.norm() - 1.0) > 1e-9)
      throw Error("sphere sample point is not on the unit sphere");
  for (const auto& c : centers_)
    if (c.norm() >= 1.0 - 1e-12)
      throw Error("cone vertex must lie strictly inside the unit ball");
  if (tol_ <= 0) throw Error("segment tolerance must be positive");
  cache_.resize(centers_.size());
}

SphereModel SphereModel::fibonacci(int point_count, std::vector<Vec3> centers,
                                   double tol) {
  if (point_count < 4) throw Error("need at least 4 sample points");
  std::vector<Vec3> pts;
  pts.reserve(point_count);
  const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
  for (int i = 0; i < point_count; ++i) {
    double z = 1.0 - 2.0 * (i + 0.5) / point_count;
    double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    double phi = 2.0 * M_PI * std::fmod(i / golden, 1.0);
    pts.push_back({r * std::cos(phi), r * std::sin(phi), z});
  }
  if (tol <= 0) {
    std::vector<double> nn(point_count, 1e30);
    for (int i = 0; i < point_count; ++i)
      for (int j = 0; j < point_count; ++j)
        if (i != j) nn[i] = std::min(nn[i], (pts[i] - pts[j]).norm());
    std::nth_element(nn.begin(), nn.begin() + point_count / 2, nn.end());
    tol = 1.5 * nn[point_count / 2];
  }
  return SphereModel(std::move(pts), std::move(centers), tol);
}

Bits SphereModel::segment(int center_index, int x1, int x2) const {
  if (center_index < 0 || center_index >= static_cast<int>(centers_.size()))
    throw UnknownCenter("center index " + std::to_string(center_index));
  const int n = point_count();
  if (x1 < 0 || x1 >= n || x2 < 0 || x2 >= n)
    throw OutOfRange("point id outside the sample");
  Bits out(n);
  out.set(x1);
  out.set(x2);
  if (x1 == x2) return out;
  const Vec3& a = points_[x1];
  const Vec3& b = points_[x2];
  const Vec3& c = centers_[center_index];
  // collinear vertex: the segment degenerates to the endpoints
  Vec3 ab = b - a;
  double line_dist = ab.cross(c - a).norm() / ab.norm();
  if (line_dist < 1e-9) return out;
  for (int p = 0; p < n; ++p) {
    if (p == x1 || p == x2) continue;
    if (ray_segment_distance(c, points_[p], a, b) <= tol_) out.set(p);
  }
  return out;
}

ConvPtr SphereModel::convexity(int center_index) const {
  if (center_index < 0 || center_index >= static_cast<int>(centers_.size()))
    throw UnknownCenter("center index " + std::to_string(center_index));
  if (cache_[center_index]) return cache_[center_index];
  GroundSpace space(point_count(), 2);
  auto h = [&](const std::vector<int>& sub) {
    if (sub.size() == 1) return Bits::of(point_count(), sub);
    return segment(center_index, sub[0], sub[1]);
  };
  cache_[center_index] = make_convexity_ptr(
      space, BaseHull::from_function(space, h),
      "G_c" + std::to_string(center_index));
  return cache_[center_index];
}

// ---------------------------------------------------------------------------
// regularity: distance from the origin to conv{ p - c : p in A, c vertex }

namespace {

// min-norm point of the simplex spanned by at most 4 points, by enumerating
// faces; returns the norm and fills `point`
bool simplex_min_norm(const std::vector<Vec3>& verts, Vec3* point,
                      double* best_norm) {
  const int m = static_cast<int>(verts.size());
  bool found = false;
  for (int mask = 1; mask < (1 << m); ++mask) {
    std::vector<Vec3> s;
    for (int i = 0; i < m; ++i)
      if (mask & (1 << i)) s.push_back(verts[i]);
    const int k = static_cast<int>(s.size());
    if (k > 4) continue;
    // solve: minimize |sum l_i s_i|^2 with sum l_i = 1 -> linear system on
    // the Gram matrix with a Lagrange multiplier
    double g[5][6] = {};
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) g[i][j] = s[i].dot(s[j]);
      g[i][k] = 1.0;
      g[i][k + 1] = 0.0;
    }
    for (int j = 0; j < k; ++j) g[k][j] = 1.0;
    g[k][k] = 0.0;
    g[k][k + 1] = 1.0;
    const int dim = k + 1;
    // gaussian elimination with partial pivoting
    bool singular = false;
    for (int col = 0; col < dim; ++col) {
      int piv = col;
      for (int row = col + 1; row < dim; ++row)
        if (std::abs(g[row][col]) > std::abs(g[piv][col])) piv = row;
      if (std::abs(g[piv][col]) < 1e-13) {
        singular = true;
        break;
      }
      if (piv != col)
        for (int j = 0; j <= dim; ++j) std::swap(g[piv][j], g[col][j]);
      for (int row = 0; row < dim; ++row) {
        if (row == col) continue;
        double f = g[row][col] / g[col][col];
        for (int j = col; j <= dim; ++j) g[row][j] -= f * g[col][j];
      }
    }
    if (singular) continue;
    bool ok = true;
    Vec3 v{0, 0, 0};
    for (int i = 0; i < k; ++i) {
      double li = g[i][dim] / g[i][i];
      if (li < -1e-12) ok = false;
      v = v + s[i] * li;
    }
    if (!ok) continue;
    double nv = v.norm();
    if (!found || nv < *best_norm) {
      found = true;
      *best_norm = nv;
      *point = v;
    }
  }
  return found;
}

}  // namespace

std::optional<Halfspace> is_regular(const std::vector<Vec3>& set_points,
                                    const Vec3& c0, const Vec3& c1,
                                    double margin) {
  if (set_points.empty()) {
    Vec3 axis = (c0 + c1).norm() > 1e-12 ? (c0 + c1).normalized()
                                         : Vec3{0, 0, 1};
    double b = std::min(axis.dot(c0), axis.dot(c1)) - 1.0;
    return Halfspace{axis, b};
  }
  std::vector<Vec3> diffs;
  diffs.reserve(set_points.size() * 2);
  for (const auto& p : set_points) {
    diffs.push_back(p - c0);
    diffs.push_back(p - c1);
  }
  // Frank-Wolfe toward the min-norm point of conv(diffs)
  auto support = [&](const Vec3& v) {
    int best = 0;
    double bd = v.dot(diffs[0]);
    for (std::size_t i = 1; i < diffs.size(); ++i) {
      double d = v.dot(diffs[i]);
      if (d < bd) {
        bd = d;
        best = static_cast<int>(i);
      }
    }
    return best;
  };
  int start = 0;
  for (std::size_t i = 1; i < diffs.size(); ++i)
    if (diffs[i].norm() < diffs[start].norm()) start = static_cast<int>(i);
  Vec3 v = diffs[start];
  std::vector<int> active = {start};
  for (int iter = 0; iter < 600; ++iter) {
    int si = support(v);
    double gap = v.dot(v) - v.dot(diffs[si]);
    if (gap < 1e-13) break;
    if (std::find(active.begin(), active.end(), si) == active.end() &&
        active.size() < 48)
      active.push_back(si);
    Vec3 dir = diffs[si] - v;
    double denom = dir.dot(dir);
    if (denom < 1e-18) break;
    double tau = clamp01(-v.dot(dir) / denom);
    v = v + dir * tau;
    if (v.norm() < 1e-9) break;  // origin is (numerically) inside
  }
  // polish on the small active set
  if (active.size() <= 12) {
    std::vector<Vec3> verts;
    for (int i : active) verts.push_back(diffs[i]);
    Vec3 better;
    double bn = 0;
    if (simplex_min_norm(verts, &better, &bn) && bn < v.norm()) v = better;
  }
  double dist = v.norm();
  if (dist <= 1e-7) return std::nullopt;

  Vec3 w = (v * -1.0).normalized();
  double top = w.dot(set_points.front());
  for (const auto& p : set_points) top = std::max(top, w.dot(p));
  double b = top + dist / 2.0;
  // the witness must survive a direct check
  if (!(w.dot(c0) > b + margin) || !(w.dot(c1) > b + margin))
    throw NumericalFailure("separating direction failed the direct recheck");
  for (const auto& p : set_points)
    if (w.dot(p) > b)
      throw NumericalFailure("witness halfspace leaks a set point");
  return Halfspace{w, b};
}

// ---------------------------------------------------------------------------

SubspaceModel::SubspaceModel(const SphereModel& parent, const Halfspace& h)
    : tol_(parent.tol()) {
  for (const auto& p : parent.points())
    if (!(h.normal.dot(p) > h.offset)) points_.push_back(p);
  if (points_.empty())
    throw EmptySubspace("the halfspace swallows every sample point");
}

ConvPtr SubspaceModel::convexity(const Vec3& center, const std::string& id) const {
  if (center.norm() >= 1.0 - 1e-12)
    throw Error("cone vertex must lie strictly inside the unit ball");
  const int n = point_count();
  GroundSpace space(n, 2);
  auto h = [&](const std::vector<int>& sub) {
    Bits out = Bits::of(n, sub);
    if (sub.size() == 2) {
      const Vec3& a = points_[sub[0]];
      const Vec3& b = points_[sub[1]];
      Vec3 ab = b - a;
      double line_dist = ab.cross(center - a).norm() / ab.norm();
      if (line_dist >= 1e-9) {
        for (int p = 0; p < n; ++p) {
          if (p == sub[0] || p == sub[1]) continue;
          if (ray_segment_distance(center, points_[p], a, b) <= tol_)
            out.set(p);
        }
      }
    }
    return out;
  };
  return make_convexity_ptr(space, BaseHull::from_function(space, h), id);
}

Halfspace parallel_halfspace(const Vec3& c0, const Vec3& c1,
                             double offset_shift) {
  Vec3 axis = c1 - c0;
  Vec3 u = axis.norm() > 1e-12 ? axis.normalized() : Vec3{1, 0, 0};
  Vec3 helper = std::abs(u.z) < 0.9 ? Vec3{0, 0, 1} : Vec3{0, 1, 0};
  Vec3 w = u.cross(helper).normalized();
  // w is orthogonal to the segment, so both centers sit at the same height
  double b = w.dot(c0) - offset_shift;
  return Halfspace{w, b};
}

// ---------------------------------------------------------------------------
// sampled example reports

namespace {

// Grows A until every pair is served by at least one of the convexities;
// the choice between serving hulls is seeded.
Bits semiconvex_closure(const std::vector<ConvPtr>& convs, Bits a,
                        std::mt19937_64& rng, int max_subset = 2) {
  const int arity = convs.front()->space().arity;
  max_subset = std::min(max_subset, arity);
  std::uniform_int_distribution<int> pick(0,
                                          static_cast<int>(convs.size()) - 1);
  bool changed = true;
  while (changed) {
    changed = false;
    bool done = false;
    for_each_small_subset(a, max_subset, [&](const Bits& b) {
      for (const auto& c : convs)
        if (a.includes(c->cached_hull(b))) return true;
      // no convexity serves this subset: grow along a random one
      a |= convs[pick(rng)]->cached_hull(b);
      changed = true;
      done = true;
      return false;
    });
    (void)done;
  }
  return a;
}

Bits random_germ(int universe, int max_points, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(2, std::max(2, max_points));
  std::uniform_int_distribution<int> pick(0, universe - 1);
  Bits a(universe);
  int want = count(rng);
  while (a.count() < want) a.set(pick(rng));
  return a;
}

std::vector<Vec3> positions(const std::vector<Vec3>& all, const Bits& a) {
  std::vector<Vec3> out;
  for (int e : a.elements()) out.push_back(all[e]);
  return out;
}

}  // namespace

Report build_example1(const SphereModel& model, int c0_index, int c1_index,
                      const SphereExampleConfig& cfg) {
  Timer timer;
  Report rep;
  rep.name = "sphere_example1";
  rep.seed = cfg.seed;
  std::vector<ConvPtr> convs = {model.convexity(c0_index),
                                model.convexity(c1_index)};
  const Vec3& c0 = model.centers()[c0_index];
  const Vec3& c1 = model.centers()[c1_index];
  const int n = model.point_count();
  std::mt19937_64 rng(cfg.seed);
  long long accepted = 0, attempts = 0, non_regular = 0, numerical = 0;
  long long informative = 0;
  const long long max_attempts =
      static_cast<long long>(cfg.samples) * cfg.attempts_factor;
  while (accepted < cfg.samples && attempts < max_attempts) {
    ++attempts;
    Bits germ = random_germ(n, cfg.max_seed_points, rng);
    Bits a(n);
    switch (attempts % 3) {
      case 0: a = convs[0]->hull(germ); break;
      case 1: a = convs[1]->hull(germ); break;
      default: a = semiconvex_closure(convs, germ, rng); break;
    }
    if (a.count() >= n) continue;  // the full sample is never regular
    std::optional<Halfspace> witness;
    try {
      witness = is_regular(positions(model.points(), a), c0, c1);
    } catch (const NumericalFailure&) {
      ++numerical;
      continue;
    }
    Bits ph = pair_hull(convs, a);
    if (!witness) {
      ++non_regular;
      // no claim applies; a strict pair-hull is merely informative
      if (!(ph == a)) ++informative;
      continue;
    }
    ++accepted;
    if (!(ph == a))
      rep.fail("regular semiconvex A=" + a.str() + " pair-hull=" + ph.str());
  }
  if (accepted < cfg.samples)
    rep.fail("collected only " + std::to_string(accepted) + " regular samples");
  rep.count("attempts", attempts);
  rep.count("regular_accepted", accepted);
  rep.count("non_regular", non_regular);
  rep.count("non_regular_strict_pair_hull", informative);
  rep.count("numerical_failures", numerical);
  rep.count("violations", static_cast<long long>(rep.witnesses.size()));
  rep.timing_ms = timer.ms();
  return rep;
}

Report build_example2(const SphereModel& model, int c0_index, int c1_index,
                      const Halfspace& h, int k,
                      const SphereExampleConfig& cfg) {
  Timer timer;
  Report rep;
  rep.name = "sphere_example2";
  rep.seed = cfg.seed;
  const Vec3& c0 = model.centers()[c0_index];
  const Vec3& c1 = model.centers()[c1_index];
  if (!h.strictly_contains(c0) || !h.strictly_contains(c1))
    throw Error("the halfspace must contain both cone vertices");
  SubspaceModel sub(model, h);
  if (k < 1) throw Error("need at least one interpolated vertex");
  std::vector<ConvPtr> convs;
  for (int j = 0; j < k; ++j) {
    double lam = k == 1 ? 0.0 : static_cast<double>(j) / (k - 1);
    Vec3 c = c0 * lam + c1 * (1.0 - lam);
    convs.push_back(sub.convexity(c, "Gp_l" + std::to_string(j)));
  }
  const int n = sub.point_count();
  std::mt19937_64 rng(cfg.seed);
  long long accepted = 0, attempts = 0;
  const long long max_attempts =
      static_cast<long long>(cfg.samples) * cfg.attempts_factor;
  while (accepted < cfg.samples && attempts < max_attempts) {
    ++attempts;
    Bits germ = random_germ(n, cfg.max_seed_points, rng);
    Bits a;
    if (attempts % 2 == 0) {
      a = convs[attempts % convs.size()]->hull(germ);
    } else {
      a = semiconvex_closure(convs, germ, rng);
    }
    ++accepted;
    Bits ph = pair_hull(convs, a);
    if (!(ph == a))
      rep.fail("semiconvex A=" + a.str() + " joint hull=" + ph.str());
  }
  rep.count("subspace_points", n);
  rep.count("vertices", k);
  rep.count("samples", accepted);
  rep.count("violations", static_cast<long long>(rep.witnesses.size()));
  rep.timing_ms = timer.ms();
  return rep;
}

Example3Result build_example3(const SphereModel& model, int c0_index,
                              int c1_index, const Halfspace& h,
                              int k_per_half, const SphereExampleConfig& cfg) {
  const Vec3& c0 = model.centers()[c0_index];
  const Vec3& c1 = model.centers()[c1_index];
  if (!h.strictly_contains(c0) || !h.strictly_contains(c1))
    throw Error("the halfspace must contain both cone vertices");
  if (k_per_half < 1) throw Error("need at least one vertex per half-segment");
  SubspaceModel sub(model, h);
  Vec3 mid = (c0 + c1) * 0.5;

  auto interpolated = [&](const Vec3& from, const Vec3& to, int count,
                          const std::string& prefix) {
    std::vector<ConvPtr> out;
    for (int j = 0; j < count; ++j) {
      double t = count == 1 ? 1.0 : static_cast<double>(j) / (count - 1);
      Vec3 c = from * (1.0 - t) + to * t;
      out.push_back(sub.convexity(c, prefix + std::to_string(j)));
    }
    return out;
  };
  // both half-segments end at the midpoint vertex
  std::vector<ConvPtr> left = interpolated(c0, mid, k_per_half + 1, "Gp_a");
  std::vector<ConvPtr> right = interpolated(mid, c1, k_per_half + 1, "Gp_b");
  std::reverse(right.begin(), right.end());  // midpoint first, cosmetic

  auto g1 = std::make_shared<Convexity>(intersect_convexities(left, "M1"));
  auto g2 = std::make_shared<Convexity>(intersect_convexities(right, "M2"));
  ConvPtr mid_conv = sub.convexity(mid, "Gp_mid");

  const int n = sub.point_count();
  std::mt19937_64 rng(cfg.seed);

  Example3Result result;

  {  // step property of the midpoint hull: exhaustive small tuples + samples
    Timer timer;
    Report& rep = result.step_property;
    rep.name = "sphere_example3_step_property";
    rep.seed = cfg.seed;
    long long instances = 0;
    auto check_instance = [&](const Bits& prefix, int last) {
      ++instances;
      Bits with_last = prefix;
      with_last.set(last);
      Bits big = mid_conv->hull(with_last);
      Bits small = mid_conv->hull(prefix);
      for (int x : big.elements()) {
        bool reachable = false;
        for (int y : small.elements()) {
          Bits pairset(n);
          pairset.set(y);
          pairset.set(last);
          if (mid_conv->cached_hull(pairset).test(x)) {
            reachable = true;
            break;
          }
        }
        if (!reachable) {
          rep.fail("x=" + std::to_string(x) + " prefix=" + prefix.str() +
                   " last=" + std::to_string(last));
          return false;
        }
      }
      return true;
    };
    bool keep_going = true;
    for (int i = 0; i < n && keep_going; ++i)
      for (int j = 0; j < n && keep_going; ++j) {
        Bits p(n);
        p.set(i);
        keep_going = check_instance(p, j);
      }
    for (int i = 0; i < n && keep_going; ++i)
      for (int j = i + 1; j < n && keep_going; ++j)
        for (int l = 0; l < n && keep_going; ++l) {
          Bits p(n);
          p.set(i);
          p.set(j);
          keep_going = check_instance(p, l);
        }
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int t = 0; t < 500 && keep_going; ++t) {
      Bits p(n);
      while (p.count() < 3) p.set(pick(rng));
      keep_going = check_instance(p, pick(rng));
    }
    rep.count("instances", instances);
    rep.timing_ms = timer.ms();
  }

  {  // pair-hull identity on every <=4-point subset
    Timer timer;
    Report& rep = result.hull_identity;
    rep.name = "sphere_example3_hull_identity";
    rep.seed = cfg.seed;
    long long checked = 0;
    bool keep_going = true;
    for_each_small_subset(Bits::full(n), 4, [&](const Bits& s) {
      ++checked;
      Bits joint = g1->hull(s);
      joint &= g2->hull(s);
      Bits tilde = mid_conv->hull(s);
      if (!(joint == tilde)) {
        rep.fail("S=" + s.str() + " joint=" + joint.str() +
                 " midpoint=" + tilde.str());
        keep_going = false;
      }
      return keep_going;
    });
    rep.count("subsets", checked);
    rep.timing_ms = timer.ms();
  }

  auto g1_3 = std::make_shared<Convexity>(lift_arity(*g1, 3, "M1"));
  auto g2_3 = std::make_shared<Convexity>(lift_arity(*g2, 3, "M2"));

  {  // exchange-property scan (all 3-point prefixes + seeded larger ones)
    Timer timer;
    Report& rep = result.conical;
    rep.name = "sphere_example3_conical";
    rep.seed = cfg.seed;
    ConicalResult scan = conical_scan_sampled(*g1_3, *g2_3, cfg.seed, 800, 6);
    rep.count("instances", scan.instances);
    if (!scan.independent) {
      std::string w = "prefix={";
      for (int e : scan.witness->prefix) w += std::to_string(e) + ",";
      w += "} last=" + std::to_string(scan.witness->last) +
           " x=" + std::to_string(scan.witness->unreachable);
      rep.fail(w);
    }
    rep.timing_ms = timer.ms();

    // sampled independence of the lifted pair
    Timer timer3;
    Report& rep3 = result.prop3;
    rep3.name = "sphere_example3_prop3";
    rep3.seed = cfg.seed;
    std::vector<ConvPtr> pair = {g1_3, g2_3};
    long long samples = 0;
    for (int t = 0; t < cfg.samples; ++t) {
      Bits germ = random_germ(n, cfg.max_seed_points, rng);
      Bits a = semiconvex_closure(pair, germ, rng, 3);
      ++samples;
      Bits ph = pair_hull(pair, a);
      if (!(ph == a))
        rep3.fail("member A=" + a.str() + " pair-hull=" + ph.str());
    }
    rep3.count("samples", samples);
    rep3.count("violations", static_cast<long long>(rep3.witnesses.size()));
    rep3.timing_ms = timer3.ms();
  }

  return result;
}

}  // namespace fracto
