#pragma once

#include <array>
#include <optional>
#include <vector>

#include "fracto/algebra.hpp"
#include "fracto/independence.hpp"
#include "fracto/report.hpp"

namespace fracto {

struct Vec3 {
  double x = 0, y = 0, z = 0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  Vec3 cross(const Vec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double norm() const;
  Vec3 normalized() const;
};

struct Halfspace {
  Vec3 normal;     // unit
  double offset = 0;  // open side is { p : normal . p > offset }

  bool strictly_contains(const Vec3& p, double margin = 0.0) const {
    return normal.dot(p) > offset + margin;
  }
};

/// Discretized 2-sphere with cone convexities: the segment of x1, x2 seen
/// from an interior vertex c is the arc cut out of the sample by the cone
/// over [x1, x2].
class SphereModel {
 public:
  SphereModel(std::vector<Vec3> points, std::vector<Vec3> centers, double tol);

  /// Quasi-uniform sample; tol defaults to 1.5x the median nearest-neighbor
  /// chord when passed as <= 0.
  static SphereModel fibonacci(int point_count, std::vector<Vec3> centers,
                               double tol = 0.0);

  int point_count() const { return static_cast<int>(points_.size()); }
  const std::vector<Vec3>& points() const { return points_; }
  const std::vector<Vec3>& centers() const { return centers_; }
  double tol() const { return tol_; }

  Bits segment(int center_index, int x1, int x2) const;

  /// Cone convexity for one center (binary); built on first use.
  ConvPtr convexity(int center_index) const;

 private:
  std::vector<Vec3> points_;
  std::vector<Vec3> centers_;
  double tol_;
  mutable std::vector<ConvPtr> cache_;
};

/// Distance between the forward ray from `origin` through `through` and the
/// segment [a, b].
double ray_segment_distance(const Vec3& origin, const Vec3& through,
                            const Vec3& a, const Vec3& b);

/// Feasibility of { w.c0 > b, w.c1 > b, w.p <= b for p in A }: an open
/// halfspace holding both cone vertices and missing every point of A.
/// Returns the witness on success; the witness is re-checked by direct
/// inequalities before being returned.
std::optional<Halfspace> is_regular(const std::vector<Vec3>& set_points,
                                    const Vec3& c0, const Vec3& c1,
                                    double margin = 1e-9);

/// Subspace restriction: the sample points outside the open halfspace, with
/// cone convexities recomputed there.
class SubspaceModel {
 public:
  SubspaceModel(const SphereModel& parent, const Halfspace& h);

  int point_count() const { return static_cast<int>(points_.size()); }
  const std::vector<Vec3>& points() const { return points_; }
  double tol() const { return tol_; }

  /// Cone convexity for an arbitrary interior vertex, on the subspace.
  ConvPtr convexity(const Vec3& center, const std::string& id) const;

 private:
  std::vector<Vec3> points_;
  double tol_;
};

struct SphereExampleConfig {
  int samples = 500;          // target count of accepted sample sets
  std::uint64_t seed = 1;
  int max_seed_points = 4;    // size of random germs for closure growth
  int attempts_factor = 40;   // give up after samples * factor draws
};

/// Regular 2-semiconvex sets of 1/{G(c0), G(c1)} are elements of
/// independence: sampled check (hull germs + random semiconvex closures).
Report build_example1(const SphereModel& model, int c0_index, int c1_index,
                      const SphereExampleConfig& cfg = {});

/// Restricted convexities G'(c_lambda) on the subspace are independent:
/// sampled check over k interpolated vertices.
Report build_example2(const SphereModel& model, int c0_index, int c1_index,
                      const Halfspace& h, int k,
                      const SphereExampleConfig& cfg = {});

struct Example3Result {
  Report step_property;   // midpoint hulls grow one point at a time
  Report hull_identity;   // joint pair-hull equals the midpoint hull
  Report conical;         // sampled exchange-property scan
  Report prop3;           // sampled members equal their pair-hull
  bool all_passed() const {
    return step_property.passed() && hull_identity.passed() &&
           conical.passed() && prop3.passed();
  }
};

/// Half-segment multiconvexities on the subspace: checks the step property
/// of the midpoint hull, the pair-hull identity on all <=4-point subsets,
/// then the conical scan and the arity-3 independence check.
Example3Result build_example3(const SphereModel& model, int c0_index,
                              int c1_index, const Halfspace& h,
                              int k_per_half,
                              const SphereExampleConfig& cfg = {});

/// Halfspace through both centers with boundary parallel to their segment,
/// pushed out so that a workable share of the sample survives.
Halfspace parallel_halfspace(const Vec3& c0, const Vec3& c1, double offset_shift);

}  // namespace fracto
