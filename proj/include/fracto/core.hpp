#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "fracto/bits.hpp"
#include "fracto/errors.hpp"

namespace fracto {

inline constexpr int kDefaultEnumCap = 20;

/// Finite element universe {0..size-1} together with the arity bound n:
/// convexity of a set is decided by hulls of its subsets of size <= n.
struct GroundSpace {
  int size = 0;
  int arity = 0;

  GroundSpace() = default;
  GroundSpace(int size, int arity) : size(size), arity(arity) {
    if (size < 1) throw Error("ground space must have at least one element");
    if (arity < 1) throw Error("arity must be positive");
    if (arity > size)
      throw Error("arity " + std::to_string(arity) +
                  " exceeds space size " + std::to_string(size));
    if (size > 255) throw Error("ground space larger than 255 not supported");
    if (arity > 8) throw Error("arity larger than 8 not supported");
  }

  friend bool operator==(const GroundSpace& a, const GroundSpace& b) {
    return a.size == b.size && a.arity == b.arity;
  }
};

// Packs a sorted element list (|S| <= 8, ids < 255) into one word; keys are
// used for the generator/closure tables.
std::uint64_t subset_key(const std::vector<int>& sorted_elems);
std::uint64_t subset_key(const Bits& s);

/// Generator table: maps every subset B with |B| <= n to a superset h(B).
class BaseHull {
 public:
  BaseHull() = default;

  void put(const Bits& subset, const Bits& value);
  const Bits* find(std::uint64_t key) const;
  const Bits& at(const Bits& subset) const;
  std::size_t entries() const { return table_.size(); }

  /// Builds the full table over subsets of size <= n from a callback.
  static BaseHull from_function(
      const GroundSpace& space,
      const std::function<Bits(const std::vector<int>&)>& h);

 private:
  std::unordered_map<std::uint64_t, Bits> table_;
};

/// Enumerated, deduplicated family of element sets in canonical order.
class SetFamily {
 public:
  SetFamily() = default;
  explicit SetFamily(std::vector<Bits> members);

  const std::vector<Bits>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool contains(const Bits& s) const;

  static SetFamily intersection(const SetFamily& a, const SetFamily& b);
  static SetFamily set_union(const SetFamily& a, const SetFamily& b);
  bool subset_of(const SetFamily& other) const;

  friend bool operator==(const SetFamily& a, const SetFamily& b) {
    return a.members_ == b.members_;
  }

 private:
  std::vector<Bits> members_;
};

struct AxiomWitness {
  std::string property;
  Bits a;
  Bits b;
};

struct AxiomReport {
  bool extensive = true;
  bool monotone = true;
  bool idempotent = true;
  bool n_ary = true;
  bool exhaustive = true;  // false when the space was too large and checks were sampled
  std::vector<AxiomWitness> witnesses;

  bool all_ok() const { return extensive && monotone && idempotent && n_ary; }
};

/// An n-ary convexity given by its closed hull table on subsets of size <= n.
/// The induced family is {A : hull(B) subset A for every B subset A, |B| <= n}.
class Convexity {
 public:
  const std::string& id() const { return id_; }
  const GroundSpace& space() const { return space_; }

  /// Least fixpoint of C -> C u U{ hull(B) : B subset C, |B| <= n }.
  Bits hull(const Bits& a) const;

  /// Closed-table lookup for |B| <= n (these entries are already fixpoints).
  const Bits& cached_hull(const Bits& small_subset) const;

  bool is_convex(const Bits& a) const;

  friend Convexity make_convexity(const GroundSpace& space,
                                  const BaseHull& base, std::string id);

 private:
  Convexity() = default;

  std::string id_;
  GroundSpace space_;
  Bits empty_;
  // closure cache: singles/pairs in flat arrays (hot path), the rest keyed
  std::vector<Bits> single_;
  std::vector<Bits> pair_;  // size N*N, (i,j) with i<=j at i*N+j
  std::unordered_map<std::uint64_t, Bits> big_;
};

using ConvPtr = std::shared_ptr<const Convexity>;

/// Validates the generator (total, extensive, h(empty) empty) and closes it.
Convexity make_convexity(const GroundSpace& space, const BaseHull& base,
                         std::string id);

ConvPtr make_convexity_ptr(const GroundSpace& space, const BaseHull& base,
                           std::string id);

/// All convex sets of the space; guarded by the enumeration cap.
SetFamily enumerate_convex(const Convexity& conv, int cap = kDefaultEnumCap);

/// The convexity whose family is the intersection of the input families.
Convexity intersect_convexities(const std::vector<ConvPtr>& convs,
                                std::string id = "");

/// Verifies the hull-operator axioms and n-arity. Exhaustive when 2^N fits
/// under the cap, sampled (seeded) otherwise.
AxiomReport check_axioms(const Convexity& conv, int cap = kDefaultEnumCap,
                         std::uint64_t sample_seed = 1,
                         int sample_count = 2000);

// Enumerates subsets of `of` with size between 1 and max_size, in increasing
// size, lexicographic within a size. Stops early when fn returns false.
void for_each_small_subset(const Bits& of, int max_size,
                           const std::function<bool(const Bits&)>& fn);

// All subsets of the whole space, as masks 0..2^N-1; throws SpaceTooLarge
// beyond the cap.
void check_enumerable(const GroundSpace& space, int cap);

/// Same family, re-indexed at a higher arity (an n-ary convexity is m-ary
/// for every m >= n; the closed table is just extended to larger subsets).
Convexity lift_arity(const Convexity& conv, int new_arity, std::string id = "");

// Convenience builders used across models and tests.
Convexity make_interval_convexity(int size, const std::string& id = "interval");
Convexity make_discrete_convexity(int size, int arity,
                                  const std::string& id = "discrete");
Convexity make_permuted_interval_convexity(const std::vector<int>& perm,
                                           const std::string& id);

}  // namespace fracto
