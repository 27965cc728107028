#pragma once

#include <string>
#include <vector>

#include "fracto/core.hpp"

namespace fracto {

/// One alternative (M_i, m_i): at least `threshold` of the listed convexities
/// must keep hull(B) inside A for the block to serve B.
struct Block {
  std::vector<ConvPtr> members;  // canonical: sorted by id, pairwise distinct families
  int threshold = 1;

  bool full() const { return threshold == static_cast<int>(members.size()); }
  std::vector<std::string> ids() const;
};

bool same_block(const Block& a, const Block& b);

/// Hull tables decide the family, so equal tables means equal families.
bool same_family(const Convexity& a, const Convexity& b);

class Fractoconvexity {
 public:
  Fractoconvexity(GroundSpace space, std::vector<Block> blocks);

  static Fractoconvexity single_block(std::vector<ConvPtr> convs, int threshold);

  const GroundSpace& space() const { return space_; }
  const std::vector<Block>& blocks() const { return blocks_; }

  /// Set when a transformation only preserved the member family, not the
  /// per-B serving structure (see simplify_prop1).
  bool extensional_only() const { return extensional_only_; }
  void mark_extensional_only() { extensional_only_ = true; }

  /// The per-B condition: some block has >= threshold convexities whose
  /// hull of b lands inside a.
  bool served(const Bits& b, const Bits& a) const;

  /// A is a member iff every subset of size <= n is served.
  bool member(const Bits& a) const;

 private:
  GroundSpace space_;
  std::vector<Block> blocks_;
  bool extensional_only_ = false;
};

bool is_multiconvex(const std::vector<ConvPtr>& convs, const Bits& a);

Fractoconvexity join(const Fractoconvexity& f1, const Fractoconvexity& f2);

/// Structural intersection: both operands are brought to full-block form and
/// combined by pairwise index-set union; per-B exact.
Fractoconvexity meet(const Fractoconvexity& f1, const Fractoconvexity& f2);

/// Expands every block into its full sub-blocks and applies absorption.
/// The result serves exactly the same (B, A) pairs as the input.
Fractoconvexity normalize(const Fractoconvexity& f);

/// Replaces every full block by the single intersection convexity. The member
/// family is unchanged but the per-B structure is not; the result carries the
/// extensional-only flag.
Fractoconvexity simplify_prop1(const Fractoconvexity& f);

SetFamily enumerate_members(const Fractoconvexity& f, int cap = kDefaultEnumCap);

bool family_equal(const Fractoconvexity& f1, const Fractoconvexity& f2,
                  int cap = kDefaultEnumCap);

/// Representation-level equivalence: serving agrees for every A and every
/// B subset A with |B| <= n. Strictly stronger than family_equal.
bool per_b_equal(const Fractoconvexity& f1, const Fractoconvexity& f2,
                 int cap = kDefaultEnumCap);

}  // namespace fracto
