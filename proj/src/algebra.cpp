#include "fracto/algebra.hpp"

#include <algorithm>

namespace fracto {

std::vector<std::string> Block::ids() const {
  std::vector<std::string> out;
  out.reserve(members.size());
  for (const auto& c : members) out.push_back(c->id());
  return out;
}

bool same_block(const Block& a, const Block& b) {
  return a.threshold == b.threshold && a.ids() == b.ids();
}

bool same_family(const Convexity& a, const Convexity& b) {
  if (!(a.space() == b.space())) return false;
  const int n = a.space().size;
  bool equal = true;
  for_each_small_subset(Bits::full(n), a.space().arity, [&](const Bits& s) {
    if (!(a.cached_hull(s) == b.cached_hull(s))) {
      equal = false;
      return false;
    }
    return true;
  });
  return equal;
}

namespace {

Block canonical_block(Block b, const GroundSpace& space) {
  if (b.members.empty()) throw EmptyList("block has no convexities");
  if (b.threshold < 1 || b.threshold > static_cast<int>(b.members.size()))
    throw Error("block threshold " + std::to_string(b.threshold) +
                " outside 1.." + std::to_string(b.members.size()));
  std::sort(b.members.begin(), b.members.end(),
            [](const ConvPtr& x, const ConvPtr& y) { return x->id() < y->id(); });
  for (std::size_t i = 0; i + 1 < b.members.size(); ++i) {
    if (b.members[i]->id() == b.members[i + 1]->id())
      throw DuplicateId("block lists id " + b.members[i]->id() + " twice");
  }
  for (const auto& c : b.members) {
    if (!(c->space() == space))
      throw SpaceMismatch("block convexity " + c->id() +
                          " lives on a different ground space");
  }
  // distinct ids must denote distinct families
  for (std::size_t i = 0; i < b.members.size(); ++i)
    for (std::size_t j = i + 1; j < b.members.size(); ++j)
      if (same_family(*b.members[i], *b.members[j]))
        throw DuplicateId("ids " + b.members[i]->id() + " and " +
                          b.members[j]->id() + " denote the same family");
  return b;
}

}  // namespace

Fractoconvexity::Fractoconvexity(GroundSpace space, std::vector<Block> blocks)
    : space_(space) {
  if (blocks.empty()) throw EmptyList("fractoconvexity needs at least one block");
  for (auto& b : blocks) {
    Block cb = canonical_block(std::move(b), space_);
    bool dup = false;
    for (const auto& kept : blocks_)
      if (same_block(kept, cb)) dup = true;
    if (!dup) blocks_.push_back(std::move(cb));
  }
}

Fractoconvexity Fractoconvexity::single_block(std::vector<ConvPtr> convs,
                                              int threshold) {
  if (convs.empty()) throw EmptyList("fractoconvexity needs a convexity");
  GroundSpace space = convs.front()->space();
  return Fractoconvexity(space, {Block{std::move(convs), threshold}});
}

bool Fractoconvexity::served(const Bits& b, const Bits& a) const {
  for (const auto& block : blocks_) {
    int inside = 0;
    int remaining = static_cast<int>(block.members.size());
    for (const auto& conv : block.members) {
      if (a.includes(conv->cached_hull(b))) ++inside;
      --remaining;
      if (inside >= block.threshold) break;
      if (inside + remaining < block.threshold) break;
    }
    if (inside >= block.threshold) return true;
  }
  return false;
}

bool Fractoconvexity::member(const Bits& a) const {
  if (a.universe() != space_.size)
    throw OutOfRange("set universe does not match ground space");
  bool ok = true;
  for_each_small_subset(a, space_.arity, [&](const Bits& b) {
    if (!served(b, a)) {
      ok = false;
      return false;
    }
    return true;
  });
  return ok;
}

bool is_multiconvex(const std::vector<ConvPtr>& convs, const Bits& a) {
  if (convs.empty()) throw EmptyList("is_multiconvex on empty list");
  const GroundSpace& space = convs.front()->space();
  for (const auto& c : convs)
    if (!(c->space() == space))
      throw SpaceMismatch("convexities live on different ground spaces");
  if (a.universe() != space.size)
    throw OutOfRange("set universe does not match ground space");
  bool ok = true;
  for_each_small_subset(a, space.arity, [&](const Bits& b) {
    for (const auto& conv : convs) {
      if (!a.includes(conv->cached_hull(b))) {
        ok = false;
        return false;
      }
    }
    return true;
  });
  return ok;
}

namespace {

void require_same_space(const Fractoconvexity& f1, const Fractoconvexity& f2) {
  if (!(f1.space() == f2.space()))
    throw SpaceMismatch("fractoconvexities live on different ground spaces");
}

// Merges convexity lists by id, dropping extensional duplicates (equal hull
// tables mean identical serving conditions, so this is per-B faithful).
std::vector<ConvPtr> union_members(const std::vector<ConvPtr>& a,
                                   const std::vector<ConvPtr>& b) {
  std::vector<ConvPtr> out = a;
  for (const auto& c : b) {
    bool present = false;
    for (const auto& have : out)
      if (have->id() == c->id() || same_family(*have, *c)) present = true;
    if (!present) out.push_back(c);
  }
  return out;
}

std::vector<Block> absorb(std::vector<Block> blocks) {
  // all blocks are full here; a block survives unless a kept subset-block
  // already implies it
  std::sort(blocks.begin(), blocks.end(), [](const Block& x, const Block& y) {
    if (x.members.size() != y.members.size())
      return x.members.size() < y.members.size();
    return x.ids() < y.ids();
  });
  std::vector<Block> kept;
  for (auto& b : blocks) {
    auto bids = b.ids();
    bool absorbed = false;
    for (const auto& k : kept) {
      auto kids = k.ids();
      if (std::includes(bids.begin(), bids.end(), kids.begin(), kids.end())) {
        absorbed = true;
        break;
      }
    }
    if (!absorbed) kept.push_back(std::move(b));
  }
  return kept;
}

}  // namespace

Fractoconvexity join(const Fractoconvexity& f1, const Fractoconvexity& f2) {
  require_same_space(f1, f2);
  std::vector<Block> blocks = f1.blocks();
  blocks.insert(blocks.end(), f2.blocks().begin(), f2.blocks().end());
  return Fractoconvexity(f1.space(), std::move(blocks));
}

Fractoconvexity normalize(const Fractoconvexity& f) {
  std::vector<Block> full;
  for (const auto& block : f.blocks()) {
    const int m = static_cast<int>(block.members.size());
    const int k = block.threshold;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      Block fb;
      for (int i : idx) fb.members.push_back(block.members[i]);
      fb.threshold = k;
      full.push_back(std::move(fb));
      int i = k - 1;
      while (i >= 0 && idx[i] == m - k + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return Fractoconvexity(f.space(), absorb(std::move(full)));
}

Fractoconvexity meet(const Fractoconvexity& f1, const Fractoconvexity& f2) {
  require_same_space(f1, f2);
  Fractoconvexity n1 = normalize(f1);
  Fractoconvexity n2 = normalize(f2);
  std::vector<Block> blocks;
  for (const auto& b1 : n1.blocks()) {
    for (const auto& b2 : n2.blocks()) {
      Block u;
      u.members = union_members(b1.members, b2.members);
      u.threshold = static_cast<int>(u.members.size());
      blocks.push_back(std::move(u));
    }
  }
  Fractoconvexity out(f1.space(), absorb(std::move(blocks)));
  if (f1.extensional_only() || f2.extensional_only())
    out.mark_extensional_only();
  return out;
}

Fractoconvexity simplify_prop1(const Fractoconvexity& f) {
  std::vector<Block> blocks;
  for (const auto& block : f.blocks()) {
    if (!block.full())
      throw Error("simplify_prop1 expects full-block form; run normalize first");
    Block b;
    if (block.members.size() == 1) {
      b.members = block.members;
    } else {
      b.members.push_back(std::make_shared<Convexity>(
          intersect_convexities(block.members)));
    }
    b.threshold = 1;
    blocks.push_back(std::move(b));
  }
  Fractoconvexity out(f.space(), std::move(blocks));
  out.mark_extensional_only();
  return out;
}

SetFamily enumerate_members(const Fractoconvexity& f, int cap) {
  check_enumerable(f.space(), cap);
  const int n = f.space().size;
  std::vector<Bits> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Bits a = Bits::from_mask(n, mask);
    if (f.member(a)) out.push_back(a);
  }
  return SetFamily(std::move(out));
}

bool family_equal(const Fractoconvexity& f1, const Fractoconvexity& f2,
                  int cap) {
  require_same_space(f1, f2);
  check_enumerable(f1.space(), cap);
  const int n = f1.space().size;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Bits a = Bits::from_mask(n, mask);
    if (f1.member(a) != f2.member(a)) return false;
  }
  return true;
}

bool per_b_equal(const Fractoconvexity& f1, const Fractoconvexity& f2,
                 int cap) {
  require_same_space(f1, f2);
  check_enumerable(f1.space(), cap);
  const int n = f1.space().size;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Bits a = Bits::from_mask(n, mask);
    bool agree = true;
    for_each_small_subset(a, f1.space().arity, [&](const Bits& b) {
      if (f1.served(b, a) != f2.served(b, a)) {
        agree = false;
        return false;
      }
      return true;
    });
    if (!agree) return false;
  }
  return true;
}

}  // namespace fracto
