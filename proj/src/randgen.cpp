#include "fracto/randgen.hpp"

#include <algorithm>

namespace fracto {

Convexity random_convexity(const GroundSpace& space, std::mt19937_64& rng,
                           const std::string& id, double density) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  auto h = [&](const std::vector<int>& sub) {
    Bits out = Bits::of(space.size, sub);
    // singletons stay small most of the time, larger subsets grow more often
    double p = sub.size() == 1 ? density * 0.2 : density;
    for (int e = 0; e < space.size; ++e)
      if (!out.test(e) && coin(rng) < p) out.set(e);
    return out;
  };
  return make_convexity(space, BaseHull::from_function(space, h), id);
}

std::vector<ConvPtr> random_convexity_pool(const GroundSpace& space,
                                           std::mt19937_64& rng, int count,
                                           double density) {
  std::vector<ConvPtr> pool;
  int attempts = 0;
  while (static_cast<int>(pool.size()) < count && attempts < count * 20) {
    ++attempts;
    auto c = std::make_shared<Convexity>(random_convexity(
        space, rng, "G" + std::to_string(pool.size() + 1), density));
    bool dup = false;
    for (const auto& have : pool)
      if (same_family(*have, *c)) dup = true;
    if (!dup) pool.push_back(std::move(c));
  }
  if (static_cast<int>(pool.size()) < count)
    throw Error("could not draw enough distinct random convexities");
  return pool;
}

Fractoconvexity random_fracto(const std::vector<ConvPtr>& pool,
                              std::mt19937_64& rng, int max_blocks,
                              int max_block_size) {
  std::uniform_int_distribution<int> nblocks(1, max_blocks);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(pool.size()) - 1);
  std::vector<Block> blocks;
  int want = nblocks(rng);
  while (static_cast<int>(blocks.size()) < want) {
    int size = std::uniform_int_distribution<int>(
        1, std::min<int>(max_block_size, static_cast<int>(pool.size())))(rng);
    std::vector<ConvPtr> members;
    while (static_cast<int>(members.size()) < size) {
      const auto& c = pool[pick(rng)];
      bool dup = false;
      for (const auto& have : members)
        if (have->id() == c->id()) dup = true;
      if (!dup) members.push_back(c);
    }
    int threshold = std::uniform_int_distribution<int>(1, size)(rng);
    blocks.push_back(Block{std::move(members), threshold});
  }
  return Fractoconvexity(pool.front()->space(), std::move(blocks));
}

}  // namespace fracto
