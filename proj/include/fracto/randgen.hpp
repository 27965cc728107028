#pragma once

#include <random>
#include <vector>

#include "fracto/algebra.hpp"

namespace fracto {

/// Random extensive generator closed by make_convexity. `density` is the
/// chance of adding any extra element to a base-hull entry.
Convexity random_convexity(const GroundSpace& space, std::mt19937_64& rng,
                           const std::string& id, double density = 0.2);

std::vector<ConvPtr> random_convexity_pool(const GroundSpace& space,
                                           std::mt19937_64& rng, int count,
                                           double density = 0.2);

/// Random fractoconvexity over a pool: 1..max_blocks blocks, each picking a
/// few distinct convexities and a random threshold.
Fractoconvexity random_fracto(const std::vector<ConvPtr>& pool,
                              std::mt19937_64& rng, int max_blocks = 3,
                              int max_block_size = 3);

}  // namespace fracto
