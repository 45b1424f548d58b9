#pragma once

#include "star/graph.hpp"

namespace star {

// Guard rails for the exhaustive reference search. Enumeration throws
// TooLarge when an instance exceeds them.
struct SmallInstanceLimits {
  int max_nodes = 5;
  Amount max_capacity = 3;       // per-edge bound on every capacity
  std::int64_t max_states = 10'000'000;
};

// Maximum circulation utility found by exhaustive search over all integer
// flow assignments within the capacity windows, keeping only assignments
// that conserve flow at every node. Requires an integral instance
// (precision 0). Independent of the cycle-canceling code paths.
std::int64_t brute_force_optimum(const SocialRequestGraph& g,
                                 const SmallInstanceLimits& limits = {});

// True iff some enumerated circulation saturates every non-virtual request
// edge (virtual edges range freely within their capacities).
bool brute_force_feasible(const SocialRequestGraph& g,
                          const SmallInstanceLimits& limits = {});

}  // namespace star
