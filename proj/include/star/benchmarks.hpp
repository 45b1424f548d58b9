#pragma once

#include "star/decomposition.hpp"
#include "star/oracle.hpp"
#include "star/solver.hpp"

namespace star {

enum class Mechanism { Star, SocialTrustOnly, ReciprocityOnly };
enum class Exactness { Exact, Heuristic };

const char* to_string(Mechanism mechanism);
const char* to_string(Exactness exactness);

struct BenchmarkSolution {
  Mechanism mechanism = Mechanism::Star;
  Exactness exactness = Exactness::Exact;
  Solution solution;
  // Constructive decomposition of the returned flow, in raw units. RP cycles
  // contain request edges only; ST cycles contain exactly one request edge.
  std::vector<CycleFlow> cycle_witness;
};

// Full mechanism, tagged for symmetric handling alongside the benchmarks.
BenchmarkSolution solve_star(const SocialRequestGraph& g, ServiceMode mode);

// Reciprocity only: optimal over request-only cycles, solved exactly by
// deleting every social pair and running the circulation solver.
BenchmarkSolution solve_rp(const SocialRequestGraph& g, ServiceMode mode);

// Social trust only: cycles made of one request edge plus a credit path from
// requester back to provider. Greedy sequential transaction processing:
// highest-utility unsaturated edge first (ties to the lowest id), shortest-hop
// credit path, canceled by its residual capacity. A deterministic heuristic;
// it lower-bounds the exact single-request-cycle optimum.
BenchmarkSolution solve_st(const SocialRequestGraph& g, ServiceMode mode);

// Exact optimum over aggregates of single-request-edge cycle flows, by
// exhaustive search over cycle values. Only for tiny integral instances;
// used to measure the greedy's gap.
std::int64_t st_exhaustive_optimum(const SocialRequestGraph& g,
                                   const SmallInstanceLimits& limits = {});

}  // namespace star
