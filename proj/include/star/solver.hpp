#pragma once

#include <optional>

#include "star/transforms.hpp"

namespace star {

enum class ArcKind { RequestForward, RequestBackward, Social };

const char* to_string(ArcKind kind);

// Residual arc over an integral graph and flow. Zero-capacity arcs are never
// constructed. Forward request arcs weigh +U, backward arcs -U, social arcs 0.
struct ResidualArc {
  ArcKind kind = ArcKind::Social;
  NodeId from = 0;
  NodeId to = 0;
  Amount capacity = 0;
  std::int64_t weight = 0;
  int edge_id = -1;  // origin request edge for request arcs
  PairKey pair{};    // origin social pair for social arcs
};

struct ResidualGraph {
  std::vector<NodeId> nodes;
  std::vector<ResidualArc> arcs;  // deterministic order: requests by id, then pairs
};

// Closed walk of residual arcs with distinct intermediate nodes.
struct Cycle {
  std::vector<int> arc_indices;  // in traversal order
  std::int64_t weight = 0;
  Amount residual_capacity = 0;
};

// Requires validate_flow(g, f) to pass; throws InvalidFlow otherwise.
ResidualGraph build_residual(const SocialRequestGraph& g, const Flow& f);

// Bellman-Ford-style max relaxation from an implicit zero-label source; after
// |V|-1 rounds any still-improvable arc seeds predecessor extraction.
std::optional<Cycle> find_positive_cycle(const ResidualGraph& rg);

Amount cycle_residual_capacity(const ResidualGraph& rg, const Cycle& c);

// Pushes `value` around the cycle: forward arcs add to request flow,
// backward arcs subtract, social arcs move net credit in the arc direction.
void augment_along_cycle(const SocialRequestGraph& g, Flow& f, const ResidualGraph& rg,
                         const Cycle& c, Amount value);

// One canceled cycle, kept for traces and benchmark witnesses.
struct CycleTrace {
  std::vector<NodeId> node_sequence;  // closed: front() == back()
  std::vector<ArcKind> kinds;         // arc i goes node[i] -> node[i+1]
  std::int64_t weight = 0;            // scaled utility units
  Amount value = 0;                   // scaled augmentation value
};

struct Solution {
  Flow flow;               // raw units, keyed on the input graph
  Quantity utility;        // unscaled
  Quantity total_service;  // unscaled
  std::int64_t iterations = 0;
  std::vector<CycleTrace> cycles_used;
  ScalingInfo scaling;
  std::int64_t scaled_utility = 0;   // objective on the integral graph
  std::int64_t iteration_bound = 0;  // saturated at INT64_MAX
};

// Maximum-utility circulation by iterative positive-cycle canceling.
// Provider splits and integral scaling are applied internally; the returned
// flow is mapped back onto the input graph's edges. Progress (utility up by
// at least one integer per iteration) and the iteration bound are enforced
// at run time.
Solution solve_max_utility(const SocialRequestGraph& g, ServiceMode mode);

// Same with every non-virtual utility set to one service unit, so the
// objective becomes total provided service.
Solution solve_max_service(const SocialRequestGraph& g, ServiceMode mode);

// Clone with unit utilities on non-virtual edges (virtual edges stay 0).
SocialRequestGraph with_unit_utilities(const SocialRequestGraph& g);

}  // namespace star
