#pragma once

#include <optional>

#include "star/transforms.hpp"

namespace star {

struct StArc {
  NodeId from = 0;
  NodeId to = 0;
  Amount capacity = 0;
};

// Directed s-t network. Social pairs expand into two opposing arcs whose
// indices reference each other through `opposite`; reported flows are netted
// so at most one of the two carries a positive value.
struct StNetwork {
  std::vector<NodeId> nodes;
  NodeId s = 0;
  NodeId t = 0;
  std::vector<StArc> arcs;
  std::vector<int> opposite;  // index of the opposing arc, or -1
};

StNetwork to_st_network(const ExtendedSocialGraph& ext);

struct MaxFlowResult {
  Amount value = 0;
  std::vector<Amount> arc_flow;  // aligned with StNetwork::arcs
};

// Exact max flow (Dinic). Integral capacities yield an integral flow.
MaxFlowResult max_flow(const StNetwork& net, NodeId s, NodeId t);

struct FeasibilityResult {
  bool satisfiable = false;
  Quantity total_imbalance;  // P
  Quantity max_flow_value;
  std::optional<Flow> witness;  // circulation saturating all non-virtual requests
};

// Decides whether every sensing request can be satisfied: P must equal the
// max flow from s to t in the extended social graph. When provider splits
// are present, each capacity edge must additionally cover the requests it
// sources. The witness, when present, validates and saturates every
// non-virtual request edge.
FeasibilityResult all_requests_satisfiable(const SocialRequestGraph& g);

}  // namespace star
