#pragma once

#include "star/graph.hpp"

namespace star {

// Records one provider-capacity split: the owner node, its virtual stand-in
// that now sources the outgoing request edges, and the capacity edge that
// links them.
struct NodeSplitMapping {
  NodeId original = 0;
  NodeId virtual_node = 0;
  int virtual_edge_id = -1;
};

struct SplitResult {
  SocialRequestGraph graph;
  std::vector<NodeSplitMapping> mapping;
};

// Rewrites each capped node i with outgoing request edges: a virtual node i'
// sources those edges and a utility-0 edge i -> i' of capacity C_i bounds the
// total. Other edges are untouched; provider_caps is cleared on the result.
// Capacity-0 virtual edges are kept so solutions map back one-to-one.
SplitResult split_provider_capacity(const SocialRequestGraph& g);

// Per-node request imbalance and the source/sink arcs derived from it.
// Virtual split nodes are collapsed into their owners before imbalances are
// computed, so the structure matches the pre-split graph.
struct ExtendedSocialGraph {
  std::vector<NodeId> nodes;  // real nodes only
  std::vector<SocialPair> social;
  NodeId source = 0;
  NodeId sink = 0;
  std::vector<std::pair<NodeId, Amount>> surplus_arcs;  // source -> i, capacity P_i > 0
  std::vector<std::pair<NodeId, Amount>> deficit_arcs;  // i -> sink, capacity -P_i
  Amount total_imbalance = 0;                           // P
  std::map<NodeId, Amount> imbalance;                   // P_i per real node
};

ExtendedSocialGraph build_extended_social_graph(const SocialRequestGraph& g);

enum class ServiceMode { Divisible, Indivisible };

const char* to_string(ServiceMode mode);

struct ScalingInfo {
  std::int64_t k = 1;
  ServiceMode mode = ServiceMode::Divisible;
  int precision = 0;   // fractional digits of the input representation
  Amount rbar_raw = 0; // max request capacity before scaling, raw units
  Amount ubar_raw = 0; // max utility before scaling, raw units

  // Scaled utility -> true utility divides by K^2 (divisible) or K.
  std::int64_t utility_divisor() const;
  // Scaled flow value -> raw fixed-point value at `precision`.
  std::int64_t flow_to_raw_factor() const;
};

struct ScaledGraph {
  SocialRequestGraph graph;  // integral (precision 0)
  ScalingInfo info;
};

// Converts a fixed-point instance into an equivalent integral one.
// Divisible: every capacity and utility is multiplied by K = 10^p reduced by
// the gcd of all values. Indivisible: capacities are floored to whole service
// units and only utilities are scaled. Throws PrecisionExceeded when a value
// has more than `precision` fractional digits.
ScaledGraph scale_to_integral(const SocialRequestGraph& g, ServiceMode mode);
ScaledGraph scale_to_integral(const SocialRequestGraph& g, ServiceMode mode, int precision);

}  // namespace star
