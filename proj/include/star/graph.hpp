#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "star/errors.hpp"
#include "star/fixed.hpp"

namespace star {

using NodeId = std::int64_t;

// Canonical unordered-pair key: first < second.
using PairKey = std::pair<NodeId, NodeId>;

inline PairKey make_pair_key(NodeId a, NodeId b) {
  return a < b ? PairKey{a, b} : PairKey{b, a};
}

// One social relation per unordered node pair, holding both directional
// credit limits. A zero capacity means trust is absent in that direction.
struct SocialPair {
  NodeId i = 0;  // i < j after canonicalization
  NodeId j = 0;
  Amount cap_ij = 0;  // credit limit in direction i -> j
  Amount cap_ji = 0;

  PairKey key() const { return {i, j}; }
};

// Directed capacitated service request: `requester` asks `provider` for up
// to `capacity` units, each worth `utility_per_unit` to the requester.
// Virtual edges come from the provider-capacity split and carry utility 0.
struct RequestEdge {
  int edge_id = -1;
  NodeId provider = 0;
  NodeId requester = 0;
  Amount capacity = 0;
  Amount utility_per_unit = 0;
  bool is_virtual = false;
};

struct SocialRequestGraph {
  std::vector<NodeId> nodes;          // sorted, unique
  std::vector<SocialPair> social;     // sorted by key(), one per pair
  std::vector<RequestEdge> requests;  // sorted by edge_id
  std::map<NodeId, Amount> provider_caps;
  int precision = 0;  // fractional digits baked into every Amount

  bool has_node(NodeId id) const;
  const SocialPair* find_social(NodeId a, NodeId b) const;
  const RequestEdge* find_request(int edge_id) const;

  // Credit limit in the given direction; 0 when the pair is absent.
  Amount social_cap(NodeId from, NodeId to) const;

  Amount max_request_capacity() const;
  Amount max_request_utility() const;
};

// A circulation candidate. Social flow is stored once per pair as a signed
// net transfer in the canonical i -> j direction, so the antisymmetry
// constraint holds by construction.
struct Flow {
  std::map<int, Amount> request_flow;     // edge_id -> amount, >= 0
  std::map<PairKey, Amount> social_flow;  // canonical pair -> signed net i -> j

  Amount request(int edge_id) const;
  Amount social(NodeId from, NodeId to) const;  // signed, in from -> to direction
  void set_request(int edge_id, Amount value);
  void add_request(int edge_id, Amount delta);
  void add_social(NodeId from, NodeId to, Amount delta);

  // Drops zero entries; equal circulations normalize to equal maps.
  Flow normalized() const;
  bool operator==(const Flow& other) const;
};

enum class ConstraintKind { RequestCapacity, SocialCapacity, Conservation };

const char* to_string(ConstraintKind kind);

struct Violation {
  ConstraintKind kind;
  std::string location;
  Amount magnitude;
};

struct ValidationReport {
  bool capacity_ok = true;
  bool conservation_ok = true;
  std::vector<Violation> violations;

  bool ok() const { return capacity_ok && conservation_ok; }
};

// Validates raw records and assembles the combined graph. Social pairs are
// canonicalized to i < j; edge ids of -1 are auto-assigned in input order.
SocialRequestGraph build_graph(std::vector<NodeId> nodes,
                               std::vector<SocialPair> social_pairs,
                               std::vector<RequestEdge> request_edges,
                               std::map<NodeId, Amount> provider_caps = {},
                               int precision = 0);

// Checks the capacity constraints (request bounds and the signed social
// window) and per-node conservation. Throws KeyMismatch when the flow
// references unknown edges or pairs.
ValidationReport validate_flow(const SocialRequestGraph& g, const Flow& f);

// Objective value in raw*raw fixed-point units; social flow contributes 0.
std::int64_t flow_utility(const SocialRequestGraph& g, const Flow& f);

// Total service over non-virtual request edges, in raw units.
Amount flow_total_service(const SocialRequestGraph& g, const Flow& f);

// Total requested service (sum of non-virtual request capacities), raw units.
Amount total_requested_service(const SocialRequestGraph& g);

// Service received per node (sum of non-virtual request flow into it).
std::map<NodeId, Amount> per_node_received_service(const SocialRequestGraph& g, const Flow& f);

}  // namespace star
