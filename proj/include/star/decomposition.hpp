#pragma once

#include "star/graph.hpp"

namespace star {

enum class TraversalKind { Request, Social };

// One step of a cycle walk in the combined graph: a request edge traversed
// provider -> requester, or a social pair traversed in its net direction.
struct CycleStep {
  TraversalKind kind = TraversalKind::Request;
  NodeId from = 0;
  NodeId to = 0;
  int edge_id = -1;  // request steps only
};

// A balanced flow along one cycle: every step carries exactly `value`.
struct CycleFlow {
  std::vector<CycleStep> steps;  // closed walk
  Amount value = 0;
};

enum class CycleClass {
  DirectReciprocity,    // 2 request edges, no social
  IndirectReciprocity,  // >= 3 request edges, no social
  DirectSocial,         // 1 request + 1 social
  IndirectSocial,       // 1 request + >= 2 social
  Mixed,
};

const char* to_string(CycleClass cls);

// Constructively decomposes a circulation into balanced cycle flows whose
// aggregate equals the input exactly. Tracing starts from the lowest node id
// with positive outgoing flow; outgoing steps are scanned request-first in
// edge-id order, then social pairs in canonical order. Throws NotACirculation
// when the flow fails validation.
std::vector<CycleFlow> decompose_circulation(const SocialRequestGraph& g, const Flow& f);

CycleClass classify_cycle(const CycleFlow& c);

// Aggregate flow of a set of balanced cycle flows: request values add up,
// opposing social traversals cancel.
Flow aggregate_cycle_flows(const std::vector<CycleFlow>& cycles);

}  // namespace star
