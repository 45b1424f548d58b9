#include "star/decomposition.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <optional>

namespace star {

const char* to_string(CycleClass cls) {
  switch (cls) {
    case CycleClass::DirectReciprocity: return "direct-reciprocity";
    case CycleClass::IndirectReciprocity: return "indirect-reciprocity";
    case CycleClass::DirectSocial: return "direct-social";
    case CycleClass::IndirectSocial: return "indirect-social";
    case CycleClass::Mixed: return "mixed";
  }
  return "unknown";
}

namespace {

// First outgoing step with positive remaining flow, requests before socials.
std::optional<CycleStep> next_step(const SocialRequestGraph& g, const Flow& f, NodeId v) {
  for (const auto& e : g.requests) {
    if (e.provider != v) continue;
    if (f.request(e.edge_id) > 0)
      return CycleStep{TraversalKind::Request, e.provider, e.requester, e.edge_id};
  }
  for (const auto& p : g.social) {
    if (p.i == v && f.social(p.i, p.j) > 0) return CycleStep{TraversalKind::Social, p.i, p.j, -1};
    if (p.j == v && f.social(p.j, p.i) > 0) return CycleStep{TraversalKind::Social, p.j, p.i, -1};
  }
  return std::nullopt;
}

Amount step_flow(const Flow& f, const CycleStep& s) {
  return s.kind == TraversalKind::Request ? f.request(s.edge_id) : f.social(s.from, s.to);
}

void subtract_step(Flow& f, const CycleStep& s, Amount value) {
  if (s.kind == TraversalKind::Request)
    f.add_request(s.edge_id, -value);
  else
    f.add_social(s.from, s.to, -value);
}

}  // namespace

std::vector<CycleFlow> decompose_circulation(const SocialRequestGraph& g, const Flow& f) {
  if (!validate_flow(g, f).ok())
    fail(ErrorCode::NotACirculation, "flow violates capacity or conservation constraints");

  Flow remaining = f.normalized();
  std::vector<CycleFlow> cycles;

  while (true) {
    // Lowest node with positive outgoing flow seeds the trace.
    std::optional<CycleStep> first;
    for (NodeId v : g.nodes) {
      first = next_step(g, remaining, v);
      if (first) break;
    }
    if (!first) break;

    // Trace until a node repeats; conservation guarantees the walk never
    // stalls at a node it entered.
    std::vector<CycleStep> walk{*first};
    std::map<NodeId, std::size_t> position{{first->from, 0}};
    NodeId cur = first->to;
    while (!position.count(cur)) {
      position.emplace(cur, walk.size());
      std::optional<CycleStep> step = next_step(g, remaining, cur);
      require(step.has_value(), "circulation trace stalled");
      walk.push_back(*step);
      cur = step->to;
    }

    CycleFlow cycle;
    cycle.steps.assign(walk.begin() + static_cast<std::ptrdiff_t>(position.at(cur)), walk.end());
    cycle.value = std::numeric_limits<Amount>::max();
    for (const auto& s : cycle.steps) cycle.value = std::min(cycle.value, step_flow(remaining, s));
    require(cycle.value > 0, "traced cycle carries no flow");
    for (const auto& s : cycle.steps) subtract_step(remaining, s, cycle.value);
    remaining = remaining.normalized();
    cycles.push_back(std::move(cycle));
  }
  return cycles;
}

CycleClass classify_cycle(const CycleFlow& c) {
  std::size_t requests = 0;
  std::size_t socials = 0;
  for (const auto& s : c.steps)
    (s.kind == TraversalKind::Request ? requests : socials) += 1;
  if (socials == 0 && requests == 2) return CycleClass::DirectReciprocity;
  if (socials == 0 && requests >= 3) return CycleClass::IndirectReciprocity;
  if (requests == 1 && socials == 1) return CycleClass::DirectSocial;
  if (requests == 1 && socials >= 2) return CycleClass::IndirectSocial;
  return CycleClass::Mixed;
}

Flow aggregate_cycle_flows(const std::vector<CycleFlow>& cycles) {
  Flow f;
  for (const auto& c : cycles) {
    for (const auto& s : c.steps) {
      if (s.kind == TraversalKind::Request)
        f.add_request(s.edge_id, c.value);
      else
        f.add_social(s.from, s.to, c.value);
    }
  }
  return f.normalized();
}

}  // namespace star
