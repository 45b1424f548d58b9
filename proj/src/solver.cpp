#include "star/solver.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>

namespace star {

const char* to_string(ArcKind kind) {
  switch (kind) {
    case ArcKind::RequestForward: return "request-forward";
    case ArcKind::RequestBackward: return "request-backward";
    case ArcKind::Social: return "social";
  }
  return "unknown";
}

ResidualGraph build_residual(const SocialRequestGraph& g, const Flow& f) {
  if (!validate_flow(g, f).ok()) fail(ErrorCode::InvalidFlow, "flow violates graph constraints");

  ResidualGraph rg;
  rg.nodes = g.nodes;
  for (const auto& e : g.requests) {
    Amount v = f.request(e.edge_id);
    if (e.capacity - v > 0) {
      ResidualArc a;
      a.kind = ArcKind::RequestForward;
      a.from = e.provider;
      a.to = e.requester;
      a.capacity = e.capacity - v;
      a.weight = e.utility_per_unit;
      a.edge_id = e.edge_id;
      rg.arcs.push_back(a);
    }
    if (v > 0) {
      ResidualArc a;
      a.kind = ArcKind::RequestBackward;
      a.from = e.requester;
      a.to = e.provider;
      a.capacity = v;
      a.weight = -e.utility_per_unit;
      a.edge_id = e.edge_id;
      rg.arcs.push_back(a);
    }
  }
  for (const auto& p : g.social) {
    Amount v = f.social(p.i, p.j);
    if (p.cap_ij - v > 0) {
      ResidualArc a;
      a.from = p.i;
      a.to = p.j;
      a.capacity = p.cap_ij - v;
      a.pair = p.key();
      rg.arcs.push_back(a);
    }
    if (p.cap_ji + v > 0) {
      ResidualArc a;
      a.from = p.j;
      a.to = p.i;
      a.capacity = p.cap_ji + v;
      a.pair = p.key();
      rg.arcs.push_back(a);
    }
  }
  return rg;
}

std::optional<Cycle> find_positive_cycle(const ResidualGraph& rg) {
  const int n = static_cast<int>(rg.nodes.size());
  if (n == 0 || rg.arcs.empty()) return std::nullopt;

  std::map<NodeId, int> slot;
  for (NodeId id : rg.nodes) slot.emplace(id, static_cast<int>(slot.size()));

  struct CompactArc {
    int from, to;
    std::int64_t weight;
  };
  std::vector<CompactArc> arcs;
  arcs.reserve(rg.arcs.size());
  for (const auto& a : rg.arcs) arcs.push_back({slot.at(a.from), slot.at(a.to), a.weight});

  // Every label starts at 0 (implicit source). Strict improvement keeps ties
  // resolved toward the earliest arc.
  std::vector<std::int64_t> label(n, 0);
  std::vector<int> pred(n, -1);
  bool changed = true;
  for (int round = 0; round < n - 1 && changed; ++round) {
    changed = false;
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      const CompactArc& a = arcs[i];
      if (label[a.from] + a.weight > label[a.to]) {
        label[a.to] = label[a.from] + a.weight;
        pred[a.to] = static_cast<int>(i);
        changed = true;
      }
    }
  }
  if (!changed) return std::nullopt;  // labels converged; no positive cycle

  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const CompactArc& a = arcs[i];
    if (label[a.from] + a.weight <= label[a.to]) continue;
    pred[a.to] = static_cast<int>(i);

    // Walk |V| predecessor steps to land inside the cycle, then collect it.
    int x = a.to;
    bool dead = false;
    for (int step = 0; step < n; ++step) {
      if (pred[x] < 0) {
        dead = true;
        break;
      }
      x = arcs[pred[x]].from;
    }
    if (dead) continue;

    std::vector<int> reversed;
    int cur = x;
    do {
      require(pred[cur] >= 0 && static_cast<int>(reversed.size()) <= n,
              "predecessor walk failed to close");
      reversed.push_back(pred[cur]);
      cur = arcs[pred[cur]].from;
    } while (cur != x);

    Cycle cycle;
    cycle.arc_indices.assign(reversed.rbegin(), reversed.rend());
    for (int idx : cycle.arc_indices) cycle.weight += rg.arcs[idx].weight;
    cycle.residual_capacity = cycle_residual_capacity(rg, cycle);
    if (cycle.weight > 0) return cycle;
    // A predecessor cycle with non-positive weight contradicts the
    // relaxation argument.
    fail(ErrorCode::Internal, "extracted cycle has non-positive weight");
  }
  // The final round still changed labels, but they settled: no arc improves.
  return std::nullopt;
}

Amount cycle_residual_capacity(const ResidualGraph& rg, const Cycle& c) {
  require(!c.arc_indices.empty(), "empty cycle");
  Amount rc = std::numeric_limits<Amount>::max();
  for (int idx : c.arc_indices) rc = std::min(rc, rg.arcs[idx].capacity);
  return rc;
}

void augment_along_cycle(const SocialRequestGraph& g, Flow& f, const ResidualGraph& rg,
                         const Cycle& c, Amount value) {
  if (value <= 0 || value > cycle_residual_capacity(rg, c))
    fail(ErrorCode::CapacityExceeded, "augmentation value outside (0, residual capacity]");
  for (int idx : c.arc_indices) {
    const ResidualArc& a = rg.arcs[idx];
    switch (a.kind) {
      case ArcKind::RequestForward: f.add_request(a.edge_id, value); break;
      case ArcKind::RequestBackward: f.add_request(a.edge_id, -value); break;
      case ArcKind::Social: f.add_social(a.from, a.to, value); break;
    }
  }
  require(validate_flow(g, f).ok(), "augmented flow violates constraints");
}

namespace {

std::int64_t saturating_bound(std::size_t request_edges, Amount rbar, Amount ubar) {
  __int128 b = static_cast<__int128>(request_edges) * rbar;
  b *= ubar;
  if (b > INT64_MAX) return INT64_MAX;
  return static_cast<std::int64_t>(b);
}

CycleTrace make_trace(const ResidualGraph& rg, const Cycle& c, Amount value) {
  CycleTrace t;
  t.weight = c.weight;
  t.value = value;
  for (int idx : c.arc_indices) {
    t.node_sequence.push_back(rg.arcs[idx].from);
    t.kinds.push_back(rg.arcs[idx].kind);
  }
  if (!c.arc_indices.empty()) t.node_sequence.push_back(rg.arcs[c.arc_indices.front()].from);
  return t;
}

}  // namespace

Solution solve_max_utility(const SocialRequestGraph& g, ServiceMode mode) {
  SplitResult split = split_provider_capacity(g);
  const SocialRequestGraph& work = split.graph;

  ScaledGraph scaled = scale_to_integral(work, mode);
  const SocialRequestGraph& gint = scaled.graph;

  Solution sol;
  sol.scaling = scaled.info;
  sol.iteration_bound =
      saturating_bound(gint.requests.size(), gint.max_request_capacity(), gint.max_request_utility());

  Flow f;
  std::int64_t utility = 0;
  while (true) {
    ResidualGraph rg = build_residual(gint, f);
    std::optional<Cycle> cycle = find_positive_cycle(rg);
    if (!cycle) break;
    Amount rc = cycle->residual_capacity;
    augment_along_cycle(gint, f, rg, *cycle, rc);
    ++sol.iterations;
    sol.cycles_used.push_back(make_trace(rg, *cycle, rc));

    std::int64_t next_utility = flow_utility(gint, f);
    require(next_utility >= utility + 1, "utility did not increase by at least one");
    utility = next_utility;
    require(sol.iterations <= sol.iteration_bound, "iteration bound exceeded");
  }

  sol.scaled_utility = utility;
  sol.utility = Quantity(utility, sol.scaling.utility_divisor());

  // Map the integral flow back to raw fixed-point values on the input graph,
  // dropping edges introduced by the internal provider split.
  std::int64_t factor = sol.scaling.flow_to_raw_factor();
  std::set<int> internal_edges;
  for (const auto& m : split.mapping) internal_edges.insert(m.virtual_edge_id);
  for (const auto& [id, v] : f.request_flow) {
    if (v == 0 || internal_edges.count(id)) continue;
    sol.flow.set_request(id, v * factor);
  }
  for (const auto& [key, v] : f.social_flow) {
    if (v == 0) continue;
    sol.flow.add_social(key.first, key.second, v * factor);
  }

  require(validate_flow(g, sol.flow).ok(), "solution flow fails validation on the input graph");
  sol.total_service = Quantity(flow_total_service(g, sol.flow), pow10(g.precision));
  return sol;
}

SocialRequestGraph with_unit_utilities(const SocialRequestGraph& g) {
  SocialRequestGraph out = g;
  Amount unit = pow10(g.precision);
  for (auto& e : out.requests)
    if (!e.is_virtual) e.utility_per_unit = unit;
  return out;
}

Solution solve_max_service(const SocialRequestGraph& g, ServiceMode mode) {
  return solve_max_utility(with_unit_utilities(g), mode);
}

}  // namespace star
