#include "star/benchmarks.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>

namespace star {

const char* to_string(Mechanism mechanism) {
  switch (mechanism) {
    case Mechanism::Star: return "star";
    case Mechanism::SocialTrustOnly: return "st";
    case Mechanism::ReciprocityOnly: return "rp";
  }
  return "unknown";
}

const char* to_string(Exactness exactness) {
  return exactness == Exactness::Exact ? "exact" : "heuristic";
}

BenchmarkSolution solve_star(const SocialRequestGraph& g, ServiceMode mode) {
  BenchmarkSolution out;
  out.mechanism = Mechanism::Star;
  out.exactness = Exactness::Exact;
  out.solution = solve_max_utility(g, mode);
  out.cycle_witness = decompose_circulation(g, out.solution.flow);
  return out;
}

BenchmarkSolution solve_rp(const SocialRequestGraph& g, ServiceMode mode) {
  SocialRequestGraph request_only = g;
  request_only.social.clear();

  BenchmarkSolution out;
  out.mechanism = Mechanism::ReciprocityOnly;
  out.exactness = Exactness::Exact;
  out.solution = solve_max_utility(request_only, mode);
  out.cycle_witness = decompose_circulation(request_only, out.solution.flow);
  return out;
}

namespace {

struct StState {
  const SocialRequestGraph& g;
  Flow flow;                            // scaled units
  std::map<NodeId, Amount> remaining_cap;  // provider caps, scaled; absent = unbounded

  // Residual along an existing trust direction. Directions without trust
  // stay impassable even when net flow would leave room, so every canceled
  // cycle is a genuine cycle of the combined graph and the greedy stays
  // within the single-request-cycle admissible set.
  Amount social_residual(NodeId from, NodeId to) const {
    Amount cap = g.social_cap(from, to);
    if (cap == 0) return 0;
    return cap - flow.social(from, to);
  }
};

// Shortest-hop credit path from `from` to `to` over positive-residual social
// directions; neighbors explored in ascending node id.
std::optional<std::vector<NodeId>> credit_path(const StState& st, NodeId from, NodeId to) {
  std::map<NodeId, NodeId> parent;
  std::deque<NodeId> queue{from};
  parent[from] = from;
  while (!queue.empty()) {
    NodeId v = queue.front();
    queue.pop_front();
    if (v == to) break;
    // g.social is sorted by pair key, so neighbor visits are deterministic.
    std::vector<NodeId> neighbors;
    for (const auto& p : st.g.social) {
      if (p.i == v && st.social_residual(p.i, p.j) > 0) neighbors.push_back(p.j);
      if (p.j == v && st.social_residual(p.j, p.i) > 0) neighbors.push_back(p.i);
    }
    std::sort(neighbors.begin(), neighbors.end());
    for (NodeId w : neighbors) {
      if (parent.count(w)) continue;
      parent[w] = v;
      queue.push_back(w);
    }
  }
  if (!parent.count(to)) return std::nullopt;
  std::vector<NodeId> path{to};
  while (path.back() != from) path.push_back(parent.at(path.back()));
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

BenchmarkSolution solve_st(const SocialRequestGraph& g, ServiceMode mode) {
  ScaledGraph scaled = scale_to_integral(g, mode);
  const SocialRequestGraph& gint = scaled.graph;

  StState st{gint, {}, {}};
  for (const auto& [id, cap] : gint.provider_caps) st.remaining_cap[id] = cap;

  // Edges in descending utility, ties to the lowest edge id.
  std::vector<const RequestEdge*> order;
  for (const auto& e : gint.requests)
    if (!e.is_virtual) order.push_back(&e);
  std::sort(order.begin(), order.end(), [](const RequestEdge* a, const RequestEdge* b) {
    if (a->utility_per_unit != b->utility_per_unit) return a->utility_per_unit > b->utility_per_unit;
    return a->edge_id < b->edge_id;
  });

  std::vector<CycleFlow> witness;
  std::vector<CycleTrace> traces;
  while (true) {
    bool canceled = false;
    for (const RequestEdge* e : order) {
      Amount room = e->capacity - st.flow.request(e->edge_id);
      auto cap_it = st.remaining_cap.find(e->provider);
      if (cap_it != st.remaining_cap.end()) room = std::min(room, cap_it->second);
      if (room <= 0) continue;
      auto path = credit_path(st, e->requester, e->provider);
      if (!path) continue;

      Amount value = room;
      for (std::size_t i = 0; i + 1 < path->size(); ++i)
        value = std::min(value, st.social_residual((*path)[i], (*path)[i + 1]));
      require(value > 0, "credit path with zero residual");

      st.flow.add_request(e->edge_id, value);
      if (cap_it != st.remaining_cap.end()) cap_it->second -= value;

      CycleFlow cycle;
      cycle.value = value;
      cycle.steps.push_back({TraversalKind::Request, e->provider, e->requester, e->edge_id});
      CycleTrace trace;
      trace.node_sequence.push_back(e->provider);
      trace.kinds.push_back(ArcKind::RequestForward);
      for (std::size_t i = 0; i + 1 < path->size(); ++i) {
        st.flow.add_social((*path)[i], (*path)[i + 1], value);
        cycle.steps.push_back({TraversalKind::Social, (*path)[i], (*path)[i + 1], -1});
        trace.node_sequence.push_back((*path)[i]);
        trace.kinds.push_back(ArcKind::Social);
      }
      trace.node_sequence.push_back(e->provider);
      trace.weight = e->utility_per_unit;
      trace.value = value;
      traces.push_back(std::move(trace));
      witness.push_back(std::move(cycle));
      canceled = true;
      break;
    }
    if (!canceled) break;
  }

  require(validate_flow(gint, st.flow).ok(), "ST flow violates constraints");

  BenchmarkSolution out;
  out.mechanism = Mechanism::SocialTrustOnly;
  out.exactness = Exactness::Heuristic;
  out.solution.scaling = scaled.info;
  out.solution.iterations = static_cast<std::int64_t>(witness.size());
  out.solution.cycles_used = std::move(traces);
  out.solution.scaled_utility = flow_utility(gint, st.flow);
  out.solution.utility = Quantity(out.solution.scaled_utility, scaled.info.utility_divisor());

  std::int64_t factor = scaled.info.flow_to_raw_factor();
  for (const auto& [id, v] : st.flow.request_flow)
    if (v != 0) out.solution.flow.set_request(id, v * factor);
  for (const auto& [key, v] : st.flow.social_flow)
    if (v != 0) out.solution.flow.add_social(key.first, key.second, v * factor);
  require(validate_flow(g, out.solution.flow).ok(), "ST flow fails validation on the input graph");
  out.solution.total_service = Quantity(flow_total_service(g, out.solution.flow), pow10(g.precision));

  for (auto& cycle : witness) cycle.value *= factor;
  out.cycle_witness = std::move(witness);
  return out;
}

namespace {

// All simple credit paths from `from` to `to`, stepping only along existing
// trust directions (positive capacity); used by the exhaustive ST search.
void enumerate_paths(const SocialRequestGraph& g, NodeId to, std::vector<NodeId>& prefix,
                     std::set<NodeId>& used, std::vector<std::vector<NodeId>>& out) {
  NodeId v = prefix.back();
  if (v == to) {
    out.push_back(prefix);
    return;
  }
  for (const auto& p : g.social) {
    for (auto [a, b] : {std::pair{p.i, p.j}, std::pair{p.j, p.i}}) {
      if (a != v || used.count(b)) continue;
      if (g.social_cap(a, b) <= 0) continue;
      prefix.push_back(b);
      used.insert(b);
      enumerate_paths(g, to, prefix, used, out);
      used.erase(b);
      prefix.pop_back();
    }
  }
}

struct StCycle {
  int edge_id;
  std::int64_t utility;
  Amount max_value;
  std::vector<NodeId> nodes;  // provider, requester, ..., provider
};

}  // namespace

std::int64_t st_exhaustive_optimum(const SocialRequestGraph& g, const SmallInstanceLimits& limits) {
  if (g.precision != 0) fail(ErrorCode::TooLarge, "exhaustive ST search requires an integral instance");
  if (static_cast<int>(g.nodes.size()) > limits.max_nodes)
    fail(ErrorCode::TooLarge, "instance too large for exhaustive ST search");

  std::vector<StCycle> cycles;
  for (const auto& e : g.requests) {
    if (e.is_virtual) continue;
    if (e.capacity > limits.max_capacity) fail(ErrorCode::TooLarge, "capacity beyond limits");
    std::vector<NodeId> prefix{e.requester};
    std::set<NodeId> used{e.requester};
    std::vector<std::vector<NodeId>> paths;
    enumerate_paths(g, e.provider, prefix, used, paths);
    for (auto& path : paths) {
      StCycle c;
      c.edge_id = e.edge_id;
      c.utility = e.utility_per_unit;
      c.max_value = e.capacity;
      c.nodes.push_back(e.provider);
      for (NodeId v : path) c.nodes.push_back(v);
      cycles.push_back(std::move(c));
    }
  }

  // Per-pair slack of the cycles not yet assigned: opposing traversals can
  // cancel in the aggregate, so social windows are only checked against what
  // future cycles could still contribute; request room and provider caps are
  // monotone and prune exactly.
  std::map<PairKey, Amount> future_pos, future_neg;  // canonical direction vs reverse
  auto cycle_span = [&](const StCycle& c, Amount sign) {
    for (std::size_t i = 1; i + 1 < c.nodes.size(); ++i) {
      PairKey key = make_pair_key(c.nodes[i], c.nodes[i + 1]);
      if (c.nodes[i] == key.first)
        future_pos[key] += sign * c.max_value;
      else
        future_neg[key] += sign * c.max_value;
    }
  };
  for (const auto& c : cycles) cycle_span(c, 1);

  std::map<NodeId, Amount> caps(g.provider_caps.begin(), g.provider_caps.end());
  std::int64_t states = 0;
  std::int64_t best = 0;
  Flow flow;

  auto socially_viable = [&]() {
    for (const auto& p : g.social) {
      Amount v = flow.social(p.i, p.j);
      PairKey key = p.key();
      Amount up = future_pos.count(key) ? future_pos.at(key) : 0;
      Amount down = future_neg.count(key) ? future_neg.at(key) : 0;
      if (v - down > p.cap_ij || v + up < -p.cap_ji) return false;
    }
    return true;
  };

  std::function<void(std::size_t, std::int64_t)> search = [&](std::size_t k, std::int64_t utility) {
    if (++states > limits.max_states)
      fail(ErrorCode::TooLarge, "exhaustive ST search exceeded state limit");
    if (k == cycles.size()) {
      best = std::max(best, utility);
      return;
    }
    const StCycle& c = cycles[k];
    Amount hi = c.max_value - flow.request(c.edge_id);
    auto cap_it = caps.find(c.nodes.front());
    if (cap_it != caps.end()) hi = std::min(hi, cap_it->second);
    cycle_span(c, -1);
    for (Amount v = 0; v <= hi; ++v) {
      if (v > 0) {
        flow.add_request(c.edge_id, 1);
        for (std::size_t i = 1; i + 1 < c.nodes.size(); ++i)
          flow.add_social(c.nodes[i], c.nodes[i + 1], 1);
        if (cap_it != caps.end()) --cap_it->second;
      }
      if (socially_viable()) search(k + 1, utility + c.utility * v);
    }
    for (Amount v = hi; v > 0; --v) {
      flow.add_request(c.edge_id, -1);
      for (std::size_t i = 1; i + 1 < c.nodes.size(); ++i)
        flow.add_social(c.nodes[i], c.nodes[i + 1], -1);
      if (cap_it != caps.end()) ++cap_it->second;
    }
    cycle_span(c, 1);
  };
  search(0, 0);
  return best;
}

}  // namespace star
