#include "star/feasibility.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace star {

namespace {

// Plain Dinic on an adjacency list with paired residual edges.
class Dinic {
 public:
  explicit Dinic(int n) : adj_(n), level_(n), iter_(n) {}

  int add_edge(int from, int to, Amount cap) {
    int id = static_cast<int>(edges_.size());
    edges_.push_back({to, cap, 0});
    adj_[from].push_back(id);
    edges_.push_back({from, 0, 0});
    adj_[to].push_back(id + 1);
    return id;
  }

  Amount run(int s, int t) {
    Amount total = 0;
    while (bfs(s, t)) {
      std::fill(iter_.begin(), iter_.end(), 0);
      while (Amount pushed = dfs(s, t, std::numeric_limits<Amount>::max())) total += pushed;
    }
    return total;
  }

  Amount flow_on(int edge_id) const { return edges_[edge_id].flow; }

 private:
  struct Edge {
    int to;
    Amount cap;
    Amount flow;
  };

  bool bfs(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int id : adj_[v]) {
        const Edge& e = edges_[id];
        if (e.cap - e.flow > 0 && level_[e.to] < 0) {
          level_[e.to] = level_[v] + 1;
          q.push(e.to);
        }
      }
    }
    return level_[t] >= 0;
  }

  Amount dfs(int v, int t, Amount limit) {
    if (v == t) return limit;
    for (std::size_t& i = iter_[v]; i < adj_[v].size(); ++i) {
      int id = adj_[v][i];
      Edge& e = edges_[id];
      if (e.cap - e.flow <= 0 || level_[e.to] != level_[v] + 1) continue;
      Amount pushed = dfs(e.to, t, std::min(limit, e.cap - e.flow));
      if (pushed > 0) {
        e.flow += pushed;
        edges_[id ^ 1].flow -= pushed;
        return pushed;
      }
    }
    return 0;
  }

  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> level_;
  std::vector<std::size_t> iter_;
};

}  // namespace

StNetwork to_st_network(const ExtendedSocialGraph& ext) {
  StNetwork net;
  net.nodes = ext.nodes;
  net.s = ext.source;
  net.t = ext.sink;
  net.nodes.push_back(net.s);
  net.nodes.push_back(net.t);

  for (const auto& p : ext.social) {
    int forward = static_cast<int>(net.arcs.size());
    net.arcs.push_back({p.i, p.j, p.cap_ij});
    net.arcs.push_back({p.j, p.i, p.cap_ji});
    net.opposite.push_back(forward + 1);
    net.opposite.push_back(forward);
  }
  for (const auto& [id, cap] : ext.surplus_arcs) {
    net.arcs.push_back({net.s, id, cap});
    net.opposite.push_back(-1);
  }
  for (const auto& [id, cap] : ext.deficit_arcs) {
    net.arcs.push_back({id, net.t, cap});
    net.opposite.push_back(-1);
  }
  return net;
}

MaxFlowResult max_flow(const StNetwork& net, NodeId s, NodeId t) {
  std::map<NodeId, int> slot;
  for (NodeId id : net.nodes) slot.emplace(id, static_cast<int>(slot.size()));
  require(slot.count(s) && slot.count(t), "max_flow endpoints missing from node set");

  Dinic dinic(static_cast<int>(slot.size()));
  std::vector<int> internal(net.arcs.size());
  for (std::size_t i = 0; i < net.arcs.size(); ++i) {
    const StArc& a = net.arcs[i];
    require(a.capacity >= 0, "negative arc capacity");
    internal[i] = dinic.add_edge(slot.at(a.from), slot.at(a.to), a.capacity);
  }

  MaxFlowResult result;
  result.value = dinic.run(slot.at(s), slot.at(t));
  result.arc_flow.resize(net.arcs.size());
  for (std::size_t i = 0; i < net.arcs.size(); ++i)
    result.arc_flow[i] = dinic.flow_on(internal[i]);

  // Net opposing social arcs so only one direction reports flow.
  for (std::size_t i = 0; i < net.arcs.size(); ++i) {
    int opp = net.opposite[i];
    if (opp < 0 || static_cast<std::size_t>(opp) < i) continue;
    Amount net_flow = result.arc_flow[i] - result.arc_flow[opp];
    result.arc_flow[i] = net_flow > 0 ? net_flow : 0;
    result.arc_flow[opp] = net_flow < 0 ? -net_flow : 0;
  }
  return result;
}

FeasibilityResult all_requests_satisfiable(const SocialRequestGraph& g) {
  std::int64_t unit = pow10(g.precision);

  // A capacity edge must cover the requests its virtual node sources;
  // otherwise saturation is impossible regardless of social routing.
  bool virtual_caps_ok = true;
  for (const auto& link : g.requests) {
    if (!link.is_virtual) continue;
    Amount sourced = 0;
    for (const auto& e : g.requests)
      if (!e.is_virtual && e.provider == link.requester) sourced += e.capacity;
    if (sourced > link.capacity) virtual_caps_ok = false;
  }

  ExtendedSocialGraph ext = build_extended_social_graph(g);
  StNetwork net = to_st_network(ext);
  MaxFlowResult mf = max_flow(net, net.s, net.t);

  FeasibilityResult result;
  result.total_imbalance = Quantity(ext.total_imbalance, unit);
  result.max_flow_value = Quantity(mf.value, unit);
  result.satisfiable = virtual_caps_ok && mf.value == ext.total_imbalance;

  if (result.satisfiable) {
    Flow witness;
    for (const auto& e : g.requests) {
      if (e.is_virtual) continue;
      witness.set_request(e.edge_id, e.capacity);
    }
    for (const auto& link : g.requests) {
      if (!link.is_virtual) continue;
      Amount sourced = 0;
      for (const auto& e : g.requests)
        if (!e.is_virtual && e.provider == link.requester) sourced += e.capacity;
      witness.set_request(link.edge_id, sourced);
    }
    for (std::size_t i = 0; i < ext.social.size(); ++i) {
      // Arcs 2i and 2i+1 are the pair's two directions; flows are netted.
      Amount net_ij = mf.arc_flow[2 * i] - mf.arc_flow[2 * i + 1];
      if (net_ij != 0) witness.add_social(ext.social[i].i, ext.social[i].j, net_ij);
    }
    require(validate_flow(g, witness).ok(), "feasibility witness failed validation");
    result.witness = std::move(witness);
  }
  return result;
}

}  // namespace star
