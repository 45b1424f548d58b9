#include "star/graph.hpp"

#include <algorithm>
#include <set>

namespace star {

namespace {

std::string node_str(NodeId id) { return std::to_string(id); }

std::string pair_str(const PairKey& k) {
  return "{" + std::to_string(k.first) + "," + std::to_string(k.second) + "}";
}

}  // namespace

const char* to_string(ConstraintKind kind) {
  switch (kind) {
    case ConstraintKind::RequestCapacity: return "request_capacity";
    case ConstraintKind::SocialCapacity: return "social_capacity";
    case ConstraintKind::Conservation: return "conservation";
  }
  return "unknown";
}

bool SocialRequestGraph::has_node(NodeId id) const {
  return std::binary_search(nodes.begin(), nodes.end(), id);
}

const SocialPair* SocialRequestGraph::find_social(NodeId a, NodeId b) const {
  PairKey key = make_pair_key(a, b);
  auto it = std::lower_bound(social.begin(), social.end(), key,
                             [](const SocialPair& p, const PairKey& k) { return p.key() < k; });
  if (it != social.end() && it->key() == key) return &*it;
  return nullptr;
}

const RequestEdge* SocialRequestGraph::find_request(int edge_id) const {
  auto it = std::lower_bound(requests.begin(), requests.end(), edge_id,
                             [](const RequestEdge& e, int id) { return e.edge_id < id; });
  if (it != requests.end() && it->edge_id == edge_id) return &*it;
  return nullptr;
}

Amount SocialRequestGraph::social_cap(NodeId from, NodeId to) const {
  const SocialPair* p = find_social(from, to);
  if (!p) return 0;
  return from == p->i ? p->cap_ij : p->cap_ji;
}

Amount SocialRequestGraph::max_request_capacity() const {
  Amount m = 0;
  for (const auto& e : requests) m = std::max(m, e.capacity);
  return m;
}

Amount SocialRequestGraph::max_request_utility() const {
  Amount m = 0;
  for (const auto& e : requests) m = std::max(m, e.utility_per_unit);
  return m;
}

Amount Flow::request(int edge_id) const {
  auto it = request_flow.find(edge_id);
  return it == request_flow.end() ? 0 : it->second;
}

Amount Flow::social(NodeId from, NodeId to) const {
  PairKey key = make_pair_key(from, to);
  auto it = social_flow.find(key);
  if (it == social_flow.end()) return 0;
  return from == key.first ? it->second : -it->second;
}

void Flow::set_request(int edge_id, Amount value) { request_flow[edge_id] = value; }

void Flow::add_request(int edge_id, Amount delta) { request_flow[edge_id] += delta; }

void Flow::add_social(NodeId from, NodeId to, Amount delta) {
  PairKey key = make_pair_key(from, to);
  social_flow[key] += from == key.first ? delta : -delta;
}

Flow Flow::normalized() const {
  Flow out;
  for (const auto& [id, v] : request_flow)
    if (v != 0) out.request_flow.emplace(id, v);
  for (const auto& [key, v] : social_flow)
    if (v != 0) out.social_flow.emplace(key, v);
  return out;
}

bool Flow::operator==(const Flow& other) const {
  Flow a = normalized();
  Flow b = other.normalized();
  return a.request_flow == b.request_flow && a.social_flow == b.social_flow;
}

SocialRequestGraph build_graph(std::vector<NodeId> nodes,
                               std::vector<SocialPair> social_pairs,
                               std::vector<RequestEdge> request_edges,
                               std::map<NodeId, Amount> provider_caps,
                               int precision) {
  SocialRequestGraph g;
  g.precision = precision;

  std::sort(nodes.begin(), nodes.end());
  if (std::adjacent_find(nodes.begin(), nodes.end()) != nodes.end())
    fail(ErrorCode::UnknownConfiguration, "duplicate node id");
  g.nodes = std::move(nodes);

  std::set<PairKey> seen_pairs;
  for (SocialPair p : social_pairs) {
    if (p.i == p.j) fail(ErrorCode::UnknownConfiguration, "social pair with identical endpoints " + node_str(p.i));
    if (p.i > p.j) {
      std::swap(p.i, p.j);
      std::swap(p.cap_ij, p.cap_ji);
    }
    if (!g.has_node(p.i)) fail(ErrorCode::UnknownNode, "social endpoint " + node_str(p.i));
    if (!g.has_node(p.j)) fail(ErrorCode::UnknownNode, "social endpoint " + node_str(p.j));
    if (p.cap_ij < 0 || p.cap_ji < 0)
      fail(ErrorCode::NonpositiveCapacity, "negative social capacity on pair " + pair_str(p.key()));
    if (!seen_pairs.insert(p.key()).second)
      fail(ErrorCode::DuplicateSocialPair, "pair " + pair_str(p.key()));
    g.social.push_back(p);
  }
  std::sort(g.social.begin(), g.social.end(),
            [](const SocialPair& a, const SocialPair& b) { return a.key() < b.key(); });

  int next_id = 0;
  for (const auto& e : request_edges) next_id = std::max(next_id, e.edge_id + 1);
  std::set<int> seen_ids;
  for (RequestEdge e : request_edges) {
    if (e.edge_id < 0) e.edge_id = next_id++;
    if (!seen_ids.insert(e.edge_id).second)
      fail(ErrorCode::UnknownConfiguration, "duplicate request edge id " + std::to_string(e.edge_id));
    if (!g.has_node(e.provider)) fail(ErrorCode::UnknownNode, "request provider " + node_str(e.provider));
    if (!g.has_node(e.requester)) fail(ErrorCode::UnknownNode, "request requester " + node_str(e.requester));
    if (e.provider == e.requester)
      fail(ErrorCode::UnknownConfiguration, "self-request at node " + node_str(e.provider));
    if (e.is_virtual ? e.capacity < 0 : e.capacity <= 0)
      fail(ErrorCode::NonpositiveCapacity,
           "request edge " + std::to_string(e.edge_id) + " capacity " + std::to_string(e.capacity));
    if (e.utility_per_unit < 0)
      fail(ErrorCode::NegativeUtility, "request edge " + std::to_string(e.edge_id));
    g.requests.push_back(e);
  }
  std::sort(g.requests.begin(), g.requests.end(),
            [](const RequestEdge& a, const RequestEdge& b) { return a.edge_id < b.edge_id; });

  for (const auto& [id, cap] : provider_caps) {
    if (!g.has_node(id)) fail(ErrorCode::UnknownNode, "provider cap for node " + node_str(id));
    if (cap < 0) fail(ErrorCode::NonpositiveCapacity, "provider cap for node " + node_str(id));
  }
  g.provider_caps = std::move(provider_caps);
  return g;
}

ValidationReport validate_flow(const SocialRequestGraph& g, const Flow& f) {
  for (const auto& [id, value] : f.request_flow) {
    (void)value;
    if (!g.find_request(id))
      fail(ErrorCode::KeyMismatch, "flow references unknown request edge " + std::to_string(id));
  }
  for (const auto& [key, value] : f.social_flow) {
    (void)value;
    if (!g.find_social(key.first, key.second))
      fail(ErrorCode::KeyMismatch, "flow references unknown social pair " + pair_str(key));
  }

  ValidationReport report;
  for (const auto& e : g.requests) {
    Amount v = f.request(e.edge_id);
    if (v < 0 || v > e.capacity) {
      report.capacity_ok = false;
      Amount over = v < 0 ? -v : v - e.capacity;
      report.violations.push_back(
          {ConstraintKind::RequestCapacity, "edge " + std::to_string(e.edge_id), over});
    }
  }
  for (const auto& p : g.social) {
    Amount v = f.social(p.i, p.j);
    // Eq-style window: -cap_ji <= f <= cap_ij in the canonical direction.
    if (v > p.cap_ij || v < -p.cap_ji) {
      report.capacity_ok = false;
      Amount over = v > p.cap_ij ? v - p.cap_ij : -p.cap_ji - v;
      report.violations.push_back({ConstraintKind::SocialCapacity, "pair " + pair_str(p.key()), over});
    }
  }

  // Per-node conservation: outgoing request flow plus outward-signed social
  // flow must equal incoming request flow.
  std::map<NodeId, Amount> residual;
  for (NodeId id : g.nodes) residual[id] = 0;
  for (const auto& e : g.requests) {
    Amount v = f.request(e.edge_id);
    residual[e.provider] += v;
    residual[e.requester] -= v;
  }
  for (const auto& p : g.social) {
    Amount v = f.social(p.i, p.j);
    residual[p.i] += v;
    residual[p.j] -= v;
  }
  for (const auto& [id, r] : residual) {
    if (r != 0) {
      report.conservation_ok = false;
      report.violations.push_back({ConstraintKind::Conservation, "node " + node_str(id), r < 0 ? -r : r});
    }
  }
  return report;
}

std::int64_t flow_utility(const SocialRequestGraph& g, const Flow& f) {
  __int128 total = 0;
  for (const auto& e : g.requests)
    total += static_cast<__int128>(e.utility_per_unit) * f.request(e.edge_id);
  require(total <= INT64_MAX && total >= INT64_MIN, "flow utility overflows");
  return static_cast<std::int64_t>(total);
}

Amount flow_total_service(const SocialRequestGraph& g, const Flow& f) {
  Amount total = 0;
  for (const auto& e : g.requests)
    if (!e.is_virtual) total += f.request(e.edge_id);
  return total;
}

Amount total_requested_service(const SocialRequestGraph& g) {
  Amount total = 0;
  for (const auto& e : g.requests)
    if (!e.is_virtual) total += e.capacity;
  return total;
}

std::map<NodeId, Amount> per_node_received_service(const SocialRequestGraph& g, const Flow& f) {
  std::map<NodeId, Amount> received;
  for (NodeId id : g.nodes) received[id] = 0;
  for (const auto& e : g.requests)
    if (!e.is_virtual) received[e.requester] += f.request(e.edge_id);
  return received;
}

}  // namespace star
