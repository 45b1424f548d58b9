#include "star/transforms.hpp"

#include <algorithm>
#include <numeric>

namespace star {

const char* to_string(ServiceMode mode) {
  return mode == ServiceMode::Divisible ? "divisible" : "indivisible";
}

SplitResult split_provider_capacity(const SocialRequestGraph& g) {
  SplitResult out;
  out.graph = g;
  if (g.provider_caps.empty()) return out;

  NodeId next_node = g.nodes.empty() ? 1 : g.nodes.back() + 1;
  int next_edge = 0;
  for (const auto& e : g.requests) next_edge = std::max(next_edge, e.edge_id + 1);

  for (const auto& [owner, cap] : g.provider_caps) {
    bool has_outgoing = false;
    for (const auto& e : g.requests)
      if (!e.is_virtual && e.provider == owner) has_outgoing = true;
    if (!has_outgoing) continue;  // the cap constrains nothing

    NodeId virt = next_node++;
    out.graph.nodes.push_back(virt);
    for (auto& e : out.graph.requests)
      if (!e.is_virtual && e.provider == owner) e.provider = virt;

    RequestEdge link;
    link.edge_id = next_edge++;
    link.provider = owner;
    link.requester = virt;
    link.capacity = cap;
    link.utility_per_unit = 0;
    link.is_virtual = true;
    out.graph.requests.push_back(link);
    out.mapping.push_back({owner, virt, link.edge_id});
  }
  out.graph.provider_caps.clear();
  std::sort(out.graph.nodes.begin(), out.graph.nodes.end());
  return out;
}

ExtendedSocialGraph build_extended_social_graph(const SocialRequestGraph& g) {
  // Map each virtual split node back to its owner so imbalances land on real
  // nodes. A virtual edge i -> i' identifies i as the owner of i'.
  std::map<NodeId, NodeId> owner;
  for (const auto& e : g.requests)
    if (e.is_virtual) owner[e.requester] = e.provider;

  ExtendedSocialGraph ext;
  ext.social = g.social;
  for (NodeId id : g.nodes)
    if (!owner.count(id)) ext.nodes.push_back(id);
  for (NodeId id : ext.nodes) ext.imbalance[id] = 0;

  for (const auto& e : g.requests) {
    if (e.is_virtual) continue;
    NodeId provider = e.provider;
    auto it = owner.find(provider);
    if (it != owner.end()) provider = it->second;
    ext.imbalance[e.requester] += e.capacity;  // requested by the requester
    ext.imbalance[provider] -= e.capacity;     // providable by the provider
  }

  ext.source = (g.nodes.empty() ? 0 : g.nodes.back()) + 1;
  ext.sink = ext.source + 1;
  for (NodeId id : ext.nodes) {
    Amount p = ext.imbalance.at(id);
    if (p > 0) {
      ext.surplus_arcs.emplace_back(id, p);
      ext.total_imbalance += p;
    } else if (p < 0) {
      ext.deficit_arcs.emplace_back(id, -p);
    }
  }
  return ext;
}

std::int64_t ScalingInfo::utility_divisor() const {
  if (mode == ServiceMode::Divisible) {
    require(k <= 3'037'000'499, "K too large for exact unscaling");
    return k * k;
  }
  return k;
}

std::int64_t ScalingInfo::flow_to_raw_factor() const {
  std::int64_t unit = pow10(precision);
  if (mode == ServiceMode::Divisible) {
    require(unit % k == 0, "K does not divide the precision unit");
    return unit / k;
  }
  return unit;
}

ScaledGraph scale_to_integral(const SocialRequestGraph& g, ServiceMode mode) {
  return scale_to_integral(g, mode, g.precision);
}

ScaledGraph scale_to_integral(const SocialRequestGraph& g, ServiceMode mode, int precision) {
  if (precision < 0 || precision > kMaxPrecision)
    fail(ErrorCode::PrecisionExceeded, "precision must be in [0, 9]");

  // View every value at the requested precision; rescale_raw throws
  // PrecisionExceeded when a value does not fit.
  auto at_p = [&](Amount raw) { return rescale_raw(raw, g.precision, precision); };

  std::int64_t unit = pow10(precision);

  ScaledGraph out;
  out.info.mode = mode;
  out.info.precision = precision;
  out.graph = g;
  out.graph.precision = 0;

  for (const auto& e : g.requests) {
    out.info.rbar_raw = std::max(out.info.rbar_raw, at_p(e.capacity));
    out.info.ubar_raw = std::max(out.info.ubar_raw, at_p(e.utility_per_unit));
  }

  if (mode == ServiceMode::Divisible) {
    std::int64_t g_all = unit;
    auto fold = [&](Amount raw) { g_all = std::gcd(g_all, at_p(raw)); };
    for (const auto& p : g.social) {
      fold(p.cap_ij);
      fold(p.cap_ji);
    }
    for (const auto& e : g.requests) {
      fold(e.capacity);
      fold(e.utility_per_unit);
    }
    for (const auto& [id, cap] : g.provider_caps) {
      (void)id;
      fold(cap);
    }
    out.info.k = unit / g_all;
    for (auto& p : out.graph.social) {
      p.cap_ij = at_p(p.cap_ij) / g_all;
      p.cap_ji = at_p(p.cap_ji) / g_all;
    }
    for (auto& e : out.graph.requests) {
      e.capacity = at_p(e.capacity) / g_all;
      e.utility_per_unit = at_p(e.utility_per_unit) / g_all;
    }
    for (auto& [id, cap] : out.graph.provider_caps) {
      (void)id;
      cap = at_p(cap) / g_all;
    }
  } else {
    // Capacities floored to whole service units; only utilities carry K.
    std::int64_t g_util = unit;
    for (const auto& e : g.requests) g_util = std::gcd(g_util, at_p(e.utility_per_unit));
    out.info.k = unit / g_util;
    for (auto& p : out.graph.social) {
      p.cap_ij = at_p(p.cap_ij) / unit;
      p.cap_ji = at_p(p.cap_ji) / unit;
    }
    for (auto& e : out.graph.requests) {
      e.capacity = at_p(e.capacity) / unit;
      e.utility_per_unit = at_p(e.utility_per_unit) / g_util;
    }
    for (auto& [id, cap] : out.graph.provider_caps) {
      (void)id;
      cap = at_p(cap) / unit;
    }
  }
  return out;
}

}  // namespace star
