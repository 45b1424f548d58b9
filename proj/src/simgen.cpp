#include "star/simgen.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <set>
#include <sstream>

namespace star {

namespace {

// Draws are clipped at 0.01 below so capacities stay positive, then
// quantized to the instance precision.
Amount quantized_positive(Rng& rng, double mean, double variance, int precision) {
  double x = rng.normal(mean, variance);
  if (x < 0.01) x = 0.01;
  Amount raw = static_cast<Amount>(std::llround(x * static_cast<double>(pow10(precision))));
  Amount floor = std::max<Amount>(1, pow10(precision) / 100);
  return std::max(raw, floor);
}

double param_or(const std::optional<double>& v, double fallback) {
  return v.has_value() ? *v : fallback;
}

}  // namespace

SocialRequestGraph gen_er_instance(const ErParams& params) {
  // Separate streams with a fixed draw count per ordered pair, so instances
  // sharing a seed are coupled across parameter sweeps: raising P_S only adds
  // social edges while the request side stays identical (common random
  // numbers across grid points).
  Rng social_rng(derive_seed(params.seed, 0xE5));
  Rng request_rng(derive_seed(params.seed, 0xE6));
  std::vector<NodeId> nodes;
  for (int i = 1; i <= params.n; ++i) nodes.push_back(i);

  std::map<PairKey, SocialPair> pairs;
  std::vector<RequestEdge> requests;
  int next_edge = 0;

  ErParams::Overrides none;
  auto overrides_for = [&](NodeId id) -> const ErParams::Overrides& {
    auto it = params.user_overrides.find(id);
    return it == params.user_overrides.end() ? none : it->second;
  };

  for (NodeId a : nodes) {
    for (NodeId b : nodes) {
      if (a == b) continue;
      const auto& ov_a = overrides_for(a);
      const auto& ov_b = overrides_for(b);

      bool social_hit = social_rng.bernoulli(param_or(ov_a.p_s, params.p_s));
      Amount cap = quantized_positive(social_rng, param_or(ov_a.mu_s, params.mu_s),
                                      params.sigma2_s, params.precision);
      if (social_hit) {
        PairKey key = make_pair_key(a, b);
        auto& pair = pairs[key];
        pair.i = key.first;
        pair.j = key.second;
        (a == key.first ? pair.cap_ij : pair.cap_ji) = cap;
      }

      bool request_hit = request_rng.bernoulli(param_or(ov_b.p_r, params.p_r));
      Amount amount = quantized_positive(request_rng, param_or(ov_b.mu_r, params.mu_r),
                                         params.sigma2_r, params.precision);
      Amount utility = quantized_positive(request_rng, param_or(ov_b.mu_u, params.mu_u),
                                          params.sigma2_u, params.precision);
      if (request_hit) {
        RequestEdge e;
        e.edge_id = next_edge++;
        e.provider = a;
        e.requester = b;
        e.capacity = amount;
        e.utility_per_unit = utility;
        requests.push_back(e);
      }
    }
  }

  std::vector<SocialPair> social;
  for (const auto& [key, pair] : pairs) social.push_back(pair);
  return build_graph(nodes, social, requests, {}, params.precision);
}

SocialRequestGraph gen_spectrum_social(const SpectrumParams& params, double p_s) {
  Rng rng(derive_seed(params.seed, 1));
  std::vector<NodeId> nodes;
  for (int i = 1; i <= params.n; ++i) nodes.push_back(i);

  Amount unit = pow10(params.precision);
  std::map<PairKey, SocialPair> pairs;
  for (NodeId a : nodes) {
    for (NodeId b : nodes) {
      if (a == b) continue;
      if (!rng.bernoulli(p_s)) continue;
      Amount cap = rng.uniform_int(1, params.n_s) * unit;
      PairKey key = make_pair_key(a, b);
      auto& pair = pairs[key];
      pair.i = key.first;
      pair.j = key.second;
      (a == key.first ? pair.cap_ij : pair.cap_ji) = cap;
    }
  }
  std::vector<SocialPair> social;
  for (const auto& [key, pair] : pairs) social.push_back(pair);
  return build_graph(nodes, social, {}, {}, params.precision);
}

SocialRequestGraph gen_spectrum_instance(const SpectrumParams& params,
                                         const SocialRequestGraph& social_side) {
  if (static_cast<int>(social_side.nodes.size()) < params.n)
    fail(ErrorCode::InsufficientNodes,
         "social graph has " + std::to_string(social_side.nodes.size()) + " nodes, need " +
             std::to_string(params.n));

  std::vector<NodeId> users(social_side.nodes.begin(), social_side.nodes.begin() + params.n);

  Rng rng(derive_seed(params.seed, 2));
  struct Point {
    double x, y;
  };
  std::vector<Point> tx(params.transmitters);
  for (auto& t : tx) {
    t.x = rng.next_unit() * params.area;
    t.y = rng.next_unit() * params.area;
  }
  std::map<NodeId, Point> pos;
  std::map<NodeId, int> channel;
  for (NodeId u : users) {
    pos[u] = {rng.next_unit() * params.area, rng.next_unit() * params.area};
    channel[u] = static_cast<int>(rng.uniform_int(0, params.transmitters - 1));
  }
  auto dist_to_tx = [&](NodeId u, int ch) {
    double dx = pos.at(u).x - tx[ch].x;
    double dy = pos.at(u).y - tx[ch].y;
    return std::sqrt(dx * dx + dy * dy);
  };

  Amount unit = pow10(params.precision);
  std::vector<RequestEdge> requests;
  int next_edge = 0;
  for (NodeId u : users) {
    int ch = channel.at(u);
    double own = dist_to_tx(u, ch);
    std::vector<NodeId> candidates;
    for (NodeId v : users)
      if (v != u && dist_to_tx(v, ch) < own) candidates.push_back(v);

    // Uniform sample without replacement, at most max_providers.
    std::vector<NodeId> picked;
    for (int k = 0; k < params.max_providers && !candidates.empty(); ++k) {
      std::size_t idx = static_cast<std::size_t>(
          rng.uniform_int(0, static_cast<std::int64_t>(candidates.size()) - 1));
      picked.push_back(candidates[idx]);
      candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(idx));
    }
    std::sort(picked.begin(), picked.end());

    for (NodeId provider : picked) {
      RequestEdge e;
      e.edge_id = next_edge++;
      e.provider = provider;
      e.requester = u;
      e.capacity = rng.uniform_int(1, params.n_r) * unit;
      double d = dist_to_tx(provider, ch);
      Amount util = static_cast<Amount>(std::llround(static_cast<double>(unit) / d));
      e.utility_per_unit = std::max<Amount>(util, 1);
      requests.push_back(e);
    }
  }

  std::vector<SocialPair> social;
  for (const auto& p : social_side.social)
    if (std::binary_search(users.begin(), users.end(), p.i) &&
        std::binary_search(users.begin(), users.end(), p.j))
      social.push_back(p);

  std::vector<SocialPair> rescaled = social;
  for (auto& p : rescaled) {
    p.cap_ij = rescale_raw(p.cap_ij, social_side.precision, params.precision);
    p.cap_ji = rescale_raw(p.cap_ji, social_side.precision, params.precision);
  }
  return build_graph(users, rescaled, requests, {}, params.precision);
}

SocialRequestGraph load_social_edge_list(std::istream& in, int limit_n, int n_s,
                                         std::uint64_t seed, int precision) {
  Rng rng(seed);
  Amount unit = pow10(precision);

  std::vector<NodeId> nodes;  // in order of first appearance
  std::set<NodeId> accepted;
  auto admit = [&](NodeId id) {
    if (accepted.count(id)) return true;
    if (static_cast<int>(accepted.size()) >= limit_n) return false;
    accepted.insert(id);
    nodes.push_back(id);
    return true;
  };

  std::map<PairKey, SocialPair> pairs;
  std::set<std::pair<NodeId, NodeId>> seen_directed;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    NodeId u, v;
    if (!(ls >> u)) continue;  // blank line
    if (!(ls >> v)) fail(ErrorCode::MalformedLine, "line " + std::to_string(line_no) + ": " + line);
    std::string extra;
    if (ls >> extra) fail(ErrorCode::MalformedLine, "line " + std::to_string(line_no) + ": " + line);
    if (u == v) fail(ErrorCode::MalformedLine, "line " + std::to_string(line_no) + ": self edge");

    bool keep_u = admit(u);
    bool keep_v = admit(v);
    if (!keep_u || !keep_v) continue;
    if (!seen_directed.insert({u, v}).second) continue;

    Amount cap = rng.uniform_int(1, n_s) * unit;
    PairKey key = make_pair_key(u, v);
    auto& pair = pairs[key];
    pair.i = key.first;
    pair.j = key.second;
    (u == key.first ? pair.cap_ij : pair.cap_ji) = cap;
  }

  std::vector<SocialPair> social;
  for (const auto& [key, pair] : pairs) social.push_back(pair);
  return build_graph(nodes, social, {}, {}, precision);
}

}  // namespace star
