#pragma once

#include <iosfwd>
#include <optional>

#include "star/graph.hpp"
#include "star/rng.hpp"

namespace star {

// Random-setting generator parameters. Edges are drawn per ordered pair:
// a social direction a -> b exists with probability P_S and a request edge
// (provider a, requester b) with probability P_R. Per-user overrides key on
// the user the parameter differentiates: the credit sender for social
// parameters, the requester for request and utility parameters.
struct ErParams {
  int n = 10;
  double p_s = 0.2;
  double p_r = 0.2;
  double mu_s = 5.0, sigma2_s = 1.0;
  double mu_r = 5.0, sigma2_r = 1.0;
  double mu_u = 10.0, sigma2_u = 2.0;
  std::uint64_t seed = 0;
  int precision = 6;

  struct Overrides {
    std::optional<double> p_s, p_r, mu_s, mu_r, mu_u;
  };
  std::map<NodeId, Overrides> user_overrides;
};

SocialRequestGraph gen_er_instance(const ErParams& params);

// Practical-setting parameters: users and licensed transmitters placed
// uniformly in a square area, one orthogonal channel per transmitter.
struct SpectrumParams {
  int n = 10;
  int transmitters = 5;
  double area = 1000.0;
  int max_providers = 3;
  int n_s = 5;  // social credit limits drawn from {1..n_s}
  int n_r = 5;  // request amounts drawn from {1..n_r}
  std::uint64_t seed = 0;
  int precision = 6;
};

// Placement record, mainly for inspection and tests.
struct SpectrumLayout {
  std::vector<std::pair<double, double>> transmitters;  // one channel each
  std::map<NodeId, std::pair<double, double>> positions;
  std::map<NodeId, int> channels;
};

// Builds the request side on top of an existing social graph: each user
// picks one channel and requests service from up to `max_providers` users
// strictly closer to that channel's transmitter, with utility equal to the
// inverse of the provider's distance. Throws InsufficientNodes when the
// social graph has fewer than params.n nodes.
SocialRequestGraph gen_spectrum_instance(const SpectrumParams& params,
                                         const SocialRequestGraph& social_side,
                                         SpectrumLayout* layout = nullptr);

// Synthetic social side for the practical setting when no dataset is given:
// directed trust with probability p_s per ordered pair, credit limits
// uniform in {1..n_s}. Nodes are 1..n.
SocialRequestGraph gen_spectrum_social(const SpectrumParams& params, double p_s);

// Ingests a whitespace-separated directed edge list ("u v" per line, '#'
// comments). The first `limit_n` distinct node ids encountered are kept; an
// edge u -> v becomes trust of v in u with credit capacity drawn uniformly
// from {1..n_s}. Duplicate edges keep their first draw.
SocialRequestGraph load_social_edge_list(std::istream& in, int limit_n, int n_s,
                                         std::uint64_t seed, int precision = 6);

}  // namespace star
