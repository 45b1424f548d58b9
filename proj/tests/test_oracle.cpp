#include "doctest.h"
#include "star/oracle.hpp"
#include "test_support.hpp"

using namespace star;
using namespace star::test;

TEST_CASE("brute force optimum on the motivating instance") {
  CHECK(brute_force_optimum(make_g1()) == 2);
}

TEST_CASE("brute force optimum on mutual requests") {
  CHECK(brute_force_optimum(make_g2()) == 3);
}

TEST_CASE("graph with no edges has optimum zero") {
  auto g = build_graph({1, 2}, {}, {});
  CHECK(brute_force_optimum(g) == 0);
}

TEST_CASE("single request edge without social support is stuck at zero") {
  auto g = build_graph({1, 2}, {}, {{0, 1, 2, 1, 1, false}});
  CHECK(brute_force_optimum(g) == 0);
}

TEST_CASE("dropping one credit direction kills the G1 cycle") {
  auto g1 = make_g1();
  std::vector<SocialPair> social = g1.social;
  for (auto& p : social)
    if (p.key() == PairKey{2, 4}) p.cap_ij = 0;  // S_24 = 0
  auto g = build_graph(g1.nodes, social, g1.requests);
  CHECK(brute_force_optimum(g) == 0);
}

TEST_CASE("feasibility on the motivating instance") {
  CHECK(brute_force_feasible(make_g1()));

  auto g1 = make_g1();
  std::vector<SocialPair> social = g1.social;
  for (auto& p : social)
    if (p.key() == PairKey{2, 4}) p.cap_ij = 0;
  CHECK_FALSE(brute_force_feasible(build_graph(g1.nodes, social, g1.requests)));

  CHECK(brute_force_feasible(build_graph({1}, {}, {})));  // vacuous
  CHECK(brute_force_feasible(make_g2()));                 // balanced mutual requests
}

TEST_CASE("optimum dominates every constructed circulation") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto g = make_small_random(seed);
    std::int64_t best = brute_force_optimum(g);
    CHECK(best >= 0);  // zero flow is always admissible
  }
}

TEST_CASE("limits guard rejects oversized instances") {
  std::vector<NodeId> nodes{1, 2, 3, 4, 5, 6};
  auto g = build_graph(nodes, {}, {});
  CHECK_THROWS_AS(brute_force_optimum(g), Error);

  SmallInstanceLimits tight;
  tight.max_states = 1;
  CHECK_THROWS_AS(brute_force_optimum(make_g1(), tight), Error);
}

TEST_CASE("oracle requires integral instances") {
  auto g = make_g1();
  g.precision = 2;
  CHECK_THROWS_AS(brute_force_optimum(g), Error);
}
