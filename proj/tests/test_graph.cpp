#include "doctest.h"
#include "star/graph.hpp"
#include "star/oracle.hpp"
#include "star/rng.hpp"
#include "test_support.hpp"

using namespace star;
using namespace star::test;

TEST_CASE("G1 builds with canonical social pairs") {
  auto g = make_g1();
  CHECK(g.nodes == std::vector<NodeId>{1, 2, 3, 4});
  CHECK(g.social.size() == 2);
  CHECK(g.social_cap(3, 1) == 1);
  CHECK(g.social_cap(1, 3) == 0);
  CHECK(g.social_cap(2, 4) == 1);
  CHECK(g.social_cap(4, 2) == 0);
  CHECK(g.requests.size() == 2);
}

TEST_CASE("empty edge sets over a single node") {
  auto g = build_graph({1}, {}, {});
  CHECK(g.nodes.size() == 1);
  CHECK(g.social.empty());
  CHECK(g.requests.empty());
}

TEST_CASE("build rejects bad inputs") {
  CHECK_THROWS_AS(build_graph({1, 2}, {}, {{0, 1, 1, 1, 1, false}}), Error);  // self-request
  CHECK_THROWS_AS(build_graph({1}, {}, {{0, 1, 2, 1, 1, false}}), Error);    // unknown node
  CHECK_THROWS_AS(build_graph({1, 2}, {{1, 2, 1, 0}, {2, 1, 0, 1}}, {}), Error);  // duplicate pair
  CHECK_THROWS_AS(build_graph({1, 2}, {}, {{0, 1, 2, 0, 1, false}}), Error);  // zero capacity
  CHECK_THROWS_AS(build_graph({1, 2}, {}, {{0, 1, 2, 1, -1, false}}), Error);  // negative utility
  CHECK_THROWS_AS(build_graph({1, 2}, {{1, 2, -1, 0}}, {}), Error);  // negative social cap

  // Social pairs canonicalize regardless of input orientation.
  auto g = build_graph({1, 2}, {{2, 1, 5, 3}}, {});
  CHECK(g.social[0].i == 1);
  CHECK(g.social[0].cap_ij == 3);  // direction 1 -> 2 was given as cap_ji
  CHECK(g.social[0].cap_ji == 5);
}

TEST_CASE("the G1 circulation validates") {
  auto g = make_g1();
  auto report = validate_flow(g, make_g1_circulation());
  CHECK(report.capacity_ok);
  CHECK(report.conservation_ok);
  CHECK(report.violations.empty());
}

TEST_CASE("zero flow validates on any graph") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto g = make_small_random(seed);
    CHECK(validate_flow(g, Flow{}).ok());
  }
}

TEST_CASE("one-sided flow breaks conservation at both endpoints") {
  auto g = make_g1();
  Flow f;
  f.set_request(0, 1);  // only 1 -> 2 carries service
  auto report = validate_flow(g, f);
  CHECK(report.capacity_ok);
  CHECK_FALSE(report.conservation_ok);
  CHECK(report.violations.size() == 2);
  for (const auto& v : report.violations) CHECK(v.magnitude == 1);
}

TEST_CASE("capacity violations are reported with magnitudes") {
  auto g = make_g1();
  Flow f;
  f.set_request(0, 3);       // over the capacity of 1
  f.add_social(1, 3, 2);     // cap 1 -> 3 is 0
  auto report = validate_flow(g, f);
  CHECK_FALSE(report.capacity_ok);
  bool saw_request = false, saw_social = false;
  for (const auto& v : report.violations) {
    if (v.kind == ConstraintKind::RequestCapacity) {
      saw_request = true;
      CHECK(v.magnitude == 2);
    }
    if (v.kind == ConstraintKind::SocialCapacity) {
      saw_social = true;
      CHECK(v.magnitude == 2);
    }
  }
  CHECK(saw_request);
  CHECK(saw_social);
}

TEST_CASE("flow with unknown keys throws KeyMismatch") {
  auto g = make_g1();
  Flow f;
  f.set_request(99, 1);
  CHECK_THROWS_AS(validate_flow(g, f), Error);
  Flow f2;
  f2.add_social(1, 2, 1);  // no such pair
  CHECK_THROWS_AS(validate_flow(g, f2), Error);
}

TEST_CASE("utility and service of the G1 circulation") {
  auto g = make_g1();
  auto f = make_g1_circulation();
  CHECK(flow_utility(g, f) == 2);
  CHECK(flow_total_service(g, f) == 2);
  CHECK(flow_utility(g, Flow{}) == 0);
  CHECK(flow_total_service(g, Flow{}) == 0);
}

TEST_CASE("G2 balanced cycle value 1 yields utility 3 and service 2") {
  auto g = make_g2();
  Flow f;
  f.set_request(0, 1);
  f.set_request(1, 1);
  CHECK(validate_flow(g, f).ok());
  CHECK(flow_utility(g, f) == 3);
  CHECK(flow_total_service(g, f) == 2);
}

TEST_CASE("social antisymmetry holds structurally") {
  Flow f;
  f.add_social(4, 2, 3);
  CHECK(f.social(4, 2) == 3);
  CHECK(f.social(2, 4) == -3);
  f.add_social(2, 4, 1);
  CHECK(f.social(4, 2) == 2);
}

TEST_CASE("utility is linear in the flow") {
  Rng rng(7);
  auto g = make_g1();
  for (int trial = 0; trial < 20; ++trial) {
    Flow f, h, sum;
    for (const auto& e : g.requests) {
      Amount a = rng.uniform_int(0, 3);
      Amount b = rng.uniform_int(0, 3);
      f.set_request(e.edge_id, a);
      h.set_request(e.edge_id, b);
      sum.set_request(e.edge_id, a + b);
    }
    CHECK(flow_utility(g, sum) == flow_utility(g, f) + flow_utility(g, h));
  }
}

TEST_CASE("virtual edges are excluded from totals") {
  std::vector<RequestEdge> requests{
      {0, 1, 2, 5, 1, false},
      {1, 2, 3, 4, 0, true},  // virtual capacity edge
  };
  auto g = build_graph({1, 2, 3}, {}, requests);
  Flow f;
  f.set_request(0, 2);
  f.set_request(1, 2);
  CHECK(flow_total_service(g, f) == 2);
  CHECK(total_requested_service(g) == 5);
  auto received = per_node_received_service(g, f);
  CHECK(received.at(2) == 2);
  CHECK(received.at(3) == 0);
}
