#include "doctest.h"
#include "star/benchmarks.hpp"
#include "test_support.hpp"

using namespace star;
using namespace star::test;

TEST_CASE("G1: reciprocity alone and social trust alone both achieve nothing") {
  auto g = make_g1();
  auto rp = solve_rp(g, ServiceMode::Divisible);
  CHECK(rp.solution.utility == Quantity(0, 1));
  CHECK(rp.exactness == Exactness::Exact);
  auto st = solve_st(g, ServiceMode::Divisible);
  CHECK(st.solution.utility == Quantity(0, 1));
  CHECK(st.exactness == Exactness::Heuristic);
  auto star_sol = solve_star(g, ServiceMode::Divisible);
  CHECK(star_sol.solution.utility == Quantity(2, 1));
}

TEST_CASE("G2: reciprocity captures the full optimum, social trust nothing") {
  auto g = make_g2();
  CHECK(solve_rp(g, ServiceMode::Divisible).solution.utility == Quantity(3, 1));
  CHECK(solve_st(g, ServiceMode::Divisible).solution.utility == Quantity(0, 1));
}

TEST_CASE("G4: the direct social cycle carries the single request") {
  auto g = make_g4();
  auto st = solve_st(g, ServiceMode::Divisible);
  CHECK(st.solution.utility == Quantity(1, 1));
  REQUIRE(st.cycle_witness.size() == 1);
  CHECK(st.cycle_witness[0].value == 1);
  CHECK(classify_cycle(st.cycle_witness[0]) == CycleClass::DirectSocial);
  CHECK(solve_rp(g, ServiceMode::Divisible).solution.utility == Quantity(0, 1));
  CHECK(solve_star(g, ServiceMode::Divisible).solution.utility == Quantity(1, 1));
}

TEST_CASE("RP never carries social flow") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto rp = solve_rp(make_small_random(seed), ServiceMode::Divisible);
    CHECK(rp.solution.flow.normalized().social_flow.empty());
    for (const auto& c : rp.cycle_witness)
      for (const auto& s : c.steps) CHECK(s.kind == TraversalKind::Request);
  }
}

TEST_CASE("ST cycles contain exactly one request edge each") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto g = make_small_random(seed);
    auto st = solve_st(g, ServiceMode::Divisible);
    CAPTURE(seed);
    // The witness is the mechanism's own cancellation record; its aggregate
    // must reproduce the flow exactly.
    Flow aggregate = aggregate_cycle_flows(st.cycle_witness);
    CHECK(aggregate == st.solution.flow);
    for (const auto& c : st.cycle_witness) {
      std::size_t requests = 0;
      for (const auto& s : c.steps)
        if (s.kind == TraversalKind::Request) ++requests;
      CHECK(requests == 1);
      CHECK(c.steps.front().kind == TraversalKind::Request);
    }
    CHECK(validate_flow(g, st.solution.flow).ok());
  }
}

TEST_CASE("both benchmarks are dominated by the full mechanism") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    auto g = make_small_random(seed);
    CAPTURE(seed);
    auto star_sol = solve_star(g, ServiceMode::Divisible);
    auto st = solve_st(g, ServiceMode::Divisible);
    auto rp = solve_rp(g, ServiceMode::Divisible);
    CHECK(st.solution.utility <= star_sol.solution.utility);
    CHECK(rp.solution.utility <= star_sol.solution.utility);
  }
}

TEST_CASE("greedy ST lower-bounds the exhaustive single-request-cycle optimum") {
  int gaps = 0;
  int compared = 0;
  SmallInstanceLimits limits;
  limits.max_nodes = 4;
  for (std::uint64_t seed = 0; seed < 400 && compared < 25; ++seed) {
    auto g = make_small_random(seed);
    if (g.nodes.size() > 4) continue;
    ++compared;
    CAPTURE(seed);
    std::int64_t exact = st_exhaustive_optimum(g, limits);
    auto greedy = solve_st(g, ServiceMode::Divisible);
    CHECK(greedy.solution.utility <= Quantity(exact, 1));
    if (greedy.solution.utility != Quantity(exact, 1)) ++gaps;
    // Sanity: the exact ST value never exceeds the full mechanism.
    CHECK(Quantity(exact, 1) <= solve_star(g, ServiceMode::Divisible).solution.utility);
  }
  CHECK(compared == 25);
  MESSAGE("greedy/exhaustive ST gap on ", gaps, " of ", compared, " instances");
}

TEST_CASE("exhaustive ST optimum on the desk instances") {
  CHECK(st_exhaustive_optimum(make_g1()) == 0);
  CHECK(st_exhaustive_optimum(make_g2()) == 0);
  CHECK(st_exhaustive_optimum(make_g4()) == 1);
}

TEST_CASE("ST respects provider caps without a split") {
  // Two requests from the same provider, budget 1, both with return credit.
  std::vector<RequestEdge> requests{
      {0, 1, 2, 1, 3, false},
      {1, 1, 3, 1, 2, false},
  };
  std::vector<SocialPair> social{
      {1, 2, 0, 1},  // credit 2 -> 1
      {1, 3, 0, 1},  // credit 3 -> 1
  };
  auto g = build_graph({1, 2, 3}, social, requests, {{1, 1}});
  auto st = solve_st(g, ServiceMode::Divisible);
  // Only the higher-utility request is served within the budget.
  CHECK(st.solution.utility == Quantity(3, 1));
  CHECK(st.solution.flow.request(0) == 1);
  CHECK(st.solution.flow.request(1) == 0);
}

TEST_CASE("mechanism labels round-trip to strings") {
  CHECK(std::string(to_string(Mechanism::Star)) == "star");
  CHECK(std::string(to_string(Mechanism::SocialTrustOnly)) == "st");
  CHECK(std::string(to_string(Mechanism::ReciprocityOnly)) == "rp");
  CHECK(std::string(to_string(Exactness::Exact)) == "exact");
  CHECK(std::string(to_string(Exactness::Heuristic)) == "heuristic");
}
