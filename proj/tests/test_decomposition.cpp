#include "doctest.h"
#include "star/decomposition.hpp"
#include "star/solver.hpp"
#include "test_support.hpp"

using namespace star;
using namespace star::test;

namespace {

std::size_t count_kind(const CycleFlow& c, TraversalKind kind) {
  std::size_t n = 0;
  for (const auto& s : c.steps)
    if (s.kind == kind) ++n;
  return n;
}

std::size_t nonzero_entries(const Flow& f) {
  Flow n = f.normalized();
  return n.request_flow.size() + n.social_flow.size();
}

}  // namespace

TEST_CASE("G1's optimal flow decomposes into one mixed cycle") {
  auto g = make_g1();
  auto cycles = decompose_circulation(g, make_g1_circulation());
  REQUIRE(cycles.size() == 1);
  CHECK(cycles[0].value == 1);
  CHECK(cycles[0].steps.size() == 4);
  CHECK(count_kind(cycles[0], TraversalKind::Request) == 2);
  CHECK(count_kind(cycles[0], TraversalKind::Social) == 2);
  CHECK(classify_cycle(cycles[0]) == CycleClass::Mixed);
  CHECK(aggregate_cycle_flows(cycles) == make_g1_circulation());
}

TEST_CASE("zero flow decomposes to nothing") {
  CHECK(decompose_circulation(make_g1(), Flow{}).empty());
}

TEST_CASE("edge-disjoint unit cycles are recovered by aggregate") {
  // Two disjoint direct-reciprocity cycles: 1<->2 and 3<->4.
  std::vector<RequestEdge> requests{
      {0, 1, 2, 1, 1, false},
      {1, 2, 1, 1, 1, false},
      {2, 3, 4, 1, 1, false},
      {3, 4, 3, 1, 1, false},
  };
  auto g = build_graph({1, 2, 3, 4}, {}, requests);
  Flow f;
  for (int id = 0; id < 4; ++id) f.set_request(id, 1);
  auto cycles = decompose_circulation(g, f);
  CHECK(cycles.size() == 2);
  for (const auto& c : cycles) CHECK(classify_cycle(c) == CycleClass::DirectReciprocity);
  CHECK(aggregate_cycle_flows(cycles) == f);
}

TEST_CASE("non-circulations are rejected") {
  auto g = make_g1();
  Flow f;
  f.set_request(0, 1);
  CHECK_THROWS_AS(decompose_circulation(g, f), Error);
}

TEST_CASE("classification table") {
  CycleFlow c;
  c.value = 1;

  c.steps = {{TraversalKind::Request, 1, 2, 0}, {TraversalKind::Request, 2, 1, 1}};
  CHECK(classify_cycle(c) == CycleClass::DirectReciprocity);

  c.steps = {{TraversalKind::Request, 1, 2, 0},
             {TraversalKind::Request, 2, 3, 1},
             {TraversalKind::Request, 3, 1, 2}};
  CHECK(classify_cycle(c) == CycleClass::IndirectReciprocity);

  c.steps = {{TraversalKind::Request, 1, 2, 0}, {TraversalKind::Social, 2, 1, -1}};
  CHECK(classify_cycle(c) == CycleClass::DirectSocial);

  c.steps = {{TraversalKind::Request, 1, 2, 0},
             {TraversalKind::Social, 2, 3, -1},
             {TraversalKind::Social, 3, 1, -1}};
  CHECK(classify_cycle(c) == CycleClass::IndirectSocial);

  c.steps = {{TraversalKind::Request, 1, 2, 0},
             {TraversalKind::Social, 2, 4, -1},
             {TraversalKind::Request, 4, 3, 1},
             {TraversalKind::Social, 3, 1, -1}};
  CHECK(classify_cycle(c) == CycleClass::Mixed);
}

TEST_CASE("G2's cycle classifies as direct reciprocity") {
  auto g = make_g2();
  auto sol = solve_max_utility(g, ServiceMode::Divisible);
  auto cycles = decompose_circulation(g, sol.flow);
  REQUIRE(cycles.size() == 1);
  CHECK(classify_cycle(cycles[0]) == CycleClass::DirectReciprocity);
}

TEST_CASE("decomposition recovers every solver output exactly") {
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    auto g = make_small_random(seed);
    auto sol = solve_max_utility(g, ServiceMode::Divisible);
    auto cycles = decompose_circulation(g, sol.flow);
    CAPTURE(seed);
    CHECK(aggregate_cycle_flows(cycles) == sol.flow);
    // Aggregate feasibility: exactly the capacity constraints.
    CHECK(validate_flow(g, aggregate_cycle_flows(cycles)).ok());
    // Progress bound: each extraction zeroes at least one edge.
    CHECK(cycles.size() <= nonzero_entries(sol.flow));
    // Balanced by construction, but the walks must close.
    for (const auto& c : cycles) {
      CHECK(c.value > 0);
      REQUIRE(!c.steps.empty());
      CHECK(c.steps.front().from == c.steps.back().to);
      for (std::size_t i = 0; i + 1 < c.steps.size(); ++i)
        CHECK(c.steps[i].to == c.steps[i + 1].from);
    }
  }
}

TEST_CASE("decomposition is deterministic") {
  auto g = make_small_random(12);
  auto sol = solve_max_utility(g, ServiceMode::Divisible);
  auto a = decompose_circulation(g, sol.flow);
  auto b = decompose_circulation(g, sol.flow);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].value == b[i].value);
    CHECK(a[i].steps.size() == b[i].steps.size());
  }
}
