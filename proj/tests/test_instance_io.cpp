#include <sstream>

#include "doctest.h"
#include "star/instance_io.hpp"
#include "star/simgen.hpp"
#include "test_support.hpp"

using namespace star;
using namespace star::test;

TEST_CASE("parse a commented instance") {
  std::istringstream in(
      "# the motivating four-user example\n"
      "node 1\nnode 2\nnode 3\nnode 4\n"
      "social 1 3 0 1   # credit 3 -> 1\n"
      "social 2 4 1 0\n"
      "request 1 2 1 1\n"
      "request 4 3 1 1\n");
  auto g = parse_instance(in, 0);
  CHECK(g.nodes.size() == 4);
  CHECK(g.social_cap(3, 1) == 1);
  CHECK(g.find_request(0)->provider == 1);
  CHECK(g.find_request(1)->provider == 4);
}

TEST_CASE("parse errors carry line context") {
  std::istringstream bad("node 1\nsocial 1\n");
  CHECK_THROWS_WITH_AS(parse_instance(bad, 0), doctest::Contains("line 2"), Error);
  std::istringstream unknown("foo 1 2\n");
  CHECK_THROWS_AS(parse_instance(unknown, 0), Error);
  std::istringstream precision("node 1\nnode 2\nrequest 1 2 0.125 1\n");
  CHECK_THROWS_AS(parse_instance(precision, 2), Error);
}

TEST_CASE("provider caps and decimals") {
  std::istringstream in(
      "node 1\nnode 2\n"
      "request 1 2 2.5 1.25\n"
      "provider_cap 1 1.5\n");
  auto g = parse_instance(in, 2);
  CHECK(g.precision == 2);
  CHECK(g.find_request(0)->capacity == 250);
  CHECK(g.provider_caps.at(1) == 150);
}

TEST_CASE("instance round trip is exact") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto g = make_small_random(seed);
    std::ostringstream out;
    write_instance(out, g);
    std::istringstream in(out.str());
    auto g2 = parse_instance(in, g.precision);
    std::ostringstream out2;
    write_instance(out2, g2);
    CHECK(out.str() == out2.str());
  }
  // Also with fractional values.
  ErParams p;
  p.n = 6;
  p.seed = 11;
  auto g = gen_er_instance(p);
  std::ostringstream out;
  write_instance(out, g);
  std::istringstream in(out.str());
  auto g2 = parse_instance(in, g.precision);
  std::ostringstream out2;
  write_instance(out2, g2);
  CHECK(out.str() == out2.str());
}

TEST_CASE("virtual edges survive serialization") {
  std::vector<RequestEdge> requests{{0, 1, 2, 5, 1, false}, {1, 3, 1, 2, 0, true}};
  auto g = build_graph({1, 2, 3}, {}, requests);
  std::ostringstream out;
  write_instance(out, g);
  CHECK(out.str().find("virtual") != std::string::npos);
  std::istringstream in(out.str());
  auto g2 = parse_instance(in, 0);
  CHECK(g2.find_request(1)->is_virtual);
}

TEST_CASE("flow round trip") {
  auto g = make_g1();
  auto f = make_g1_circulation();
  std::ostringstream out;
  write_flow(out, g, f);
  std::istringstream in(out.str());
  auto f2 = parse_flow(in, g);
  CHECK(f == f2);
}

TEST_CASE("flow parsing ignores summary lines and rejects unknown edges") {
  auto g = make_g1();
  std::istringstream in(
      "request_flow 1 2 0 1\n"
      "utility=2 service=2 iterations=1\n"
      "social_flow 1 3 -1\n");
  auto f = parse_flow(in, g);
  CHECK(f.request(0) == 1);
  CHECK(f.social(3, 1) == 1);

  std::istringstream bad("request_flow 1 2 9 1\n");
  CHECK_THROWS_AS(parse_flow(bad, g), Error);
}

TEST_CASE("negative social flow serializes in canonical direction") {
  auto g = make_g1();
  Flow f = make_g1_circulation();
  std::ostringstream out;
  write_flow(out, g, f);
  // Pair {1,3} carries credit 3 -> 1, so the canonical line is negative.
  CHECK(out.str().find("social_flow 1 3 -1") != std::string::npos);
  CHECK(out.str().find("social_flow 2 4 1") != std::string::npos);
}
