#include <doctest.h>

#include <algorithm>
#include <set>

#include "latknot/error.hpp"
#include "latknot/lattice.hpp"
#include "support.hpp"

using namespace latknot;

namespace {

std::vector<std::size_t> index_sequence(const LatticeKnot& k) {
  std::vector<std::size_t> out;
  for (const auto& e : k.edges()) out.push_back(k.order().edge_index(e));
  std::sort(out.begin(), out.end());
  return out;
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::Syntax;
}

}  // namespace

TEST_CASE("directions cycle") {
  CHECK(left_perm(Direction(1)).value() == 2);
  CHECK(left_perm(Direction(3)).value() == 1);
  CHECK(right_perm(Direction(1)).value() == 3);
  CHECK(right_perm(Direction(2)).value() == 1);
  CHECK_THROWS_AS(Direction(0), Error);
  CHECK_THROWS_AS(Direction(4), Error);
}

TEST_CASE("square is a knot") {
  const auto k = support::sq();
  CHECK(k.edge_count() == 4);
  CHECK(component_count(k) == 1);
  CHECK(k.degree(Vertex{{1, 1, 0}}) == 2);
  CHECK_FALSE(k.has_vertex(Vertex{{0, 0, 1}}));
}

TEST_CASE("validation errors") {
  const Order o = Order::bounded(0, 1);
  std::vector<Edge> missing{{Vertex{{0, 0, 0}}, Direction(1)}, {Vertex{{1, 0, 0}}, Direction(2)},
                            {Vertex{{0, 1, 0}}, Direction(1)}};
  CHECK(code_of([&] { validate_knot(o, missing); }) == ErrorCode::NotTwoValent);

  auto extra = missing;
  extra.push_back({Vertex{{0, 0, 0}}, Direction(2)});
  extra.push_back({Vertex{{0, 0, 0}}, Direction(3)});
  try {
    validate_knot(o, extra);
    FAIL("accepted a degree-3 vertex");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotTwoValent);
    CHECK(std::string(e.what()).find("(0,0,0) has degree 3") != std::string::npos);
  }

  CHECK(code_of([&] { validate_knot(o, std::vector<Edge>{}); }) == ErrorCode::EmptyGraph);
  LatticeGraph g(o);
  CHECK(code_of([&] { g.insert({Vertex{{1, 0, 0}}, Direction(1)}); }) == ErrorCode::OutOfBounds);
  CHECK(g.insert({Vertex{{0, 0, 0}}, Direction(1)}));
  CHECK_FALSE(g.insert({Vertex{{0, 0, 0}}, Direction(1)}));
}

TEST_CASE("components") {
  CHECK(component_count(support::unlink()) == 2);
  CHECK(component_count(support::fixture("hopf.knot")) == 2);
  CHECK(component_count(support::fixture("trefoil.knot")) == 1);
  const auto comps = components(support::unlink());
  REQUIRE(comps.size() == 2);
  CHECK(comps[0].size() == 4);
  CHECK(comps[0].front() < comps[1].front());
}

TEST_CASE("edge indexing is a bijection on valid edges") {
  const Order o = Order::bounded(0, 2);
  std::set<std::size_t> seen;
  for (std::size_t v = 0; v < o.vertex_count(); ++v) {
    const Vertex x = o.vertex_at(v);
    CHECK(o.vertex_index(x) == v);
    for (int p = 1; p <= 3; ++p) {
      const Edge e{x, Direction(p)};
      if (!o.contains(e)) continue;
      const auto i = o.edge_index(e);
      CHECK(o.edge_at(i) == e);
      CHECK(seen.insert(i).second);
    }
  }
  CHECK(seen.size() == 3 * 2 * 3 * 3);
}

TEST_CASE("canonical order is lexicographic on edge indices") {
  const std::vector<LatticeKnot> ks{support::sq(2), support::df1(2), support::rect(),
                                    support::knot(2, {{1, 1, 0, 1}, {2, 1, 0, 2}, {1, 2, 0, 1}, {1, 1, 0, 2}})};
  for (const auto& a : ks) {
    for (const auto& b : ks) {
      CHECK(((a <=> b) < 0) == (index_sequence(a) < index_sequence(b)));
      CHECK((a == b) == (index_sequence(a) == index_sequence(b)));
    }
  }
}

TEST_CASE("refinement doubles edges and keeps real length") {
  const auto k = support::rect();
  const auto r = refine(k);
  CHECK(r.order().ell() == 1);
  CHECK(r.order().n() == 2);
  CHECK(r.edge_count() == 2 * k.edge_count());
  CHECK(r.edge_count() * r.order().unit() == doctest::Approx(k.edge_count() * k.order().unit()));
  CHECK(component_count(r) == 1);
  CHECK(r.contains({Vertex{{1, 4, 0}}, Direction(1)}));
  CHECK(r.contains({Vertex{{0, 0, 0}}, Direction(2)}));
  CHECK(refine(refine(support::sq())).edge_count() == 16);
}

TEST_CASE("injection") {
  const auto k = support::sq();
  const auto big = inject(k, 3);
  CHECK(big.order() == Order::bounded(0, 3));
  CHECK(big.edges() == k.edges());
  CHECK(code_of([&] { inject(support::rect(), 1); }) == ErrorCode::InvalidBound);
}

TEST_CASE("trace_cycle walks the square from its smallest vertex") {
  const auto cyc = trace_cycle(support::sq().edges());
  REQUIRE(cyc.size() == 4);
  CHECK(cyc.front() == Vertex{{0, 0, 0}});
  for (std::size_t i = 0; i < cyc.size(); ++i) {
    const auto& a = cyc[i];
    const auto& b = cyc[(i + 1) % cyc.size()];
    int diff = 0;
    for (int c = 0; c < 3; ++c) diff += std::abs(a.c[static_cast<std::size_t>(c)] - b.c[static_cast<std::size_t>(c)]);
    CHECK(diff == 1);
  }
}

TEST_CASE("string form") {
  CHECK(support::sq().to_string() == "{E1(0,0,0), E2(0,0,0), E1(0,1,0), E2(1,0,0)}");
}
