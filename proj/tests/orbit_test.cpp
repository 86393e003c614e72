#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "latknot/error.hpp"
#include "latknot/orbit.hpp"
#include "support.hpp"

using namespace latknot;

namespace {

// Every nonempty 2-valent subset of the unit cube's twelve edges.
std::vector<LatticeKnot> brute_force_cube() {
  const Order o = Order::bounded(0, 1);
  std::vector<Edge> all;
  for (std::size_t v = 0; v < o.vertex_count(); ++v) {
    for (int p = 1; p <= 3; ++p) {
      const Edge e{o.vertex_at(v), Direction(p)};
      if (o.contains(e)) all.push_back(e);
    }
  }
  REQUIRE(all.size() == 12);
  std::vector<LatticeKnot> out;
  for (unsigned mask = 1; mask < (1u << 12); ++mask) {
    std::map<Vertex, int> deg;
    std::vector<Edge> edges;
    for (unsigned i = 0; i < 12; ++i) {
      if (!((mask >> i) & 1u)) continue;
      edges.push_back(all[i]);
      ++deg[all[i].origin];
      ++deg[all[i].target()];
    }
    if (std::all_of(deg.begin(), deg.end(), [](const auto& kv) { return kv.second == 2; })) {
      out.push_back(validate_knot(o, edges));
    }
  }
  return out;
}

std::size_t find_index(const std::vector<LatticeKnot>& basis, const LatticeKnot& k) {
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i] == k) return i;
  }
  FAIL("image outside the basis");
  return 0;
}

// Orbits as fixpoints of composing explicit permutations.
std::vector<std::set<std::size_t>> permutation_orbits(const std::vector<LatticeKnot>& basis,
                                                      const std::vector<MoveId>& gens) {
  std::vector<std::vector<std::size_t>> perms;
  for (const auto& g : gens) {
    std::vector<std::size_t> p;
    for (const auto& k : basis) p.push_back(find_index(basis, apply(g, k)));
    perms.push_back(std::move(p));
  }
  std::vector<std::set<std::size_t>> orbits;
  std::vector<bool> done(basis.size(), false);
  for (std::size_t s = 0; s < basis.size(); ++s) {
    if (done[s]) continue;
    std::set<std::size_t> cur{s};
    bool grew = true;
    while (grew) {
      grew = false;
      for (const auto& p : perms) {
        for (auto x : std::vector<std::size_t>(cur.begin(), cur.end())) grew |= cur.insert(p[x]).second;
      }
    }
    for (auto x : cur) done[x] = true;
    orbits.push_back(std::move(cur));
  }
  return orbits;
}

std::multiset<std::size_t> orbit_sizes(const Basis& basis, const GeneratorSet& gens) {
  std::multiset<std::size_t> sizes;
  std::set<LatticeKnot> seen;
  for (const auto& k : basis.knots()) {
    if (seen.contains(k)) continue;
    const auto orb = orbit(k, gens);
    for (const auto& m : orb.members()) seen.insert(m);
    sizes.insert(orb.size());
  }
  return sizes;
}

}  // namespace

TEST_CASE("unit cube basis matches brute force") {
  const auto basis = enumerate_knots(Order::bounded(0, 1));
  auto oracle = brute_force_cube();
  std::sort(oracle.begin(), oracle.end());
  CHECK(basis.size() == 31);
  CHECK(basis.knots() == oracle);
  CHECK(count_knots(Order::bounded(0, 1), true) == 32);
  CHECK(count_knots(Order::bounded(0, 1), false) == 31);
}

TEST_CASE("enumeration cap") {
  CHECK_THROWS_AS(enumerate_knots(Order::bounded(0, 2), 1000), Error);
  try {
    enumerate_knots(Order::bounded(0, 2), 1000);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CapExceeded);
  }
}

TEST_CASE("basis lookup") {
  const auto basis = enumerate_knots(Order::bounded(0, 1));
  for (std::size_t i = 0; i < basis.size(); ++i) CHECK(basis.index_of(basis[i]) == i);
  CHECK_FALSE(basis.index_of(support::sq(2)).has_value());
}

TEST_CASE("permutations are products of disjoint transpositions") {
  const auto basis = enumerate_knots(Order::bounded(0, 1));
  const GeneratorSet gens(Order::bounded(0, 1));
  for (const auto& m : gens.moves()) {
    const auto p = permutation(m, basis);
    for (std::size_t i = 0; i < p.size(); ++i) CHECK(p[p[i]] == i);
  }
}

TEST_CASE("orbit of the square against permutation closure") {
  const Order o = Order::bounded(0, 1);
  const auto basis = enumerate_knots(o);
  const auto oracle = permutation_orbits(basis.knots(), generators(o));
  const auto sqi = *basis.index_of(support::sq());
  const auto& expected = *std::find_if(oracle.begin(), oracle.end(), [&](const auto& s) { return s.contains(sqi); });

  const auto orb = orbit(support::sq(), GeneratorSet(o));
  std::set<std::size_t> got;
  for (const auto& m : orb.members()) got.insert(*basis.index_of(m));
  CHECK(got == expected);
  CHECK(orb.size() == 28);

  std::multiset<std::size_t> oracle_sizes;
  for (const auto& s : oracle) oracle_sizes.insert(s.size());
  CHECK(orbit_sizes(basis, GeneratorSet(o)) == oracle_sizes);

  const auto inext = orbit(support::sq(), GeneratorSet(o, true));
  CHECK(inext.size() == 1);
  CHECK(inext.contains(support::sq()));
}

TEST_CASE("orbit witnesses reach their members") {
  const Order o = Order::bounded(0, 1);
  const auto orb = orbit(support::sq(), GeneratorSet(o));
  for (const auto& m : orb.members()) CHECK(apply_word(orb.witness(m), support::sq()) == m);
  CHECK_THROWS_AS(orbit(support::sq(), GeneratorSet(o), 5), Error);
}

TEST_CASE("equivalence") {
  const Order o1 = Order::bounded(0, 1);
  const auto r = equivalent(support::sq(), support::df1(), o1);
  CHECK(r.verdict == Verdict::Equivalent);
  CHECK(r.witness.size() == 2);
  CHECK(apply_word(r.witness, support::sq()) == support::df1());

  CHECK(equivalent(support::sq(), support::df1(), o1, true).verdict == Verdict::NotEquivalent);
  CHECK(equivalent(support::sq(), support::unlink(), o1).verdict == Verdict::NotEquivalent);

  const auto r2 = equivalent(support::sq(), support::rect(), Order::bounded(0, 2));
  CHECK(r2.verdict == Verdict::Equivalent);
  REQUIRE(r2.witness.size() == 1);
  CHECK(r2.witness[0] == tug(Vertex{{0, 1, 0}}, 3, 0));

  CHECK(equivalent(support::sq(), support::sq(), o1).witness.empty());
  CHECK(equivalent(support::sq(), support::fixture("trefoil.knot"), Order::bounded(0, 3), false, 2000).verdict ==
        Verdict::Indeterminate);
}

TEST_CASE("escalation") {
  const auto r = equivalent_escalating(support::sq(), support::rect(), Order::bounded(0, 1), 2, 0);
  CHECK(r.verdict == Verdict::Equivalent);
  REQUIRE(r.decided_at.has_value());
  CHECK(*r.decided_at == Order::bounded(0, 2));
  REQUIRE(r.trail.size() == 2);
  CHECK_FALSE(r.trail[0].verdict.has_value());
  CHECK(r.witness.size() == 1);

  const auto u = equivalent_escalating(support::sq(), support::unlink(), Order::bounded(0, 1), 1, 0);
  CHECK(u.verdict == Verdict::Indeterminate);
}

TEST_CASE("lifting") {
  const auto up = lift_to(support::sq(), Order::bounded(1, 2));
  REQUIRE(up.has_value());
  CHECK(up->edge_count() == 8);
  CHECK_FALSE(lift_to(support::rect(), Order::bounded(0, 1)).has_value());
  CHECK_FALSE(lift_to(refine(support::sq()), Order::bounded(0, 1)).has_value());
}

TEST_CASE("scale isomorphism") {
  const Order coarse = Order::bounded(0, 1);
  const Order fine(1, 1);
  const auto a = enumerate_knots(coarse);
  const auto b = enumerate_knots(fine);
  CHECK(a.size() == b.size());
  CHECK(orbit_sizes(a, GeneratorSet(coarse)) == orbit_sizes(b, GeneratorSet(fine)));
  CHECK(orbit_sizes(a, GeneratorSet(coarse)) == std::multiset<std::size_t>{1, 1, 1, 28});
}

TEST_CASE("span and lattice number") {
  CHECK(span(support::sq()) == 1);
  CHECK(span(support::rect()) == 2);
  const auto r = lattice_number(support::rect(), 2);
  CHECK(r.value == 1);
  CHECK(r.exhaustive);
  CHECK_THROWS_AS(lattice_number(refine(support::sq()), 2), Error);
}

TEST_CASE("random walks fire every step") {
  std::mt19937_64 rng(3);
  const GeneratorSet gens(Order::bounded(0, 2));
  const auto start = support::sq(2);
  const auto word = random_walk(start, gens, 50, rng);
  CHECK(word.size() == 50);
  auto cur = start;
  for (const auto& m : word) {
    const auto next = apply(m, cur);
    CHECK_FALSE(next == cur);
    cur = next;
  }
  const auto ks = random_knots(Order::bounded(0, 2), 20, 4);
  CHECK(ks.size() == 20);
  CHECK(ks == random_knots(Order::bounded(0, 2), 20, 4));
}
