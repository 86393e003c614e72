#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "latknot/error.hpp"
#include "latknot/geometry.hpp"
#include "latknot/quantum.hpp"
#include "support.hpp"

using namespace latknot;

namespace {

const Order kCube = Order::bounded(0, 1);

std::shared_ptr<const Basis> cube_basis() {
  static const auto b = std::make_shared<const Basis>(enumerate_knots(kCube));
  return b;
}

Eigen::MatrixXd permutation_matrix(const std::vector<std::size_t>& perm) {
  const auto d = static_cast<Eigen::Index>(perm.size());
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(d, d);
  for (std::size_t j = 0; j < perm.size(); ++j) p(static_cast<Eigen::Index>(perm[j]), static_cast<Eigen::Index>(j)) = 1;
  return p;
}

const MoveId kTug = tug(Vertex{{0, 0, 0}}, 3, 3);

}  // namespace

TEST_CASE("hamiltonian of a tug") {
  const auto& basis = *cube_basis();
  const auto h = hamiltonian(kTug, basis);
  const Eigen::MatrixXd dense(h.matrix);
  const auto perm = permutation(CompiledMove(kTug, kCube), basis);
  const Eigen::MatrixXd p = permutation_matrix(perm);
  const auto d = dense.rows();

  CHECK((dense - dense.transpose()).norm() == 0.0);
  CHECK((dense - std::numbers::pi / 2 * (Eigen::MatrixXd::Identity(d, d) - p)).cwiseAbs().maxCoeff() < 1e-15);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);
  for (Eigen::Index i = 0; i < d; ++i) {
    const double ev = es.eigenvalues()(i);
    CHECK((std::abs(ev) < 1e-10 || std::abs(ev - std::numbers::pi) < 1e-10));
  }

  const Eigen::MatrixXcd expo = (Eigen::MatrixXcd(dense.cast<Amplitude>()) * Amplitude{0, 1}).exp();
  CHECK((expo - p.cast<Amplitude>()).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(exponential_deviation(h, perm) < 1e-10);
  CHECK(h.transpositions.size() == 2);
}

TEST_CASE("evolution against the matrix exponential") {
  const auto& basis = *cube_basis();
  const auto h = hamiltonian(kTug, basis);
  const Eigen::MatrixXcd hc = Eigen::MatrixXd(h.matrix).cast<Amplitude>();
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  std::vector<std::pair<LatticeKnot, Amplitude>> terms;
  for (const auto& k : basis.knots()) terms.emplace_back(k, Amplitude{g(rng), g(rng)});
  const auto psi = QuantumKnotState::superposition(terms);
  CHECK(psi.norm_squared() == doctest::Approx(1.0).epsilon(1e-14));
  for (double t : {0.0, 0.25, 0.5, 1.0, 1.7}) {
    const Eigen::MatrixXcd u = (hc * Amplitude{0, -t}).exp();
    const Eigen::VectorXcd expected = u * psi.dense(basis);
    const Eigen::VectorXcd got = evolve(psi, kTug, t).dense(basis);
    CHECK((expected - got).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((evolution_matrix(h, t) - u).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("evolution moves a knot to its partner") {
  const auto& basis = *cube_basis();
  const auto perm = permutation(CompiledMove(kTug, kCube), basis);
  std::size_t moved = 0;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (perm[i] == i) continue;
    ++moved;
    const auto k = QuantumKnotState::basis_state(basis[i]);
    const auto target = QuantumKnotState::basis_state(basis[perm[i]]);
    CHECK(std::abs(target.inner(evolve(k, kTug, 1.0))) == doctest::Approx(1.0).epsilon(1e-10));
    const auto half = evolve(k, kTug, 0.5);
    CHECK(std::norm(half.amplitude(basis[i])) == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(std::norm(half.amplitude(basis[perm[i]])) == doctest::Approx(0.5).epsilon(1e-10));
  }
  CHECK(moved == 4);
  const auto dual = evolve(QuantumKnotState::basis_state(support::df1()), kTug, 1.0);
  CHECK(std::abs(dual.inner(QuantumKnotState::basis_state(apply(kTug, support::df1())))) ==
        doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("move unitaries permute basis states") {
  const auto psi = QuantumKnotState::basis_state(support::sq(2));
  const auto out = apply_move_unitary(tug(Vertex{{0, 1, 0}}, 3, 0), psi);
  CHECK(out.amplitude(support::rect()) == Amplitude{1.0, 0.0});
  CHECK(out.amplitudes().size() == 1);
  CHECK_THROWS_AS(QuantumKnotState::basis_state(support::sq(2), *cube_basis()), Error);
}

TEST_CASE("orbit projector commutes with every generator") {
  const auto basis = cube_basis();
  const GeneratorSet gens(kCube);
  const auto proj = orbit_projector(support::sq(), gens, basis);
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(31, 31);
  for (std::size_t i = 0; i < 31; ++i) omega(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = proj.values()[i];
  for (const auto& m : gens.moves()) {
    const Eigen::MatrixXd p = permutation_matrix(permutation(m, *basis));
    CHECK((p * omega - omega * p).norm() == 0.0);
  }
  CHECK(is_invariant(proj, gens).invariant);
  CHECK(omega.trace() == 28.0);
}

TEST_CASE("length is invariant only under the inextensible group") {
  const auto basis = cube_basis();
  const auto len = invariant_observable([](const LatticeKnot& k) { return length(k); }, basis);
  const auto full = is_invariant(len, GeneratorSet(kCube));
  CHECK_FALSE(full.invariant);
  REQUIRE(full.generator.has_value());
  CHECK(full.generator->kind == MoveKind::Tug);
  CHECK(is_invariant(len, GeneratorSet(kCube, true)).invariant);

  const auto sym = symmetrize_diagonal([](const LatticeKnot& k) { return length(k); }, GeneratorSet(kCube), basis);
  CHECK(is_invariant(sym, GeneratorSet(kCube)).invariant);
}

TEST_CASE("measurement") {
  const auto basis = cube_basis();
  const GeneratorSet gens(kCube);
  const auto proj = orbit_projector(support::sq(), gens, basis);
  const std::vector<std::pair<LatticeKnot, Amplitude>> terms{{support::sq(), 1.0}, {support::df1(), 1.0}};
  const auto psi = QuantumKnotState::superposition(terms);
  const auto dist = measure_distribution(psi, proj);
  REQUIRE(dist.size() == 2);
  CHECK(dist[0].first == 0.0);
  CHECK(dist[0].second == doctest::Approx(0.0));
  CHECK(dist[1].first == 1.0);
  CHECK(dist[1].second == doctest::Approx(1.0).epsilon(1e-12));

  const auto comps = invariant_observable([](const LatticeKnot& k) { return double(component_count(k)); }, basis);
  std::mt19937_64 rng(8);
  std::vector<std::pair<LatticeKnot, Amplitude>> all;
  std::normal_distribution<double> g;
  for (const auto& k : basis->knots()) all.emplace_back(k, Amplitude{g(rng), g(rng)});
  auto state = QuantumKnotState::superposition(all);
  const auto before = measure_distribution(state, comps);
  double total = 0;
  for (const auto& [v, p] : before) total += p;
  CHECK(std::abs(total - 1.0) < 1e-12);
  for (int step = 0; step < 100; ++step) {
    state = apply_move_unitary(gens.moves()[rng() % gens.size()].id(), state);
  }
  const auto after = measure_distribution(state, comps);
  REQUIRE(after.size() == before.size());
  for (std::size_t i = 0; i < after.size(); ++i) CHECK(std::abs(after[i].second - before[i].second) < 1e-10);
}

TEST_CASE("general observables") {
  const auto basis = cube_basis();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(31, 31);
  m(0, 1) = Amplitude{0, 1};
  m(1, 0) = Amplitude{0, -1};
  m(2, 2) = 2.0;
  const auto obs = Observable::general(basis, m);
  const auto psi = QuantumKnotState::basis_state((*basis)[0]);
  const auto dist = measure_distribution(psi, obs);
  double total = 0;
  for (const auto& [v, p] : dist) total += p;
  CHECK(total == doctest::Approx(1.0));
  REQUIRE(dist.size() == 4);
  CHECK(dist[0].first == doctest::Approx(-1.0));
  CHECK(dist[0].second == doctest::Approx(0.5));
  m(0, 1) = 1.0;
  CHECK_THROWS_AS(Observable::general(basis, m), Error);
}
