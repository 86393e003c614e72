#include "latknot/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "latknot/error.hpp"

namespace latknot {

QuantumKnotState::QuantumKnotState(Order order, std::map<LatticeKnot, Amplitude> amps)
    : order_(order), amps_(std::move(amps)) {}

QuantumKnotState QuantumKnotState::basis_state(const LatticeKnot& k) {
  return QuantumKnotState(k.order(), {{k, Amplitude{1.0, 0.0}}});
}

QuantumKnotState QuantumKnotState::basis_state(const LatticeKnot& k, const Basis& basis) {
  if (!basis.index_of(k)) throw Error(ErrorCode::UnknownKnot, "knot is not in the basis");
  return basis_state(k);
}

QuantumKnotState QuantumKnotState::superposition(std::span<const std::pair<LatticeKnot, Amplitude>> terms) {
  if (terms.empty()) throw Error(ErrorCode::InvalidArgument, "empty superposition");
  std::map<LatticeKnot, Amplitude> amps;
  const Order order = terms.front().first.order();
  for (const auto& [k, a] : terms) {
    if (!(k.order() == order)) throw Error(ErrorCode::InvalidArgument, "superposition mixes orders");
    amps[k] += a;
  }
  double norm = 0;
  for (auto it = amps.begin(); it != amps.end();) {
    if (it->second == Amplitude{}) {
      it = amps.erase(it);
    } else {
      norm += std::norm(it->second);
      ++it;
    }
  }
  if (norm == 0) throw Error(ErrorCode::InvalidArgument, "superposition has zero norm");
  const double scale = 1.0 / std::sqrt(norm);
  for (auto& [k, a] : amps) a *= scale;
  return QuantumKnotState(order, std::move(amps));
}

Amplitude QuantumKnotState::amplitude(const LatticeKnot& k) const {
  const auto it = amps_.find(k);
  return it == amps_.end() ? Amplitude{} : it->second;
}

double QuantumKnotState::norm_squared() const {
  double s = 0;
  for (const auto& [k, a] : amps_) s += std::norm(a);
  return s;
}

Amplitude QuantumKnotState::inner(const QuantumKnotState& other) const {
  Amplitude s{};
  for (const auto& [k, a] : amps_) s += std::conj(a) * other.amplitude(k);
  return s;
}

Eigen::VectorXcd QuantumKnotState::dense(const Basis& basis) const {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.size()));
  for (const auto& [k, a] : amps_) {
    const auto i = basis.index_of(k);
    if (!i) throw Error(ErrorCode::UnknownKnot, "state has support outside the basis");
    v(static_cast<Eigen::Index>(*i)) = a;
  }
  return v;
}

QuantumKnotState apply_move_unitary(const MoveId& m, const QuantumKnotState& psi) {
  const CompiledMove cm(m, psi.order());
  std::map<LatticeKnot, Amplitude> out;
  for (const auto& [k, a] : psi.amplitudes()) out.emplace(apply(cm, k), a);
  return QuantumKnotState(psi.order(), std::move(out));
}

QuantumKnotState evolve(const QuantumKnotState& psi, const MoveId& m, double t) {
  const CompiledMove cm(m, psi.order());
  const double theta = std::numbers::pi * t / 2;
  const Amplitude phase = std::polar(1.0, -theta);
  const Amplitude c = phase * std::cos(theta);
  const Amplitude s = phase * Amplitude{0.0, std::sin(theta)};
  std::map<LatticeKnot, Amplitude> out;
  for (const auto& [k, a] : psi.amplitudes()) {
    const LatticeKnot partner = apply(cm, k);
    if (partner == k) {
      out[k] += a;
      continue;
    }
    // Pair block of exp(-iHt): c on the diagonal, s off the diagonal.
    out[k] += c * a;
    out[partner] += s * a;
  }
  for (auto it = out.begin(); it != out.end();) {
    it = it->second == Amplitude{} ? out.erase(it) : std::next(it);
  }
  return QuantumKnotState(psi.order(), std::move(out));
}

namespace {

constexpr std::size_t kDenseLimit = 512;

Hamiltonian pair_hamiltonian(std::size_t d, std::vector<std::pair<std::size_t, std::size_t>> pairs) {
  Hamiltonian h;
  h.transpositions = std::move(pairs);
  std::vector<Eigen::Triplet<double>> entries;
  const double w = std::numbers::pi / 2;
  for (const auto& [a, b] : h.transpositions) {
    const auto ia = static_cast<Eigen::Index>(a);
    const auto ib = static_cast<Eigen::Index>(b);
    entries.emplace_back(ia, ia, w);
    entries.emplace_back(ib, ib, w);
    entries.emplace_back(ia, ib, -w);
    entries.emplace_back(ib, ia, -w);
  }
  h.matrix.resize(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  h.matrix.setFromTriplets(entries.begin(), entries.end());
  return h;
}

Eigen::MatrixXcd dense_exponential(const Hamiltonian& h, Amplitude factor) {
  const Eigen::MatrixXd dense = Eigen::MatrixXd(h.matrix);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense);
  const Eigen::VectorXcd diag = (solver.eigenvalues().cast<Amplitude>() * factor).array().exp();
  const Eigen::MatrixXcd v = solver.eigenvectors().cast<Amplitude>();
  return v * diag.asDiagonal() * v.adjoint();
}

}  // namespace

double exponential_deviation(const Hamiltonian& h, std::span<const std::size_t> perm) {
  const Eigen::MatrixXcd e = dense_exponential(h, Amplitude{0.0, 1.0});
  double worst = 0;
  for (Eigen::Index i = 0; i < e.rows(); ++i) {
    for (Eigen::Index j = 0; j < e.cols(); ++j) {
      const double target = perm[static_cast<std::size_t>(j)] == static_cast<std::size_t>(i) ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(e(i, j) - target));
    }
  }
  return worst;
}

Eigen::MatrixXcd evolution_matrix(const Hamiltonian& h, double t) {
  return dense_exponential(h, Amplitude{0.0, -t});
}

Hamiltonian hamiltonian(const MoveId& m, const Basis& basis) {
  const auto perm = permutation(CompiledMove(m, basis.order()), basis);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (perm[i] > i) pairs.emplace_back(i, perm[i]);
  }
  Hamiltonian h = pair_hamiltonian(basis.size(), pairs);
  double dev = 0;
  if (basis.size() <= kDenseLimit) {
    dev = exponential_deviation(h, perm);
  } else if (!pairs.empty()) {
    // Every transposition block is the same 2x2 matrix.
    const std::size_t block_perm[] = {1, 0};
    dev = exponential_deviation(pair_hamiltonian(2, {{0, 1}}), block_perm);
  }
  if (dev > 1e-10) throw Error(ErrorCode::InvalidArgument, "exp(iH) does not reproduce the move");
  return h;
}

namespace {

std::vector<SpectralComponent> group_values(const std::vector<double>& values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return values[a] < values[b]; });
  std::vector<SpectralComponent> out;
  for (auto i : order) {
    if (out.empty() || values[i] - out.back().eigenvalue > 1e-9) out.push_back({values[i], {}, {}});
    out.back().support.push_back(i);
  }
  for (auto& c : out) std::sort(c.support.begin(), c.support.end());
  return out;
}

}  // namespace

Observable Observable::diagonal(std::shared_ptr<const Basis> basis, std::vector<double> values) {
  if (values.size() != basis->size()) throw Error(ErrorCode::InvalidArgument, "one value per basis knot");
  Observable o;
  o.kind_ = Kind::Diagonal;
  o.basis_ = std::move(basis);
  o.values_ = std::move(values);
  o.spectrum_ = group_values(o.values_);
  return o;
}

Observable Observable::general(std::shared_ptr<const Basis> basis, Eigen::MatrixXcd matrix) {
  const auto d = static_cast<Eigen::Index>(basis->size());
  if (d > 4096) throw Error(ErrorCode::InvalidArgument, "general observables are limited to d <= 4096");
  if (matrix.rows() != d || matrix.cols() != d) throw Error(ErrorCode::InvalidArgument, "matrix size mismatch");
  if (matrix != matrix.adjoint()) throw Error(ErrorCode::InvalidArgument, "observable is not Hermitian");
  Observable o;
  o.kind_ = Kind::General;
  o.basis_ = std::move(basis);
  o.matrix_ = std::move(matrix);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(o.matrix_);
  const auto& ev = solver.eigenvalues();
  const auto& vec = solver.eigenvectors();
  Eigen::Index start = 0;
  for (Eigen::Index i = 1; i <= d; ++i) {
    if (i < d && ev(i) - ev(i - 1) <= 1e-9) continue;
    const Eigen::MatrixXcd v = vec.middleCols(start, i - start);
    o.spectrum_.push_back({ev.segment(start, i - start).mean(), {}, v * v.adjoint()});
    start = i;
  }
  return o;
}

Observable invariant_observable(const KnotFunction& f, std::shared_ptr<const Basis> basis) {
  std::vector<double> values;
  values.reserve(basis->size());
  for (const auto& k : basis->knots()) values.push_back(f(k));
  return Observable::diagonal(std::move(basis), std::move(values));
}

Observable orbit_projector(const LatticeKnot& k, const GeneratorSet& gens, std::shared_ptr<const Basis> basis,
                           std::size_t limit) {
  std::vector<double> values(basis->size(), 0.0);
  const Orbit orb = orbit(k, gens, limit);
  for (const auto& member : orb.members()) {
    const auto i = basis->index_of(member);
    if (!i) throw Error(ErrorCode::UnknownKnot, "orbit member outside the basis");
    values[*i] = 1.0;
  }
  return Observable::diagonal(std::move(basis), std::move(values));
}

Observable symmetrize_diagonal(const KnotFunction& f, const GeneratorSet& gens, std::shared_ptr<const Basis> basis) {
  const std::size_t d = basis->size();
  std::vector<std::size_t> parent(d);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& m : gens.moves()) {
    const auto perm = permutation(m, *basis);
    for (std::size_t i = 0; i < d; ++i) parent[find(i)] = find(perm[i]);
  }
  std::vector<double> sum(d, 0.0);
  std::vector<double> count(d, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    sum[find(i)] += f((*basis)[i]);
    count[find(i)] += 1;
  }
  std::vector<double> values(d);
  for (std::size_t i = 0; i < d; ++i) values[i] = sum[find(i)] / count[find(i)];
  return Observable::diagonal(std::move(basis), std::move(values));
}

InvarianceCheck is_invariant(const Observable& obs, const GeneratorSet& gens) {
  const std::size_t d = obs.basis().size();
  for (const auto& m : gens.moves()) {
    const auto perm = permutation(m, obs.basis());
    if (obs.kind() == Observable::Kind::Diagonal) {
      for (std::size_t i = 0; i < d; ++i) {
        if (obs.values()[perm[i]] != obs.values()[i]) return {false, m.id(), std::pair{i, perm[i]}};
      }
      continue;
    }
    const auto& mat = obs.matrix();
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        const auto a = mat(static_cast<Eigen::Index>(perm[i]), static_cast<Eigen::Index>(perm[j]));
        if (std::abs(a - mat(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))) >= 1e-12) {
          return {false, m.id(), std::pair{i, j}};
        }
      }
    }
  }
  return {true, std::nullopt, std::nullopt};
}

std::vector<std::pair<double, double>> measure_distribution(const QuantumKnotState& psi, const Observable& obs) {
  if (!(psi.order() == obs.basis().order())) throw Error(ErrorCode::InvalidArgument, "state and observable differ in order");
  const Eigen::VectorXcd v = psi.dense(obs.basis());
  const double norm = v.squaredNorm();
  std::vector<std::pair<double, double>> out;
  for (const auto& c : obs.spectrum()) {
    double p = 0;
    if (obs.kind() == Observable::Kind::Diagonal) {
      for (auto i : c.support) p += std::norm(v(static_cast<Eigen::Index>(i)));
    } else {
      p = (v.adjoint() * c.projector * v)(0, 0).real();
    }
    out.emplace_back(c.eigenvalue, p / norm);
  }
  return out;
}

}  // namespace latknot
