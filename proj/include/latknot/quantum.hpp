#pragma once

#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "latknot/moves.hpp"
#include "latknot/orbit.hpp"

namespace latknot {

using Amplitude = std::complex<double>;

/// Normalized superposition of knots of one order, keyed by knot.
class QuantumKnotState {
 public:
  static QuantumKnotState basis_state(const LatticeKnot& k);
  /// Throws UnknownKnot when k is not in the basis.
  static QuantumKnotState basis_state(const LatticeKnot& k, const Basis& basis);
  static QuantumKnotState superposition(std::span<const std::pair<LatticeKnot, Amplitude>> terms);

  const Order& order() const noexcept { return order_; }
  const std::map<LatticeKnot, Amplitude>& amplitudes() const noexcept { return amps_; }
  Amplitude amplitude(const LatticeKnot& k) const;
  double norm_squared() const;
  /// <this|other>
  Amplitude inner(const QuantumKnotState& other) const;
  Eigen::VectorXcd dense(const Basis& basis) const;

 private:
  QuantumKnotState(Order order, std::map<LatticeKnot, Amplitude> amps);
  friend QuantumKnotState apply_move_unitary(const MoveId&, const QuantumKnotState&);
  friend QuantumKnotState evolve(const QuantumKnotState&, const MoveId&, double);

  Order order_;
  std::map<LatticeKnot, Amplitude> amps_;
};

QuantumKnotState apply_move_unitary(const MoveId& m, const QuantumKnotState& psi);
/// U(t) = exp(-iHt) with hbar = 1.
QuantumKnotState evolve(const QuantumKnotState& psi, const MoveId& m, double t);

struct Hamiltonian {
  std::vector<std::pair<std::size_t, std::size_t>> transpositions;
  Eigen::SparseMatrix<double> matrix;
};

/// Pair-form Hamiltonian of a move; throws InvalidArgument if exp(iH) misses the permutation.
Hamiltonian hamiltonian(const MoveId& m, const Basis& basis);
/// max |exp(iH) - P| entrywise, from a dense eigendecomposition.
double exponential_deviation(const Hamiltonian& h, std::span<const std::size_t> perm);
Eigen::MatrixXcd evolution_matrix(const Hamiltonian& h, double t);

struct SpectralComponent {
  double eigenvalue;
  std::vector<std::size_t> support;  // diagonal observables
  Eigen::MatrixXcd projector;        // general observables
};

class Observable {
 public:
  enum class Kind { Diagonal, General };

  static Observable diagonal(std::shared_ptr<const Basis> basis, std::vector<double> values);
  /// Dense Hermitian matrix, d <= 4096.
  static Observable general(std::shared_ptr<const Basis> basis, Eigen::MatrixXcd matrix);

  Kind kind() const noexcept { return kind_; }
  const Basis& basis() const noexcept { return *basis_; }
  const std::shared_ptr<const Basis>& basis_ptr() const noexcept { return basis_; }
  const std::vector<double>& values() const noexcept { return values_; }
  const Eigen::MatrixXcd& matrix() const noexcept { return matrix_; }
  const std::vector<SpectralComponent>& spectrum() const noexcept { return spectrum_; }

 private:
  Observable() = default;
  Kind kind_ = Kind::Diagonal;
  std::shared_ptr<const Basis> basis_;
  std::vector<double> values_;
  Eigen::MatrixXcd matrix_;
  std::vector<SpectralComponent> spectrum_;
};

using KnotFunction = std::function<double(const LatticeKnot&)>;

Observable invariant_observable(const KnotFunction& f, std::shared_ptr<const Basis> basis);
Observable orbit_projector(const LatticeKnot& k, const GeneratorSet& gens, std::shared_ptr<const Basis> basis,
                           std::size_t limit = kDefaultLimit);
Observable symmetrize_diagonal(const KnotFunction& f, const GeneratorSet& gens, std::shared_ptr<const Basis> basis);

struct InvarianceCheck {
  bool invariant;
  std::optional<MoveId> generator;
  std::optional<std::pair<std::size_t, std::size_t>> pair;
};

InvarianceCheck is_invariant(const Observable& obs, const GeneratorSet& gens);

/// (eigenvalue, probability) in increasing eigenvalue order.
std::vector<std::pair<double, double>> measure_distribution(const QuantumKnotState& psi, const Observable& obs);

}  // namespace latknot
