#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "latknot/lattice.hpp"
#include "latknot/moves.hpp"

namespace latknot {

inline constexpr std::size_t kDefaultCap = 1'000'000;
inline constexpr std::size_t kDefaultLimit = 1'000'000;

/// Bounded lattice knots of one order in canonical order, with reverse lookup.
class Basis {
 public:
  Basis(Order order, std::vector<LatticeKnot> knots);

  const Order& order() const noexcept { return order_; }
  std::size_t size() const noexcept { return knots_.size(); }
  const LatticeKnot& operator[](std::size_t i) const { return knots_[i]; }
  const std::vector<LatticeKnot>& knots() const noexcept { return knots_; }
  std::optional<std::size_t> index_of(const LatticeKnot& k) const;

 private:
  Order order_;
  std::vector<LatticeKnot> knots_;
  std::unordered_map<LatticeKnot, std::size_t> index_;
};

/// Every knot of the order (the empty graph is not a knot). Throws CapExceeded.
Basis enumerate_knots(const Order& order, std::size_t cap = kDefaultCap);
std::size_t count_knots(const Order& order, bool include_empty, std::size_t cap = kDefaultCap);

/// Image index of each basis element under one move. Throws UnknownKnot on a missing image.
std::vector<std::size_t> permutation(const CompiledMove& m, const Basis& basis);

class Orbit {
 public:
  const std::vector<LatticeKnot>& members() const noexcept { return members_; }
  std::vector<LatticeKnot> sorted_members() const;
  std::size_t size() const noexcept { return members_.size(); }
  bool contains(const LatticeKnot& k) const { return index_.contains(k); }
  /// Word taking the seed to `k`.
  std::vector<MoveId> witness(const LatticeKnot& k) const;

 private:
  friend Orbit orbit(const LatticeKnot&, const GeneratorSet&, std::size_t);
  std::vector<LatticeKnot> members_;
  std::vector<std::ptrdiff_t> parent_;
  std::vector<std::size_t> via_;
  std::vector<MoveId> moves_;
  std::unordered_map<LatticeKnot, std::size_t> index_;
};

/// Breadth-first closure of the seed under the generators. Throws LimitExceeded.
Orbit orbit(const LatticeKnot& seed, const GeneratorSet& gens, std::size_t limit = kDefaultLimit);

enum class Verdict { Equivalent, NotEquivalent, Indeterminate };
std::string_view to_string(Verdict v);

struct EquivalenceResult {
  Verdict verdict;
  std::vector<MoveId> witness;
  std::size_t explored = 0;
};

/// Bidirectional search; the witness is a shortest word taking k1 to k2.
EquivalenceResult equivalent(const LatticeKnot& k1, const LatticeKnot& k2, const Order& order,
                             bool inextensible = false, std::size_t limit = kDefaultLimit);

struct EscalationStep {
  Order order;
  std::optional<Verdict> verdict;  // empty when an input does not fit the order
};

struct EscalationResult {
  Verdict verdict;
  std::optional<Order> decided_at;
  std::vector<MoveId> witness;
  std::vector<EscalationStep> trail;
};

EscalationResult equivalent_escalating(const LatticeKnot& k1, const LatticeKnot& k2, const Order& start,
                                       int max_n, int max_ell, bool inextensible = false,
                                       std::size_t limit = kDefaultLimit);

/// Brings a knot to `target` by refining and injecting, or nothing when it does not fit.
std::optional<LatticeKnot> lift_to(const LatticeKnot& k, const Order& target);

struct LatticeNumberResult {
  int value;
  bool exhaustive;
  std::size_t explored;
};

/// Smallest box side reached by Lambda-equivalent knots at (0, max_n).
LatticeNumberResult lattice_number(const LatticeKnot& k, int max_n, std::size_t limit = kDefaultLimit);

/// Largest coordinate span of the knot's vertices, in lattice units.
Coord span(const LatticeKnot& k);

/// Random word of moves that each change the current knot.
std::vector<MoveId> random_walk(const LatticeKnot& start, const GeneratorSet& gens, std::size_t length,
                                std::mt19937_64& rng);

/// Knots reached by random walks from one or two disjoint unit squares.
std::vector<LatticeKnot> random_knots(const Order& order, std::size_t count, std::uint64_t seed,
                                      std::size_t steps = 60);

}  // namespace latknot
