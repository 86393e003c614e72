#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "latknot/lattice.hpp"

namespace latknot {

enum class MoveKind { Tug = 1, Wiggle = 2, Wag = 3 };

std::string_view to_string(MoveKind kind);

/// L(a, p, q). Wiggle variants are stored modulo 2.
struct MoveId {
  MoveKind kind;
  Vertex anchor;
  Direction dir;
  int variant;

  static MoveId make(MoveKind kind, Vertex anchor, int p, int q);

  auto operator<=>(const MoveId&) const = default;
  std::string to_string() const;
};

inline MoveId tug(Vertex a, int p, int q) { return MoveId::make(MoveKind::Tug, a, p, q); }
inline MoveId wiggle(Vertex a, int p, int q) { return MoveId::make(MoveKind::Wiggle, a, p, q); }
inline MoveId wag(Vertex a, int p, int q) { return MoveId::make(MoveKind::Wag, a, p, q); }

/// Boundary edges of F_p(a) in the order q = 0..3.
std::array<Edge, 4> face_edges(const Vertex& a, Direction p);
std::array<Edge, 4> face_edges(const Vertex& a, Direction p, const Order& order);

struct MoveConfig {
  std::vector<Edge> side_a;
  std::vector<Edge> side_b;
  std::vector<Edge> region_edges;
  std::vector<Vertex> region_vertices;
};

/// Geometry of a move, independent of bounds.
MoveConfig move_config(const MoveId& m);
/// Throws OutOfBounds unless the closed region lies in the order's box.
MoveConfig move_config(const MoveId& m, const Order& order);
bool in_bounds(const MoveId& m, const Order& order);

/// A move resolved against one order for repeated application.
class CompiledMove {
 public:
  CompiledMove(const MoveId& m, const Order& order);

  const MoveId& id() const noexcept { return id_; }
  enum class Match { None, SideA, SideB };
  Match match(const EdgeSet& bits) const;
  /// Applies the move in place; returns whether it changed the graph.
  bool apply_in_place(EdgeSet& bits) const;

 private:
  MoveId id_;
  std::vector<std::size_t> region_edges_;
  std::vector<std::vector<std::size_t>> vertex_incident_;
  std::uint32_t a_edges_ = 0, b_edges_ = 0, a_vertices_ = 0, b_vertices_ = 0;
};

LatticeKnot apply(const MoveId& m, const LatticeKnot& k);
LatticeKnot apply(const CompiledMove& m, const LatticeKnot& k);
CompiledMove::Match match(const MoveId& m, const LatticeKnot& k);
bool fires(const MoveId& m, const LatticeKnot& k);

/// Words are applied left to right.
LatticeKnot apply_word(std::span<const MoveId> word, const LatticeKnot& k);

/// Every move of Lambda at the order, or only the wiggles and wags when inextensible.
std::vector<MoveId> generators(const Order& order, bool inextensible = false);

class GeneratorSet {
 public:
  GeneratorSet(const Order& order, bool inextensible = false);
  const Order& order() const noexcept { return order_; }
  const std::vector<CompiledMove>& moves() const noexcept { return moves_; }
  std::size_t size() const noexcept { return moves_.size(); }

 private:
  Order order_;
  std::vector<CompiledMove> moves_;
};

/// Product of all variants of one kind at (a, p); at most one of them fires.
LatticeKnot total_move(MoveKind kind, const Vertex& a, Direction p, const LatticeKnot& k);

struct WagTugLemmaReport {
  bool equality_1;   // wag(a,1,0) == T3(a,2) T0(a,3) T3(a,2)
  bool condition_1;  // as printed: F3 not a tug(a,3,0) side, or F2 a tug(a,2,3) side
  bool equality_2;   // wag(a,1,0) == T0(a,3) T3(a,2) T0(a,3)
  bool condition_2;  // as printed: F2 not a tug(a,2,3) side, or F3 a tug(a,3,0) side
  bool exact_1;      // face-state characterisation of equality_1
  bool exact_2;
  bool printed_holds() const { return equality_1 == condition_1 && equality_2 == condition_2; }
  bool exact_holds() const { return equality_1 == exact_1 && equality_2 == exact_2; }
};

WagTugLemmaReport wag_tug_lemma_check(const Vertex& a, const LatticeKnot& k);

}  // namespace latknot
