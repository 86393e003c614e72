#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace latknot {

using Coord = std::int32_t;

/// Axis label in {1, 2, 3}.
class Direction {
 public:
  explicit Direction(int p);
  int value() const noexcept { return p_; }
  int index() const noexcept { return p_ - 1; }
  auto operator<=>(const Direction&) const = default;

 private:
  int p_;
};

/// Cyclic successor 1->2->3->1.
Direction left_perm(Direction p);
/// Cyclic predecessor 1->3->2->1.
Direction right_perm(Direction p);

struct Vertex {
  std::array<Coord, 3> c{};

  Coord operator[](Direction p) const noexcept { return c[p.index()]; }
  Coord& operator[](Direction p) noexcept { return c[p.index()]; }
  auto operator<=>(const Vertex&) const = default;

  /// Neighbour one lattice step along +e_p.
  Vertex step(Direction p, Coord amount = 1) const;
};

Vertex operator+(const Vertex& a, const Vertex& b);
Vertex operator*(Coord s, const Vertex& a);

/// Unit edge from `origin` to `origin + e_dir`.
struct Edge {
  Vertex origin;
  Direction dir;

  Vertex target() const { return origin.step(dir); }
  auto operator<=>(const Edge&) const = default;
};

/// Lattice order: unit 2^-ell, vertices in [0, extent]^3 in lattice units.
class Order {
 public:
  Order(int ell, Coord extent);
  /// The bounded order (ell, n): extent n * 2^ell.
  static Order bounded(int ell, int n);

  int ell() const noexcept { return ell_; }
  Coord extent() const noexcept { return extent_; }
  /// Bound in real units; may be fractional for hand-built extents.
  double bound() const;
  /// Integral bound n, or -1 when extent is not a multiple of 2^ell.
  int n() const noexcept;
  double unit() const;

  bool contains(const Vertex& v) const noexcept;
  bool contains(const Edge& e) const noexcept;

  std::size_t vertex_count() const noexcept;
  std::size_t vertex_index(const Vertex& v) const noexcept;
  Vertex vertex_at(std::size_t index) const noexcept;

  /// Slot count of the edge bitset; some slots are never valid edges.
  std::size_t edge_slots() const noexcept { return 3 * vertex_count(); }
  std::size_t edge_index(const Edge& e) const noexcept;
  Edge edge_at(std::size_t index) const;

  Order refined() const { return Order(ell_ + 1, 2 * extent_); }

  bool operator==(const Order&) const = default;

 private:
  int ell_;
  Coord extent_;
};

class EdgeSet {
 public:
  EdgeSet() = default;
  explicit EdgeSet(std::size_t slots);

  bool test(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i) noexcept { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) noexcept { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  void flip(std::size_t i) noexcept { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  std::size_t count() const noexcept;
  bool empty() const noexcept;
  std::size_t slots() const noexcept { return slots_; }
  const std::vector<std::uint64_t>& words() const noexcept { return words_; }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        f(w * 64 + static_cast<std::size_t>(__builtin_ctzll(bits)));
        bits &= bits - 1;
      }
    }
  }

  bool operator==(const EdgeSet&) const = default;
  /// Lexicographic order of the increasing index sequences.
  std::strong_ordering compare(const EdgeSet& other) const noexcept;
  std::size_t hash() const noexcept;

 private:
  std::size_t slots_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Finite set of unit edges within an order's bounds.
class LatticeGraph {
 public:
  explicit LatticeGraph(Order order);
  LatticeGraph(Order order, std::span<const Edge> edges);

  const Order& order() const noexcept { return order_; }
  const EdgeSet& bits() const noexcept { return bits_; }

  bool insert(const Edge& e);
  bool contains(const Edge& e) const;
  std::size_t size() const noexcept { return bits_.count(); }
  std::vector<Edge> edges() const;
  int degree(const Vertex& v) const;

 private:
  Order order_;
  EdgeSet bits_;
};

/// Nonempty lattice graph in which every vertex touched has degree exactly 2.
class LatticeKnot {
 public:
  /// Caller guarantees the bit pattern is a valid knot of `order`.
  static LatticeKnot assume_valid(Order order, EdgeSet bits);

  const Order& order() const noexcept { return order_; }
  const EdgeSet& bits() const noexcept { return bits_; }
  std::vector<Edge> edges() const;
  std::size_t edge_count() const noexcept { return bits_.count(); }
  bool contains(const Edge& e) const;
  int degree(const Vertex& v) const;
  bool has_vertex(const Vertex& v) const { return degree(v) > 0; }
  std::vector<Vertex> vertices() const;

  bool operator==(const LatticeKnot& other) const noexcept {
    return order_ == other.order_ && bits_ == other.bits_;
  }
  std::strong_ordering operator<=>(const LatticeKnot& other) const noexcept;
  std::size_t hash() const noexcept { return bits_.hash(); }

  std::string to_string() const;

 private:
  LatticeKnot(Order order, EdgeSet bits) : order_(order), bits_(std::move(bits)) {}
  Order order_;
  EdgeSet bits_;
};

LatticeKnot validate_knot(const LatticeGraph& g);
LatticeKnot validate_knot(Order order, std::span<const Edge> edges);

/// Edge sets of the connected components, ordered by smallest edge.
std::vector<std::vector<Edge>> components(const LatticeKnot& k);
std::size_t component_count(const LatticeKnot& k);

/// Each unit edge becomes two half-length edges at order ell + 1.
LatticeKnot refine(const LatticeKnot& k);
/// Same edges in a larger box with bound n (same ell).
LatticeKnot inject(const LatticeKnot& k, int n);
LatticeKnot inject(const LatticeKnot& k, const Order& target);

/// Vertices of one component in traversal order, starting at the smallest vertex.
std::vector<Vertex> trace_cycle(const std::vector<Edge>& component);

}  // namespace latknot

template <>
struct std::hash<latknot::LatticeKnot> {
  std::size_t operator()(const latknot::LatticeKnot& k) const noexcept { return k.hash(); }
};
