#include "latknot/lattice.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <utility>

#include "latknot/error.hpp"

namespace latknot {

Direction::Direction(int p) : p_(p) {
  if (p < 1 || p > 3) throw Error(ErrorCode::InvalidArgument, "direction must be 1, 2 or 3");
}

Direction left_perm(Direction p) { return Direction(p.value() % 3 + 1); }
Direction right_perm(Direction p) { return Direction((p.value() + 1) % 3 + 1); }

Vertex Vertex::step(Direction p, Coord amount) const {
  Vertex v = *this;
  v[p] += amount;
  return v;
}

Vertex operator+(const Vertex& a, const Vertex& b) {
  return Vertex{{a.c[0] + b.c[0], a.c[1] + b.c[1], a.c[2] + b.c[2]}};
}

Vertex operator*(Coord s, const Vertex& a) { return Vertex{{s * a.c[0], s * a.c[1], s * a.c[2]}}; }

Order::Order(int ell, Coord extent) : ell_(ell), extent_(extent) {
  if (ell < 0 || ell > 20) throw Error(ErrorCode::InvalidBound, "order ell out of range");
  if (extent < 1 || extent > 4096) throw Error(ErrorCode::InvalidBound, "extent out of range");
}

Order Order::bounded(int ell, int n) {
  if (ell < 0 || ell > 20) throw Error(ErrorCode::InvalidBound, "order ell out of range");
  if (n < 1) throw Error(ErrorCode::InvalidBound, "bound n must be at least 1");
  return Order(ell, static_cast<Coord>(n) << ell);
}

double Order::bound() const { return std::ldexp(static_cast<double>(extent_), -ell_); }

int Order::n() const noexcept {
  const Coord step = Coord{1} << ell_;
  return extent_ % step == 0 ? extent_ / step : -1;
}

double Order::unit() const { return std::ldexp(1.0, -ell_); }

bool Order::contains(const Vertex& v) const noexcept {
  return std::all_of(v.c.begin(), v.c.end(), [&](Coord x) { return x >= 0 && x <= extent_; });
}

bool Order::contains(const Edge& e) const noexcept {
  return contains(e.origin) && e.origin[e.dir] < extent_;
}

std::size_t Order::vertex_count() const noexcept {
  const auto side = static_cast<std::size_t>(extent_) + 1;
  return side * side * side;
}

std::size_t Order::vertex_index(const Vertex& v) const noexcept {
  const auto side = static_cast<std::size_t>(extent_) + 1;
  return (static_cast<std::size_t>(v.c[0]) * side + static_cast<std::size_t>(v.c[1])) * side +
         static_cast<std::size_t>(v.c[2]);
}

Vertex Order::vertex_at(std::size_t index) const noexcept {
  const auto side = static_cast<std::size_t>(extent_) + 1;
  const auto k = index % side;
  const auto j = (index / side) % side;
  const auto i = index / (side * side);
  return Vertex{{static_cast<Coord>(i), static_cast<Coord>(j), static_cast<Coord>(k)}};
}

std::size_t Order::edge_index(const Edge& e) const noexcept {
  return 3 * vertex_index(e.origin) + static_cast<std::size_t>(e.dir.index());
}

Edge Order::edge_at(std::size_t index) const {
  return Edge{vertex_at(index / 3), Direction(static_cast<int>(index % 3) + 1)};
}

EdgeSet::EdgeSet(std::size_t slots) : slots_(slots), words_((slots + 63) / 64, 0) {}

std::size_t EdgeSet::count() const noexcept {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool EdgeSet::empty() const noexcept {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

std::strong_ordering EdgeSet::compare(const EdgeSet& other) const noexcept {
  const std::size_t n = std::min(words_.size(), other.words_.size());
  for (std::size_t w = 0; w < n; ++w) {
    const std::uint64_t diff = words_[w] ^ other.words_[w];
    if (diff == 0) continue;
    const int bit = std::countr_zero(diff);
    const bool mine = (words_[w] >> bit) & 1u;
    const EdgeSet& without = mine ? other : *this;
    // The set lacking the first differing index is smaller only if it still has a later index.
    bool later = bit < 63 && (without.words_[w] >> (bit + 1)) != 0;
    for (std::size_t v = w + 1; !later && v < without.words_.size(); ++v) later = without.words_[v] != 0;
    if (mine) return later ? std::strong_ordering::less : std::strong_ordering::greater;
    return later ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  return words_.size() <=> other.words_.size();
}

std::size_t EdgeSet::hash() const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ull ^ slots_;
  for (auto w : words_) {
    h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

namespace {

int degree_in(const Order& order, const EdgeSet& bits, const Vertex& v) {
  if (!order.contains(v)) return 0;
  int d = 0;
  for (int p = 1; p <= 3; ++p) {
    const Direction dir(p);
    if (v[dir] < order.extent() && bits.test(order.edge_index(Edge{v, dir}))) ++d;
    if (v[dir] > 0 && bits.test(order.edge_index(Edge{v.step(dir, -1), dir}))) ++d;
  }
  return d;
}

std::vector<Edge> edges_of(const Order& order, const EdgeSet& bits) {
  std::vector<Edge> out;
  out.reserve(bits.count());
  bits.for_each([&](std::size_t i) { out.push_back(order.edge_at(i)); });
  return out;
}

std::string edge_label(const Edge& e) {
  std::ostringstream os;
  os << "E" << e.dir.value() << "(" << e.origin.c[0] << "," << e.origin.c[1] << "," << e.origin.c[2] << ")";
  return os.str();
}

std::string vertex_label(const Vertex& v) {
  std::ostringstream os;
  os << "(" << v.c[0] << "," << v.c[1] << "," << v.c[2] << ")";
  return os.str();
}

}  // namespace

LatticeGraph::LatticeGraph(Order order) : order_(order), bits_(order.edge_slots()) {}

LatticeGraph::LatticeGraph(Order order, std::span<const Edge> edges) : LatticeGraph(order) {
  for (const auto& e : edges) insert(e);
}

bool LatticeGraph::insert(const Edge& e) {
  if (!order_.contains(e)) throw Error(ErrorCode::OutOfBounds, "edge " + edge_label(e) + " outside bounds");
  const auto i = order_.edge_index(e);
  if (bits_.test(i)) return false;
  bits_.set(i);
  return true;
}

bool LatticeGraph::contains(const Edge& e) const {
  return order_.contains(e) && bits_.test(order_.edge_index(e));
}

std::vector<Edge> LatticeGraph::edges() const { return edges_of(order_, bits_); }

int LatticeGraph::degree(const Vertex& v) const { return degree_in(order_, bits_, v); }

LatticeKnot LatticeKnot::assume_valid(Order order, EdgeSet bits) { return LatticeKnot(order, std::move(bits)); }

std::vector<Edge> LatticeKnot::edges() const { return edges_of(order_, bits_); }

bool LatticeKnot::contains(const Edge& e) const { return order_.contains(e) && bits_.test(order_.edge_index(e)); }

int LatticeKnot::degree(const Vertex& v) const { return degree_in(order_, bits_, v); }

std::vector<Vertex> LatticeKnot::vertices() const {
  std::vector<Vertex> out;
  for (const auto& e : edges()) {
    out.push_back(e.origin);
    out.push_back(e.target());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::strong_ordering LatticeKnot::operator<=>(const LatticeKnot& other) const noexcept {
  if (auto c = order_.ell() <=> other.order_.ell(); c != 0) return c;
  if (auto c = order_.extent() <=> other.order_.extent(); c != 0) return c;
  return bits_.compare(other.bits_);
}

std::string LatticeKnot::to_string() const {
  std::string s = "{";
  bool first = true;
  for (const auto& e : edges()) {
    if (!first) s += ", ";
    s += edge_label(e);
    first = false;
  }
  return s + "}";
}

LatticeKnot validate_knot(const LatticeGraph& g) {
  if (g.size() == 0) throw Error(ErrorCode::EmptyGraph, "graph has no edges");
  std::map<Vertex, int> degrees;
  for (const auto& e : g.edges()) {
    ++degrees[e.origin];
    ++degrees[e.target()];
  }
  for (const auto& [v, d] : degrees) {
    if (d != 2) {
      throw Error(ErrorCode::NotTwoValent,
                  "vertex " + vertex_label(v) + " has degree " + std::to_string(d));
    }
  }
  return LatticeKnot::assume_valid(g.order(), g.bits());
}

LatticeKnot validate_knot(Order order, std::span<const Edge> edges) {
  return validate_knot(LatticeGraph(order, edges));
}

std::vector<std::vector<Edge>> components(const LatticeKnot& k) {
  const auto edges = k.edges();
  std::map<Vertex, std::size_t> id;
  for (const auto& e : edges) {
    id.emplace(e.origin, id.size());
    id.emplace(e.target(), id.size());
  }
  std::vector<std::size_t> parent(id.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : edges) parent[find(id[e.origin])] = find(id[e.target()]);

  std::map<std::size_t, std::size_t> slot;
  std::vector<std::vector<Edge>> out;
  for (const auto& e : edges) {
    const auto root = find(id[e.origin]);
    auto [it, fresh] = slot.emplace(root, out.size());
    if (fresh) out.emplace_back();
    out[it->second].push_back(e);
  }
  return out;
}

std::size_t component_count(const LatticeKnot& k) { return components(k).size(); }

LatticeKnot refine(const LatticeKnot& k) {
  const Order fine = k.order().refined();
  EdgeSet bits(fine.edge_slots());
  for (const auto& e : k.edges()) {
    const Vertex o = 2 * e.origin;
    bits.set(fine.edge_index(Edge{o, e.dir}));
    bits.set(fine.edge_index(Edge{o.step(e.dir), e.dir}));
  }
  return LatticeKnot::assume_valid(fine, std::move(bits));
}

LatticeKnot inject(const LatticeKnot& k, const Order& target) {
  if (target.ell() != k.order().ell()) throw Error(ErrorCode::InvalidBound, "inject keeps the order ell");
  if (target.extent() < k.order().extent()) {
    throw Error(ErrorCode::InvalidBound, "target bound is smaller than the source bound");
  }
  EdgeSet bits(target.edge_slots());
  for (const auto& e : k.edges()) bits.set(target.edge_index(e));
  return LatticeKnot::assume_valid(target, std::move(bits));
}

LatticeKnot inject(const LatticeKnot& k, int n) { return inject(k, Order::bounded(k.order().ell(), n)); }

std::vector<Vertex> trace_cycle(const std::vector<Edge>& component) {
  std::map<Vertex, std::vector<Vertex>> adj;
  for (const auto& e : component) {
    adj[e.origin].push_back(e.target());
    adj[e.target()].push_back(e.origin);
  }
  std::vector<Vertex> cycle;
  if (adj.empty()) return cycle;
  const Vertex start = adj.begin()->first;
  Vertex prev = start;
  Vertex cur = std::min(adj[start][0], adj[start][1]);
  cycle.push_back(start);
  while (cur != start) {
    cycle.push_back(cur);
    const auto& nb = adj[cur];
    const Vertex next = nb[0] == prev ? nb[1] : nb[0];
    prev = cur;
    cur = next;
  }
  return cycle;
}

}  // namespace latknot
