#include "latknot/orbit.hpp"

#include <algorithm>
#include <deque>

#include "latknot/error.hpp"

namespace latknot {

Basis::Basis(Order order, std::vector<LatticeKnot> knots) : order_(order), knots_(std::move(knots)) {
  std::sort(knots_.begin(), knots_.end());
  knots_.erase(std::unique(knots_.begin(), knots_.end()), knots_.end());
  index_.reserve(knots_.size());
  for (std::size_t i = 0; i < knots_.size(); ++i) {
    if (!(knots_[i].order() == order_)) throw Error(ErrorCode::InvalidArgument, "basis knot has a foreign order");
    index_.emplace(knots_[i], i);
  }
}

std::optional<std::size_t> Basis::index_of(const LatticeKnot& k) const {
  const auto it = index_.find(k);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

namespace {

struct Cycle {
  EdgeSet edges;
  std::vector<std::uint64_t> vertices;
};

bool disjoint(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] & b[i]) return false;
  }
  return true;
}

class CycleEnumerator {
 public:
  CycleEnumerator(const Order& order, std::size_t cap) : order_(order), cap_(cap) {
    const std::size_t nv = order.vertex_count();
    adj_.resize(nv);
    for (std::size_t v = 0; v < nv; ++v) {
      const Vertex x = order.vertex_at(v);
      for (int p = 1; p <= 3; ++p) {
        const Direction d(p);
        if (x[d] > 0) adj_[v].push_back(order.vertex_index(x.step(d, -1)));
        if (x[d] < order.extent()) adj_[v].push_back(order.vertex_index(x.step(d)));
      }
      std::sort(adj_[v].begin(), adj_[v].end());
    }
    on_path_.assign(nv, false);
  }

  std::vector<Cycle> run() {
    for (std::size_t s = 0; s < adj_.size(); ++s) {
      start_ = s;
      path_.assign(1, s);
      on_path_[s] = true;
      extend(s);
      on_path_[s] = false;
    }
    return std::move(cycles_);
  }

 private:
  void extend(std::size_t v) {
    for (std::size_t w : adj_[v]) {
      if (w == start_) {
        if (path_.size() >= 4 && path_[1] < path_.back()) record();
        continue;
      }
      if (w < start_ || on_path_[w]) continue;
      on_path_[w] = true;
      path_.push_back(w);
      extend(w);
      path_.pop_back();
      on_path_[w] = false;
    }
  }

  Edge edge_between(std::size_t u, std::size_t v) const {
    const Vertex a = order_.vertex_at(std::min(u, v));
    const Vertex b = order_.vertex_at(std::max(u, v));
    for (int p = 1; p <= 3; ++p) {
      if (a.step(Direction(p)) == b) return Edge{a, Direction(p)};
    }
    throw Error(ErrorCode::InvalidArgument, "vertices are not adjacent");
  }

  void record() {
    if (cycles_.size() >= cap_) throw Error(ErrorCode::CapExceeded, "more than " + std::to_string(cap_) + " knots");
    Cycle c{EdgeSet(order_.edge_slots()), std::vector<std::uint64_t>((order_.vertex_count() + 63) / 64, 0)};
    for (std::size_t i = 0; i < path_.size(); ++i) {
      const std::size_t u = path_[i];
      const std::size_t w = path_[(i + 1) % path_.size()];
      c.edges.set(order_.edge_index(edge_between(u, w)));
      c.vertices[u >> 6] |= std::uint64_t{1} << (u & 63);
    }
    cycles_.push_back(std::move(c));
  }

  const Order& order_;
  std::size_t cap_;
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<bool> on_path_;
  std::vector<std::size_t> path_;
  std::size_t start_ = 0;
  std::vector<Cycle> cycles_;
};

void unions(const std::vector<Cycle>& cycles, std::size_t from, const EdgeSet& edges,
            const std::vector<std::uint64_t>& verts, const Order& order, std::size_t cap,
            std::vector<LatticeKnot>& out) {
  for (std::size_t i = from; i < cycles.size(); ++i) {
    if (!disjoint(verts, cycles[i].vertices)) continue;
    if (out.size() >= cap) throw Error(ErrorCode::CapExceeded, "more than " + std::to_string(cap) + " knots");
    EdgeSet e = edges;
    auto v = verts;
    for (std::size_t w = 0; w < v.size(); ++w) v[w] |= cycles[i].vertices[w];
    cycles[i].edges.for_each([&](std::size_t b) { e.set(b); });
    out.push_back(LatticeKnot::assume_valid(order, e));
    unions(cycles, i + 1, e, v, order, cap, out);
  }
}

}  // namespace

Basis enumerate_knots(const Order& order, std::size_t cap) {
  auto cycles = CycleEnumerator(order, cap).run();
  std::vector<LatticeKnot> knots;
  const std::vector<std::uint64_t> none((order.vertex_count() + 63) / 64, 0);
  unions(cycles, 0, EdgeSet(order.edge_slots()), none, order, cap, knots);
  return Basis(order, std::move(knots));
}

std::size_t count_knots(const Order& order, bool include_empty, std::size_t cap) {
  return enumerate_knots(order, cap).size() + (include_empty ? 1 : 0);
}

std::vector<std::size_t> permutation(const CompiledMove& m, const Basis& basis) {
  std::vector<std::size_t> perm(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    EdgeSet bits = basis[i].bits();
    if (!m.apply_in_place(bits)) {
      perm[i] = i;
      continue;
    }
    const auto j = basis.index_of(LatticeKnot::assume_valid(basis.order(), std::move(bits)));
    if (!j) throw Error(ErrorCode::UnknownKnot, "image of a basis knot lies outside the basis");
    perm[i] = *j;
  }
  return perm;
}

std::vector<LatticeKnot> Orbit::sorted_members() const {
  auto out = members_;
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<MoveId> Orbit::witness(const LatticeKnot& k) const {
  const auto it = index_.find(k);
  if (it == index_.end()) throw Error(ErrorCode::UnknownKnot, "knot is not in the orbit");
  std::vector<MoveId> word;
  for (auto i = static_cast<std::ptrdiff_t>(it->second); parent_[static_cast<std::size_t>(i)] >= 0;
       i = parent_[static_cast<std::size_t>(i)]) {
    word.push_back(moves_[via_[static_cast<std::size_t>(i)]]);
  }
  std::reverse(word.begin(), word.end());
  return word;
}

Orbit orbit(const LatticeKnot& seed, const GeneratorSet& gens, std::size_t limit) {
  if (!(seed.order() == gens.order())) throw Error(ErrorCode::InvalidArgument, "seed and generators differ in order");
  Orbit o;
  for (const auto& m : gens.moves()) o.moves_.push_back(m.id());
  o.members_.push_back(seed);
  o.parent_.push_back(-1);
  o.via_.push_back(0);
  o.index_.emplace(seed, 0);
  for (std::size_t head = 0; head < o.members_.size(); ++head) {
    for (std::size_t g = 0; g < gens.size(); ++g) {
      EdgeSet bits = o.members_[head].bits();
      if (!gens.moves()[g].apply_in_place(bits)) continue;
      auto k = LatticeKnot::assume_valid(seed.order(), std::move(bits));
      if (o.index_.contains(k)) continue;
      if (o.members_.size() >= limit) throw Error(ErrorCode::LimitExceeded, "orbit exceeds the exploration limit");
      o.index_.emplace(k, o.members_.size());
      o.members_.push_back(std::move(k));
      o.parent_.push_back(static_cast<std::ptrdiff_t>(head));
      o.via_.push_back(g);
    }
  }
  return o;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Equivalent: return "equivalent";
    case Verdict::NotEquivalent: return "not-equivalent";
    case Verdict::Indeterminate: return "indeterminate";
  }
  return "?";
}

namespace {

struct SearchSide {
  std::vector<LatticeKnot> nodes;
  std::vector<std::ptrdiff_t> parent;
  std::vector<std::size_t> via;
  std::vector<std::size_t> depth;
  std::unordered_map<LatticeKnot, std::size_t> index;
  std::size_t level_begin = 0;

  explicit SearchSide(const LatticeKnot& root) {
    nodes.push_back(root);
    parent.push_back(-1);
    via.push_back(0);
    depth.push_back(0);
    index.emplace(root, 0);
  }

  std::size_t frontier() const { return nodes.size() - level_begin; }

  std::vector<std::size_t> path(std::size_t i) const {
    std::vector<std::size_t> out;
    for (auto j = static_cast<std::ptrdiff_t>(i); parent[static_cast<std::size_t>(j)] >= 0;
         j = parent[static_cast<std::size_t>(j)]) {
      out.push_back(via[static_cast<std::size_t>(j)]);
    }
    std::reverse(out.begin(), out.end());
    return out;
  }
};

}  // namespace

EquivalenceResult equivalent(const LatticeKnot& k1, const LatticeKnot& k2, const Order& order,
                             bool inextensible, std::size_t limit) {
  const auto a = lift_to(k1, order);
  const auto b = lift_to(k2, order);
  if (!a || !b) throw Error(ErrorCode::OutOfBounds, "input knot does not fit the order");
  if (*a == *b) return {Verdict::Equivalent, {}, 1};

  const GeneratorSet gens(order, inextensible);
  SearchSide side[2] = {SearchSide(*a), SearchSide(*b)};

  while (true) {
    const int s = side[0].frontier() <= side[1].frontier() ? 0 : 1;
    SearchSide& me = side[s];
    const SearchSide& other = side[1 - s];
    const std::size_t end = me.nodes.size();
    std::optional<std::pair<std::size_t, std::size_t>> best;  // (my index, other index)
    std::size_t best_len = 0;
    for (std::size_t i = me.level_begin; i < end; ++i) {
      for (std::size_t g = 0; g < gens.size(); ++g) {
        EdgeSet bits = me.nodes[i].bits();
        if (!gens.moves()[g].apply_in_place(bits)) continue;
        auto k = LatticeKnot::assume_valid(order, std::move(bits));
        if (me.index.contains(k)) continue;
        const std::size_t idx = me.nodes.size();
        me.index.emplace(k, idx);
        me.parent.push_back(static_cast<std::ptrdiff_t>(i));
        me.via.push_back(g);
        me.depth.push_back(me.depth[i] + 1);
        if (const auto it = other.index.find(k); it != other.index.end()) {
          const std::size_t len = me.depth[idx] + other.depth[it->second];
          if (!best || len < best_len) {
            best = {idx, it->second};
            best_len = len;
          }
        }
        me.nodes.push_back(std::move(k));
      }
    }
    me.level_begin = end;
    const std::size_t explored = side[0].nodes.size() + side[1].nodes.size();
    if (best) {
      const auto& s0 = side[0];
      const auto& s1 = side[1];
      const std::size_t i0 = s == 0 ? best->first : best->second;
      const std::size_t i1 = s == 0 ? best->second : best->first;
      std::vector<MoveId> word;
      for (auto g : s0.path(i0)) word.push_back(gens.moves()[g].id());
      auto back = s1.path(i1);
      std::reverse(back.begin(), back.end());
      for (auto g : back) word.push_back(gens.moves()[g].id());
      return {Verdict::Equivalent, std::move(word), explored};
    }
    if (me.frontier() == 0) return {Verdict::NotEquivalent, {}, explored};
    if (explored > limit) return {Verdict::Indeterminate, {}, explored};
  }
}

std::optional<LatticeKnot> lift_to(const LatticeKnot& k, const Order& target) {
  if (k.order().ell() > target.ell()) return std::nullopt;
  LatticeKnot cur = k;
  while (cur.order().ell() < target.ell()) cur = refine(cur);
  if (cur.order().extent() > target.extent()) return std::nullopt;
  return inject(cur, target);
}

EscalationResult equivalent_escalating(const LatticeKnot& k1, const LatticeKnot& k2, const Order& start,
                                       int max_n, int max_ell, bool inextensible, std::size_t limit) {
  const int n0 = start.n();
  if (n0 < 1) throw Error(ErrorCode::InvalidBound, "escalation needs an integral starting bound");
  EscalationResult result{Verdict::Indeterminate, std::nullopt, {}, {}};
  for (int ell = start.ell(); ell <= max_ell; ++ell) {
    for (int n = n0; n <= max_n; ++n) {
      const Order order = Order::bounded(ell, n);
      if (!lift_to(k1, order) || !lift_to(k2, order)) {
        result.trail.push_back({order, std::nullopt});
        continue;
      }
      auto r = equivalent(k1, k2, order, inextensible, limit);
      result.trail.push_back({order, r.verdict});
      if (r.verdict == Verdict::Equivalent) {
        result.verdict = Verdict::Equivalent;
        result.decided_at = order;
        result.witness = std::move(r.witness);
        return result;
      }
    }
  }
  return result;
}

Coord span(const LatticeKnot& k) {
  const auto verts = k.vertices();
  Coord best = 0;
  for (int axis = 0; axis < 3; ++axis) {
    const auto [lo, hi] = std::minmax_element(verts.begin(), verts.end(), [&](const Vertex& x, const Vertex& y) {
      return x.c[static_cast<std::size_t>(axis)] < y.c[static_cast<std::size_t>(axis)];
    });
    best = std::max(best, hi->c[static_cast<std::size_t>(axis)] - lo->c[static_cast<std::size_t>(axis)]);
  }
  return best;
}

LatticeNumberResult lattice_number(const LatticeKnot& k, int max_n, std::size_t limit) {
  if (k.order().ell() != 0) throw Error(ErrorCode::InvalidArgument, "lattice number needs an order-0 knot");
  const Order order = Order::bounded(0, max_n);
  const auto seed = lift_to(k, order);
  if (!seed) throw Error(ErrorCode::InvalidBound, "knot does not fit in the search box");

  const GeneratorSet gens(order);
  std::unordered_map<LatticeKnot, bool> seen;
  std::deque<LatticeKnot> queue{*seed};
  seen.emplace(*seed, true);
  Coord best = span(*seed);
  while (!queue.empty() && best > 1) {
    const LatticeKnot cur = std::move(queue.front());
    queue.pop_front();
    for (const auto& m : gens.moves()) {
      EdgeSet bits = cur.bits();
      if (!m.apply_in_place(bits)) continue;
      auto next = LatticeKnot::assume_valid(order, std::move(bits));
      if (seen.contains(next)) continue;
      if (seen.size() >= limit) return {best, false, seen.size()};
      best = std::min(best, span(next));
      seen.emplace(next, true);
      queue.push_back(std::move(next));
    }
  }
  return {best, true, seen.size()};
}

std::vector<MoveId> random_walk(const LatticeKnot& start, const GeneratorSet& gens, std::size_t length,
                                std::mt19937_64& rng) {
  std::vector<MoveId> word;
  EdgeSet bits = start.bits();
  std::vector<std::size_t> firing;
  for (std::size_t step = 0; step < length; ++step) {
    firing.clear();
    for (std::size_t g = 0; g < gens.size(); ++g) {
      if (gens.moves()[g].match(bits) != CompiledMove::Match::None) firing.push_back(g);
    }
    if (firing.empty()) break;
    const auto pick = firing[std::uniform_int_distribution<std::size_t>(0, firing.size() - 1)(rng)];
    gens.moves()[pick].apply_in_place(bits);
    word.push_back(gens.moves()[pick].id());
  }
  return word;
}

std::vector<LatticeKnot> random_knots(const Order& order, std::size_t count, std::uint64_t seed,
                                      std::size_t steps) {
  std::mt19937_64 rng(seed);
  const GeneratorSet gens(order);
  std::vector<std::pair<Vertex, Direction>> faces;
  for (const auto& m : gens.moves()) {
    if (m.id().kind == MoveKind::Tug && m.id().variant == 0) faces.emplace_back(m.id().anchor, m.id().dir);
  }
  auto square = [&](std::size_t f) {
    LatticeGraph g(order);
    for (const auto& e : face_edges(faces[f].first, faces[f].second)) g.insert(e);
    return g;
  };
  std::uniform_int_distribution<std::size_t> pick(0, faces.size() - 1);
  std::vector<LatticeKnot> out;
  while (out.size() < count) {
    LatticeGraph g = square(pick(rng));
    if (rng() % 3 == 0) {
      const LatticeGraph extra = square(pick(rng));
      bool clash = false;
      for (const auto& e : extra.edges()) {
        clash = clash || g.degree(e.origin) > 0 || g.degree(e.target()) > 0;
      }
      if (!clash) {
        for (const auto& e : extra.edges()) g.insert(e);
      }
    }
    const LatticeKnot k = validate_knot(g);
    const auto word = random_walk(k, gens, steps, rng);
    out.push_back(apply_word(word, k));
  }
  return out;
}

}  // namespace latknot
