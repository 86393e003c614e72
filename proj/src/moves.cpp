#include "latknot/moves.hpp"

#include <algorithm>
#include <sstream>

#include "latknot/error.hpp"

namespace latknot {

std::string_view to_string(MoveKind kind) {
  switch (kind) {
    case MoveKind::Tug: return "tug";
    case MoveKind::Wiggle: return "wiggle";
    case MoveKind::Wag: return "wag";
  }
  return "?";
}

MoveId MoveId::make(MoveKind kind, Vertex anchor, int p, int q) {
  if (q < 0 || q > 3) throw Error(ErrorCode::InvalidArgument, "variant q must be in 0..3");
  if (kind == MoveKind::Wiggle) q %= 2;
  return MoveId{kind, anchor, Direction(p), q};
}

std::string MoveId::to_string() const {
  std::ostringstream os;
  os << latknot::to_string(kind) << "((" << anchor.c[0] << "," << anchor.c[1] << "," << anchor.c[2]
     << ")," << dir.value() << "," << variant << ")";
  return os.str();
}

std::array<Edge, 4> face_edges(const Vertex& a, Direction p) {
  const Direction l = left_perm(p);
  const Direction r = right_perm(p);
  return {Edge{a, l}, Edge{a.step(l), r}, Edge{a.step(r), l}, Edge{a, r}};
}

std::array<Edge, 4> face_edges(const Vertex& a, Direction p, const Order& order) {
  auto edges = face_edges(a, p);
  for (const auto& e : edges) {
    if (!order.contains(e)) throw Error(ErrorCode::OutOfBounds, "face leaves the order's box");
  }
  return edges;
}

namespace {

std::array<Vertex, 4> face_vertices(const Vertex& a, Direction p) {
  const Direction l = left_perm(p);
  const Direction r = right_perm(p);
  return {a, a.step(l), a.step(l).step(r), a.step(r)};
}

void add_face(MoveConfig& cfg, const Vertex& a, Direction p) {
  for (const auto& e : face_edges(a, p)) {
    if (std::find(cfg.region_edges.begin(), cfg.region_edges.end(), e) == cfg.region_edges.end()) {
      cfg.region_edges.push_back(e);
    }
  }
  for (const auto& v : face_vertices(a, p)) {
    if (std::find(cfg.region_vertices.begin(), cfg.region_vertices.end(), v) == cfg.region_vertices.end()) {
      cfg.region_vertices.push_back(v);
    }
  }
}

MoveConfig tug_config(const Vertex& a, Direction p, int q) {
  MoveConfig cfg;
  const auto f = face_edges(a, p);
  for (int i = 0; i < 4; ++i) (i == q ? cfg.side_a : cfg.side_b).push_back(f[static_cast<std::size_t>(i)]);
  add_face(cfg, a, p);
  return cfg;
}

MoveConfig wiggle_config(const Vertex& a, Direction p, int q) {
  MoveConfig cfg;
  const Direction l = left_perm(p);
  const Direction r = right_perm(p);
  if (q == 0) {
    cfg.side_a = {Edge{a, l}, Edge{a, r}};
    cfg.side_b = {Edge{a.step(r), l}, Edge{a.step(l), r}};
  } else {
    cfg.side_a = {Edge{a.step(r), l}, Edge{a, r}};
    cfg.side_b = {Edge{a, l}, Edge{a.step(l), r}};
  }
  add_face(cfg, a, p);
  return cfg;
}

MoveConfig wag_config(const Vertex& a, Direction p, int q) {
  const Direction l = left_perm(p);
  const Direction r = right_perm(p);
  static constexpr int du[4] = {0, 1, 1, 0};
  static constexpr int dv[4] = {0, 0, 1, 1};
  const int uc = du[q];
  const int vc = dv[q];

  MoveConfig cfg;
  // Staple displaced along l, lying in the face normal to r at the hinge.
  Vertex base_l = a.step(r, vc);
  cfg.side_a = {Edge{base_l, l}, Edge{base_l.step(p), l}, Edge{base_l.step(l, 1 - uc), p}};
  // Staple displaced along r, lying in the face normal to l at the hinge.
  Vertex base_r = a.step(l, uc);
  cfg.side_b = {Edge{base_r, r}, Edge{base_r.step(p), r}, Edge{base_r.step(r, 1 - vc), p}};
  add_face(cfg, base_l, r);
  add_face(cfg, base_r, l);
  return cfg;
}

}  // namespace

MoveConfig move_config(const MoveId& m) {
  switch (m.kind) {
    case MoveKind::Tug: return tug_config(m.anchor, m.dir, m.variant);
    case MoveKind::Wiggle: return wiggle_config(m.anchor, m.dir, m.variant);
    case MoveKind::Wag: return wag_config(m.anchor, m.dir, m.variant);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown move kind");
}

bool in_bounds(const MoveId& m, const Order& order) {
  const auto cfg = move_config(m);
  return std::all_of(cfg.region_vertices.begin(), cfg.region_vertices.end(),
                     [&](const Vertex& v) { return order.contains(v); });
}

MoveConfig move_config(const MoveId& m, const Order& order) {
  auto cfg = move_config(m);
  for (const auto& v : cfg.region_vertices) {
    if (!order.contains(v)) throw Error(ErrorCode::OutOfBounds, m.to_string() + " leaves the order's box");
  }
  return cfg;
}

CompiledMove::CompiledMove(const MoveId& m, const Order& order) : id_(m) {
  const auto cfg = move_config(m, order);
  for (const auto& e : cfg.region_edges) region_edges_.push_back(order.edge_index(e));
  auto edge_bit = [&](const Edge& e) {
    const auto it = std::find(cfg.region_edges.begin(), cfg.region_edges.end(), e);
    return std::uint32_t{1} << (it - cfg.region_edges.begin());
  };
  auto vertex_bit = [&](const Vertex& v) {
    const auto it = std::find(cfg.region_vertices.begin(), cfg.region_vertices.end(), v);
    return std::uint32_t{1} << (it - cfg.region_vertices.begin());
  };
  for (const auto& e : cfg.side_a) {
    a_edges_ |= edge_bit(e);
    a_vertices_ |= vertex_bit(e.origin) | vertex_bit(e.target());
  }
  for (const auto& e : cfg.side_b) {
    b_edges_ |= edge_bit(e);
    b_vertices_ |= vertex_bit(e.origin) | vertex_bit(e.target());
  }
  for (const auto& v : cfg.region_vertices) {
    std::vector<std::size_t> incident;
    for (int p = 1; p <= 3; ++p) {
      const Direction dir(p);
      if (v[dir] < order.extent()) incident.push_back(order.edge_index(Edge{v, dir}));
      if (v[dir] > 0) incident.push_back(order.edge_index(Edge{v.step(dir, -1), dir}));
    }
    vertex_incident_.push_back(std::move(incident));
  }
}

CompiledMove::Match CompiledMove::match(const EdgeSet& bits) const {
  std::uint32_t edges = 0;
  for (std::size_t i = 0; i < region_edges_.size(); ++i) {
    if (bits.test(region_edges_[i])) edges |= std::uint32_t{1} << i;
  }
  if (edges != a_edges_ && edges != b_edges_) return Match::None;
  std::uint32_t verts = 0;
  for (std::size_t i = 0; i < vertex_incident_.size(); ++i) {
    for (auto e : vertex_incident_[i]) {
      if (bits.test(e)) {
        verts |= std::uint32_t{1} << i;
        break;
      }
    }
  }
  if (edges == a_edges_ && verts == a_vertices_) return Match::SideA;
  if (edges == b_edges_ && verts == b_vertices_) return Match::SideB;
  return Match::None;
}

bool CompiledMove::apply_in_place(EdgeSet& bits) const {
  if (match(bits) == Match::None) return false;
  const std::uint32_t swap = a_edges_ | b_edges_;
  for (std::size_t i = 0; i < region_edges_.size(); ++i) {
    if ((swap >> i) & 1u) bits.flip(region_edges_[i]);
  }
  return true;
}

LatticeKnot apply(const CompiledMove& m, const LatticeKnot& k) {
  EdgeSet bits = k.bits();
  if (!m.apply_in_place(bits)) return k;
  return LatticeKnot::assume_valid(k.order(), std::move(bits));
}

LatticeKnot apply(const MoveId& m, const LatticeKnot& k) { return apply(CompiledMove(m, k.order()), k); }

CompiledMove::Match match(const MoveId& m, const LatticeKnot& k) {
  return CompiledMove(m, k.order()).match(k.bits());
}

bool fires(const MoveId& m, const LatticeKnot& k) { return match(m, k) != CompiledMove::Match::None; }

LatticeKnot apply_word(std::span<const MoveId> word, const LatticeKnot& k) {
  LatticeKnot cur = k;
  for (const auto& m : word) cur = apply(m, cur);
  return cur;
}

std::vector<MoveId> generators(const Order& order, bool inextensible) {
  std::vector<MoveId> out;
  const Coord n = order.extent();
  for (MoveKind kind : {MoveKind::Tug, MoveKind::Wiggle, MoveKind::Wag}) {
    if (inextensible && kind == MoveKind::Tug) continue;
    const int variants = kind == MoveKind::Wiggle ? 2 : 4;
    for (Coord i = 0; i <= n; ++i) {
      for (Coord j = 0; j <= n; ++j) {
        for (Coord k = 0; k <= n; ++k) {
          const Vertex a{{i, j, k}};
          for (int p = 1; p <= 3; ++p) {
            for (int q = 0; q < variants; ++q) {
              auto m = MoveId::make(kind, a, p, q);
              if (in_bounds(m, order)) out.push_back(m);
            }
          }
        }
      }
    }
  }
  return out;
}

GeneratorSet::GeneratorSet(const Order& order, bool inextensible) : order_(order) {
  for (const auto& m : generators(order, inextensible)) moves_.emplace_back(m, order);
}

LatticeKnot total_move(MoveKind kind, const Vertex& a, Direction p, const LatticeKnot& k) {
  const int variants = kind == MoveKind::Wiggle ? 2 : 4;
  LatticeKnot cur = k;
  for (int q = 0; q < variants; ++q) cur = apply(MoveId::make(kind, a, p.value(), q), cur);
  return cur;
}

namespace {

enum class FaceState { HingeOnly, Staple, HingeEnds, Full, Other };

FaceState face_state(const MoveId& hinge_tug, const Vertex& a, const LatticeKnot& k) {
  switch (match(hinge_tug, k)) {
    case CompiledMove::Match::SideA: return FaceState::HingeOnly;
    case CompiledMove::Match::SideB: return FaceState::Staple;
    case CompiledMove::Match::None: break;
  }
  const auto edges = face_edges(hinge_tug.anchor, hinge_tug.dir);
  const auto present = std::count_if(edges.begin(), edges.end(), [&](const Edge& e) { return k.contains(e); });
  if (present == 4) return FaceState::Full;
  if (present == 0) {
    const Vertex far = a.step(Direction(1));
    int on = 0;
    bool ends = k.has_vertex(a) && k.has_vertex(far);
    for (const auto& v : face_vertices(hinge_tug.anchor, hinge_tug.dir)) on += k.has_vertex(v) ? 1 : 0;
    if (ends && on == 2) return FaceState::HingeEnds;
  }
  return FaceState::Other;
}

}  // namespace

WagTugLemmaReport wag_tug_lemma_check(const Vertex& a, const LatticeKnot& k) {
  const MoveId w = wag(a, 1, 0);
  const MoveId t2 = tug(a, 2, 3);
  const MoveId t3 = tug(a, 3, 0);
  // Validates that the cube lies in bounds.
  CompiledMove(w, k.order());

  const LatticeKnot target = apply(w, k);
  const MoveId p1[] = {t2, t3, t2};
  const MoveId p2[] = {t3, t2, t3};

  WagTugLemmaReport r{};
  r.equality_1 = apply_word(p1, k) == target;
  r.equality_2 = apply_word(p2, k) == target;
  const bool f2 = fires(t2, k);
  const bool f3 = fires(t3, k);
  r.condition_1 = !f3 || f2;
  r.condition_2 = !f2 || f3;

  using S = FaceState;
  const S s2 = face_state(t2, a, k);
  const S s3 = face_state(t3, a, k);
  r.exact_1 = !((s2 == S::HingeOnly && s3 == S::Full) ||
                (s3 == S::Staple && s2 != S::HingeEnds && s2 != S::Staple) ||
                (s3 == S::HingeOnly && s2 != S::HingeOnly));
  r.exact_2 = !((s3 == S::HingeOnly && s2 == S::Full) ||
                (s2 == S::Staple && s3 != S::HingeEnds && s3 != S::Staple) ||
                (s2 == S::HingeOnly && s3 != S::HingeOnly));
  return r;
}

}  // namespace latknot
