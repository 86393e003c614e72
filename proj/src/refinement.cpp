#include "latknot/refinement.hpp"

#include <algorithm>
#include <set>

#include "latknot/error.hpp"

namespace latknot {

std::vector<MoveId> quandle(std::span<const MoveId> g, std::span<const MoveId> h) {
  std::vector<MoveId> out(h.rbegin(), h.rend());
  out.insert(out.end(), g.begin(), g.end());
  out.insert(out.end(), h.begin(), h.end());
  return out;
}

std::vector<MoveId> expand(const QuandleWord& w) {
  if (w.empty()) return {};
  std::vector<MoveId> acc{w.back()};
  for (auto it = std::next(w.rbegin()); it != w.rend(); ++it) acc = quandle(std::span(&*it, 1), acc);
  return acc;
}

namespace {

LatticeKnot evaluate_from(const QuandleWord& w, std::size_t i, const LatticeKnot& k) {
  if (i + 1 == w.size()) return apply(w[i], k);
  // (g ^ h)(k) = h^-1(g(h(k))); h is an involution, so h^-1 = h.
  const LatticeKnot inner = evaluate_from(w, i + 1, k);
  return evaluate_from(w, i + 1, apply(w[i], inner));
}

}  // namespace

LatticeKnot evaluate(const QuandleWord& w, const LatticeKnot& k) {
  if (w.empty()) return k;
  return evaluate_from(w, 0, k);
}

const std::vector<Rotation>& Rotation::all() {
  static const std::vector<Rotation> rotations = [] {
    std::vector<Rotation> out;
    std::array<int, 3> perm{0, 1, 2};
    do {
      for (int signs = 0; signs < 8; ++signs) {
        Rotation r{};
        for (int row = 0; row < 3; ++row) {
          r.m[static_cast<std::size_t>(row)][static_cast<std::size_t>(perm[static_cast<std::size_t>(row)])] =
              (signs >> row) & 1 ? -1 : 1;
        }
        const auto& a = r.m;
        const int det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
                        a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
                        a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
        if (det == 1) out.push_back(r);
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
  }();
  return rotations;
}

namespace {

Vertex rotate_point(const Vertex& x, const Rotation& r, const Vertex& center2) {
  Vertex out;
  for (std::size_t i = 0; i < 3; ++i) {
    int s = 0;
    for (std::size_t j = 0; j < 3; ++j) s += r.m[i][j] * (2 * x.c[j] - center2.c[j]);
    out.c[i] = (s + center2.c[i]) / 2;
  }
  return out;
}

Edge rotate_edge(const Edge& e, const Rotation& r, const Vertex& center2) {
  const Vertex a = rotate_point(e.origin, r, center2);
  const Vertex b = rotate_point(e.target(), r, center2);
  const Vertex lo = std::min(a, b);
  for (int p = 1; p <= 3; ++p) {
    if (lo.step(Direction(p)) == std::max(a, b)) return Edge{lo, Direction(p)};
  }
  throw Error(ErrorCode::InvalidArgument, "rotation centre is not a lattice symmetry");
}

std::set<Edge> as_set(const std::vector<Edge>& edges) { return {edges.begin(), edges.end()}; }

}  // namespace

std::optional<MoveId> rotate_move(const MoveId& m, const Rotation& r, const Vertex& center2) {
  const auto cfg = move_config(m);
  std::set<Edge> a;
  std::set<Edge> b;
  for (const auto& e : cfg.side_a) a.insert(rotate_edge(e, r, center2));
  for (const auto& e : cfg.side_b) b.insert(rotate_edge(e, r, center2));
  std::vector<Vertex> region;
  for (const auto& v : cfg.region_vertices) region.push_back(rotate_point(v, r, center2));
  Vertex lo = region.front();
  for (const auto& v : region) {
    for (std::size_t i = 0; i < 3; ++i) lo.c[i] = std::min(lo.c[i], v.c[i]);
  }
  const int variants = m.kind == MoveKind::Wiggle ? 2 : 4;
  for (int p = 1; p <= 3; ++p) {
    for (int q = 0; q < variants; ++q) {
      const MoveId cand = MoveId::make(m.kind, lo, p, q);
      const auto c = move_config(cand);
      const auto ca = as_set(c.side_a);
      const auto cb = as_set(c.side_b);
      if ((ca == a && cb == b) || (ca == b && cb == a)) return cand;
    }
  }
  return std::nullopt;
}

namespace {

QuandleWord base_word(const MoveId& base) {
  const Vertex A = 2 * base.anchor;
  const Direction p = base.dir;
  const Direction l = left_perm(p);
  const Direction r = right_perm(p);
  const int pv = p.value();
  switch (base.kind) {
    case MoveKind::Tug:
      return {tug(A.step(l), pv, 1), tug(A.step(r).step(l), pv, 3), tug(A.step(r), pv, 0), tug(A, pv, 0)};
    case MoveKind::Wiggle:
      return {wiggle(A.step(r).step(l), pv, 0), wiggle(A.step(l), pv, 0), wiggle(A.step(r), pv, 0),
              wiggle(A, pv, 0)};
    case MoveKind::Wag: {
      const Direction e1(1), e2(2), e3(3);
      return {wiggle(A.step(e3), 2, 0),         wag(A.step(e1).step(e3), 1, 0), wiggle(A.step(e3), 3, 1),
              wiggle(A, 1, 1),                  wiggle(A.step(e1, 2), 1, 0),    wiggle(A.step(e2), 2, 0),
              wag(A.step(e1).step(e2), 1, 0),   wiggle(A.step(e2), 3, 0)};
    }
  }
  throw Error(ErrorCode::UnsupportedVariant, "unknown move kind");
}

}  // namespace

QuandleWord refine_generator(const MoveId& m) {
  const MoveId base = MoveId::make(m.kind, m.anchor, m.kind == MoveKind::Wag ? 1 : m.dir.value(), 0);
  const Vertex coarse_center = 2 * m.anchor + Vertex{{1, 1, 1}};
  const Vertex fine_center = 2 * (2 * m.anchor + Vertex{{1, 1, 1}});
  for (const auto& rot : Rotation::all()) {
    const auto image = rotate_move(base, rot, coarse_center);
    if (!image || !(*image == m)) continue;
    QuandleWord out;
    for (const auto& g : base_word(base)) {
      const auto moved = rotate_move(g, rot, fine_center);
      if (!moved) break;
      out.push_back(*moved);
    }
    if (out.size() == base_word(base).size()) return out;
  }
  throw Error(ErrorCode::UnsupportedVariant, "no symmetry carries the base pattern to " + m.to_string());
}

ConjectureReport conjecture_check(const MoveId& m, std::span<const LatticeKnot> sample,
                                  std::span<const LatticeKnot> fine_sample) {
  ConjectureReport rep{m, refine_generator(m), 0, 0, {}, 0, 0, 0, 0, 0};
  const auto word = expand(rep.word);
  if (!sample.empty()) {
    const Order fine = sample.front().order().refined();
    for (const auto& g : word) {
      if (!in_bounds(g, fine)) throw Error(ErrorCode::OutOfBounds, "refined word leaves the refined box");
    }
  }
  auto involutive = [&](const std::vector<MoveId>& w, const LatticeKnot& k) {
    return apply_word(w, apply_word(w, k)) == k;
  };
  for (const auto& k : sample) {
    const LatticeKnot fine = refine(k);
    const LatticeKnot lhs = apply_word(word, fine);
    const LatticeKnot rhs = refine(apply(m, k));
    ++rep.restriction_checked;
    if (!(lhs == rhs)) {
      ++rep.restriction_failures;
      if (rep.restriction_counterexamples.size() < 5) rep.restriction_counterexamples.push_back(k);
    }
    ++rep.involution_images_checked;
    if (!involutive(word, fine)) ++rep.involution_images_failures;
    if (!involutive(rep.word, fine)) ++rep.naive_involution_failures;
  }
  for (const auto& k : fine_sample) {
    ++rep.involution_fine_checked;
    if (!involutive(word, k)) ++rep.involution_fine_failures;
    if (!involutive(rep.word, k)) ++rep.naive_involution_failures;
  }
  return rep;
}

}  // namespace latknot
