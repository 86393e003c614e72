#include "latknot/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>

#include "latknot/error.hpp"

namespace latknot {

namespace {

Point3 sub(const Point3& a, const Point3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Point3 add(const Point3& a, const Point3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
Point3 scale(double s, const Point3& a) { return {s * a[0], s * a[1], s * a[2]}; }
double dot(const Point3& a, const Point3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
Point3 cross(const Point3& a, const Point3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

void drop_repeats(Polyline& line) {
  line.erase(std::unique(line.begin(), line.end()), line.end());
  while (line.size() > 1 && line.front() == line.back()) line.pop_back();
}

}  // namespace

SampledCurve::SampledCurve(std::vector<Polyline> components) : components_(std::move(components)) {
  if (components_.empty()) throw Error(ErrorCode::InvalidArgument, "curve has no components");
  for (auto& c : components_) {
    drop_repeats(c);
    if (c.size() < 3) throw Error(ErrorCode::InvalidArgument, "curve component needs at least 3 samples");
  }
}

Vertex preferred_vertex_map(const Point3& x, int ell) {
  Vertex v;
  for (std::size_t i = 0; i < 3; ++i) v.c[i] = static_cast<Coord>(std::floor(std::ldexp(x[i], ell)));
  return v;
}

LatticeKnot pv_approx(const SampledCurve& curve, int ell, int n) {
  const Order order = Order::bounded(ell, n);
  LatticeGraph all(order);
  std::set<Vertex> used;
  for (const auto& comp : curve.components()) {
    std::vector<Vertex> verts;
    for (const auto& x : comp) {
      for (double c : x) {
        if (!(c >= 0.0 && c <= static_cast<double>(n))) throw Error(ErrorCode::OutOfBounds, "sample outside the box");
      }
      verts.push_back(preferred_vertex_map(x, ell));
    }
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    while (verts.size() > 1 && verts.front() == verts.back()) verts.pop_back();
    if (verts.size() < 2) throw Error(ErrorCode::TooCoarse, "a component collapses to one vertex");

    LatticeGraph g(order);
    for (std::size_t i = 0; i < verts.size(); ++i) {
      Vertex cur = verts[i];
      const Vertex& to = verts[(i + 1) % verts.size()];
      for (int p = 1; p <= 3; ++p) {
        const Direction d(p);
        while (cur[d] < to[d]) {
          g.insert(Edge{cur, d});
          cur = cur.step(d);
        }
        while (cur[d] > to[d]) {
          cur = cur.step(d, -1);
          g.insert(Edge{cur, d});
        }
      }
    }
    LatticeKnot k = [&] {
      try {
        return validate_knot(g);
      } catch (const Error& e) {
        throw Error(ErrorCode::TooCoarse, e.what());
      }
    }();
    if (component_count(k) != 1) throw Error(ErrorCode::TooCoarse, "a component splits into several loops");
    for (const auto& v : k.vertices()) {
      if (!used.insert(v).second) throw Error(ErrorCode::TooCoarse, "components touch after approximation");
    }
    for (const auto& e : k.edges()) all.insert(e);
  }
  return validate_knot(all);
}

double length(const LatticeKnot& k) { return static_cast<double>(k.edge_count()) * k.order().unit(); }

std::vector<Polyline> polygons(const LatticeKnot& k) {
  std::vector<Polyline> out;
  const double u = k.order().unit();
  for (const auto& comp : components(k)) {
    Polyline line;
    for (const auto& v : trace_cycle(comp)) line.push_back({u * v.c[0], u * v.c[1], u * v.c[2]});
    out.push_back(std::move(line));
  }
  return out;
}

namespace {

double segment_distance(const Point3& p1, const Point3& q1, const Point3& p2, const Point3& q2) {
  const Point3 d1 = sub(q1, p1);
  const Point3 d2 = sub(q2, p2);
  const Point3 r = sub(p1, p2);
  const double a = dot(d1, d1);
  const double e = dot(d2, d2);
  const double f = dot(d2, r);
  const double c = dot(d1, r);
  const double b = dot(d1, d2);
  const double denom = a * e - b * b;
  double s = denom > 1e-15 ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
  double t = (b * s + f) / e;
  if (t < 0) {
    t = 0;
    s = std::clamp(-c / a, 0.0, 1.0);
  } else if (t > 1) {
    t = 1;
    s = std::clamp((b - c) / a, 0.0, 1.0);
  }
  const Point3 diff = sub(add(p1, scale(s, d1)), add(p2, scale(t, d2)));
  return std::sqrt(dot(diff, diff));
}

Point3 unit_or_zero(const Point3& v) {
  const double n = std::sqrt(dot(v, v));
  return n < 1e-300 ? Point3{0, 0, 0} : scale(1.0 / n, v);
}

double safe_asin(double x) { return std::asin(std::clamp(x, -1.0, 1.0)); }

// Solid-angle contribution of segment pair (p1,p2) x (p3,p4), divided by 4 pi.
double pair_linking(const Point3& p1, const Point3& p2, const Point3& p3, const Point3& p4) {
  const Point3 r12 = sub(p2, p1);
  const Point3 r34 = sub(p4, p3);
  const Point3 r13 = sub(p3, p1);
  const Point3 r14 = sub(p4, p1);
  const Point3 r23 = sub(p3, p2);
  const Point3 r24 = sub(p4, p2);
  const double orient = dot(cross(r34, r12), r13);
  if (std::abs(orient) < 1e-14) return 0.0;
  const Point3 n1 = unit_or_zero(cross(r13, r14));
  const Point3 n2 = unit_or_zero(cross(r14, r24));
  const Point3 n3 = unit_or_zero(cross(r24, r23));
  const Point3 n4 = unit_or_zero(cross(r23, r13));
  const double omega =
      safe_asin(dot(n1, n2)) + safe_asin(dot(n2, n3)) + safe_asin(dot(n3, n4)) + safe_asin(dot(n4, n1));
  return (orient > 0 ? omega : -omega) / (4 * std::numbers::pi);
}

}  // namespace

double signed_linking(const Polyline& a, const Polyline& b) {
  double total = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Point3& p1 = a[i];
    const Point3& p2 = a[(i + 1) % a.size()];
    for (std::size_t j = 0; j < b.size(); ++j) {
      const Point3& p3 = b[j];
      const Point3& p4 = b[(j + 1) % b.size()];
      if (segment_distance(p1, p2, p3, p4) < 1e-12) {
        throw Error(ErrorCode::DegenerateGeometry, "segments of different components intersect");
      }
      total += pair_linking(p1, p2, p3, p4);
    }
  }
  return total;
}

double gauss_linking(const LatticeKnot& k) {
  const auto polys = polygons(k);
  if (polys.size() != 2) throw Error(ErrorCode::NotTwoComponents, "linking needs exactly two components");
  return std::abs(signed_linking(polys[0], polys[1]));
}

std::string_view to_string(Functional f) { return f == Functional::Length ? "length" : "link"; }

double evaluate(Functional f, const LatticeKnot& k) {
  return f == Functional::Length ? length(k) : gauss_linking(k);
}

double variational_quotient(Functional f, const LatticeKnot& k, MoveKind kind, const Vertex& a, Direction p) {
  const double u = k.order().unit();
  const LatticeKnot moved = total_move(kind, a, p, k);
  return (evaluate(f, moved) - evaluate(f, k)) / (u * u);
}

std::array<double, 3> variational_gradient(Functional f, const LatticeKnot& k, MoveKind kind, const Vertex& a) {
  return {variational_quotient(f, k, kind, a, Direction(1)), variational_quotient(f, k, kind, a, Direction(2)),
          variational_quotient(f, k, kind, a, Direction(3))};
}

VariationalReport variational_derivative(Functional f, const SampledCurve& curve, MoveKind kind, const Point3& a,
                                         Direction p, std::span<const int> ells, int n) {
  VariationalReport r{{}, {}, f, kind, a, p};
  for (int ell : ells) {
    const LatticeKnot k = pv_approx(curve, ell, n);
    r.orders.push_back(ell);
    r.quotients.push_back(variational_quotient(f, k, kind, preferred_vertex_map(a, ell), p));
  }
  return r;
}

}  // namespace latknot
