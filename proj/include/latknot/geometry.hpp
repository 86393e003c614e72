#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "latknot/lattice.hpp"
#include "latknot/moves.hpp"

namespace latknot {

using Point3 = std::array<double, 3>;
using Polyline = std::vector<Point3>;

/// Closed sampled curve; each component keeps at least three distinct consecutive samples.
class SampledCurve {
 public:
  explicit SampledCurve(std::vector<Polyline> components);
  const std::vector<Polyline>& components() const noexcept { return components_; }

 private:
  std::vector<Polyline> components_;
};

Vertex preferred_vertex_map(const Point3& x, int ell);

/// Shortest-path join of the preferred vertices; throws TooCoarse or OutOfBounds.
LatticeKnot pv_approx(const SampledCurve& curve, int ell, int n);

double length(const LatticeKnot& k);

/// Closed polygon of each component in real coordinates.
std::vector<Polyline> polygons(const LatticeKnot& k);

/// Signed Gauss linking integral of two closed polygons, exact per segment pair.
double signed_linking(const Polyline& a, const Polyline& b);
/// |linking| of a two-component knot; throws NotTwoComponents.
double gauss_linking(const LatticeKnot& k);

enum class Functional { Length, Link };
std::string_view to_string(Functional f);

double evaluate(Functional f, const LatticeKnot& k);

/// (F[total move . K] - F[K]) / (2^-ell)^2 at one site.
double variational_quotient(Functional f, const LatticeKnot& k, MoveKind kind, const Vertex& a, Direction p);
std::array<double, 3> variational_gradient(Functional f, const LatticeKnot& k, MoveKind kind, const Vertex& a);

struct VariationalReport {
  std::vector<int> orders;
  std::vector<double> quotients;
  Functional functional;
  MoveKind kind;
  Point3 site;
  Direction dir;
};

VariationalReport variational_derivative(Functional f, const SampledCurve& curve, MoveKind kind, const Point3& a,
                                         Direction p, std::span<const int> ells, int n);

}  // namespace latknot
