#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "latknot/lattice.hpp"
#include "latknot/moves.hpp"

namespace latknot {

/// Generators g1, ..., gk read as g1 ^ (g2 ^ (... ^ gk)) with g ^ h = h^-1 g h.
using QuandleWord = std::vector<MoveId>;

/// reverse(h) + g + h.
std::vector<MoveId> quandle(std::span<const MoveId> g, std::span<const MoveId> h);
/// Flat move word of a quandle word.
std::vector<MoveId> expand(const QuandleWord& w);
/// Evaluates the quandle word recursively without expanding it.
LatticeKnot evaluate(const QuandleWord& w, const LatticeKnot& k);

/// Proper rotation of the cube group as a signed permutation matrix.
struct Rotation {
  std::array<std::array<int, 3>, 3> m;
  static const std::vector<Rotation>& all();
};

/// Rotates a move about a centre given in doubled lattice coordinates.
std::optional<MoveId> rotate_move(const MoveId& m, const Rotation& r, const Vertex& center2);

/// Candidate image of a generator under refinement, at order ell + 1.
QuandleWord refine_generator(const MoveId& m);

struct ConjectureReport {
  MoveId generator;
  QuandleWord word;
  std::size_t restriction_checked = 0;
  std::size_t restriction_failures = 0;
  std::vector<LatticeKnot> restriction_counterexamples;
  std::size_t involution_images_checked = 0;
  std::size_t involution_images_failures = 0;
  std::size_t involution_fine_checked = 0;
  std::size_t involution_fine_failures = 0;
  /// The unconjugated product g1 g2 ... gk, for contrast.
  std::size_t naive_involution_failures = 0;
};

/// `sample` at the generator's order; `fine_sample` at the refined order.
ConjectureReport conjecture_check(const MoveId& m, std::span<const LatticeKnot> sample,
                                  std::span<const LatticeKnot> fine_sample = {});

}  // namespace latknot
