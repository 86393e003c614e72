#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "latknot/geometry.hpp"
#include "latknot/lattice.hpp"
#include "latknot/moves.hpp"

namespace latknot {

/// "latticeknot v1", "order ell n", then "edge i j k p" lines; '#' starts a comment.
LatticeKnot parse_knot_file(std::string_view text);
/// Canonical form: sorted edges.
std::string serialize_knot(const LatticeKnot& k);

/// One move in script syntax, e.g. "L1 0 1 0 3 0".
MoveId parse_move(std::string_view line, std::size_t line_no = 1);
std::string format_move(const MoveId& m);
std::vector<MoveId> parse_move_script(std::string_view text, const Order& order);

/// "curve v1", then "component" lines each followed by "pt x y z" lines.
SampledCurve parse_curve_file(std::string_view text);

std::string read_file(const std::string& path);

}  // namespace latknot
