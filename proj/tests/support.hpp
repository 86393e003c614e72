#pragma once

#include <initializer_list>
#include <string>
#include <tuple>
#include <vector>

#include "latknot/io.hpp"
#include "latknot/lattice.hpp"

namespace support {

inline latknot::LatticeKnot knot(int n, std::initializer_list<std::tuple<int, int, int, int>> edges) {
  std::vector<latknot::Edge> out;
  for (const auto& [i, j, k, p] : edges) out.push_back({latknot::Vertex{{i, j, k}}, latknot::Direction(p)});
  return latknot::validate_knot(latknot::Order::bounded(0, n), out);
}

inline latknot::LatticeKnot fixture(const std::string& name) {
  return latknot::parse_knot_file(latknot::read_file(std::string(LATKNOT_FIXTURES) + "/" + name));
}

inline std::string fixture_path(const std::string& name) { return std::string(LATKNOT_FIXTURES) + "/" + name; }

inline latknot::LatticeKnot sq(int n = 1) { return knot(n, {{0, 0, 0, 1}, {1, 0, 0, 2}, {0, 1, 0, 1}, {0, 0, 0, 2}}); }
inline latknot::LatticeKnot df1(int n = 1) { return knot(n, {{0, 0, 0, 2}, {0, 0, 0, 3}, {0, 0, 1, 2}, {0, 1, 0, 3}}); }
inline latknot::LatticeKnot rect() {
  return knot(2, {{0, 0, 0, 1}, {1, 0, 0, 2}, {1, 1, 0, 2}, {0, 2, 0, 1}, {0, 1, 0, 2}, {0, 0, 0, 2}});
}
inline latknot::LatticeKnot unlink() {
  return knot(1, {{0, 0, 0, 1}, {1, 0, 0, 2}, {0, 1, 0, 1}, {0, 0, 0, 2}, {0, 0, 1, 1}, {1, 0, 1, 2}, {0, 1, 1, 1},
                  {0, 0, 1, 2}});
}

}  // namespace support
