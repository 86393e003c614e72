#include "latknot/io.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

#include "latknot/error.hpp"

namespace latknot {

namespace {

struct Token {
  std::string_view text;
  std::size_t column;
};

std::vector<Token> tokenize(std::string_view line) {
  if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

template <class F>
void for_each_line(std::string_view text, F&& f) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    const auto line = text.substr(0, nl);
    auto tokens = tokenize(line);
    if (!tokens.empty()) f(line_no, tokens);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
}

long parse_int(const Token& t, std::size_t line) {
  long v = 0;
  const auto* end = t.text.data() + t.text.size();
  const auto [ptr, ec] = std::from_chars(t.text.data(), end, v);
  if (ec != std::errc{} || ptr != end) throw SyntaxError(line, t.column, "expected an integer, got '" + std::string(t.text) + "'");
  return v;
}

double parse_real(const Token& t, std::size_t line) {
  double v = 0;
  const auto* end = t.text.data() + t.text.size();
  const auto [ptr, ec] = std::from_chars(t.text.data(), end, v);
  if (ec != std::errc{} || ptr != end) throw SyntaxError(line, t.column, "expected a number, got '" + std::string(t.text) + "'");
  return v;
}

void expect_arity(const std::vector<Token>& tokens, std::size_t n, std::size_t line) {
  if (tokens.size() != n) {
    const std::size_t col = tokens.size() > n ? tokens[n].column : tokens.back().column + tokens.back().text.size();
    throw SyntaxError(line, col, "expected " + std::to_string(n - 1) + " fields after '" + std::string(tokens[0].text) + "'");
  }
}

int parse_direction(const Token& t, std::size_t line) {
  const long p = parse_int(t, line);
  if (p < 1 || p > 3) throw SyntaxError(line, t.column, "direction must be 1, 2 or 3");
  return static_cast<int>(p);
}

}  // namespace

LatticeKnot parse_knot_file(std::string_view text) {
  bool header = false;
  std::optional<LatticeGraph> graph;
  for_each_line(text, [&](std::size_t line, const std::vector<Token>& tok) {
    if (!header) {
      if (tok.size() != 2 || tok[0].text != "latticeknot" || tok[1].text != "v1") {
        throw SyntaxError(line, tok[0].column, "expected header 'latticeknot v1'");
      }
      header = true;
      return;
    }
    if (tok[0].text == "order") {
      if (graph) throw SyntaxError(line, tok[0].column, "duplicate order line");
      expect_arity(tok, 3, line);
      const long ell = parse_int(tok[1], line);
      const long n = parse_int(tok[2], line);
      if (ell < 0 || ell > 20 || n < 1 || n > 4096) throw Error(ErrorCode::InvalidBound, "invalid order on line " + std::to_string(line));
      graph.emplace(Order::bounded(static_cast<int>(ell), static_cast<int>(n)));
      return;
    }
    if (tok[0].text == "edge") {
      if (!graph) throw SyntaxError(line, tok[0].column, "edge before order line");
      expect_arity(tok, 5, line);
      Vertex v;
      for (std::size_t i = 0; i < 3; ++i) v.c[i] = static_cast<Coord>(parse_int(tok[i + 1], line));
      const Edge e{v, Direction(parse_direction(tok[4], line))};
      if (!graph->order().contains(e)) throw Error(ErrorCode::OutOfBounds, "edge on line " + std::to_string(line) + " leaves the box");
      if (!graph->insert(e)) throw Error(ErrorCode::DuplicateEdge, "edge on line " + std::to_string(line) + " repeats an earlier edge");
      return;
    }
    throw SyntaxError(line, tok[0].column, "unknown keyword '" + std::string(tok[0].text) + "'");
  });
  if (!header) throw SyntaxError(1, 1, "empty knot file");
  if (!graph) throw SyntaxError(1, 1, "missing order line");
  return validate_knot(*graph);
}

std::string serialize_knot(const LatticeKnot& k) {
  const int n = k.order().n();
  if (n < 1) throw Error(ErrorCode::InvalidBound, "order extent is not a whole number of units");
  std::ostringstream os;
  os << "latticeknot v1\norder " << k.order().ell() << " " << n << "\n";
  for (const auto& e : k.edges()) {
    os << "edge " << e.origin.c[0] << " " << e.origin.c[1] << " " << e.origin.c[2] << " " << e.dir.value() << "\n";
  }
  return os.str();
}

namespace {

MoveId parse_move_tokens(const std::vector<Token>& tok, std::size_t line) {
  MoveKind kind;
  if (tok[0].text == "L1") {
    kind = MoveKind::Tug;
  } else if (tok[0].text == "L2") {
    kind = MoveKind::Wiggle;
  } else if (tok[0].text == "L3") {
    kind = MoveKind::Wag;
  } else {
    throw SyntaxError(line, tok[0].column, "expected L1, L2 or L3");
  }
  expect_arity(tok, 6, line);
  Vertex a;
  for (std::size_t i = 0; i < 3; ++i) a.c[i] = static_cast<Coord>(parse_int(tok[i + 1], line));
  const int p = parse_direction(tok[4], line);
  const long q = parse_int(tok[5], line);
  if (q < 0 || q > 3) throw SyntaxError(line, tok[5].column, "variant must be in 0..3");
  return MoveId::make(kind, a, p, static_cast<int>(q));
}

}  // namespace

MoveId parse_move(std::string_view line, std::size_t line_no) {
  const auto tok = tokenize(line);
  if (tok.empty()) throw SyntaxError(line_no, 1, "empty move");
  return parse_move_tokens(tok, line_no);
}

std::string format_move(const MoveId& m) {
  std::ostringstream os;
  os << "L" << static_cast<int>(m.kind) << " " << m.anchor.c[0] << " " << m.anchor.c[1] << " " << m.anchor.c[2] << " "
     << m.dir.value() << " " << m.variant;
  return os.str();
}

std::vector<MoveId> parse_move_script(std::string_view text, const Order& order) {
  std::vector<MoveId> out;
  for_each_line(text, [&](std::size_t line, const std::vector<Token>& tok) {
    const MoveId m = parse_move_tokens(tok, line);
    if (!in_bounds(m, order)) throw Error(ErrorCode::OutOfBounds, "move on line " + std::to_string(line) + " leaves the box");
    out.push_back(m);
  });
  return out;
}

SampledCurve parse_curve_file(std::string_view text) {
  bool header = false;
  std::vector<Polyline> comps;
  for_each_line(text, [&](std::size_t line, const std::vector<Token>& tok) {
    if (!header) {
      if (tok.size() != 2 || tok[0].text != "curve" || tok[1].text != "v1") {
        throw SyntaxError(line, tok[0].column, "expected header 'curve v1'");
      }
      header = true;
      return;
    }
    if (tok[0].text == "component") {
      expect_arity(tok, 1, line);
      comps.emplace_back();
      return;
    }
    if (tok[0].text == "pt") {
      if (comps.empty()) throw SyntaxError(line, tok[0].column, "point before component line");
      expect_arity(tok, 4, line);
      comps.back().push_back({parse_real(tok[1], line), parse_real(tok[2], line), parse_real(tok[3], line)});
      return;
    }
    throw SyntaxError(line, tok[0].column, "unknown keyword '" + std::string(tok[0].text) + "'");
  });
  if (!header) throw SyntaxError(1, 1, "empty curve file");
  return SampledCurve(std::move(comps));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace latknot
