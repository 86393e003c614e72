#include "latknot/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "latknot/error.hpp"
#include "latknot/geometry.hpp"
#include "latknot/io.hpp"
#include "latknot/lattice.hpp"
#include "latknot/moves.hpp"
#include "latknot/orbit.hpp"
#include "latknot/quantum.hpp"
#include "latknot/refinement.hpp"

namespace latknot::cli {

namespace {

using Json = nlohmann::ordered_json;

std::string fixed(double x, int digits = 6) {
  if (std::abs(x) < 0.5 * std::pow(10.0, -digits)) x = 0.0;
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << x;
  return os.str();
}

Json order_json(const Order& o) { return Json{{"ell", o.ell()}, {"n", o.n()}}; }

Json knot_json(const LatticeKnot& k) {
  Json edges = Json::array();
  for (const auto& e : k.edges()) edges.push_back({e.origin.c[0], e.origin.c[1], e.origin.c[2], e.dir.value()});
  return Json{{"order", order_json(k.order())}, {"edges", std::move(edges)}};
}

Json word_json(const std::vector<MoveId>& w) {
  Json out = Json::array();
  for (const auto& m : w) out.push_back(format_move(m));
  return out;
}

std::string word_text(const std::vector<MoveId>& w) {
  std::string s = "[";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ", ";
    s += format_move(w[i]);
  }
  return s + "]";
}

LatticeKnot load_knot(const std::string& path) { return parse_knot_file(read_file(path)); }

std::string verdict_word(Verdict v) {
  switch (v) {
    case Verdict::Equivalent:
      return "true";
    case Verdict::NotEquivalent:
      return "false";
    case Verdict::Indeterminate:
      return "indeterminate";
  }
  return "indeterminate";
}

/// Lower bound 2 on the lattice number when no unit-box knot shares the component count and linking.
bool excluded_from_unit_box(const LatticeKnot& k) {
  const auto comps = component_count(k);
  const double link = comps == 2 ? gauss_linking(k) : 0.0;
  const auto unit_box = enumerate_knots(Order::bounded(0, 1));
  for (const auto& c : unit_box.knots()) {
    if (component_count(c) != comps) continue;
    if (comps != 2 || std::abs(gauss_linking(c) - link) < 1e-6) return false;
  }
  return true;
}

struct Options {
  bool json = false;
  std::string knot, knot2, script, curve, move, observable, generator;
  int ell = 0, n = 1, max_n = 0, max_ell = -1;
  std::size_t cap = kDefaultCap, limit = kDefaultLimit, samples = 200;
  std::uint64_t seed = 1;
  double t = 1.0;
  bool include_empty = false, inextensible = false, members = false;
};

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

int cmd_validate(const Options& o, std::ostream& out) {
  const auto k = load_knot(o.knot);
  if (o.json) {
    emit(out, Json{{"valid", true},
                   {"order", order_json(k.order())},
                   {"edges", k.edge_count()},
                   {"components", component_count(k)},
                   {"length", length(k)}});
  } else {
    out << "valid: " << k.edge_count() << " edges, " << component_count(k) << " component(s), length "
        << fixed(length(k)) << "\n";
  }
  return kSuccess;
}

int cmd_enumerate(const Options& o, std::ostream& out) {
  const Order order = Order::bounded(o.ell, o.n);
  const auto count = count_knots(order, o.include_empty, o.cap);
  if (o.json) {
    emit(out, Json{{"count", count}, {"order", order_json(order)}, {"include_empty", o.include_empty}});
  } else {
    out << "count: " << count << "\n";
  }
  return kSuccess;
}

int cmd_orbit(const Options& o, std::ostream& out) {
  const auto k = load_knot(o.knot);
  const GeneratorSet gens(k.order(), o.inextensible);
  const auto orb = orbit(k, gens, o.limit);
  if (o.json) {
    Json j{{"order", order_json(k.order())}, {"inextensible", o.inextensible}, {"generators", gens.size()},
           {"size", orb.size()}};
    if (o.members) {
      Json m = Json::array();
      for (const auto& x : orb.sorted_members()) m.push_back(knot_json(x)["edges"]);
      j["members"] = std::move(m);
    }
    emit(out, j);
  } else {
    out << "orbit size: " << orb.size() << "\n";
    if (o.members) {
      for (const auto& x : orb.sorted_members()) out << x.to_string() << "\n";
    }
  }
  return kSuccess;
}

int cmd_equiv(const Options& o, std::ostream& out) {
  const auto a = load_knot(o.knot);
  const auto b = load_knot(o.knot2);
  const int ell = std::max(a.order().ell(), b.order().ell());
  const int n = std::max({a.order().n(), b.order().n(), o.n});
  const bool escalate = o.max_n > 0 || o.max_ell >= 0;
  const Order start = escalate ? Order::bounded(std::min(a.order().ell(), b.order().ell()), o.n) : Order::bounded(ell, n);
  Verdict verdict;
  std::vector<MoveId> witness;
  Json j{{"order", order_json(start)}, {"inextensible", o.inextensible}};
  std::optional<Order> decided;
  if (escalate) {
    const auto r = equivalent_escalating(a, b, start, std::max(o.max_n, n), std::max(o.max_ell, ell), o.inextensible,
                                         o.limit);
    verdict = r.verdict;
    witness = r.witness;
    decided = r.decided_at;
    Json trail = Json::array();
    for (const auto& s : r.trail) {
      trail.push_back({{"order", order_json(s.order)},
                       {"verdict", s.verdict ? Json(std::string(to_string(*s.verdict))) : Json("skipped")}});
    }
    j["trail"] = std::move(trail);
  } else {
    const auto r = equivalent(a, b, start, o.inextensible, o.limit);
    verdict = r.verdict;
    witness = r.witness;
    if (verdict != Verdict::Indeterminate) decided = start;
    j["explored"] = r.explored;
  }
  if (o.json) {
    j["verdict"] = std::string(to_string(verdict));
    j["equivalent"] = verdict == Verdict::Indeterminate ? Json(nullptr) : Json(verdict == Verdict::Equivalent);
    j["decided_at"] = decided ? order_json(*decided) : Json(nullptr);
    j["witness"] = word_json(witness);
    emit(out, j);
  } else {
    out << "equivalent: " << verdict_word(verdict);
    if (verdict == Verdict::Equivalent) out << ", witness: " << word_text(witness);
    out << "\n";
    if (escalate && decided) out << "decided at order " << decided->ell() << " " << decided->n() << "\n";
  }
  return verdict == Verdict::Indeterminate ? kIndeterminate : kSuccess;
}

int cmd_apply(const Options& o, std::ostream& out) {
  const auto k = load_knot(o.knot);
  const auto word = parse_move_script(read_file(o.script), k.order());
  const auto result = apply_word(word, k);
  if (o.json) {
    emit(out, Json{{"moves", word.size()}, {"changed", !(result == k)}, {"knot", knot_json(result)}});
  } else {
    out << serialize_knot(result);
  }
  return kSuccess;
}

Json state_json(const QuantumKnotState& psi) {
  Json terms = Json::array();
  for (const auto& [k, amp] : psi.amplitudes()) {
    terms.push_back({{"knot", knot_json(k)["edges"]}, {"re", amp.real()}, {"im", amp.imag()}, {"probability", std::norm(amp)}});
  }
  return terms;
}

void print_state(const QuantumKnotState& psi, std::ostream& out) {
  for (const auto& [k, amp] : psi.amplitudes()) {
    out << fixed(amp.real()) << (amp.imag() < -5e-7 ? " - " : " + ") << fixed(std::abs(amp.imag())) << "i  "
        << k.to_string() << "\n";
  }
}

int cmd_evolve(const Options& o, std::ostream& out) {
  const auto k = load_knot(o.knot);
  const MoveId m = parse_move(o.move);
  move_config(m, k.order());
  const auto psi = evolve(QuantumKnotState::basis_state(k), m, o.t);
  if (o.json) {
    emit(out, Json{{"move", format_move(m)}, {"t", o.t}, {"terms", state_json(psi)}});
  } else {
    print_state(psi, out);
  }
  return kSuccess;
}

int cmd_ham(const Options& o, std::ostream& out) {
  const Order order = Order::bounded(o.ell, o.n);
  const MoveId m = parse_move(o.move);
  move_config(m, order);
  const auto basis = enumerate_knots(order, o.cap);
  const auto h = hamiltonian(m, basis);
  std::vector<std::tuple<long, long, double>> entries;
  for (int col = 0; col < h.matrix.outerSize(); ++col) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(h.matrix, col); it; ++it) {
      entries.emplace_back(it.row(), it.col(), it.value());
    }
  }
  std::sort(entries.begin(), entries.end());
  if (o.json) {
    Json pairs = Json::array();
    for (const auto& [i, j] : h.transpositions) pairs.push_back({i, j});
    Json e = Json::array();
    for (const auto& [i, j, v] : entries) e.push_back({i, j, v});
    emit(out, Json{{"move", format_move(m)}, {"order", order_json(order)}, {"dimension", basis.size()},
                   {"transpositions", std::move(pairs)}, {"entries", std::move(e)}});
  } else {
    out << "dimension " << basis.size() << ", " << h.transpositions.size() << " transposition(s), " << entries.size()
        << " nonzero(s)\n";
    for (const auto& [i, j, v] : entries) out << i << " " << j << " " << fixed(v, 12) << "\n";
  }
  return kSuccess;
}

int cmd_measure(const Options& o, std::ostream& out) {
  const auto k = load_knot(o.knot);
  auto basis = std::make_shared<const Basis>(enumerate_knots(k.order(), o.cap));
  std::optional<Observable> obs;
  if (o.observable == "components") {
    obs = invariant_observable([](const LatticeKnot& x) { return static_cast<double>(component_count(x)); }, basis);
  } else if (o.observable == "length") {
    obs = invariant_observable([](const LatticeKnot& x) { return length(x); }, basis);
  } else if (o.observable.rfind("orbit:", 0) == 0) {
    const auto seed = load_knot(o.observable.substr(6));
    obs = orbit_projector(seed, GeneratorSet(k.order(), o.inextensible), basis, o.limit);
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown observable '" + o.observable + "'");
  }
  auto psi = QuantumKnotState::basis_state(k, *basis);
  if (!o.move.empty()) {
    const MoveId m = parse_move(o.move);
    move_config(m, k.order());
    psi = evolve(psi, m, o.t);
  }
  const auto dist = measure_distribution(psi, *obs);
  if (o.json) {
    Json d = Json::array();
    for (const auto& [v, p] : dist) d.push_back({{"value", v}, {"probability", p}});
    emit(out, Json{{"observable", o.observable}, {"dimension", basis->size()}, {"distribution", std::move(d)}});
  } else {
    for (const auto& [v, p] : dist) out << fixed(v) << " " << fixed(p) << "\n";
  }
  return kSuccess;
}

int cmd_pv(const Options& o, std::ostream& out) {
  const auto curve = parse_curve_file(read_file(o.curve));
  const auto k = pv_approx(curve, o.ell, o.n);
  if (o.json) {
    emit(out, Json{{"edges", k.edge_count()}, {"components", component_count(k)}, {"length", length(k)},
                   {"knot", knot_json(k)}});
  } else {
    out << serialize_knot(k);
  }
  return kSuccess;
}

int cmd_scalar(const Options& o, std::ostream& out, Functional f) {
  const auto k = load_knot(o.knot);
  const double v = f == Functional::Link ? gauss_linking(k) : length(k);
  if (o.json) {
    emit(out, Json{{std::string(to_string(f)), v}});
  } else {
    out << fixed(v) << "\n";
  }
  return kSuccess;
}

int cmd_refine(const Options& o, std::ostream& out) {
  const auto k = refine(load_knot(o.knot));
  if (o.json) {
    emit(out, knot_json(k));
  } else {
    out << serialize_knot(k);
  }
  return kSuccess;
}

int cmd_conjecture(const Options& o, std::ostream& out) {
  const Order order = Order::bounded(o.ell, o.n);
  const MoveId m = parse_move(o.generator);
  move_config(m, order);
  std::vector<LatticeKnot> sample;
  bool exhaustive = true;
  try {
    sample = enumerate_knots(order, o.cap).knots();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::CapExceeded) throw;
    exhaustive = false;
    sample = random_knots(order, o.samples, o.seed);
  }
  const auto fine = random_knots(order.refined(), o.samples, o.seed);
  const auto rep = conjecture_check(m, sample, fine);
  if (o.json) {
    Json ce = Json::array();
    for (const auto& k : rep.restriction_counterexamples) ce.push_back(knot_json(k)["edges"]);
    emit(out, Json{{"generator", format_move(m)},
                   {"order", order_json(order)},
                   {"word", word_json(rep.word)},
                   {"expanded_length", expand(rep.word).size()},
                   {"sample_exhaustive", exhaustive},
                   {"restriction", {{"checked", rep.restriction_checked},
                                    {"failures", rep.restriction_failures},
                                    {"counterexamples", std::move(ce)}}},
                   {"involution_on_images", {{"checked", rep.involution_images_checked},
                                             {"failures", rep.involution_images_failures}}},
                   {"involution_on_fine_knots", {{"checked", rep.involution_fine_checked},
                                                 {"failures", rep.involution_fine_failures}}},
                   {"naive_product_involution_failures", rep.naive_involution_failures}});
  } else {
    out << "generator: " << format_move(m) << "\n";
    out << "word: " << word_text(rep.word) << "\n";
    out << "restriction: " << rep.restriction_checked - rep.restriction_failures << "/" << rep.restriction_checked
        << " hold" << (exhaustive ? "" : " (sampled)") << "\n";
    for (const auto& k : rep.restriction_counterexamples) out << "  counterexample " << k.to_string() << "\n";
    out << "involution on refined images: " << rep.involution_images_checked - rep.involution_images_failures << "/"
        << rep.involution_images_checked << "\n";
    out << "involution on refined-order knots: " << rep.involution_fine_checked - rep.involution_fine_failures << "/"
        << rep.involution_fine_checked << "\n";
    out << "naive product involution failures: " << rep.naive_involution_failures << "\n";
  }
  return kSuccess;
}

int cmd_lattice_number(const Options& o, std::ostream& out) {
  const auto k = load_knot(o.knot);
  const int max_n = std::max(o.max_n, k.order().n());
  const auto r = lattice_number(k, max_n, o.limit);
  const bool exact = r.value == 1 || r.exhaustive || (r.value == 2 && excluded_from_unit_box(k));
  if (o.json) {
    emit(out, Json{{"value", r.value}, {"exact", exact}, {"exhaustive", r.exhaustive}, {"explored", r.explored},
                   {"max_n", max_n}});
  } else if (exact) {
    out << "lattice number: " << r.value << "\n";
  } else {
    out << "lattice number: at most " << r.value << " (search stopped after " << r.explored << " knots)\n";
  }
  return exact ? kSuccess : kIndeterminate;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bounded lattice knots: moves, orbits, quantum states and geometry", "latknot"};
  app.require_subcommand(1);
  Options o;

  auto json_flag = [&](CLI::App* s) { s->add_flag("--json", o.json, "Write JSON to stdout"); };
  auto knot_arg = [&](CLI::App* s) { s->add_option("knot", o.knot, "Knot file")->required(); };
  auto order_opts = [&](CLI::App* s) {
    s->add_option("--ell", o.ell, "Order exponent")->check(CLI::Range(0, 20));
    s->add_option("--n", o.n, "Box bound")->check(CLI::Range(1, 4096));
  };

  auto* validate = app.add_subcommand("validate", "Check a knot file");
  knot_arg(validate);

  auto* enumerate = app.add_subcommand("enumerate", "Count the knots of an order");
  order_opts(enumerate);
  enumerate->add_option("--cap", o.cap, "Enumeration cap");
  enumerate->add_flag("--include-empty", o.include_empty, "Count the empty graph too");

  auto* orb = app.add_subcommand("orbit", "Orbit of a knot under the ambient group");
  knot_arg(orb);
  orb->add_flag("--inextensible", o.inextensible, "Use wiggles and wags only");
  orb->add_option("--limit", o.limit, "Orbit size limit");
  orb->add_flag("--members", o.members, "List the orbit");

  auto* equiv = app.add_subcommand("equiv", "Decide equivalence of two knots");
  equiv->add_option("knot", o.knot, "First knot file")->required();
  equiv->add_option("other", o.knot2, "Second knot file")->required();
  equiv->add_option("--n", o.n, "Box bound to search in")->check(CLI::Range(1, 4096));
  equiv->add_option("--escalate-n", o.max_n, "Largest bound to escalate to");
  equiv->add_option("--escalate-ell", o.max_ell, "Largest order exponent to escalate to");
  equiv->add_flag("--inextensible", o.inextensible, "Use wiggles and wags only");
  equiv->add_option("--limit", o.limit, "Search limit per order");

  auto* app_cmd = app.add_subcommand("apply", "Apply a move script");
  knot_arg(app_cmd);
  app_cmd->add_option("script", o.script, "Move script")->required();

  auto* evo = app.add_subcommand("evolve", "Evolve a basis state under one move Hamiltonian");
  knot_arg(evo);
  evo->add_option("--move", o.move, "Move, e.g. \"L1 0 0 0 3 3\"")->required();
  evo->add_option("--t", o.t, "Time");

  auto* ham = app.add_subcommand("ham", "Sparse Hamiltonian of a move on a full basis");
  order_opts(ham);
  ham->add_option("--move", o.move, "Move, e.g. \"L1 0 0 0 3 3\"")->required();
  ham->add_option("--cap", o.cap, "Enumeration cap");

  auto* meas = app.add_subcommand("measure", "Outcome distribution of an invariant observable");
  knot_arg(meas);
  meas->add_option("--observable", o.observable, "components, length or orbit:<knot file>")->required();
  meas->add_option("--move", o.move, "Evolve under this move first");
  meas->add_option("--t", o.t, "Evolution time");
  meas->add_flag("--inextensible", o.inextensible, "Orbit under wiggles and wags only");
  meas->add_option("--cap", o.cap, "Enumeration cap");
  meas->add_option("--limit", o.limit, "Orbit size limit");

  auto* pv = app.add_subcommand("pv", "Preferred vertex approximation of a curve");
  pv->add_option("curve", o.curve, "Curve file")->required();
  order_opts(pv);

  auto* link = app.add_subcommand("link", "Gauss linking number of a two-component knot");
  knot_arg(link);
  auto* len = app.add_subcommand("length", "Real length of a knot");
  knot_arg(len);
  auto* ref = app.add_subcommand("refine", "Refine a knot to the next order");
  knot_arg(ref);

  auto* conj = app.add_subcommand("conjecture", "Check the refinement word of a generator");
  conj->add_option("--generator", o.generator, "Generator, e.g. \"L1 0 0 0 3 0\"")->required();
  order_opts(conj);
  conj->add_option("--samples", o.samples, "Random sample size when the basis is too large");
  conj->add_option("--seed", o.seed, "Sampling seed");
  conj->add_option("--cap", o.cap, "Enumeration cap");

  auto* lnum = app.add_subcommand("lattice-number", "Smallest box side reached within the knot's type");
  knot_arg(lnum);
  lnum->add_option("--max-n", o.max_n, "Box bound to search in");
  lnum->add_option("--limit", o.limit, "Search limit");

  for (auto* s : app.get_subcommands([](const CLI::App*) { return true; })) json_flag(s);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kParseError;
  }

  try {
    if (validate->parsed()) return cmd_validate(o, out);
    if (enumerate->parsed()) return cmd_enumerate(o, out);
    if (orb->parsed()) return cmd_orbit(o, out);
    if (equiv->parsed()) return cmd_equiv(o, out);
    if (app_cmd->parsed()) return cmd_apply(o, out);
    if (evo->parsed()) return cmd_evolve(o, out);
    if (ham->parsed()) return cmd_ham(o, out);
    if (meas->parsed()) return cmd_measure(o, out);
    if (pv->parsed()) return cmd_pv(o, out);
    if (link->parsed()) return cmd_scalar(o, out, Functional::Link);
    if (len->parsed()) return cmd_scalar(o, out, Functional::Length);
    if (ref->parsed()) return cmd_refine(o, out);
    if (conj->parsed()) return cmd_conjecture(o, out);
    if (lnum->parsed()) return cmd_lattice_number(o, out);
  } catch (const SyntaxError& e) {
    err << "latknot: " << e.what() << "\n";
    return kParseError;
  } catch (const Error& e) {
    err << "latknot: " << e.what() << "\n";
    return kDomainError;
  } catch (const std::exception& e) {
    err << "latknot: " << e.what() << "\n";
    return kDomainError;
  }
  return kParseError;
}

}  // namespace latknot::cli
