#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>

#include "domino/geometry.hpp"
#include "domino/io.hpp"
#include "domino/lift.hpp"
#include "domino/orbit.hpp"
#include "domino/solver.hpp"
#include "domino/substitution.hpp"
#include "domino/superposition.hpp"
#include "domino/surface.hpp"

using namespace domino;
using io::json;

namespace {

// Failure of the requested computation, as opposed to bad usage.
struct DomainFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string input;
  std::string output;
  double tol = 1e-9;
  int grid = 1024;
  int refinements = 4;
  std::size_t budget = 1000000;
  int radius = 2;
  int jobs = 1;
  std::uint64_t seed = 0;
  bool seeded = false;
};

std::string number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

void emit(const Config& cfg, const std::string& text) {
  if (cfg.output.empty())
    std::cout << text;
  else
    io::write_text_file(cfg.output, text);
}

Substitution load_substitution(const Config& cfg) {
  if (cfg.input.empty()) throw CLI::ValidationError("--input", "a substitution file is required");
  return io::substitution_from_json(io::read_json_file(cfg.input));
}

ExpansionData expansion_of(const Substitution& sub, double tol) {
  if (sub.expansion()) {
    if (!check_expansion(sub, *sub.expansion(), tol))
      throw DomainFailure("the given expansion violates lambda v(a) = sum v(w) beyond the tolerance");
    return *sub.expansion();
  }
  auto e = find_expansion(sub, tol);
  if (!e) throw DomainFailure("no expanding eigenvalue found");
  return *e;
}

RuleChooser chooser_for(const Config& cfg) {
  return cfg.seeded ? random_rule_chooser(cfg.seed) : first_rule_chooser();
}

OrbitPatch orbit_from(const Config& cfg, const Substitution& sub, const std::string& seed_letter, int depth) {
  const int seed = seed_letter.empty() ? 0 : sub.letter_id(seed_letter);
  return grow_orbit_patch(sub, seed, depth, chooser_for(cfg));
}

void run_eig(const Config& cfg) {
  const Substitution sub = load_substitution(cfg);
  const ExpansionData e = expansion_of(sub, cfg.tol);
  std::ostringstream out;
  out << "lambda " << number(e.lambda) << "\n";
  for (int a = 0; a < sub.letter_count(); ++a) out << "v " << sub.letters()[a] << " " << number(e.v[a]) << "\n";
  const auto defects = rule_defects(sub, e);
  for (std::size_t i = 0; i < defects.size(); ++i) {
    const Rule& r = sub.rules()[i];
    out << "defect " << sub.letters()[r.lhs] << "->" << sub.format(r.rhs) << " " << number(defects[i]) << "\n";
  }
  emit(cfg, out.str());
}

void run_expand(const Config& cfg, const std::string& word, int steps) {
  const Substitution sub = load_substitution(cfg);
  emit(cfg, sub.format(expand_word(sub, sub.parse_word(word), steps, chooser_for(cfg))) + "\n");
}

void run_orbit(const Config& cfg, const std::string& seed_letter, int depth, const std::string& format) {
  const Substitution sub = load_substitution(cfg);
  const OrbitPatch patch = orbit_from(cfg, sub, seed_letter, depth);
  if (format == "dot")
    emit(cfg, io::to_dot(orbit_graph_of(patch), sub));
  else
    emit(cfg, io::to_json(patch).dump(2) + "\n");
}

void run_render(const Config& cfg, const std::string& seed_letter, int depth, const SvgStyle& style) {
  const Substitution sub = load_substitution(cfg);
  const ExpansionData e = expansion_of(sub, cfg.tol);
  const OrbitPatch patch = orbit_from(cfg, sub, seed_letter, depth);
  const auto tiles = layout_tiles(patch, layout_tiling(patch, e), cfg.tol);
  emit(cfg, render_svg(tiles, style, std::vector<std::string>(sub.letters().begin(), sub.letters().end())));
}

void run_alphabet(const Config& cfg, bool complete) {
  const Substitution sub = load_substitution(cfg);
  ExpansionData e = expansion_of(sub, cfg.tol);
  if (e.lambda <= 2.0)
    throw DomainFailure("lambda = " + number(e.lambda) + " is not above 2; use a power of the substitution");
  e = normalize_expansion(e, 4.0);
  EnumerationOptions opts;
  opts.grid_n = cfg.grid;
  opts.max_refinements = cfg.refinements;
  opts.complete = complete;
  opts.jobs = cfg.jobs;
  try {
    const SymbolAlphabet alpha = enumerate_alphabet(sub, e, opts);
    json j = io::to_json(alpha);
    j["final_grid"] = alpha.final_grid;
    emit(cfg, j.dump(2) + "\n");
  } catch (const EnumerationDidNotStabilize& ex) {
    throw DomainFailure(ex.what());
  }
}

void run_lift(const Config& cfg, const std::string& forbidden_path, int depth) {
  const Substitution sub = load_substitution(cfg);
  const ExpansionData e = expansion_of(sub, cfg.tol);
  const NNForbiddenSet fs = io::nn_forbidden_from_json(io::read_json_file(forbidden_path));
  const int n = minimal_power(e.lambda);
  const Substitution power = power_substitution(sub, n);
  const auto shapes = power_reduction(power, n);
  const OrbitPatch patch = orbit_from(cfg, sub, "", depth);
  const EmbeddingScan scan = embed_shapes(orbit_graph_of(patch), shapes);
  json j;
  j["power"] = n;
  j["lambda_power"] = std::pow(e.lambda, n);
  j["power_rules"] = power.rules().size();
  j["forbidden"] = io::to_json(fs);
  j["shapes"] = json::array();
  for (const auto& s : shapes) {
    json edges = json::array();
    for (const auto& ed : s.edges) edges.push_back({ed.from, ed.to, io::edge_label_to_json(ed.label)});
    j["shapes"].push_back({{"n", s.n}, {"ell", s.ell}, {"vertices", s.vertex_count}, {"u", s.u}, {"v", s.v}, {"w", s.w}, {"edges", edges}});
  }
  j["embeddings"] = scan.embeddings.size();
  j["skipped"] = scan.skipped;
  emit(cfg, j.dump(2) + "\n");
}

void run_reduce_surface(const Config& cfg, int anchor_ring) {
  if (cfg.input.empty()) throw CLI::ValidationError("--input", "a pattern-set file is required");
  const auto patterns = io::orbit_patterns_from_json(io::read_json_file(cfg.input));
  const surface::Addressing addr;
  const auto patch = surface::build_direction_patch(addr, cfg.radius, false, anchor_ring);
  const auto res = surface::transport_forbidden(patch, addr, patterns);
  json j;
  j["radius"] = cfg.radius;
  j["anchor_ring"] = anchor_ring;
  j["patterns"] = json::array();
  for (const auto& p : res.patterns) j["patterns"].push_back(io::to_json(p));
  j["skipped"] = res.skipped;
  emit(cfg, j.dump(2) + "\n");
}

void run_ball(const Config& cfg, bool stats, bool dot, bool directions) {
  if (cfg.radius < 0 || cfg.radius > 4) throw CLI::ValidationError("--radius", "ball radius must lie in [0, 4]");
  const surface::CayleyBallPatch ball = surface::grow_ball(cfg.radius);
  std::ostringstream out;
  if (stats || (!dot && !directions)) {
    for (int r = 0; r <= ball.radius(); ++r) {
      const auto& ring = ball.rings[r];
      out << "|C_" << r << "|=" << ring.size() << " a-type=" << ring.count(surface::CellType::A)
          << " b-type=" << ring.count(surface::CellType::B) << "\n";
    }
    out << "cells=" << ball.cell_count() << "\n";
  }
  if (dot) out << io::ball_to_dot(ball);
  if (directions) {
    const surface::Addressing addr;
    out << io::to_json(surface::build_direction_patch(addr, cfg.radius, true)).dump(2) << "\n";
  }
  emit(cfg, out.str());
}

void run_solve(const Config& cfg, bool radius_given) {
  if (cfg.input.empty()) throw CLI::ValidationError("--input", "an instance file is required");
  const solver::PatchInstance inst = io::instance_from_json(io::read_json_file(cfg.input));
  json j;
  if (radius_given) {
    if (inst.vertex_count == 0) throw DomainFailure("instance has no vertices");
    const auto rep = solver::semi_decide(
        [&](int r) { return solver::ball_instance(inst, 0, r); }, cfg.radius, cfg.budget);
    j["per_radius"] = json::array();
    for (auto s : rep.per_radius) j["per_radius"].push_back(solver::to_string(s));
    if (rep.unsat_radius) j["unsat_radius"] = *rep.unsat_radius;
    j["budget_hit"] = rep.budget_hit;
    j["inconclusive"] = rep.inconclusive();
    j["status"] = rep.unsat_radius ? "UNSAT" : rep.budget_hit ? "BUDGET" : "SAT-so-far";
  } else {
    j = io::to_json(solver::solve(inst, cfg.budget), inst);
  }
  emit(cfg, j.dump(2) + "\n");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Substitution orbit graphs, superposition tilings and the genus-2 surface group."};
  app.require_subcommand(1);
  Config cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--input,-i", cfg.input, "Input file");
    sub->add_option("--output,-o", cfg.output, "Output file (default: stdout)");
    sub->add_option("--tol", cfg.tol, "Relative tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::Range(1, 256));
  };
  auto seeded = [&](CLI::App* sub) {
    sub->add_option_function<std::uint64_t>("--seed", [&](std::uint64_t s) { cfg.seed = s, cfg.seeded = true; },
                                            "Seed for random rule choices");
  };

  auto* eig = app.add_subcommand("eig", "Expanding eigenvalue and weights of a substitution");
  common(eig);

  std::string word;
  int steps = 1;
  auto* expand = app.add_subcommand("expand", "Apply the substitution to a word");
  common(expand);
  seeded(expand);
  expand->add_option("--word", word, "Start word")->required();
  expand->add_option("--steps", steps, "Number of steps")->check(CLI::Range(0, 64));

  std::string seed_letter, format = "json";
  int depth = 3;
  auto* orbit = app.add_subcommand("orbit", "Grow an orbit patch");
  common(orbit);
  seeded(orbit);
  orbit->add_option("--seed-letter", seed_letter, "Letter at (0,0)");
  orbit->add_option("--depth", depth, "Rows below the seed")->check(CLI::Range(0, 64));
  orbit->add_option("--format", format, "json or dot")->check(CLI::IsMember({"json", "dot"}));

  SvgStyle style;
  auto* render = app.add_subcommand("render", "Render an orbit patch as SVG tiles");
  common(render);
  seeded(render);
  render->add_option("--seed-letter", seed_letter, "Letter at (0,0)");
  render->add_option("--depth", depth, "Rows below the seed")->check(CLI::Range(0, 16));
  render->add_option("--stroke", style.stroke, "Stroke color");
  render->add_option("--scale", style.scale, "Pixels per unit")->check(CLI::PositiveNumber);
  render->add_flag("--labels", style.labels, "Print letters inside tiles");

  bool no_complete = false;
  auto* alphabet = app.add_subcommand("alphabet", "Enumerate the superposition alphabet");
  common(alphabet);
  alphabet->add_option("--grid", cfg.grid, "Initial grid size")->check(CLI::Range(64, 1 << 20));
  alphabet->add_option("--refinements", cfg.refinements, "Grid doublings allowed")->check(CLI::Range(0, 8));
  alphabet->add_flag("--no-complete", no_complete, "Skip the arrangement completion");

  std::string forbidden_path;
  auto* lift = app.add_subcommand("lift", "Power reduction shapes for a nearest-neighbour forbidden set");
  common(lift);
  seeded(lift);
  lift->add_option("--forbidden", forbidden_path, "NN forbidden set JSON")->required();
  lift->add_option("--depth", depth, "Orbit patch depth for the embedding count")->check(CLI::Range(0, 12));

  int anchor_ring = 4;
  auto* reduce = app.add_subcommand("reduce-surface", "Transport orbit-graph patterns to the surface group");
  common(reduce);
  reduce->add_option("--radius", cfg.radius, "Patch radius")->check(CLI::Range(0, 6));
  reduce->add_option("--anchor-ring", anchor_ring, "Ring of the anchor cell")->check(CLI::Range(1, 20));

  bool stats = false, dot = false, directions = false;
  auto* ball = app.add_subcommand("ball", "Grow a ball of the surface group Cayley graph");
  common(ball);
  ball->add_option("--radius", cfg.radius, "Ball radius");
  ball->add_flag("--stats", stats, "Ring sizes and type counts");
  ball->add_flag("--dot", dot, "DOT export");
  ball->add_flag("--directions", directions, "Direction patch JSON");

  auto* solve = app.add_subcommand("solve", "Solve a finite SFT instance");
  common(solve);
  solve->add_option("--budget", cfg.budget, "Search node budget")->check(CLI::PositiveNumber);
  auto* radius_opt = solve->add_option("--radius", cfg.radius, "Semi-decide on balls up to this radius")
                         ->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (eig->parsed()) run_eig(cfg);
    else if (expand->parsed()) run_expand(cfg, word, steps);
    else if (orbit->parsed()) run_orbit(cfg, seed_letter, depth, format);
    else if (render->parsed()) run_render(cfg, seed_letter, depth, style);
    else if (alphabet->parsed()) run_alphabet(cfg, !no_complete);
    else if (lift->parsed()) run_lift(cfg, forbidden_path, depth);
    else if (reduce->parsed()) run_reduce_surface(cfg, anchor_ring);
    else if (ball->parsed()) run_ball(cfg, stats, dot, directions);
    else if (solve->parsed()) run_solve(cfg, radius_opt->count() > 0);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const io::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
