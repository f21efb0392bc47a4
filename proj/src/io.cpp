#include "domino/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace domino::io {

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("'" + path.string() + "': parse error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << text;
}

namespace {

template <class T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InputError(std::string("field '") + key + "': " + e.what());
  }
}

Word word_from_json(const Substitution& letters_only, const json& j) {
  if (j.is_string()) return letters_only.parse_word(j.get<std::string>());
  Word w;
  for (const auto& x : j) w.push_back(letters_only.letter_id(x.get<std::string>()));
  return w;
}

}  // namespace

Substitution substitution_from_json(const json& j) {
  const auto letters = field<std::vector<std::string>>(j, "letters");
  const Substitution alphabet_only(letters, {});
  std::vector<Rule> rules;
  for (const auto& r : field<json>(j, "rules")) {
    try {
      rules.push_back({alphabet_only.letter_id(field<std::string>(r, "lhs")), word_from_json(alphabet_only, r.at("rhs"))});
    } catch (const std::invalid_argument& e) {
      throw InputError(std::string("rule: ") + e.what());
    }
  }
  Substitution sub(letters, std::move(rules));
  if (j.contains("expansion")) {
    const json& e = j["expansion"];
    ExpansionData exp;
    exp.lambda = field<double>(e, "lambda");
    const json vj = field<json>(e, "v");
    for (const auto& name : letters) {
      if (!vj.contains(name)) throw InputError("expansion misses weight for letter '" + name + "'");
      exp.v.push_back(vj[name].get<double>());
    }
    sub.set_expansion(exp);
  }
  return sub;
}

json to_json(const Substitution& sub) {
  json j;
  j["letters"] = std::vector<std::string>(sub.letters().begin(), sub.letters().end());
  j["rules"] = json::array();
  for (const auto& r : sub.rules())
    j["rules"].push_back({{"lhs", sub.letters()[r.lhs]}, {"rhs", sub.format(r.rhs)}});
  if (sub.expansion()) {
    json v = json::object();
    for (int a = 0; a < sub.letter_count(); ++a) v[sub.letters()[a]] = sub.expansion()->v[a];
    j["expansion"] = {{"lambda", sub.expansion()->lambda}, {"v", v}};
  }
  return j;
}

json to_json(const OrbitPatch& patch) {
  json j;
  j["substitution"] = to_json(patch.sub);
  j["rows"] = json::array();
  for (const auto& r : patch.rows)
    j["rows"].push_back({{"i", r.index}, {"offset", r.offset}, {"word", patch.sub.format(r.word)}});
  j["parents"] = json::array();
  for (const auto& p : patch.parents)
    j["parents"].push_back({{"rules", p.rule_choice},
                            {"delta", {{"lo", p.accumulation.lo}, {"values", p.accumulation.values}}}});
  return j;
}

json edge_label_to_json(int label) {
  if (label == kNextLabel) return "next";
  return label;
}

int edge_label_from_json(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "next") return kNextLabel;
    throw InputError("edge label must be \"next\" or an integer");
  }
  if (!j.is_number_integer() || j.get<int>() < 0) throw InputError("edge label must be \"next\" or a non-negative integer");
  return j.get<int>();
}

std::string to_dot(const OrbitGraphPatch& g, const Substitution& sub) {
  std::ostringstream out;
  out << "digraph orbit {\n";
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    const auto& v = g.vertices[i];
    out << "  v" << i << " [label=\"" << sub.letters()[v.letter] << "\", row=" << v.row << ", pos=" << v.pos
        << (v.boundary ? ", boundary=true" : "") << "];\n";
  }
  for (const auto& e : g.edges) {
    out << "  v" << e.from << " -> v" << e.to << " [label=\"";
    if (e.label == kNextLabel)
      out << "next";
    else
      out << e.label;
    out << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

json to_json(const SuperSymbol& s, std::size_t rule_index) {
  json anchors = json::array();
  for (auto [b, bit] : s.anchors) anchors.push_back({b, bit});
  return {{"rule", rule_index}, {"h", s.h}, {"t", s.t}, {"anchors", anchors}};
}

json to_json(const SymbolAlphabet& alphabet) {
  const Substitution& sub = alphabet.substitution();
  json j;
  j["rules"] = json::array();
  for (const auto& r : sub.rules())
    j["rules"].push_back({{"lhs", sub.letters()[r.lhs]}, {"rhs", sub.format(r.rhs)}});
  j["symbols"] = json::array();
  for (std::size_t i = 0; i < alphabet.size(); ++i) {
    const SuperSymbol s = alphabet.symbol(i);
    const auto it = std::find(sub.rules().begin(), sub.rules().end(), s.rule);
    j["symbols"].push_back(to_json(s, static_cast<std::size_t>(it - sub.rules().begin())));
  }
  j["count"] = alphabet.size();
  return j;
}

NNForbiddenSet nn_forbidden_from_json(const json& j) {
  NNForbiddenSet fs;
  fs.alphabet = field<std::vector<std::string>>(j, "alphabet");
  for (const auto& f : field<json>(j, "forbidden")) {
    const int label = edge_label_from_json(field<json>(f, "edge"));
    try {
      fs.forbidden.insert({label, fs.color_id(field<std::string>(f, "a")), fs.color_id(field<std::string>(f, "b"))});
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
  }
  return fs;
}

json to_json(const NNForbiddenSet& fs) {
  json j;
  j["alphabet"] = fs.alphabet;
  j["forbidden"] = json::array();
  for (auto [label, a, b] : fs.forbidden)
    j["forbidden"].push_back({{"edge", edge_label_to_json(label)}, {"a", fs.alphabet[a]}, {"b", fs.alphabet[b]}});
  return j;
}

std::string ball_to_dot(const surface::CayleyBallPatch& ball) {
  using namespace surface;
  std::ostringstream out;
  out << "graph ball {\n";
  auto name = [](int r, Pos p) { return "c" + std::to_string(r) + "_" + pos_to_string(p); };
  for (int r = 0; r <= ball.radius(); ++r)
    for (std::size_t p = 0; p < ball.rings[r].size(); ++p) {
      const CellType t = ball.rings[r].type[p];
      out << "  " << name(r, static_cast<Pos>(p)) << " [ring=" << r << ", type=\""
          << (t == CellType::Orange ? "orange" : t == CellType::A ? "a" : "b") << "\"];\n";
    }
  for (int r = 0; r <= ball.radius(); ++r)
    for (std::size_t p = 0; p < ball.rings[r].size(); ++p) {
      const CellRef c{r, static_cast<Pos>(p)};
      for (Gen g = 0; g < kGenerators; ++g) {
        if (g % 2 == 1) continue;  // one line per undirected edge
        auto n = ball.apply(c, g);
        if (!n) continue;
        out << "  " << name(c.ring, c.pos) << " -- " << name(n->ring, n->pos) << " [label=\"" << gen_char(g) << "\"];\n";
      }
    }
  out << "}\n";
  return out.str();
}

json to_json(const surface::DirectionPatch& patch) {
  using namespace surface;
  json j;
  j["anchor"] = {patch.anchor.ring, pos_to_string(patch.anchor.pos)};
  j["orange"] = patch.orange;
  j["cells"] = json::array();
  for (const CellRef& c : patch.sorted_cells()) {
    const DirectionSymbol& s = patch.at(c);
    json dirs = json::object();
    for (Gen g = 0; g < kGenerators; ++g) dirs[std::string(1, gen_char(g))] = tag_name(s.tag_of[g]);
    j["cells"].push_back({{"ring", c.ring},
                          {"pos", pos_to_string(c.pos)},
                          {"color", s.color == Color::Black ? "black" : s.color == Color::White ? "white" : "orange"},
                          {"directions", dirs}});
  }
  return j;
}

std::vector<surface::OrbitPattern> orbit_patterns_from_json(const json& j) {
  std::vector<surface::OrbitPattern> out;
  for (const auto& pj : field<json>(j, "patterns")) {
    surface::OrbitPattern p;
    for (const auto& v : field<json>(pj, "vertices")) p.vertices.emplace_back(v.at(0).get<long>(), v.at(1).get<long>());
    for (const auto& e : field<json>(pj, "edges"))
      p.edges.push_back({e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>(), edge_label_from_json(e.at(2))});
    p.colors = field<std::vector<int>>(pj, "colors");
    for (const auto& e : p.edges)
      if (e.from >= p.vertices.size() || e.to >= p.vertices.size()) throw InputError("pattern edge endpoint out of range");
    out.push_back(std::move(p));
  }
  return out;
}

json to_json(const surface::OrbitPattern& p) {
  json j;
  j["vertices"] = json::array();
  for (auto [i, k] : p.vertices) j["vertices"].push_back({i, k});
  j["edges"] = json::array();
  for (const auto& e : p.edges) j["edges"].push_back({e.from, e.to, edge_label_to_json(e.label)});
  j["colors"] = p.colors;
  return j;
}

json to_json(const surface::CayleyPattern& p) {
  json j;
  j["cells"] = json::array();
  for (const auto& c : p.cells) j["cells"].push_back({c.ring, surface::pos_to_string(c.pos)});
  j["moves"] = json::array();
  for (const auto& m : p.moves)
    j["moves"].push_back({m.from, m.to, m.ell < 0 ? json("right") : json("right^" + std::to_string(m.ell) + " down1")});
  j["colors"] = p.colors;
  return j;
}

solver::PatchInstance instance_from_json(const json& j) {
  solver::PatchInstance inst;
  inst.alphabet = field<std::vector<std::string>>(j, "alphabet");
  auto color = [&](const json& c) {
    const auto name = c.get<std::string>();
    const auto it = std::find(inst.alphabet.begin(), inst.alphabet.end(), name);
    if (it == inst.alphabet.end()) throw InputError("unknown color '" + name + "'");
    return static_cast<int>(it - inst.alphabet.begin());
  };
  inst.vertex_count = field<std::size_t>(j, "vertices");
  if (j.contains("boundary")) inst.boundary = j["boundary"].get<std::vector<bool>>();
  for (const auto& e : field<json>(j, "edges"))
    inst.edges.push_back({e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>(), edge_label_from_json(e.at(2))});
  for (const auto& f : field<json>(j, "forbidden")) {
    solver::ForbiddenPattern p;
    for (const auto& c : field<json>(f, "colors")) p.colors.push_back(color(c));
    if (f.contains("edges"))
      for (const auto& e : f["edges"])
        p.edges.push_back({e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>(), edge_label_from_json(e.at(2))});
    inst.forbidden.push_back(std::move(p));
  }
  try {
    inst.check();
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("instance: ") + e.what());
  }
  return inst;
}

json to_json(const solver::PatchInstance& inst) {
  json j;
  j["vertices"] = inst.vertex_count;
  if (!inst.boundary.empty()) j["boundary"] = inst.boundary;
  j["alphabet"] = inst.alphabet;
  j["edges"] = json::array();
  for (const auto& e : inst.edges) j["edges"].push_back({e.from, e.to, edge_label_to_json(e.label)});
  j["forbidden"] = json::array();
  for (const auto& p : inst.forbidden) {
    json colors = json::array();
    for (int c : p.colors) colors.push_back(inst.alphabet[c]);
    json edges = json::array();
    for (const auto& e : p.edges) edges.push_back({e.from, e.to, edge_label_to_json(e.label)});
    j["forbidden"].push_back({{"colors", colors}, {"edges", edges}});
  }
  return j;
}

json to_json(const solver::SolveResult& r, const solver::PatchInstance& inst) {
  json j;
  j["status"] = solver::to_string(r.status);
  j["stats"] = {{"nodes", r.stats.nodes}, {"removals", r.stats.removals}, {"constraints", r.stats.constraints}};
  if (r.status == solver::Status::Sat) {
    json w = json::array();
    for (int c : r.witness) w.push_back(inst.alphabet[c]);
    j["witness"] = w;
  }
  return j;
}

}  // namespace domino::io
