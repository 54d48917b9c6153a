#include "jetkernel/serialize.hpp"

#include <algorithm>

#include "jetkernel/error.hpp"
#include "jetkernel/parse.hpp"

namespace jetkernel {

namespace {

template <class Fn>
auto guarded(const char* what, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::parse, std::string("malformed ") + what + ": " + e.what());
  }
}

Json polys(const std::vector<Polynomial>& ps) {
  Json out = Json::array();
  for (const auto& p : ps) out.push_back(to_json(p));
  return out;
}

std::vector<std::string> strings(const Json& j) { return j.get<std::vector<std::string>>(); }

Polynomial read_poly(const Json& j, const std::vector<std::string>& vars) {
  return parse_polynomial(j.get<std::string>(), vars, true);
}

template <class T>
const T& lookup(const std::vector<std::pair<std::string, T>>& items, const std::string& name,
                const char* kind) {
  for (const auto& [n, v] : items) {
    if (n == name) return v;
  }
  throw Error(ErrorKind::invalid_argument, std::string("no ") + kind + " named '" + name + "'");
}

template <class T>
void insert(std::vector<std::pair<std::string, T>>& items, const std::string& name, T value,
            const char* kind) {
  for (const auto& item : items) {
    if (item.first == name) {
      throw Error(ErrorKind::invalid_argument,
                  std::string("duplicate ") + kind + " name '" + name + "'");
    }
  }
  items.emplace_back(name, std::move(value));
}

std::string direction_name(Direction d) { return d == Direction::forward ? "forward" : "backward"; }

}  // namespace

Json to_json(const Polynomial& p) { return p.to_string(); }

Json to_json(const WeilAlgebra& a) {
  Json j;
  j["name"] = a.name();
  j["vars"] = a.vars();
  j["generators"] = polys(a.generators());
  return j;
}

Json algebra_report(const WeilAlgebra& a) {
  Json j = to_json(a);
  j["groebner_basis"] = polys(a.ideal().basis);
  j["dim"] = a.dim();
  j["nilpotency_order"] = a.nilpotency_order();
  Json basis = Json::array();
  for (const auto& m : a.basis_monomials()) basis.push_back(m.to_string());
  j["basis"] = basis;
  return j;
}

Json to_json(const FormalSpace& s) {
  Json j;
  j["name"] = s.name();
  j["params"] = s.params();
  j["algebra"] = to_json(s.thickening());
  return j;
}

Json to_json(const FormalMorphism& m) {
  Json j;
  j["source"] = to_json(m.source());
  j["target"] = to_json(m.target());
  j["components"] = polys(m.components());
  return j;
}

Json to_json(const FactorizationPair& p) {
  Json j;
  j["iota"] = to_json(p.iota());
  j["f"] = to_json(p.f());
  return j;
}

Json to_json(const VerificationRecord& r) {
  Json out = Json::array();
  for (const auto& c : r) {
    Json e;
    e["identity"] = c.identity;
    e["status"] = c.exact ? "exact" : "violated";
    out.push_back(e);
  }
  return out;
}

Json to_json(const RelationStep& s) {
  Json j;
  j["direction"] = direction_name(s.direction);
  j["from"] = to_json(s.from);
  j["to"] = to_json(s.to);
  j["connecting"] = to_json(s.connecting);
  j["verification"] = to_json(verify_step(s));
  return j;
}

Json to_json(const WitnessSpan& s) {
  Json j;
  j["W"] = to_json(s.w);
  j["alpha"] = to_json(s.alpha);
  j["alpha_prime"] = to_json(s.alpha_prime);
  j["phi"] = to_json(s.phi);
  j["delta"] = polys(s.delta);
  Json mu = Json::array();
  for (const auto& row : s.mu) mu.push_back(polys(row));
  j["mu"] = mu;
  j["h"] = polys(s.h);
  j["verification"] = to_json(s.verification);
  return j;
}

Json to_json(const EquivalenceDecision& d) {
  Json j;
  j["equivalent"] = d.equivalent;
  if (d.first_difference) j["first_difference"] = *d.first_difference;
  if (d.chain) {
    Json steps = Json::array();
    for (const auto& s : d.chain->steps) steps.push_back(to_json(s));
    j["steps"] = steps;
    if (d.chain->span) j["span"] = to_json(*d.chain->span);
    j["verification"] = to_json(d.verification);
  }
  return j;
}

Json to_json(const EmbeddedFactorization& e) {
  Json j;
  j["pair"] = to_json(e.pair);
  j["step"] = to_json(e.step);
  return j;
}

Json to_json(const JetPoint& p) {
  Json j;
  j["n"] = p.space.n();
  j["m"] = p.space.m();
  j["k"] = p.space.k();
  Json base = Json::array();
  for (const auto& b : p.base) base.push_back(format_rational(b));
  j["base"] = base;
  Json values = Json::object();
  const auto& fc = p.space.fiber_coordinates();
  for (std::size_t i = 0; i < fc.size(); ++i) values[p.space.key(fc[i])] = format_rational(p.values[i]);
  j["values"] = values;
  return j;
}

Json to_json(const HadamardExpansion& h) {
  Json j;
  j["x"] = h.x_vars;
  j["y"] = h.y_vars;
  j["order"] = h.order;
  Json taylor = Json::object();
  for (const auto& [s, p] : h.taylor_terms) taylor[format_multi_index(s)] = to_json(p);
  j["taylor"] = taylor;
  Json rem = Json::object();
  for (const auto& [t, p] : h.remainders) rem[format_multi_index(t)] = to_json(p);
  j["remainders"] = rem;
  return j;
}

Json to_json(const TruncatedProPlot& f) {
  Json j;
  j["source"] = to_json(f.source);
  j["dims"] = f.dims;
  Json levels = Json::array();
  for (const auto& l : f.levels) levels.push_back(polys(l));
  j["levels"] = levels;
  return j;
}

JetPoint read_jet_point(const Json& j) {
  return guarded("jet point", [&] {
    JetSpace space(j.at("n").get<std::size_t>(), j.at("m").get<std::size_t>(),
                   j.at("k").get<unsigned>());
    JetPoint p{space, {}, {}};
    for (const auto& b : j.at("base")) p.base.push_back(parse_rational(b.get<std::string>()));
    if (p.base.size() != space.n()) throw Error(ErrorKind::shape, "base point has wrong length");
    const Json& values = j.at("values");
    for (const auto& c : space.fiber_coordinates()) {
      const std::string key = space.key(c);
      if (!values.contains(key)) throw Error(ErrorKind::shape, "jet point lacks entry " + key);
      p.values.push_back(parse_rational(values.at(key).get<std::string>()));
    }
    if (values.size() != space.fiber_dim()) {
      throw Error(ErrorKind::shape, "jet point has entries outside order " + std::to_string(space.k()));
    }
    return p;
  });
}

void Workspace::add(const std::string& name, WeilAlgebra a) { insert(algebras_, name, std::move(a), "algebra"); }
void Workspace::add(const std::string& name, FormalSpace s) { insert(spaces_, name, std::move(s), "space"); }
void Workspace::add(const std::string& name, FormalMorphism m) { insert(morphisms_, name, std::move(m), "morphism"); }
void Workspace::add(const std::string& name, FactorizationPair p) { insert(pairs_, name, std::move(p), "pair"); }

const WeilAlgebra& Workspace::algebra(const std::string& name) const { return lookup(algebras_, name, "algebra"); }
const FormalSpace& Workspace::space(const std::string& name) const { return lookup(spaces_, name, "space"); }
const FormalMorphism& Workspace::morphism(const std::string& name) const { return lookup(morphisms_, name, "morphism"); }
const FactorizationPair& Workspace::pair(const std::string& name) const { return lookup(pairs_, name, "pair"); }

WeilOptions Workspace::weil_options() const {
  WeilOptions o;
  o.k_max = config.k_max;
  o.groebner.pair_cap = config.pair_cap;
  return o;
}

WeilAlgebra Workspace::read_algebra(const Json& j) const {
  return guarded("algebra", [&] {
    if (j.is_string()) return algebra(j.get<std::string>());
    WeilOptions o = weil_options();
    o.name = j.value("name", std::string());
    if (j.contains("vars")) o.vars = strings(j.at("vars"));
    std::vector<Polynomial> gens;
    for (const auto& g : j.at("generators")) gens.push_back(read_poly(g, o.vars));
    std::size_t d = o.vars.size();
    if (j.contains("d")) d = j.at("d").get<std::size_t>();
    if (o.vars.empty() && !j.contains("d")) {
      std::vector<std::string> seen;
      for (const auto& g : gens) seen = union_vars(seen, g.used_vars());
      d = seen.size();
    }
    return make_weil(d, gens, o);
  });
}

FormalSpace Workspace::read_space(const Json& j) const {
  return guarded("space", [&] {
    if (j.is_string()) {
      const std::string name = j.get<std::string>();
      for (const auto& [n, s] : spaces_) {
        if (n == name) return s;
      }
      if (name == "pt") return FormalSpace();
      if (name.size() > 2 && name.rfind("R^", 0) == 0 &&
          std::all_of(name.begin() + 2, name.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        return rk_space(std::stoul(name.substr(2)));
      }
      throw Error(ErrorKind::invalid_argument, "no space named '" + name + "'");
    }
    WeilAlgebra a = j.contains("algebra") ? read_algebra(j.at("algebra")) : point_algebra();
    std::vector<std::string> params;
    if (j.contains("params")) params = strings(j.at("params"));
    return FormalSpace(j.value("name", std::string("U")), params, a);
  });
}

FormalMorphism Workspace::read_morphism(const Json& j) const {
  return guarded("morphism", [&] {
    if (j.is_string()) return morphism(j.get<std::string>());
    FormalSpace source = read_space(j.at("source"));
    FormalSpace target = read_space(j.at("target"));
    std::vector<Polynomial> comps;
    for (const auto& c : j.at("components")) comps.push_back(read_poly(c, source.coordinates()));
    return FormalMorphism(source, target, comps);
  });
}

FactorizationPair Workspace::read_pair(const Json& j) const {
  return guarded("pair", [&] {
    if (j.is_string()) return pair(j.get<std::string>());
    return FactorizationPair(read_morphism(j.at("iota")), read_morphism(j.at("f")));
  });
}

TruncatedProPlot Workspace::read_family(const Json& j) const {
  return guarded("family", [&] {
    TruncatedProPlot f{read_space(j.at("source")), {}, {}};
    for (const auto& level : j.at("levels")) {
      std::vector<Polynomial> comps;
      for (const auto& c : level) comps.push_back(read_poly(c, f.source.coordinates()));
      f.levels.push_back(std::move(comps));
    }
    if (j.contains("dims")) {
      f.dims = j.at("dims").get<std::vector<std::size_t>>();
    } else if (j.contains("jet")) {
      const Json& jet = j.at("jet");
      if (f.levels.empty()) throw Error(ErrorKind::shape, "family has no levels");
      f.dims = jet_dims(jet.at("n").get<std::size_t>(), jet.at("m").get<std::size_t>(),
                        static_cast<unsigned>(f.levels.size() - 1));
    } else {
      for (const auto& l : f.levels) f.dims.push_back(l.size());
    }
    return f;
  });
}

Workspace Workspace::from_json(const Json& doc, WorkspaceConfig defaults) {
  return guarded("workspace", [&] {
    Workspace ws;
    ws.config = defaults;
    if (doc.contains("config")) {
      const Json& c = doc.at("config");
      ws.config.k_max = c.value("k_max", ws.config.k_max);
      ws.config.level = c.value("level", ws.config.level);
      ws.config.pair_cap = c.value("pair_cap", ws.config.pair_cap);
      ws.config.seed = c.value("seed", ws.config.seed);
    }
    auto entries = [&](const char* key) {
      return doc.contains(key) ? doc.at(key) : Json::array();
    };
    for (const auto& e : entries("algebras")) ws.add(e.at("name").get<std::string>(), ws.read_algebra(e));
    for (const auto& e : entries("spaces")) ws.add(e.at("name").get<std::string>(), ws.read_space(e));
    for (const auto& e : entries("morphisms")) ws.add(e.at("name").get<std::string>(), ws.read_morphism(e));
    for (const auto& e : entries("pairs")) ws.add(e.at("name").get<std::string>(), ws.read_pair(e));
    return ws;
  });
}

Json Workspace::to_json() const {
  Json j;
  Json c;
  c["k_max"] = config.k_max;
  c["level"] = config.level;
  c["pair_cap"] = config.pair_cap;
  c["seed"] = config.seed;
  j["config"] = c;
  auto named = [](const std::string& name, Json body) {
    Json out;
    out["name"] = name;
    for (auto& [k, v] : body.items()) {
      if (k != "name") out[k] = v;
    }
    return out;
  };
  Json algebras = Json::array();
  for (const auto& [n, a] : algebras_) algebras.push_back(named(n, jetkernel::to_json(a)));
  Json spaces = Json::array();
  for (const auto& [n, s] : spaces_) spaces.push_back(named(n, jetkernel::to_json(s)));
  Json morphisms = Json::array();
  for (const auto& [n, m] : morphisms_) morphisms.push_back(named(n, jetkernel::to_json(m)));
  Json pairs = Json::array();
  for (const auto& [n, p] : pairs_) pairs.push_back(named(n, jetkernel::to_json(p)));
  j["algebras"] = algebras;
  j["spaces"] = spaces;
  j["morphisms"] = morphisms;
  j["pairs"] = pairs;
  return j;
}

}  // namespace jetkernel
