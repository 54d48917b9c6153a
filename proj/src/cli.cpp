#include "jetkernel/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "jetkernel/error.hpp"
#include "jetkernel/parse.hpp"
#include "jetkernel/selftest.hpp"
#include "jetkernel/serialize.hpp"

namespace jetkernel {

namespace {

struct Globals {
  std::string in;
  std::string out;
  bool json = false;
  std::optional<unsigned> k_max;
  std::optional<std::size_t> level;
  std::uint64_t seed = 42;
  bool inject_fault = false;
  bool serial = false;
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto b = item.find_first_not_of(" \t");
    auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

Json read_document(const std::string& path) {
  if (path.empty()) throw Error(ErrorKind::invalid_argument, "--in is required");
  std::string text;
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream f(path);
    if (!f) throw Error(ErrorKind::invalid_argument, "cannot read " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    text = ss.str();
  }
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::parse, path + ": " + e.what());
  }
}

void render_text(const Json& j, const std::string& prefix, std::ostream& out) {
  auto scalar = [](const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) render_text(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array()) {
    const bool flat = std::none_of(j.begin(), j.end(),
                                   [](const Json& v) { return v.is_object() || v.is_array(); });
    if (flat) {
      out << prefix << ": [";
      for (std::size_t i = 0; i < j.size(); ++i) out << (i ? ", " : "") << scalar(j[i]);
      out << "]\n";
    } else {
      for (std::size_t i = 0; i < j.size(); ++i) render_text(j[i], prefix + "[" + std::to_string(i) + "]", out);
    }
  } else {
    out << prefix << ": " << scalar(j) << "\n";
  }
}

std::string render(const Json& j, bool json) {
  if (json) return j.dump(2) + "\n";
  std::ostringstream ss;
  render_text(j, "", ss);
  return ss.str();
}

// Writes to a temporary file first so a failed run never leaves a partial file.
void emit(const std::string& text, const Globals& g, std::ostream& out) {
  if (g.out.empty()) {
    out << text;
    return;
  }
  const std::string tmp = g.out + ".tmp";
  {
    std::ofstream f(tmp, std::ios::trunc);
    if (!f || !(f << text)) throw Error(ErrorKind::invalid_argument, "cannot write " + g.out);
  }
  if (std::rename(tmp.c_str(), g.out.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw Error(ErrorKind::invalid_argument, "cannot write " + g.out);
  }
}

Workspace load_workspace(const Globals& g) {
  WorkspaceConfig defaults;
  defaults.pair_cap = default_groebner_options().pair_cap;
  if (g.k_max) defaults.k_max = *g.k_max;
  Workspace ws = Workspace::from_json(read_document(g.in), defaults);
  if (g.k_max) ws.config.k_max = *g.k_max;
  if (g.level) ws.config.level = *g.level;
  return ws;
}

template <class T>
const T& pick(const std::vector<std::pair<std::string, T>>& items, const std::string& name,
              std::size_t fallback, const char* kind) {
  if (!name.empty()) {
    for (const auto& [n, v] : items) {
      if (n == name) return v;
    }
    throw Error(ErrorKind::invalid_argument, std::string("no ") + kind + " named '" + name + "'");
  }
  if (fallback >= items.size()) {
    throw Error(ErrorKind::invalid_argument, std::string("workspace has too few ") + kind + " entries");
  }
  return items[fallback].second;
}

std::vector<Rational> rationals(const std::string& text) {
  std::vector<Rational> out;
  for (const auto& s : split_list(text)) out.push_back(parse_rational(s));
  return out;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Globals g;
  CLI::App app{"Exact kernel for Weil algebras, jets and plot factorizations", "jetkernel"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--in", g.in, "Input JSON document ('-' for stdin)");
  app.add_option("--out", g.out, "Write the result to this file");
  app.add_flag("--json", g.json, "Emit JSON instead of text");
  app.add_option("--k-max", g.k_max, "Bound for nilpotency detection");
  app.add_option("--level", g.level, "Truncation level K");
  app.add_option("--seed", g.seed, "Random seed");
  app.add_flag("--inject-fault", g.inject_fault)->group("");
  app.add_flag("--serial", g.serial)->group("");

  std::function<Json()> action;

  // weil
  auto* weil = app.add_subcommand("weil", "Weil algebras");
  weil->require_subcommand(1);
  std::size_t d = 0;
  std::string gens, vars, name;
  auto* weil_new = weil->add_subcommand("new", "Build an algebra from generators");
  weil_new->add_option("--d", d, "Number of nilpotent variables")->required();
  weil_new->add_option("--gens", gens, "Comma-separated generators");
  weil_new->add_option("--vars", vars, "Comma-separated variable names");
  weil_new->add_option("--name", name);
  weil_new->callback([&] {
    action = [&] {
      WeilOptions o;
      if (g.k_max) o.k_max = *g.k_max;
      o.vars = split_list(vars);
      o.name = name;
      std::vector<Polynomial> gs;
      for (const auto& s : split_list(gens)) gs.push_back(parse_polynomial(s, o.vars, !o.vars.empty()));
      return algebra_report(make_weil(d, gs, o));
    };
  });
  auto* weil_info = weil->add_subcommand("info", "Report on a workspace algebra");
  weil_info->add_option("--name", name);
  weil_info->callback([&] {
    action = [&] {
      Workspace ws = load_workspace(g);
      return algebra_report(pick(ws.algebras(), name, 0, "algebra"));
    };
  });

  // morphism
  auto* morph = app.add_subcommand("morphism", "Morphisms of formal spaces");
  morph->require_subcommand(1);
  std::string gname, fname;
  auto* compose_cmd = morph->add_subcommand("compose", "Compose g o f");
  compose_cmd->add_option("--g", gname)->required();
  compose_cmd->add_option("--f", fname)->required();
  compose_cmd->callback([&] {
    action = [&] {
      Workspace ws = load_workspace(g);
      return to_json(compose(ws.morphism(gname), ws.morphism(fname)));
    };
  });
  auto* check_cmd = morph->add_subcommand("check", "Classify a morphism");
  check_cmd->add_option("--name", name);
  check_cmd->callback([&] {
    action = [&] {
      Workspace ws = load_workspace(g);
      const FormalMorphism& m = pick(ws.morphisms(), name, 0, "morphism");
      Json j;
      j["well_defined"] = is_well_defined(m);
      j["rectified"] = is_rectified(m);
      if (m.source().params().empty()) j["mono_at_point"] = is_mono_point(m);
      if (m.target().is_cartesian()) {
        try {
          j["formal_embedding"] = is_formal_embedding(m) ? "true" : "false";
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::undecidable_input) throw;
          j["formal_embedding"] = "undecidable";
        }
      }
      static const char* kinds[] = {"general", "mono_at_point", "rectified"};
      j["kind"] = kinds[static_cast<int>(classify_embedding(m).kind)];
      return j;
    };
  });

  // hadamard
  std::string fpoly, xs, ys;
  unsigned order_l = 0;
  auto* had = app.add_subcommand("hadamard", "Hadamard expansion in the y block");
  had->add_option("--f", fpoly)->required();
  had->add_option("--x", xs, "Comma-separated parameter variables");
  had->add_option("--y", ys, "Comma-separated expansion variables")->required();
  had->add_option("--order", order_l)->required();
  had->callback([&] {
    action = [&] {
      auto x = split_list(xs);
      auto y = split_list(ys);
      Polynomial f = parse_polynomial(fpoly, union_vars(x, y), true);
      HadamardExpansion h = hadamard_expand(f, x, y, order_l);
      Json j = to_json(h);
      j["reconstructs"] = h.reconstruct() == f;
      return j;
    };
  });

  // jet
  auto* jet = app.add_subcommand("jet", "Jet spaces");
  jet->require_subcommand(1);
  std::string sections, base;
  std::size_t jn = 0, jm = 1;
  unsigned jk = 0;
  auto* prolong_cmd = jet->add_subcommand("prolong", "Jet of a polynomial section");
  prolong_cmd->add_option("--sections", sections, "Comma-separated components")->required();
  prolong_cmd->add_option("--vars", vars, "Comma-separated base variables");
  prolong_cmd->add_option("--k", jk)->required();
  prolong_cmd->add_option("--base", base, "Comma-separated base point (default 0)");
  prolong_cmd->callback([&] {
    action = [&] {
      auto bv = split_list(vars);
      std::vector<Polynomial> s;
      for (const auto& t : split_list(sections)) s.push_back(parse_polynomial(t, bv, true));
      std::vector<Rational> b = base.empty() ? std::vector<Rational>(bv.size(), Rational(0)) : rationals(base);
      return to_json(prolong(s, bv, jk, b));
    };
  });
  auto* project_cmd = jet->add_subcommand("project", "Forget the top order");
  project_cmd->callback([&] {
    action = [&] { return to_json(project(read_jet_point(read_document(g.in)))); };
  });
  auto* dim_cmd = jet->add_subcommand("dim", "Jet space dimensions");
  dim_cmd->add_option("--n", jn)->required();
  dim_cmd->add_option("--m", jm)->required();
  dim_cmd->add_option("--k", jk)->required();
  dim_cmd->callback([&] {
    action = [&] {
      JetSpace J(jn, jm, jk);
      Json j;
      j["n"] = jn;
      j["m"] = jm;
      j["k"] = jk;
      j["fiber_dim"] = J.fiber_dim();
      j["dim"] = J.dim();
      Json keys = Json::array();
      for (const auto& c : J.fiber_coordinates()) keys.push_back(J.key(c));
      j["fiber_coordinates"] = keys;
      return j;
    };
  });
  auto* lift_cmd = jet->add_subcommand("lift", "Factor a compatible family through its top level");
  lift_cmd->callback([&] {
    action = [&] {
      Workspace ws = load_workspace(g);
      TruncatedProPlot fam = ws.read_family(read_document(g.in).at("family"));
      if (g.level && *g.level + 1 < fam.levels.size()) {
        fam.levels.resize(*g.level + 1);
        fam.dims.resize(*g.level + 1);
      }
      JetLift lift = lift_jet_plot(fam);
      Json j;
      j["pair"] = to_json(lift.pair);
      j["level_ok"] = lift.level_ok;
      return j;
    };
  });

  // factor
  auto* factor = app.add_subcommand("factor", "Factorizations of plots");
  factor->require_subcommand(1);
  std::string pname, qname, kind = "auto";
  auto* flift = factor->add_subcommand("lift", "Factor a plot through U x R^d");
  flift->add_option("--name", name);
  flift->callback([&] {
    action = [&] {
      Workspace ws = load_workspace(g);
      const FormalMorphism& m = pick(ws.morphisms(), name, 0, "morphism");
      std::vector<Polynomial> plot = m.components();
      if (g.level && *g.level < plot.size()) plot.resize(*g.level);
      return to_json(lift_plot(m.source(), plot));
    };
  });
  auto* fembed = factor->add_subcommand("embed", "Embed a pair into V x U x R^d");
  fembed->add_option("--name", name);
  fembed->callback([&] {
    action = [&] {
      Workspace ws = load_workspace(g);
      return to_json(embed_factorization(pick(ws.pairs(), name, 0, "pair")));
    };
  });
  auto* fwitness = factor->add_subcommand("witness", "Witness span for equal composites");
  fwitness->add_option("--p", pname);
  fwitness->add_option("--q", qname);
  fwitness->add_option("--kind", kind)->check(CLI::IsMember({"auto", "d1", "point", "general"}));
  fwitness->callback([&] {
    action = [&] {
      Workspace ws = load_workspace(g);
      const FactorizationPair& p = pick(ws.pairs(), pname, 0, "pair");
      const FactorizationPair& q = pick(ws.pairs(), qname, 1, "pair");
      std::string k = kind;
      if (k == "auto") {
        const FormalSpace& s = p.source();
        if (is_rectified(p.iota()) && is_rectified(q.iota())) {
          k = s.params().empty() ? "point" : "general";
        } else if (s.params().empty() && s.thickening().embedding_dim() == 1 && s.thickening().dim() == 2) {
          k = "d1";
        } else {
          throw Error(ErrorKind::not_rectified,
                      "embeddings are not rectified; use 'factor decide' for general pairs");
        }
      }
      WitnessSpan span = k == "d1" ? witness_d1(p, q) : k == "point" ? witness_point(p, q)
                                                                     : witness_general(p, q);
      Json j = to_json(span);
      j["kind"] = k;
      return j;
    };
  });
  auto* fdecide = factor->add_subcommand("decide", "Decide equivalence of two pairs");
  fdecide->add_option("--p", pname);
  fdecide->add_option("--q", qname);
  fdecide->callback([&] {
    action = [&] {
      Workspace ws = load_workspace(g);
      return to_json(decide_equivalence(pick(ws.pairs(), pname, 0, "pair"),
                                        pick(ws.pairs(), qname, 1, "pair")));
    };
  });

  // selftest
  bool selftest_ok = true;
  auto* st = app.add_subcommand("selftest", "Run the randomized invariant suites");
  st->callback([&] {
    action = [&] {
      SelftestOptions o;
      o.inject_fault = g.inject_fault;
      o.execution = g.serial ? Execution::serial : Execution::parallel;
      SelftestReport r = selftest(g.seed, o);
      selftest_ok = r.ok();
      return to_json(r);
    };
  });

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }
  if (!action) {
    err << "usage error: incomplete command\n";
    return 2;
  }
  try {
    Json result = action();
    emit(render(result, g.json), g, out);
    return selftest_ok ? 0 : 1;
  } catch (const Error& e) {
    Json j;
    j["error"]["kind"] = std::string(to_string(e.kind()));
    j["error"]["message"] = e.what();
    out << j.dump() << "\n";
    return 1;
  }
}

}  // namespace jetkernel
