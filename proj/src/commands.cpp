#include "cremona/commands.hpp"

#include <sstream>
#include <thread>

#include "cremona/verifier.hpp"

namespace cremona {
namespace {

[[noreturn]] void usage(const std::string& what) { fail(ErrorKind::Usage, what); }

bool has(const Json& j, const char* key) { return j.is_object() && j.contains(key) && !j.at(key).is_null(); }

const Json& need(const Json& j, const char* key, const char* where) {
  if (!has(j, key)) usage(std::string(where) + " needs \"" + key + "\"");
  return j.at(key);
}

int opt_int(const Json& options, const char* key, int fallback) {
  if (!has(options, key)) return fallback;
  if (!options.at(key).is_number_integer()) usage(std::string("option ") + key + " must be an integer");
  return options.at(key).get<int>();
}

// The input document doubles as a one-off scenario: "model" (or a bare
// "rank" for a lattice without coordinates) plus literal maps and isometries.
Scenario scenario_from(const Json& input) {
  Scenario sc;
  sc.name = "input";
  if (has(input, "model")) {
    sc.model = model_from_json(input.at("model"));
  } else if (has(input, "rank")) {
    if (!input.at("rank").is_number_integer()) usage("rank must be an integer");
    sc.model = SurfaceModel::lattice_only(input.at("rank").get<int>());
  }
  return sc;
}

std::string render(const Json& j) {
  std::ostringstream out;
  auto line = [&](const std::string& key, const Json& v) {
    if (v.is_array() && !v.empty()) {
      out << key << ":\n";
      for (const auto& item : v) out << "  " << (item.is_string() ? item.get<std::string>() : item.dump()) << "\n";
    } else {
      out << key << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
  };
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) line(k, v);
  } else {
    line("result", j);
  }
  return out.str();
}

CommandResult done(Json output, int exit_code = 0) {
  CommandResult r;
  r.text = render(output);
  r.output = std::move(output);
  r.exit_code = exit_code;
  return r;
}

CommandResult from_report(const Report& rep) {
  CommandResult r;
  r.output = rep.to_json();
  r.text = rep.to_text();
  r.exit_code = rep.pass() ? 0 : 1;
  return r;
}

Registry registry_from(const Json& options) {
  if (has(options, "fixtures")) return Registry::load(options.at("fixtures").get<std::string>());
  return Registry::load(default_fixture_root());
}

CommandResult cmd_closure(const Json& input, const Json& options) {
  const auto cap = static_cast<std::size_t>(opt_int(options, "cap", static_cast<int>(kDefaultClosureCap)));
  if (cap < 1) usage("cap must be positive");
  Json out;
  auto words_json = [](const auto& g) {
    Json w = Json::array();
    for (const auto& word : g.words) w.push_back(word);
    return w;
  };
  if (has(input, "generators")) {
    std::vector<ProjMap> gens;
    for (const auto& m : input.at("generators")) gens.push_back(map_from_json(m));
    const auto g = closure(gens, cap);
    Json elements = Json::array();
    for (const auto& f : g.elements) elements.push_back(to_json(f));
    out = Json{{"order", g.order()},       {"abelian", g.is_abelian()}, {"identity", g.identity},
               {"elements", elements},     {"words", words_json(g)},    {"orders", g.orders},
               {"table", g.table}};
  } else if (has(input, "isometries")) {
    const Scenario sc = scenario_from(input);
    std::vector<LatticeIsometry> gens;
    for (const auto& m : input.at("isometries")) gens.push_back(isometry_from_json(m, sc.model ? &*sc.model : nullptr));
    const auto g = closure(gens, cap);
    Json elements = Json::array();
    for (const auto& m : g.elements) elements.push_back(m.rows());
    out = Json{{"order", g.order()},
               {"abelian", g.is_abelian()},
               {"identity", g.identity},
               {"invariant_rank", invariant_rank(g)},
               {"elements", elements},
               {"words", words_json(g)},
               {"orders", g.orders},
               {"table", g.table}};
  } else {
    usage("closure needs \"generators\" (maps) or \"isometries\"");
  }
  return done(std::move(out));
}

CommandResult cmd_curves(const Json& input) {
  const Scenario sc = scenario_from(input);
  const auto& model = sc.require_model();
  Json list = Json::array();
  for (const auto& c : model.negative_curves()) {
    Json j = to_json(c);
    j["self_intersection"] = self_intersection(c);
    list.push_back(std::move(j));
  }
  return done(Json{{"count", list.size()}, {"curves", list}});
}

Json with_input_fiber(const Json& input, const Json& options, const char* where) {
  if (has(options, "f")) return options.at("f");
  return need(input, "fiber", where);
}

Json generators_of(const Json& input, const char* where) { return need(input, "generators", where); }

CommandResult dispatch(const std::string& name, const Json& input, const Json& options) {
  if (name == "lemma") {
    const Registry reg = registry_from(options);
    if (!has(options, "id")) usage("lemma needs an id");
    return from_report(run_lemma(reg, options.at("id").get<std::string>()));
  }
  if (name == "lemmas") {
    const Registry reg = registry_from(options);
    CommandResult r = done(list_lemmas(reg));
    std::ostringstream text;
    for (const auto& l : r.output) {
      text << l["id"].get<std::string>() << "  " << l["summary"].get<std::string>() << "\n";
    }
    for (const auto& w : reg.warnings()) text << "warning: " << w << "\n";
    r.text = text.str();
    return r;
  }
  if (name == "all") {
    const Registry reg = registry_from(options);
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    return from_report(run_all(reg, static_cast<unsigned>(opt_int(options, "threads", static_cast<int>(hw)))));
  }
  if (name == "characters") {
    Json args{{"order", opt_int(options, "order", 0)}, {"rank", opt_int(options, "rank", 0)}};
    if (has(options, "bounds")) args["bounds"] = options.at("bounds");
    if (args["order"] < 1 || args["rank"] < 1) usage("characters needs --order and --rank");
    return done(apply_op(Scenario{}, "characters", args));
  }
  if (name == "closure") return cmd_closure(input, options);
  if (name == "curves") return cmd_curves(input);

  const Scenario sc = scenario_from(input);
  if (name == "compose") {
    const auto f = map_from_json(need(input, "f", "compose"));
    const auto g = map_from_json(need(input, "g", "compose"));
    const auto h = compose(f, g);
    return done(Json{{"result", to_json(h)}, {"degree", h.degree()}});
  }
  if (name == "degseq") {
    const int n = opt_int(options, "n", 4);
    return done(Json{{"degrees", apply_op(sc, "degree_sequence", Json{{"map", need(input, "map", "degseq")}, {"n", n}})}});
  }
  if (name == "bundles") return done(apply_op(sc, "conic_bundles", Json::object()));
  if (name == "sections") {
    Json args{{"fiber", with_input_fiber(input, options, "sections")}, {"n", opt_int(options, "n", 1)}};
    Json out{{"sections", apply_op(sc, "sections", args)}, {"bound", apply_op(sc, "section_bound", args)}};
    return done(std::move(out));
  }
  if (name == "rank") {
    Json g = apply_op(sc, "lattice_group", Json{{"generators", generators_of(input, "rank")}});
    return done(Json{{"order", g["order"]}, {"invariant_rank", g["invariant_rank"]}});
  }
  if (name == "orbits") {
    Json out = apply_op(sc, "orbits", Json{{"generators", generators_of(input, "orbits")}});
    const bool holds = out["holds"].get<bool>();
    return done(std::move(out), holds ? 0 : 1);
  }
  if (name == "minimal-pair") return done(apply_op(sc, "pair_minimal", Json{{"generators", generators_of(input, "minimal-pair")}}));
  if (name == "minimal-triple") {
    Json args{{"generators", generators_of(input, "minimal-triple")}, {"fiber", with_input_fiber(input, options, "minimal-triple")}};
    return done(Json{{"minimal", apply_op(sc, "triple_minimal", args)}});
  }
  if (name == "twists") {
    Json args{{"isometry", need(input, "isometry", "twists")}, {"fiber", with_input_fiber(input, options, "twists")}};
    Json out{{"twisted", apply_op(sc, "twisted_fibers", args)}};
    int code = 0;
    if (has(options, "n")) {
      args["n"] = opt_int(options, "n", 1);
      out["parity"] = apply_op(sc, "twist_parity", args);
      code = out["parity"]["holds"].get<bool>() ? 0 : 1;
    }
    return done(std::move(out), code);
  }
  if (name == "lefschetz") {
    Json args{{"isometry", need(input, "isometry", "lefschetz")}, {"fixed", need(input, "fixed", "lefschetz")}};
    Json out = apply_op(sc, "lefschetz", args);
    const bool holds = out["holds"].get<bool>();
    return done(std::move(out), holds ? 0 : 1);
  }
  usage("unknown command \"" + name + "\"");
}

}  // namespace

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse:
    case ErrorKind::Usage:
    case ErrorKind::Malformed:
    case ErrorKind::RankMismatch:
    case ErrorKind::InvalidClass:
      return 2;
    default:
      return 1;
  }
}

CommandResult run_command(const std::string& name, const Json& input, const Json& options) {
  try {
    return dispatch(name, input, options.is_null() ? Json::object() : options);
  } catch (const Error& e) {
    CommandResult r;
    r.output = Json{{"error", std::string(to_string(e.kind()))}, {"message", e.what()}};
    r.text = "error (" + std::string(to_string(e.kind())) + "): " + e.what() + "\n";
    r.exit_code = exit_code_for(e.kind());
    return r;
  } catch (const Json::exception& e) {
    CommandResult r;
    r.output = Json{{"error", "parse"}, {"message", e.what()}};
    r.text = std::string("error (parse): ") + e.what() + "\n";
    r.exit_code = 2;
    return r;
  }
}

}  // namespace cremona
