// Command-line front end over the C API.
#include <cstdio>
#include <iostream>
#include <iterator>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cremona/cremona.h"

namespace {

using Json = nlohmann::json;

constexpr int kUsageExit = 2;

struct Common {
  bool text = false;
  std::optional<int> conductor_cap;
  std::string fixtures;
};

std::optional<std::string> read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  std::ifstream in(path);
  if (!in) return std::nullopt;
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

int emit_error(const std::string& message) {
  std::cerr << "cremona: " << message << "\n";
  return kUsageExit;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with plane Cremona maps and del Pezzo Picard lattices"};
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  app.add_flag("--text", common.text, "Print a human-readable table instead of JSON");
  app.add_option("--conductor-cap", common.conductor_cap, "Largest cyclotomic conductor allowed")->check(CLI::PositiveNumber);
  app.add_option("--fixtures", common.fixtures, "Fixture root (overrides CREMONA_FIXTURES)");

  std::string input_path;
  std::string lemma_id;
  std::optional<int> n;
  std::optional<int> cap;
  std::optional<int> threads;
  std::optional<int> order;
  std::optional<int> rank;
  std::string fiber;
  std::vector<std::string> bounds;

  struct Verb {
    std::string name;
    std::string help;
    bool reads_input;
  };
  const std::vector<Verb> verbs{
      {"lemma", "Run the checks of one registered lemma", false},
      {"lemmas", "List registered lemmas", false},
      {"all", "Run every registered lemma", false},
      {"compose", "Compose maps {\"f\", \"g\"} (g applied first)", true},
      {"degseq", "Degrees of the iterates of {\"map\"}", true},
      {"closure", "Close {\"generators\"} (maps) or {\"isometries\"} under composition", true},
      {"curves", "Negative curves of {\"model\"}", true},
      {"bundles", "Conic bundle structures of {\"model\"}", true},
      {"sections", "Sections of a conic bundle of {\"model\"}", true},
      {"rank", "Rank of the invariant lattice of {\"generators\"}", true},
      {"orbits", "Orbits of {\"generators\"} on the negative curves", true},
      {"minimal-pair", "Whether the group action admits no equivariant contraction", true},
      {"minimal-triple", "Whether every singular fiber is twisted by some element", true},
      {"twists", "Singular fibers twisted by {\"isometry\"}", true},
      {"lefschetz", "Compare trace with the Euler characteristic of {\"fixed\"}", true},
      {"characters", "Admissible eigenvalue profiles", false},
  };

  std::map<std::string, CLI::App*> subs;
  for (const auto& v : verbs) {
    CLI::App* sub = app.add_subcommand(v.name, v.help);
    subs[v.name] = sub;
    if (v.reads_input) sub->add_option("input", input_path, "JSON input file (standard input when omitted or -)");
  }
  subs["lemma"]->add_option("id", lemma_id, "Lemma id")->required();
  subs["all"]->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  subs["degseq"]->add_option("--n", n, "Number of iterates")->check(CLI::PositiveNumber);
  subs["closure"]->add_option("--cap", cap, "Maximum group order")->check(CLI::PositiveNumber);
  subs["sections"]->add_option("--f", fiber, "Fiber class, e.g. L-E1");
  subs["sections"]->add_option("--n", n, "Sections of self-intersection -n")->check(CLI::PositiveNumber);
  subs["minimal-triple"]->add_option("--f", fiber, "Fiber class");
  subs["twists"]->add_option("--f", fiber, "Fiber class");
  subs["twists"]->add_option("--n", n, "Order of the action on the base, enables the parity check")->check(CLI::PositiveNumber);
  subs["characters"]->add_option("--order", order, "Element order")->required()->check(CLI::PositiveNumber);
  subs["characters"]->add_option("--rank", rank, "Lattice rank")->required()->check(CLI::PositiveNumber);
  subs["characters"]->add_option("--bound", bounds, "Trace lower bound e=v for the e-th power");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageExit;
  }

  const std::string verb = app.get_subcommands().front()->get_name();

  Json options = Json::object();
  if (!common.fixtures.empty()) options["fixtures"] = common.fixtures;
  if (!lemma_id.empty()) options["id"] = lemma_id;
  if (n) options["n"] = *n;
  if (cap) options["cap"] = *cap;
  if (threads) options["threads"] = *threads;
  if (order) options["order"] = *order;
  if (rank) options["rank"] = *rank;
  if (!fiber.empty()) options["f"] = fiber;
  if (!bounds.empty()) {
    Json b = Json::object();
    for (const auto& item : bounds) {
      const auto eq = item.find('=');
      try {
        if (eq == std::string::npos) throw std::invalid_argument(item);
        std::size_t used = 0;
        const int e = std::stoi(item.substr(0, eq));
        const int v = std::stoi(item.substr(eq + 1), &used);
        if (e < 1 || used != item.size() - eq - 1) throw std::invalid_argument(item);
        b[std::to_string(e)] = v;
      } catch (const std::exception&) {
        return emit_error("--bound expects e=v with integers, got \"" + item + "\"");
      }
    }
    options["bounds"] = b;
  }

  bool reads_input = false;
  for (const auto& v : verbs) {
    if (v.name == verb) reads_input = v.reads_input;
  }
  std::string input;
  if (reads_input) {
    auto text = read_input(input_path);
    if (!text) return emit_error("cannot read " + input_path);
    input = std::move(*text);
  }

  crm_context* ctx = crm_context_new();
  if (ctx == nullptr) return emit_error("out of memory");
  if (common.conductor_cap && crm_set_conductor_cap(ctx, *common.conductor_cap) != CRM_OK) {
    const int code = emit_error(crm_last_error(ctx));
    crm_context_free(ctx);
    return code;
  }
  char* output = nullptr;
  int exit_code = 0;
  const std::string opts = options.dump();
  const crm_status st = common.text
                            ? crm_run_command_text(ctx, verb.c_str(), input.c_str(), opts.c_str(), &output, &exit_code)
                            : crm_run_command(ctx, verb.c_str(), input.c_str(), opts.c_str(), &output, &exit_code);
  if (st != CRM_OK) {
    std::cerr << "cremona: " << crm_status_name(st) << ": " << crm_last_error(ctx) << "\n";
    crm_context_free(ctx);
    return st == CRM_ERR_USAGE || st == CRM_ERR_PARSE ? kUsageExit : 1;
  }
  std::fputs(output, stdout);
  crm_string_free(output);
  crm_context_free(ctx);
  return exit_code;
}
