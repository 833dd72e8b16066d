#include "swctl/cli.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "swctl/serialize.hpp"

namespace swctl {

namespace {

struct Config {
  std::string input;
  std::uint64_t seed = kDefaultSeed;
  int trials = 3;
  std::uint64_t prime = kMersenne61;
  int layer_cap = MdgLimits{}.max_layers;
  std::string format;
  std::string output;
  int layers = 2;
  int samples = 100;
  int realizations = 3;
};

SwitchedStructure load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_system(text.str());
}

CheckOptions options(const Config& c) {
  if (c.trials < 1) throw InputError("--trials must be at least 1");
  CheckOptions o;
  o.seeds = trial_seeds(c.seed, c.trials);
  o.prime = c.prime;
  o.limits.max_layers = c.layer_cap;
  return o;
}

void require_format(const std::string& format, std::initializer_list<const char*> allowed) {
  if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return format == a; })) {
    throw InputError("format '" + format + "' is not available for this command");
  }
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

// Returns the exit code; writes the payload into body.
int execute(const std::string& command, const Config& c, std::string& body) {
  const SwitchedStructure sys = load(c.input);
  const ColoredUnionGraph g(sys);
  const std::string format = c.format.empty() ? (command == "mdg" ? "dot" : "json") : c.format;

  if (command == "check") {
    require_format(format, {"json", "text"});
    const Verdict v = check(sys, options(c));
    if (format == "json") {
      body = dump(to_json(v, g));
    } else {
      std::ostringstream os;
      os << (v.structurally_controllable ? "structurally controllable" : "not structurally controllable") << "\n"
         << "reachable " << v.reachable_count << "/" << v.n << ", grank_concat " << v.grank_concat << "\n"
         << "oracle dim " << v.oracle.dim << " (" << v.oracle.trials_at(v.n) << "/" << v.oracle.trials.size()
         << " trials full)\n"
         << "bounds [" << v.bounds.lower << ", " << v.bounds.upper << "], conventional lower " << v.conventional_lower
         << "\n";
      body = os.str();
    }
    return v.structurally_controllable ? 0 : 1;
  }
  if (command == "grank") {
    require_format(format, {"json", "text"});
    const int r = grank_concat(g);
    body = format == "json" ? dump({{"grank_concat", r}, {"n", sys.n()}}) : std::to_string(r) + "\n";
    return 0;
  }
  if (command == "bounds") {
    require_format(format, {"json", "text"});
    const Bounds b = dim_bounds(sys, options(c));
    const int conventional = conventional_cactus_lower(sys);
    if (format == "json") {
      auto j = to_json(b, g);
      j["conventional_lower"] = conventional;
      body = dump(j);
    } else {
      body = std::to_string(b.lower) + " " + std::to_string(b.upper) + "\n";
    }
    return 0;
  }
  if (command == "cactus") {
    require_format(format, {"json", "dot"});
    const CactusConfiguration best = best_cactus_cover(g);
    body = format == "json" ? dump(certificate_json(g, Decomposition{best, {}})) : cactus_dot(g, best);
    return 0;
  }
  if (command == "mdg") {
    require_format(format, {"json", "dot"});
    MdgLimits limits;
    limits.max_layers = c.layer_cap;
    const MultiLayerDynamicGraph mdg(sys, c.layers, limits);
    const Linking linking = max_linking(mdg);
    if (format == "json") {
      body = dump(to_json(mdg, linking));
    } else {
      body = "// max linking size " + std::to_string(linking.size()) + "\n" + mdg_dot(mdg, &linking);
    }
    return 0;
  }
  if (command == "realize") {
    require_format(format, {"json"});
    body = dump(to_json(sample_realization(sys, FieldTag::finite(c.prime), c.seed)));
    return 0;
  }
  if (command == "counterexample") {
    require_format(format, {"json", "text"});
    const ReductionScan scan = lti_reduction_scan(sys, c.samples, c.realizations, c.seed, c.prime);
    const RankReport oracle = controllable_dim(sys, trial_seeds(c.seed, c.trials), c.prime);
    if (format == "json") {
      nlohmann::json counts = nlohmann::json::object();
      for (const auto& [rank, count] : scan.rank_counts) counts[std::to_string(rank)] = count;
      body = dump({{"n", sys.n()},
                   {"samples", scan.samples},
                   {"realizations_per_sample", scan.realizations},
                   {"max_rank", scan.max_rank},
                   {"rank_counts", counts},
                   {"controllable_dim", oracle.dim}});
    } else {
      body = "max reduction rank " + std::to_string(scan.max_rank) + " over " + std::to_string(scan.samples) +
             " weight vectors; controllable dim " + std::to_string(oracle.dim) + " of " + std::to_string(sys.n()) +
             "\n";
    }
    return 0;
  }
  throw InputError("unknown command " + command);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Structural controllability of switched linear systems"};
  app.require_subcommand(1, 1);
  Config c;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("input", c.input, "System description (JSON)")->required();
    sub->add_option("-o,--output", c.output, "Write to this file instead of stdout");
    sub->add_option("--format", c.format, "json, dot or text");
    sub->add_option("--seed", c.seed, "Base seed")->capture_default_str();
    sub->add_option("--prime", c.prime, "Field characteristic")->capture_default_str();
  };
  auto add_oracle = [&](CLI::App* sub) {
    sub->add_option("--trials", c.trials, "Oracle trials")->capture_default_str();
    sub->add_option("--layer-cap", c.layer_cap, "Largest MDG layer count")->capture_default_str();
  };

  CLI::App* check_cmd = app.add_subcommand("check", "Decide structural controllability");
  add_common(check_cmd);
  add_oracle(check_cmd);
  add_common(app.add_subcommand("grank", "Generic rank of [A_1 .. A_N, B_1 .. B_N]"));
  CLI::App* bounds_cmd = app.add_subcommand("bounds", "Bounds on the controllable dimension");
  add_common(bounds_cmd);
  add_oracle(bounds_cmd);
  add_common(app.add_subcommand("cactus", "Best cactus configuration found"));
  CLI::App* mdg_cmd = app.add_subcommand("mdg", "Multi-layer dynamic graph and a maximum linking");
  add_common(mdg_cmd);
  mdg_cmd->add_option("--layers", c.layers, "Number of layers")->capture_default_str();
  mdg_cmd->add_option("--layer-cap", c.layer_cap, "Largest MDG layer count")->capture_default_str();
  add_common(app.add_subcommand("realize", "Sample a finite-field realization"));
  CLI::App* cx_cmd = app.add_subcommand("counterexample", "Rank of weighted single-system reductions");
  add_common(cx_cmd);
  cx_cmd->add_option("--samples", c.samples, "Weight vectors")->capture_default_str();
  cx_cmd->add_option("--realizations", c.realizations, "Realizations per weight vector")->capture_default_str();
  cx_cmd->add_option("--trials", c.trials, "Oracle trials")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    std::string body;
    const int code = execute(command, c, body);
    if (c.output.empty()) {
      out << body;
    } else {
      std::ofstream file(c.output, std::ios::binary);
      if (!file) throw InputError("cannot write " + c.output);
      file << body;
    }
    return code;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const MdgSizeError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
  }
  return 2;
}

}  // namespace swctl
