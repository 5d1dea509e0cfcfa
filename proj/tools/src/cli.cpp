#include "mbs/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>

#include "mbs/canonical.hpp"
#include "mbs/fixtures.hpp"
#include "mbs/homology.hpp"
#include "mbs/io.hpp"
#include "mbs/minors.hpp"
#include "mbs/moves.hpp"
#include "mbs/search.hpp"
#include "mbs/surface.hpp"

namespace mbs::cli {
namespace {

// Thrown by command handlers to end with a structured error document.
struct Failure {
  int code = kUsage;
  std::string rule;
  std::string message;
  Json detail;
};

struct Options {
  std::vector<std::string> files;
  std::string mode;
  std::string symmetry;  // empty until parsed; defaults differ per subcommand
  std::string policy = "first";
  std::string move_json;
  std::string out_path;
  std::string name;
  std::vector<std::string> params;
  std::optional<std::size_t> index;
  int max_depth = 4;
  std::size_t max_states = 200000;
  std::size_t max_cells = 40;
  long long time_limit_ms = 10000;
  std::uint64_t seed = 1;
  std::size_t length = 5;
  std::size_t budget = 12;
  bool dot = false;
};

std::optional<ValidityMode> mode_option(const Options& o) {
  if (o.mode.empty()) return std::nullopt;
  return o.mode == "strict" ? ValidityMode::Strict : ValidityMode::Minor;
}

SymmetryMode symmetry_option(const Options& o) { return *symmetry_mode_from_string(o.symmetry); }

std::string read_file(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kUsage, "io", "cannot read '" + path + "'", {}};
  return {std::istreambuf_iterator<char>(in), {}};
}

MultibranchedSurface load(const std::string& path, const Options& o) {
  try {
    MultibranchedSurface s = parse_surface(read_file(path));
    if (auto mode = mode_option(o)) s = s.with_mode(*mode);
    return s;
  } catch (const SchemaError& e) {
    Json detail;
    detail["file"] = path;
    detail["path"] = e.path();
    detail["line"] = e.line();
    detail["column"] = e.column();
    throw Failure{kUsage, e.rule(), e.what(), detail};
  }
}

Json violations_json(const ValidationReport& report) {
  Json list = Json::array();
  for (const auto& v : report) list.push_back(to_json(v));
  return list;
}

MultibranchedSurface load_valid(const std::string& path, const Options& o) {
  MultibranchedSurface s = load(path, o);
  if (auto report = validate(s); !report.empty()) {
    Json detail;
    detail["file"] = path;
    detail["violations"] = violations_json(report);
    throw Failure{kUsage, "invalid-surface", "'" + path + "' is not a valid " + std::string(to_string(s.mode())) +
                                                 " surface",
                  detail};
  }
  return s;
}

void write_output_file(const Options& o, const MultibranchedSurface& s) {
  if (o.out_path.empty()) return;
  std::ofstream file(o.out_path, std::ios::binary);
  if (!file) throw Failure{kUsage, "io", "cannot write '" + o.out_path + "'", {}};
  file << serialize_surface(s);
}

Json envelope(const std::string& command) {
  Json j;
  j["command"] = command;
  return j;
}

struct Result {
  Json json;
  int code = kSuccess;
};

Result cmd_validate(const Options& o) {
  const MultibranchedSurface s = load(o.files.at(0), o);
  const auto report = validate(s);
  Json j = envelope("validate");
  j["mode"] = to_string(s.mode());
  j["valid"] = report.empty();
  j["violations"] = violations_json(report);
  return {j, report.empty() ? kSuccess : kNegative};
}

Result cmd_invariants(const Options& o) {
  const MultibranchedSurface s = load_valid(o.files.at(0), o);
  Json j = envelope("invariants");
  j["mode"] = to_string(s.mode());
  j["euler_characteristic"] = euler_characteristic(s);
  j["connected_components"] = connected_components(s);
  j["piece_count"] = piece_count(s);
  j["homology"] = to_json(homology_profile(s));
  j["canonical_hash"] = hash_hex(canonical_hash(s));
  j["spread_potential"] = spread_potential(s);
  j["maximally_spread"] = is_maximally_spread_surface(s);
  if (s.mode() == ValidityMode::Strict) {
    j["decomposition"] = to_json(decomposition_summary(s));
    j["boundary_euler"] = boundary_euler(s);
  }
  Json regions = Json::array();
  for (const auto& region : s.regions()) {
    Json r;
    r["id"] = region.id;
    r["euler"] = region.topology.euler();
    r["class"] = boundaries_attached(s, region) ? std::string(to_string(classify_region(s, region.id)))
                                                : std::string("partially_attached");
    regions.push_back(std::move(r));
  }
  j["regions"] = std::move(regions);
  Json loci = Json::array();
  for (const auto& locus : s.loci()) {
    const LocusProfile p = locus_profile(locus);
    Json l;
    l["id"] = locus.id;
    l["degree"] = p.degree;
    l["wrapping"] = p.wrapping;
    l["component_count"] = p.component_count;
    l["normal"] = p.is_normal;
    l["pure"] = p.is_pure;
    l["tribranched"] = p.is_tribranched;
    l["spreadable"] = p.is_spreadable;
    loci.push_back(std::move(l));
  }
  j["loci"] = std::move(loci);
  if (o.dot) j["dot"] = to_dot(s);
  return {j};
}

std::vector<Move> all_moves(const MultibranchedSurface& s) {
  std::vector<Move> moves;
  for (const auto& n : neighbors(s)) moves.push_back(n.move);
  for (const auto& site : enumerate_ih(s)) moves.push_back(site);
  return moves;
}

Result cmd_moves_list(const Options& o) {
  const MultibranchedSurface s = load_valid(o.files.at(0), o);
  Json j = envelope("moves list");
  Json list = Json::array();
  std::size_t index = 0;
  for (const auto& move : all_moves(s)) {
    Json m = to_json(move);
    m["index"] = index++;
    list.push_back(std::move(m));
  }
  j["count"] = list.size();
  j["moves"] = std::move(list);
  return {j};
}

Result cmd_moves_apply(const Options& o) {
  const MultibranchedSurface s = load_valid(o.files.at(0), o);
  Move move;
  if (o.index) {
    const auto moves = all_moves(s);
    if (*o.index >= moves.size())
      throw Failure{kUsage, "index", "move index " + std::to_string(*o.index) + " out of range (" +
                                         std::to_string(moves.size()) + " moves)",
                    {}};
    move = moves[*o.index];
  } else if (!o.move_json.empty()) {
    try {
      move = move_from_json(nlohmann::json::parse(o.move_json));
    } catch (const nlohmann::json::exception& e) {
      throw Failure{kUsage, "syntax", std::string("--move: ") + e.what(), {}};
    } catch (const SchemaError& e) {
      throw Failure{kUsage, e.rule(), std::string("--move: ") + e.what(), {}};
    }
  } else {
    throw Failure{kUsage, "usage", "moves apply needs --index or --move", {}};
  }
  MultibranchedSurface result;
  try {
    result = apply_move(s, move);
  } catch (const std::invalid_argument& e) {
    throw Failure{kUsage, "ineligible-move", e.what(), {}};
  }
  write_output_file(o, result);
  Json j = envelope("moves apply");
  j["move"] = to_json(move);
  j["hash_before"] = hash_hex(canonical_hash(s));
  j["hash_after"] = hash_hex(canonical_hash(result));
  j["surface"] = surface_to_json(result);
  return {j};
}

Result cmd_normalize(const Options& o) {
  const MultibranchedSurface s = load_valid(o.files.at(0), o);
  const SpreadPolicy policy = o.policy == "exhaustive" ? SpreadPolicy::Exhaustive : SpreadPolicy::First;
  const SpreadResult r = maximally_spread(s, policy);
  write_output_file(o, r.surface);
  Json j = envelope("normalize");
  j["policy"] = o.policy;
  j["potential_before"] = spread_potential(s);
  j["move_count"] = r.record.size();
  j["record"] = to_json(r.record);
  j["surface"] = surface_to_json(r.surface);
  return {j};
}

Result cmd_iso(const Options& o) {
  const MultibranchedSurface a = load(o.files.at(0), o);
  const MultibranchedSurface b = load(o.files.at(1), o);
  const SymmetryMode mode = symmetry_option(o);
  const auto cert = are_isomorphic(a, b, mode);
  Json j = envelope("iso");
  j["symmetry"] = to_string(mode);
  j["isomorphic"] = cert.has_value();
  j["hash_a"] = hash_hex(canonical_hash(a, mode));
  j["hash_b"] = hash_hex(canonical_hash(b, mode));
  if (cert) j["certificate"] = to_json(*cert);
  return {j, cert ? kSuccess : kNegative};
}

Result cmd_equiv(const Options& o) {
  const MultibranchedSurface a = load_valid(o.files.at(0), o);
  const MultibranchedSurface b = load_valid(o.files.at(1), o);
  SearchBudget budget;
  budget.max_depth = o.max_depth;
  budget.max_states = o.max_states;
  budget.max_cell_count = o.max_cells;
  budget.time_limit = std::chrono::milliseconds(o.time_limit_ms);
  const SymmetryMode mode = symmetry_option(o);
  const SearchOutcome r = search_equivalence(a, b, budget, mode);
  Json j = envelope("equiv");
  j["symmetry"] = to_string(mode);
  j["status"] = to_string(r.status);
  j["states_explored"] = r.states_explored;
  if (r.status == SearchStatus::Found) {
    j["move_count"] = r.record.size();
    j["record"] = to_json(r.record);
  }
  if (r.status == SearchStatus::InvariantMismatch) j["mismatch"] = r.mismatch;
  const int code = r.status == SearchStatus::Found              ? kSuccess
                   : r.status == SearchStatus::InvariantMismatch ? kNegative
                                                                 : kExhausted;
  return {j, code};
}

Result cmd_minor(const Options& o) {
  Options minor_opts = o;
  if (minor_opts.mode.empty()) minor_opts.mode = "minor";
  const MultibranchedSurface x = load_valid(o.files.at(0), minor_opts);
  const MultibranchedSurface y = load_valid(o.files.at(1), minor_opts);
  MinorBudget budget;
  budget.max_depth = o.max_depth;
  budget.max_states = o.max_states;
  budget.mode = symmetry_option(o);
  const auto chain = is_minor(x, y, budget);
  Json j = envelope("minor");
  j["symmetry"] = to_string(budget.mode);
  j["found"] = chain.has_value();
  j["tilde_equivalent"] = tilde_equivalent(x, y, budget);
  if (chain) {
    Json steps = Json::array();
    for (const auto& step : *chain) steps.push_back(to_json(step));
    j["steps"] = std::move(steps);
  }
  return {j, chain ? kSuccess : kExhausted};
}

Result cmd_screen(const Options& o) {
  Options screen_opts = o;
  if (screen_opts.mode.empty()) screen_opts.mode = "minor";
  const MultibranchedSurface s = load_valid(o.files.at(0), screen_opts);
  Json j = envelope("screen");
  j["flags"] = to_json(obstruction_screen(s));
  j["note"] = "screening predicates only; clear flags do not establish embeddability in the 3-sphere";
  return {j};
}

Result cmd_gen(const Options& o) {
  const ValidityMode mode = mode_option(o).value_or(ValidityMode::Strict);
  MultibranchedSurface s;
  try {
    if (o.name == "random")
      s = random_surface(o.seed, o.budget, mode);
    else
      s = build_fixture(o.name, o.params, mode);
  } catch (const std::invalid_argument& e) {
    throw Failure{kUsage, "usage", e.what(), {}};
  }
  write_output_file(o, s);
  Json j = envelope("gen");
  j["name"] = o.name;
  if (o.name == "random") {
    j["seed"] = o.seed;
    j["budget"] = o.budget;
  }
  j["surface"] = surface_to_json(s);
  return {j};
}

Result cmd_rand(const Options& o) {
  const MultibranchedSurface s = load_valid(o.files.at(0), o);
  const WalkResult walk = random_walk(s, o.seed, o.length);
  write_output_file(o, walk.surface);
  Json j = envelope("rand");
  j["seed"] = o.seed;
  j["length"] = walk.record.size();
  j["stopped_early"] = walk.stopped_early;
  j["record"] = to_json(walk.record);
  j["surface"] = surface_to_json(walk.surface);
  return {j};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multibranched surface toolkit", "mbs"};
  app.require_subcommand(1);
  Options o;

  const auto modes = CLI::IsMember({"strict", "minor"});
  const auto symmetries = CLI::IsMember({"rotational", "mirror", "dihedral"});
  auto add_mode = [&](CLI::App* sub) {
    sub->add_option("--mode", o.mode, "Override the validity mode (strict|minor)")->check(modes);
  };
  auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out", o.out_path, "Also write the resulting surface document to this file");
  };
  auto add_symmetry = [&](CLI::App* sub, const char* fallback) {
    sub->add_option("--symmetry", o.symmetry, std::string("rotational|mirror|dihedral (default ") + fallback + ")")
        ->check(symmetries);
  };

  auto* validate_cmd = app.add_subcommand("validate", "Check a surface document against the validity rules");
  validate_cmd->add_option("file", o.files)->required()->expected(1);
  add_mode(validate_cmd);

  auto* invariants_cmd = app.add_subcommand("invariants", "Euler characteristic, homology and classification");
  invariants_cmd->add_option("file", o.files)->required()->expected(1);
  invariants_cmd->add_flag("--dot", o.dot, "Include the incidence graph in DOT syntax");
  add_mode(invariants_cmd);

  auto* moves_cmd = app.add_subcommand("moves", "List or apply IX/XI/IH moves");
  moves_cmd->require_subcommand(1);
  auto* list_cmd = moves_cmd->add_subcommand("list", "Enumerate every available move");
  list_cmd->add_option("file", o.files)->required()->expected(1);
  add_mode(list_cmd);
  auto* apply_cmd = moves_cmd->add_subcommand("apply", "Apply one move");
  apply_cmd->add_option("file", o.files)->required()->expected(1);
  auto* index_opt = apply_cmd->add_option("--index", o.index, "Index into 'moves list'");
  apply_cmd->add_option("--move", o.move_json, "Move as JSON")->excludes(index_opt);
  add_mode(apply_cmd);
  add_out(apply_cmd);

  auto* normalize_cmd = app.add_subcommand("normalize", "Spread maximally by XI moves");
  normalize_cmd->add_option("file", o.files)->required()->expected(1);
  normalize_cmd->add_option("--policy", o.policy)->check(CLI::IsMember({"first", "exhaustive"}))->capture_default_str();
  add_mode(normalize_cmd);
  add_out(normalize_cmd);

  auto* iso_cmd = app.add_subcommand("iso", "Decide isomorphism of two surfaces");
  iso_cmd->add_option("files", o.files)->required()->expected(2);
  add_mode(iso_cmd);
  add_symmetry(iso_cmd, "rotational");

  auto* equiv_cmd = app.add_subcommand("equiv", "Search for a move sequence between two surfaces");
  equiv_cmd->add_option("files", o.files)->required()->expected(2);
  equiv_cmd->add_option("--max-depth", o.max_depth)->check(CLI::NonNegativeNumber)->capture_default_str();
  equiv_cmd->add_option("--max-states", o.max_states)->capture_default_str();
  equiv_cmd->add_option("--max-cells", o.max_cells)->capture_default_str();
  equiv_cmd->add_option("--time-limit-ms", o.time_limit_ms)->check(CLI::PositiveNumber)->capture_default_str();
  add_mode(equiv_cmd);
  add_symmetry(equiv_cmd, "rotational");

  auto* minor_cmd = app.add_subcommand("minor", "Search for a reduction chain showing X is a minor of Y");
  minor_cmd->add_option("files", o.files, "X Y")->required()->expected(2);
  minor_cmd->add_option("--max-depth", o.max_depth)->check(CLI::NonNegativeNumber);
  minor_cmd->add_option("--max-states", o.max_states);
  add_mode(minor_cmd);
  add_symmetry(minor_cmd, "mirror");

  auto* screen_cmd = app.add_subcommand("screen", "Obstruction screens for embeddability in the 3-sphere");
  screen_cmd->add_option("file", o.files)->required()->expected(1);
  add_mode(screen_cmd);

  auto* gen_cmd = app.add_subcommand("gen", "Build a fixture or a random surface");
  gen_cmd->add_option("name", o.name, "theta|mb|qn|closed_surface|random")->required();
  gen_cmd->add_option("params", o.params, "Fixture parameters");
  gen_cmd->add_option("--seed", o.seed)->capture_default_str();
  gen_cmd->add_option("--budget", o.budget, "Piece budget for random surfaces")->capture_default_str();
  add_mode(gen_cmd);
  add_out(gen_cmd);

  auto* rand_cmd = app.add_subcommand("rand", "Random walk of IX/XI moves");
  rand_cmd->add_option("file", o.files)->required()->expected(1);
  rand_cmd->add_option("--seed", o.seed)->capture_default_str();
  rand_cmd->add_option("--length", o.length)->capture_default_str();
  add_mode(rand_cmd);
  add_out(rand_cmd);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kSuccess;
    }
    err << "mbs: " << e.what() << "\n";
    Json j = envelope("usage");
    j["error"] = {{"rule", "usage"}, {"message", e.what()}};
    out << j.dump(2) << "\n";
    return kUsage;
  }

  std::string command = "usage";
  try {
    Result result;
    auto with_default = [&](const char* fallback) {
      if (o.symmetry.empty()) o.symmetry = fallback;
    };
    if (validate_cmd->parsed()) {
      command = "validate";
      result = cmd_validate(o);
    } else if (invariants_cmd->parsed()) {
      command = "invariants";
      result = cmd_invariants(o);
    } else if (list_cmd->parsed()) {
      command = "moves list";
      result = cmd_moves_list(o);
    } else if (apply_cmd->parsed()) {
      command = "moves apply";
      result = cmd_moves_apply(o);
    } else if (normalize_cmd->parsed()) {
      command = "normalize";
      result = cmd_normalize(o);
    } else if (iso_cmd->parsed()) {
      command = "iso";
      with_default("rotational");
      result = cmd_iso(o);
    } else if (equiv_cmd->parsed()) {
      command = "equiv";
      with_default("rotational");
      result = cmd_equiv(o);
    } else if (minor_cmd->parsed()) {
      command = "minor";
      with_default("mirror");
      result = cmd_minor(o);
    } else if (screen_cmd->parsed()) {
      command = "screen";
      result = cmd_screen(o);
    } else if (gen_cmd->parsed()) {
      command = "gen";
      result = cmd_gen(o);
    } else if (rand_cmd->parsed()) {
      command = "rand";
      result = cmd_rand(o);
    }
    out << result.json.dump(2) << "\n";
    return result.code;
  } catch (const Failure& f) {
    err << "mbs " << command << ": " << f.message << "\n";
    Json j = envelope(command);
    Json e;
    e["rule"] = f.rule;
    e["message"] = f.message;
    if (!f.detail.is_null())
      for (auto& [k, v] : f.detail.items()) e[k] = v;
    j["error"] = std::move(e);
    out << j.dump(2) << "\n";
    return f.code;
  } catch (const std::exception& ex) {
    err << "mbs " << command << ": " << ex.what() << "\n";
    Json j = envelope(command);
    j["error"] = {{"rule", "internal"}, {"message", ex.what()}};
    out << j.dump(2) << "\n";
    return kUsage;
  }
}

}  // namespace mbs::cli
