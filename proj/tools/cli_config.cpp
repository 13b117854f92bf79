#include "cli_config.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>

#include <CLI11.hpp>

namespace momentbc::cli {

namespace {

const std::vector<std::string> kCommands = {"assemble", "check-stability", "solve-channel", "compare", "energy-march"};
const std::vector<std::string> kDumps = {"s-matrix", "a-x", "a-y", "a-z", "p", "b-matrix", "l-matrix", "basis"};

template <class T>
T json_get(const nlohmann::json& j, const std::string& key)
{
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("config key '" + key + "' has the wrong type: " + e.what());
  }
}

}  // namespace

MomentTheory RunConfig::resolve_theory() const
{
  if (theory == "custom" || theory == "Custom") {
    if (m.empty()) throw UsageError("--theory custom needs --m M0,M1,...,M_nd");
    if (nd >= 0 && static_cast<int>(m.size()) != nd + 1)
      throw UsageError("--m lists " + std::to_string(m.size()) + " radial counts but --nd " + std::to_string(nd) +
                       " needs " + std::to_string(nd + 1));
    try {
      return custom_theory(m, reduction);
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("malformed --m list: ") + e.what());
    }
  }
  if (nd >= 0 || !m.empty()) throw UsageError("--nd and --m only apply to --theory custom");
  try {
    return theory_from_name(theory, reduction);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

void RunConfig::validate() const
{
  if (!command.empty() && std::find(kCommands.begin(), kCommands.end(), command) == kCommands.end())
    throw UsageError("unknown command '" + command + "'");
  if (command != "compare") resolve_theory();
  if (!(kn > 0.0)) throw UsageError("--kn must be positive (got " + std::to_string(kn) + ")");
  if (!(chi > 0.0 && chi <= 1.0)) throw UsageError("--chi must lie in (0, 1]");
  for (double c : scan_chi)
    if (!(c > 0.0 && c <= 1.0)) throw UsageError("--scan-chi values must lie in (0, 1]");
  if (grid < 16) throw UsageError("--grid must be at least 16");
  if (jobs < 1) throw UsageError("--jobs must be at least 1");
  if (!(cfl > 0.0 && cfl <= 1.0)) throw UsageError("--cfl must lie in (0, 1]");
  if (!(crossing_times > 0.0)) throw UsageError("--crossing-times must be positive");
  if (order != 1 && order != 2) throw UsageError("--order must be 1 or 2");
  if (steady_tol < 0.0) throw UsageError("--steady-tol must be nonnegative");
  if (!dump.empty() && std::find(kDumps.begin(), kDumps.end(), dump) == kDumps.end())
    throw UsageError("unknown --dump '" + dump + "'");
  if (dump == "a-z" && reduction == Reduction::planar) throw UsageError("planar theories have no A^(z)");
  if ((dump == "b-matrix" || dump == "l-matrix") && command != "assemble")
    throw UsageError("--dump only applies to assemble");
  if (dump == "l-matrix" && bc != BcKind::obc) throw UsageError("--dump l-matrix needs --bc obc");
  if (normal == Axis::z) throw UsageError("only x and y wall normals are supported");
  if (command == "compare" && inputs.size() != 2) throw UsageError("compare needs exactly two CSV files");
  if (command != "compare" && !inputs.empty()) throw UsageError("input files only apply to compare");
  if (!reference.empty() && command != "solve-channel") throw UsageError("--reference only applies to solve-channel");
  if (!scan_chi.empty() && command != "check-stability") throw UsageError("--scan-chi only applies to check-stability");
  if (homogeneous && command != "energy-march") throw UsageError("--homogeneous only applies to energy-march");
}

std::string RunConfig::output_path(const std::string& p) const
{
  if (p.empty() || p == "-" || outdir.empty()) return p;
  const std::filesystem::path path(p);
  if (path.is_absolute()) return p;
  return (std::filesystem::path(outdir) / path).string();
}

std::optional<RunConfig> parse_config(int argc, const char* const* argv)
{
  RunConfig c;
  std::string reduction = "planar", normal = "x", bc = "obc";
  CLI::App app{"Hermite moment systems, wall boundary operators and the heated channel"};
  app.fallthrough();
  app.require_subcommand(0, 1);
  for (const auto& name : kCommands) app.add_subcommand(name);
  app.get_subcommand("assemble")->description("build basis, symmetrizer and flux matrices; dump one as CSV");
  app.get_subcommand("check-stability")->description("stability verdict for a boundary operator");
  app.get_subcommand("solve-channel")->description("steady heated channel; writes a field CSV");
  app.get_subcommand("compare")->description("join two field CSVs, write e_theta and e_sigma and a gnuplot script");
  app.get_subcommand("energy-march")->description("explicit time march, records the S-norm energy");

  std::string config_file;
  std::string m_list, scan_list, ref_list;
  std::vector<std::pair<std::string, std::function<void(const nlohmann::json&)>>> keys;
  std::vector<std::pair<std::string, CLI::Option*>> flags;
  auto bind = [&](const std::string& key, CLI::Option* opt, std::function<void(const nlohmann::json&)> set) {
    keys.emplace_back(key, std::move(set));
    flags.emplace_back(key, opt);
  };

  app.add_option("--config", config_file, "JSON file with defaults; flags win");
  app.add_flag("--version", c.show_version, "print the version");
  app.add_flag("--json", c.version_json, "with --version: machine readable");

  bind("theory", app.add_option("--theory", c.theory, "G10, G20, G35, ... or custom"),
       [&](const auto& j) { c.theory = json_get<std::string>(j, "theory"); });
  bind("nd", app.add_option("--nd", c.nd, "custom theory: largest tensor rank"),
       [&](const auto& j) { c.nd = json_get<int>(j, "nd"); });
  bind("m", app.add_option("--m", m_list, "custom theory: radial counts M0,M1,..."),
       [&](const auto& j) {
         if (j.is_string())
           m_list = j.template get<std::string>();
         else
           c.m = json_get<std::vector<int>>(j, "m");
       });
  bind("reduction", app.add_option("--reduction", reduction, "planar or full3d"),
       [&](const auto& j) { reduction = json_get<std::string>(j, "reduction"); });
  bind("normal", app.add_option("--normal", normal, "wall normal x or y (assemble, check-stability)"),
       [&](const auto& j) { normal = json_get<std::string>(j, "normal"); });
  bind("bc", app.add_option("--bc", bc, "mbc or obc"), [&](const auto& j) { bc = json_get<std::string>(j, "bc"); });
  bind("chi", app.add_option("--chi", c.chi, "accommodation coefficient in (0, 1]"),
       [&](const auto& j) { c.chi = json_get<double>(j, "chi"); });
  bind("kn", app.add_option("--kn", c.kn, "Knudsen number"), [&](const auto& j) { c.kn = json_get<double>(j, "kn"); });
  bind("source", app.add_option("--source", c.source, "source amplitude a in r(y) = a y^2"),
       [&](const auto& j) { c.source = json_get<double>(j, "source"); });
  bind("grid", app.add_option("--grid", c.grid, "number of cells"),
       [&](const auto& j) { c.grid = json_get<int>(j, "grid"); });
  bind("scan_chi", app.add_option("--scan-chi", scan_list, "comma separated chi values"),
       [&](const auto& j) { c.scan_chi = json_get<std::vector<double>>(j, "scan_chi"); });
  bind("reference", app.add_option("--reference", ref_list, "theories to average, e.g. g56,g84,g120"),
       [&](const auto& j) { c.reference = json_get<std::vector<std::string>>(j, "reference"); });
  bind("cfl", app.add_option("--cfl", c.cfl, "time step over h / max speed"),
       [&](const auto& j) { c.cfl = json_get<double>(j, "cfl"); });
  bind("crossing_times", app.add_option("--crossing-times", c.crossing_times, "final time in crossing times"),
       [&](const auto& j) { c.crossing_times = json_get<double>(j, "crossing_times"); });
  bind("order", app.add_option("--order", c.order, "1 or 2"), [&](const auto& j) { c.order = json_get<int>(j, "order"); });
  bind("seed", app.add_option("--seed", c.seed, "seed for random initial data"),
       [&](const auto& j) { c.seed = json_get<unsigned long long>(j, "seed"); });
  bind("homogeneous", app.add_flag("--homogeneous", c.homogeneous, "zero wall data and source"),
       [&](const auto& j) { c.homogeneous = json_get<bool>(j, "homogeneous"); });
  bind("random_init", app.add_flag("--random-init", c.random_init, "start from random data"),
       [&](const auto& j) { c.random_init = json_get<bool>(j, "random_init"); });
  bind("steady_tol", app.add_option("--steady-tol", c.steady_tol, "stop when max |d alpha/dt| is below"),
       [&](const auto& j) { c.steady_tol = json_get<double>(j, "steady_tol"); });
  bind("kernel_tol", app.add_option("--kernel-tol", c.kernel_tol, "stability: kernel condition tolerance"),
       [&](const auto& j) { c.kernel_tol = json_get<double>(j, "kernel_tol"); });
  bind("null_tol", app.add_option("--null-tol", c.null_tol, "stability: zero eigenvalue tolerance"),
       [&](const auto& j) { c.null_tol = json_get<double>(j, "null_tol"); });
  bind("coupling_tol", app.add_option("--coupling-tol", c.coupling_tol, "stability: null direction coupling"),
       [&](const auto& j) { c.coupling_tol = json_get<double>(j, "coupling_tol"); });
  bind("dump", app.add_option("--dump", c.dump, "assemble: s-matrix, a-x, a-y, a-z, p, b-matrix, l-matrix, basis"),
       [&](const auto& j) { c.dump = json_get<std::string>(j, "dump"); });
  bind("out", app.add_option("--out", c.out, "main output file (- for stdout)"),
       [&](const auto& j) { c.out = json_get<std::string>(j, "out"); });
  bind("report", app.add_option("--report", c.report, "JSON report file (default stdout)"),
       [&](const auto& j) { c.report = json_get<std::string>(j, "report"); });
  bind("plot", app.add_option("--plot", c.plot, "compare: gnuplot script path"),
       [&](const auto& j) { c.plot = json_get<std::string>(j, "plot"); });
  bind("inputs", app.get_subcommand("compare")->add_option("inputs", c.inputs, "compare: two CSV files"),
       [&](const auto& j) { c.inputs = json_get<std::vector<std::string>>(j, "inputs"); });
  bind("outdir", app.add_option("--outdir", c.outdir, "directory for relative outputs (env MOMENTBC_OUTDIR)"),
       [&](const auto& j) { c.outdir = json_get<std::string>(j, "outdir"); });
  bind("jobs", app.add_option("--jobs", c.jobs, "parallel independent runs"),
       [&](const auto& j) { c.jobs = json_get<int>(j, "jobs"); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }
  for (auto* sub : app.get_subcommands()) c.command = sub->get_name();

  if (!config_file.empty()) {
    c.config_file = config_file;
    std::ifstream in(config_file);
    if (!in) throw UsageError("cannot open config file " + config_file);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw UsageError("config file " + config_file + " is not valid JSON: " + e.what());
    }
    if (!j.is_object()) throw UsageError("config file must hold a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it.key() == "command") {
        if (c.command.empty()) c.command = json_get<std::string>(it.value(), "command");
        continue;
      }
      bool known = false;
      for (std::size_t k = 0; k < keys.size(); ++k) {
        if (keys[k].first != it.key()) continue;
        known = true;
        if (flags[k].second->count() == 0) keys[k].second(it.value());
      }
      if (!known) throw UsageError("config file has unknown key '" + it.key() + "'");
    }
  }
  if (c.outdir.empty())
    if (const char* env = std::getenv("MOMENTBC_OUTDIR")) c.outdir = env;

  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
      if (ch == ',') {
        out.push_back(cur);
        cur.clear();
      } else if (ch != ' ') {
        cur += ch;
      }
    }
    out.push_back(cur);
    return out;
  };
  auto to_number = [](const std::string& s, const char* what) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw UsageError(std::string("malformed ") + what + " entry '" + s + "'");
    return v;
  };
  if (!m_list.empty()) {
    c.m.clear();
    for (const auto& s : split(m_list)) {
      const double v = to_number(s, "--m");
      if (v != static_cast<int>(v) || v < 1) throw UsageError("--m entries must be positive integers (got '" + s + "')");
      c.m.push_back(static_cast<int>(v));
    }
  }
  if (!scan_list.empty()) {
    c.scan_chi.clear();
    for (const auto& s : split(scan_list)) c.scan_chi.push_back(to_number(s, "--scan-chi"));
  }
  if (!ref_list.empty()) c.reference = split(ref_list);

  try {
    c.reduction = reduction_from_string(reduction);
  } catch (const std::exception&) {
    throw UsageError("--reduction must be planar or full3d (got '" + reduction + "')");
  }
  if (normal.size() != 1 || (normal[0] != 'x' && normal[0] != 'y' && normal[0] != 'z'))
    throw UsageError("--normal must be x or y (got '" + normal + "')");
  c.normal = axis_from_char(normal[0]);
  try {
    c.bc = bc_from_string(bc);
  } catch (const std::exception&) {
    throw UsageError("--bc must be mbc or obc (got '" + bc + "')");
  }
  if (!c.show_version && c.command.empty()) throw UsageError("a command is required: " + app.help());
  if (c.version_json && !c.show_version) throw UsageError("--json goes with --version");
  if (!c.show_version) c.validate();
  return c;
}

nlohmann::json to_json(const RunConfig& c)
{
  nlohmann::json j;
  j["command"] = c.command;
  j["theory"] = c.theory;
  if (c.nd >= 0) j["nd"] = c.nd;
  if (!c.m.empty()) j["m"] = c.m;
  j["reduction"] = std::string(reduction_name(c.reduction));
  j["normal"] = std::string(1, axis_name(c.normal));
  j["bc"] = std::string(bc_name(c.bc));
  j["chi"] = c.chi;
  j["kn"] = c.kn;
  j["source"] = c.source;
  j["grid"] = c.grid;
  if (!c.scan_chi.empty()) j["scan_chi"] = c.scan_chi;
  if (!c.reference.empty()) j["reference"] = c.reference;
  j["cfl"] = c.cfl;
  j["crossing_times"] = c.crossing_times;
  j["order"] = c.order;
  j["seed"] = c.seed;
  j["homogeneous"] = c.homogeneous;
  j["random_init"] = c.random_init;
  j["steady_tol"] = c.steady_tol;
  j["kernel_tol"] = c.kernel_tol;
  j["null_tol"] = c.null_tol;
  j["coupling_tol"] = c.coupling_tol;
  if (!c.dump.empty()) j["dump"] = c.dump;
  if (!c.out.empty()) j["out"] = c.out;
  if (!c.report.empty()) j["report"] = c.report;
  if (!c.plot.empty()) j["plot"] = c.plot;
  if (!c.inputs.empty()) j["inputs"] = c.inputs;
  if (!c.outdir.empty()) j["outdir"] = c.outdir;
  j["jobs"] = c.jobs;
  if (c.command != "compare") j["resolved_theory"] = {{"name", c.resolve_theory().name},
                                                      {"radial_counts", c.resolve_theory().radial_counts}};
  return j;
}

}  // namespace momentbc::cli
