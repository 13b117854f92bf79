#include <cstdio>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <sstream>

#include <Eigen/Core>
#include <json.hpp>

#include "cli_config.hpp"
#include "momentbc/basis.hpp"
#include "momentbc/channel.hpp"
#include "momentbc/errors.hpp"
#include "momentbc/field_io.hpp"
#include "momentbc/march.hpp"
#include "momentbc/stability.hpp"
#include "momentbc/system.hpp"

using nlohmann::json;
using namespace momentbc;
using momentbc::cli::RunConfig;

namespace {

json version_json()
{
  return {{"name", "momentbc"},
          {"version", cli::version},
          {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                        std::to_string(EIGEN_MINOR_VERSION)},
          {"cxx_standard", static_cast<long>(__cplusplus)}};
}

json base_report(const RunConfig& c)
{
  return {{"momentbc_version", cli::version}, {"config", cli::to_json(c)}};
}

json matrix_json(const Eigen::MatrixXd& m)
{
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(r, k));
    rows.push_back(row);
  }
  return rows;
}

// runs f(0..n-1) with at most `jobs` in flight, results in index order
template <class T>
std::vector<T> run_parallel(int n, int jobs, const std::function<T(int)>& f)
{
  std::vector<T> out;
  out.reserve(n);
  for (int start = 0; start < n; start += jobs) {
    std::vector<std::future<T>> batch;
    for (int i = start; i < std::min(n, start + jobs); ++i)
      batch.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred, f, i));
    for (auto& fut : batch) out.push_back(fut.get());
  }
  return out;
}

void write_text(const std::string& path, const std::string& text)
{
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

void emit_report(const RunConfig& c, const json& rep, bool stdout_taken)
{
  if (!c.report.empty())
    write_text(c.output_path(c.report), rep.dump(2) + "\n");
  else if (!stdout_taken)
    std::cout << rep.dump(2) << "\n";
}

bool data_on_stdout(const RunConfig& c)
{
  return c.out.empty() || c.out == "-";
}

json stability_json(const StabilityReport& r)
{
  return {{"verdict", verdict_name(r.verdict)},
          {"boundary_rows", r.boundary_rows},
          {"incoming", r.n_minus},
          {"kernel_residual", r.kernel_residual},
          {"kernel_ok", r.kernel_ok},
          {"bx_minus_condition", r.bx_minus_cond},
          {"min_schur_eigenvalue", r.min_schur_eig},
          {"strictly_positive", r.strictly_positive},
          {"schur_null_dim", r.schur_null_dim},
          {"null_data_coupling", r.null_data_coupling},
          {"schur_asymmetry", r.schur_asymmetry},
          {"note", r.note}};
}

int cmd_assemble(const RunConfig& c)
{
  const MomentTheory th = c.resolve_theory();
  const MomentSystem sys = assemble_system(th, c.normal);
  const auto orth = verify_orthogonality(sys.basis);
  json axes = json::object();
  double worst = 0.0;
  for (Axis k : {Axis::x, Axis::y, Axis::z}) {
    if (!sys.has_axis(k)) continue;
    const double a = symmetrized_flux_asymmetry(sys, k);
    worst = std::max(worst, a);
    axes[std::string(1, axis_name(k))] = a;
  }
  const auto st = check_normal_structure(sys);
  json basis = json::array();
  for (const auto& b : sys.basis.entries)
    basis.push_back({{"label", b.label()}, {"key", b.key()}, {"rank", b.rank}, {"radial", b.radial},
                     {"parity_normal", b.parity_along(c.normal) == Parity::odd ? "odd" : "even"}});

  json rep = base_report(c);
  rep["theory"] = th.name;
  rep["moments"] = sys.size();
  rep["n_odd"] = sys.n_o;
  rep["n_even"] = sys.n_e;
  rep["basis"] = basis;
  rep["orthogonality_max_deviation"] = orth.max_deviation;
  rep["orthogonality_max_cross_parity"] = orth.max_cross_parity;
  rep["symmetrized_flux_asymmetry"] = axes;
  rep["normal_structure"] = {{"max_odd_odd", st.max_odd_odd},     {"max_even_even", st.max_even_even},
                             {"kernel_dim", st.kernel_dim},       {"max_kernel_odd", st.max_kernel_odd},
                             {"negative_eigenvalues", st.n_negative}, {"positive_eigenvalues", st.n_positive},
                             {"spectrum_asymmetry", st.spectrum_asymmetry}};
  const bool ok = orth.max_deviation < 1e-12 && worst < 1e-10;
  rep["verified"] = ok;

  bool stdout_taken = false;
  if (!c.dump.empty()) {
    std::ostringstream os;
    if (c.dump == "basis") {
      os << "index,key,label,rank,radial,parity\n";
      for (int i = 0; i < sys.size(); ++i) {
        const auto& b = sys.basis.entries[i];
        os << i << ',' << b.key() << ',' << b.label() << ',' << b.rank << ',' << b.radial << ','
           << (b.parity_along(c.normal) == Parity::odd ? "odd" : "even") << '\n';
      }
    } else {
      Eigen::MatrixXd m;
      if (c.dump == "s-matrix") m = sys.S;
      else if (c.dump == "a-x") m = sys.flux(Axis::x);
      else if (c.dump == "a-y") m = sys.flux(Axis::y);
      else if (c.dump == "a-z") m = sys.flux(Axis::z);
      else if (c.dump == "p") m = sys.P.asDiagonal();
      else {
        const BoundaryOperator bc = make_boundary(sys, c.bc, c.chi);
        m = c.dump == "b-matrix" ? bc.B : bc.L;
      }
      write_matrix_csv(os, m);
    }
    write_text(c.output_path(c.out), os.str());
    stdout_taken = data_on_stdout(c);
  }
  emit_report(c, rep, stdout_taken);
  if (!ok) {
    std::cerr << "momentbc: verification failed (orthogonality " << orth.max_deviation << ", asymmetry " << worst
              << ")\n";
    return 2;
  }
  return 0;
}

int cmd_check_stability(const RunConfig& c)
{
  const MomentTheory th = c.resolve_theory();
  const MomentSystem sys = assemble_system(th, c.normal);
  StabilityOptions opt;
  opt.kernel_tol = c.kernel_tol;
  opt.null_tol = c.null_tol;
  opt.coupling_tol = c.coupling_tol;
  const std::vector<double> chis = c.scan_chi.empty() ? std::vector<double>{c.chi} : c.scan_chi;

  const std::function<json(int)> one = [&](int i) -> json {
    const BoundaryOperator bc = make_boundary(sys, c.bc, chis[i]);
    const auto plus = check_stability(sys, bc, Orientation::plus, opt);
    const auto minus = check_stability(sys, bc, Orientation::minus, opt);
    Verdict v = plus.verdict;
    if (minus.verdict != Verdict::stable) v = minus.verdict;
    json r = {{"chi", chis[i]},
              {"beta", bc.beta},
              {"verdict", verdict_name(v)},
              {"plus", stability_json(plus)},
              {"minus", stability_json(minus)}};
    if (c.bc == BcKind::obc)
      r["onsager"] = {{"asymmetry", bc.L_asymmetry},
                      {"min_eigenvalue", bc.L_min_eig},
                      {"norm", bc.L_norm},
                      {"cond_Aoe_hat", bc.cond_Aoe_hat}};
    return r;
  };
  const auto results = run_parallel<json>(static_cast<int>(chis.size()), c.jobs, one);

  std::string overall = "stable";
  for (const auto& r : results) {
    if (r["verdict"] == "degenerate") overall = "degenerate";
    else if (r["verdict"] == "unstable" && overall == "stable") overall = "unstable";
  }
  json rep = base_report(c);
  rep["theory"] = th.name;
  rep["bc"] = bc_name(c.bc);
  rep["normal"] = std::string(1, axis_name(c.normal));
  rep["verdict"] = overall;
  rep["results"] = results;
  if (!c.out.empty()) write_text(c.output_path(c.out), rep.dump(2) + "\n");
  emit_report(c, rep, !c.out.empty() && data_on_stdout(c));
  return 0;
}

ChannelConfig channel_config(const RunConfig& c, const MomentTheory& th)
{
  ChannelConfig cfg;
  cfg.theory = th;
  cfg.kn = c.kn;
  cfg.chi = c.chi;
  cfg.bc = c.bc;
  cfg.source_amplitude = c.source;
  cfg.cells = c.grid;
  return cfg;
}

json diagnostics_json(const ChannelSolution& s, double source)
{
  const auto& d = s.diagnostics;
  return {{"residual", d.residual},
          {"rhs_norm", d.rhs_norm},
          {"flux_balance", d.flux_balance},
          {"flux_balance_target", source / 12.0},
          {"max_abs_v", d.max_abs_v},
          {"max_cross_parity", d.max_cross_parity},
          {"theta_jump_left", d.theta_jump_left},
          {"theta_jump_right", d.theta_jump_right},
          {"max_abs_sigma_yy", s.fields.sigma_yy.cwiseAbs().maxCoeff()}};
}

int cmd_solve_channel(const RunConfig& c)
{
  json rep = base_report(c);
  ChannelSolution sol;
  if (!c.reference.empty()) {
    std::vector<MomentTheory> theories;
    for (const auto& name : c.reference) {
      try {
        theories.push_back(theory_from_name(name, c.reduction));
      } catch (const std::invalid_argument& e) {
        throw cli::UsageError(std::string("--reference: ") + e.what());
      }
    }
    const std::function<ChannelSolution(int)> one = [&](int i) {
      return solve_steady(channel_config(c, theories[i]));
    };
    const auto runs = run_parallel<ChannelSolution>(static_cast<int>(theories.size()), c.jobs, one);
    std::string name = "avg(";
    json parts = json::array();
    for (std::size_t i = 0; i < runs.size(); ++i) {
      name += (i ? "," : "") + runs[i].theory;
      parts.push_back({{"theory", runs[i].theory}, {"diagnostics", diagnostics_json(runs[i], c.source)}});
    }
    sol = average_solutions(runs, name + ")");
    const ChannelConfig cfg = channel_config(c, theories.front());
    sol.diagnostics.theta_jump_left = sol.fields.theta(0) - wall_theta(cfg.left);
    sol.diagnostics.theta_jump_right = sol.fields.theta(sol.y.size() - 1) - wall_theta(cfg.right);
    rep["members"] = parts;
  } else {
    const ChannelConfig cfg = channel_config(c, c.resolve_theory());
    const MomentSystem sys = assemble_system(cfg.theory, Axis::y);
    const BoundaryOperator bc = make_boundary(sys, cfg.bc, cfg.chi);
    const auto stab = check_stability(sys, bc, Orientation::plus);
    if (stab.verdict != Verdict::stable)
      std::cerr << "momentbc: warning: " << bc_name(cfg.bc) << " for " << cfg.theory.name << " is "
                << verdict_name(stab.verdict) << "; solving anyway\n";
    rep["stability_verdict"] = verdict_name(stab.verdict);
    sol = solve_steady(cfg, sys, bc);
  }
  rep["theory"] = sol.theory;
  rep["diagnostics"] = diagnostics_json(sol, c.source);
  if (!c.out.empty()) {
    std::ostringstream os;
    write_csv(os, channel_table(sol));
    write_text(c.output_path(c.out), os.str());
  }
  emit_report(c, rep, !c.out.empty() && data_on_stdout(c));
  return 0;
}

int cmd_compare(const RunConfig& c)
{
  const CsvTable a = read_csv_file(c.inputs[0]);
  const CsvTable b = read_csv_file(c.inputs[1]);
  const CsvTable t = compare_tables(a, b);
  std::ostringstream os;
  write_csv(os, t);
  const std::string out = c.output_path(c.out.empty() ? "-" : c.out);
  write_text(out, os.str());
  if (!c.plot.empty()) {
    const std::string plot = c.output_path(c.plot);
    std::string png = plot;
    const auto dot = png.rfind('.');
    png = (dot == std::string::npos ? png : png.substr(0, dot)) + ".png";
    const std::string data = out == "-" ? "compare.csv" : out;
    write_text(plot, gnuplot_script(data, c.inputs[0], c.inputs[1], png));
  }
  json rep = base_report(c);
  rep["rows"] = t.data.rows();
  rep["max_e_theta"] = t.data.col(3).maxCoeff();
  rep["max_e_sigma"] = t.data.col(6).maxCoeff();
  emit_report(c, rep, data_on_stdout(c));
  return 0;
}

int cmd_energy_march(const RunConfig& c)
{
  const ChannelConfig cfg = channel_config(c, c.resolve_theory());
  const MomentSystem sys = assemble_system(cfg.theory, Axis::y);
  const BoundaryOperator bc = make_boundary(sys, cfg.bc, cfg.chi);
  MarchOptions opt;
  opt.crossing_times = c.crossing_times;
  opt.cfl = c.cfl;
  opt.order = c.order;
  opt.homogeneous = c.homogeneous;
  opt.random_initial = c.random_init;
  opt.seed = c.seed;
  opt.steady_tol = c.steady_tol;
  const EnergyTrace tr = time_march_energy(cfg, sys, bc, opt);

  json rep = base_report(c);
  rep["theory"] = cfg.theory.name;
  rep["steps"] = tr.steps;
  rep["dt"] = tr.dt;
  rep["max_speed"] = tr.max_speed;
  rep["initial_energy"] = tr.energy.front();
  rep["final_energy"] = tr.energy.back();
  rep["max_relative_increase"] = tr.max_relative_increase;
  rep["blow_up"] = tr.blow_up;
  rep["reached_steady"] = tr.reached_steady;
  rep["final_rate"] = tr.final_rate;
  if (!c.homogeneous && !tr.blow_up) {
    try {
      rep["max_difference_to_steady"] = max_difference_to_steady(tr, solve_steady(cfg, sys, bc));
    } catch (const std::invalid_argument& e) {
      rep["max_difference_to_steady"] = nullptr;
      rep["steady_note"] = e.what();
    }
  }
  if (!c.out.empty()) {
    CsvTable t;
    t.header = {"t", "energy"};
    t.data.resize(static_cast<Eigen::Index>(tr.t.size()), 2);
    for (std::size_t i = 0; i < tr.t.size(); ++i) {
      t.data(i, 0) = tr.t[i];
      t.data(i, 1) = tr.energy[i];
    }
    std::ostringstream os;
    write_csv(os, t);
    write_text(c.output_path(c.out), os.str());
  }
  emit_report(c, rep, !c.out.empty() && data_on_stdout(c));
  return 0;
}

}  // namespace

int main(int argc, char** argv)
{
  std::optional<RunConfig> cfg;
  try {
    cfg = cli::parse_config(argc, argv);
    if (!cfg) return 0;
    if (cfg->show_version) {
      if (cfg->version_json)
        std::cout << version_json().dump() << "\n";
      else
        std::cout << "momentbc " << cli::version << "\n";
      return 0;
    }
    const auto& c = *cfg;
    if (c.command == "assemble") return cmd_assemble(c);
    if (c.command == "check-stability") return cmd_check_stability(c);
    if (c.command == "solve-channel") return cmd_solve_channel(c);
    if (c.command == "compare") return cmd_compare(c);
    if (c.command == "energy-march") return cmd_energy_march(c);
    throw cli::UsageError("unknown command");
  } catch (const NumericalError& e) {
    std::cerr << "momentbc: numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const cli::UsageError& e) {
    std::cerr << "momentbc: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "momentbc: " << e.what() << "\n";
    return 1;
  }
}
