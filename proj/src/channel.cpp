#include "momentbc/channel.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "momentbc/errors.hpp"

namespace momentbc {

namespace {

const double kSqrt2_3 = std::sqrt(2.0 / 3.0);

struct Layout
{
  int no = 0, ne = 0, cells = 0;
  int stride() const { return no + ne; }
  int node(int i) const { return i * stride(); }
  int centre(int j) const { return j * stride() + no; }
  int size() const { return (cells + 1) * no + cells * ne; }
};

void add_block(std::vector<Eigen::Triplet<double>>& t, int r0, int c0, const Eigen::MatrixXd& b, double scale)
{
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j)
      if (b(i, j) != 0.0) t.emplace_back(r0 + i, c0 + j, scale * b(i, j));
}

}  // namespace

void ChannelConfig::validate() const
{
  theory.validate();
  if (!(kn > 0.0)) throw std::invalid_argument("Knudsen number must be positive");
  accommodation_beta(chi);
  if (cells < 16) throw std::invalid_argument("grid needs at least 16 cells");
  if (!std::isfinite(source_amplitude)) throw std::invalid_argument("source amplitude must be finite");
}

double wall_theta(const WallData& w)
{
  return -kSqrt2_3 * w.temperature;
}

Eigen::VectorXd source_vector(const BasisSet& bs, double a, double y)
{
  Eigen::VectorXd f = Eigen::VectorXd::Zero(bs.size());
  f(bs.index(0, 1, "")) = -kSqrt2_3 * a * y * y;
  return f;
}

ChannelFields fields_from_moments(const BasisSet& bs, const Eigen::MatrixXd& alpha)
{
  const Eigen::Index n = alpha.rows();
  auto column = [&](int rank, int radial, std::string_view labels, double scale) -> Eigen::VectorXd {
    const auto k = bs.find(rank, radial, MultiIndex::parse(labels));
    if (!k) return Eigen::VectorXd::Constant(n, std::numeric_limits<double>::quiet_NaN());
    return scale * alpha.col(*k);
  };
  ChannelFields f;
  f.rho = column(0, 0, "", 1.0);
  f.v_y = column(1, 0, "y", 1.0);
  f.theta = column(0, 1, "", -kSqrt2_3);
  f.sigma_yy = column(2, 0, "yy", std::sqrt(2.0));
  f.q_y = column(1, 1, "y", -std::sqrt(2.5));
  return f;
}

ChannelSolution solve_steady(const ChannelConfig& cfg, const MomentSystem& sys, const BoundaryOperator& bc)
{
  cfg.validate();
  const auto& bs = sys.basis;
  if (bs.normal != Axis::y) throw std::invalid_argument("channel solver needs a system assembled with normal y");
  if (!bs.find(1, 1, MultiIndex::parse("y")))
    throw std::invalid_argument("theory " + bs.theory.name + " has no heat flux moment; the energy balance cannot be steady");

  Layout lay{sys.n_o, sys.n_e, cfg.cells};
  const int no = lay.no, ne = lay.ne, n = lay.cells;
  const double h = 1.0 / n;
  const Eigen::MatrixXd& a = sys.flux(Axis::y);
  const Eigen::MatrixXd a_oe = a.topRightCorner(no, ne);
  const Eigen::MatrixXd a_eo = a.bottomLeftCorner(ne, no);
  const Eigen::VectorXd p_o = sys.P.head(no) / cfg.kn;
  const Eigen::VectorXd p_e = sys.P.tail(ne) / cfg.kn;

  std::vector<Eigen::Triplet<double>> trip;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(lay.size());

  // interior odd rows at nodes: A_oe de/dy + P_o o / Kn = F_o (= 0)
  for (int i = 1; i < n; ++i) {
    add_block(trip, lay.node(i), lay.centre(i), a_oe, 1.0 / h);
    add_block(trip, lay.node(i), lay.centre(i - 1), a_oe, -1.0 / h);
    for (int k = 0; k < no; ++k)
      if (p_o(k) != 0.0) trip.emplace_back(lay.node(i) + k, lay.node(i) + k, p_o(k));
  }
  // even rows at centres: A_eo do/dy + P_e e / Kn = F_e
  for (int j = 0; j < n; ++j) {
    add_block(trip, lay.centre(j), lay.node(j + 1), a_eo, 1.0 / h);
    add_block(trip, lay.centre(j), lay.node(j), a_eo, -1.0 / h);
    for (int k = 0; k < ne; ++k)
      if (p_e(k) != 0.0) trip.emplace_back(lay.centre(j) + k, lay.centre(j) + k, p_e(k));
    const double yc = -0.5 + (j + 0.5) * h;
    rhs.segment(lay.centre(j), ne) = source_vector(bs, cfg.source_amplitude, yc).tail(ne);
  }

  // wall rows; even wall values by second-order extrapolation from the centres
  auto wall = [&](int node, int c_near, int c_far, Orientation o, const WallData& w, int skip_row) {
    const Eigen::MatrixXd b = bc.matrix(o);
    const Eigen::VectorXd g = bc.rhs(w, o);
    const Eigen::MatrixXd b_o = b.leftCols(no), b_e = b.rightCols(ne);
    for (int r = 0; r < no; ++r) {
      if (r == skip_row) continue;
      const int row = lay.node(node) + r;
      for (int k = 0; k < no; ++k)
        if (b_o(r, k) != 0.0) trip.emplace_back(row, lay.node(node) + k, b_o(r, k));
      for (int k = 0; k < ne; ++k) {
        if (b_e(r, k) == 0.0) continue;
        trip.emplace_back(row, lay.centre(c_near) + k, 1.5 * b_e(r, k));
        trip.emplace_back(row, lay.centre(c_far) + k, -0.5 * b_e(r, k));
      }
      rhs(row) = g(r);
    }
  };
  const int np_row = bs.index(1, 0, "y");
  wall(0, 0, 1, Orientation::minus, cfg.left, -1);
  wall(n, n - 1, n - 2, Orientation::plus, cfg.right, np_row);

  // replaces the right no-penetration row: zero total mass
  const int rho = bs.index(0, 0, "") - no;
  for (int j = 0; j < n; ++j) trip.emplace_back(lay.node(n) + np_row, lay.centre(j) + rho, h);
  rhs(lay.node(n) + np_row) = 0.0;

  Eigen::SparseMatrix<double> k(lay.size(), lay.size());
  k.setFromTriplets(trip.begin(), trip.end());
  k.makeCompressed();
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
  lu.compute(k);
  if (lu.info() != Eigen::Success) throw NumericalError("channel system is singular: " + lu.lastErrorMessage());
  const Eigen::VectorXd x = lu.solve(rhs);
  if (lu.info() != Eigen::Success) throw NumericalError("channel solve failed");

  ChannelSolution sol;
  sol.theory = bs.theory.name;
  sol.bc = bc.kind;
  sol.diagnostics.residual = (k * x - rhs).norm();
  sol.diagnostics.rhs_norm = rhs.norm();
  if (!(sol.diagnostics.residual <= 1e-8 * std::max(sol.diagnostics.rhs_norm, 1e-300))) {
    std::ostringstream msg;
    msg << "channel residual " << sol.diagnostics.residual << " exceeds 1e-8 |F| = " << 1e-8 * sol.diagnostics.rhs_norm;
    throw NumericalError(msg.str());
  }

  // everything on the nodes
  const int m = sys.size();
  sol.y.resize(n + 1);
  sol.alpha.resize(n + 1, m);
  auto centre = [&](int j) { return x.segment(lay.centre(j), ne); };
  for (int i = 0; i <= n; ++i) {
    sol.y(i) = -0.5 + i * h;
    sol.alpha.row(i).head(no) = x.segment(lay.node(i), no).transpose();
    Eigen::VectorXd e;
    if (i == 0)
      e = 1.5 * centre(0) - 0.5 * centre(1);
    else if (i == n)
      e = 1.5 * centre(n - 1) - 0.5 * centre(n - 2);
    else
      e = 0.5 * (centre(i - 1) + centre(i));
    sol.alpha.row(i).tail(ne) = e.transpose();
  }
  sol.y(n) = 0.5;
  for (const auto& b : bs.entries) sol.moment_keys.push_back(b.key());
  sol.fields = fields_from_moments(bs, sol.alpha);

  auto& d = sol.diagnostics;
  d.flux_balance = sol.fields.q_y(n) - sol.fields.q_y(0);
  d.max_abs_v = sol.fields.v_y.cwiseAbs().maxCoeff();
  for (int c = 0; c < m; ++c)
    if (bs.entries[c].parity_along(Axis::x) == Parity::odd || bs.entries[c].parity_along(Axis::z) == Parity::odd)
      d.max_cross_parity = std::max(d.max_cross_parity, sol.alpha.col(c).cwiseAbs().maxCoeff());
  d.theta_jump_left = sol.fields.theta(0) - wall_theta(cfg.left);
  d.theta_jump_right = sol.fields.theta(n) - wall_theta(cfg.right);
  return sol;
}

ChannelSolution solve_steady(const ChannelConfig& cfg)
{
  cfg.validate();
  const MomentSystem sys = assemble_system(cfg.theory, Axis::y);
  const BoundaryOperator bc = make_boundary(sys, cfg.bc, cfg.chi);
  return solve_steady(cfg, sys, bc);
}

ChannelSolution average_solutions(const std::vector<ChannelSolution>& runs, const std::string& name)
{
  if (runs.empty()) throw std::invalid_argument("nothing to average");
  ChannelSolution avg;
  avg.theory = name;
  avg.bc = runs.front().bc;
  avg.y = runs.front().y;
  const Eigen::Index n = avg.y.size();
  avg.fields = {Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n),
                Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n)};
  const double w = 1.0 / static_cast<double>(runs.size());
  for (const auto& r : runs) {
    if (r.y.size() != n || (r.y - avg.y).cwiseAbs().maxCoeff() > 1e-12)
      throw std::invalid_argument("solutions to average live on different grids");
    avg.fields.rho += w * r.fields.rho;
    avg.fields.v_y += w * r.fields.v_y;
    avg.fields.theta += w * r.fields.theta;
    avg.fields.sigma_yy += w * r.fields.sigma_yy;
    avg.fields.q_y += w * r.fields.q_y;
  }
  auto& d = avg.diagnostics;
  d.flux_balance = avg.fields.q_y(n - 1) - avg.fields.q_y(0);
  d.max_abs_v = avg.fields.v_y.cwiseAbs().maxCoeff();
  return avg;
}

std::vector<MomentTheory> default_reference_theories()
{
  return {grad_theory(5, Reduction::planar), grad_theory(6, Reduction::planar), grad_theory(7, Reduction::planar)};
}

ChannelSolution reference_solution(ChannelConfig cfg, const std::vector<MomentTheory>& theories)
{
  std::vector<ChannelSolution> runs;
  std::string name = "avg(";
  for (std::size_t k = 0; k < theories.size(); ++k) {
    cfg.theory = theories[k];
    runs.push_back(solve_steady(cfg));
    name += (k ? "," : "") + theories[k].name;
  }
  ChannelSolution avg = average_solutions(runs, name + ")");
  const double jl = wall_theta(cfg.left), jr = wall_theta(cfg.right);
  avg.diagnostics.theta_jump_left = avg.fields.theta(0) - jl;
  avg.diagnostics.theta_jump_right = avg.fields.theta(avg.y.size() - 1) - jr;
  return avg;
}

ErrorProfile error_profile(const ChannelSolution& run, const ChannelSolution& reference)
{
  if (run.y.size() != reference.y.size() || (run.y - reference.y).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("error profile needs both solutions on identical grids");
  ErrorProfile e;
  e.y = run.y;
  e.e_theta = (run.fields.theta - reference.fields.theta).cwiseAbs();
  e.e_sigma = (run.fields.sigma_yy - reference.fields.sigma_yy).cwiseAbs();
  return e;
}

}  // namespace momentbc
