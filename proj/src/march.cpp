#include "momentbc/march.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "momentbc/errors.hpp"
#include "momentbc/stability.hpp"

namespace momentbc {

namespace {

struct Splitting
{
  Eigen::MatrixXd plus, minus;
};

Splitting split(const CharacteristicDecomposition& dec)
{
  Splitting s;
  s.plus = dec.S_half_inv * dec.X_plus * dec.lambda_plus.asDiagonal() * dec.X_plus.transpose() * dec.S_half;
  s.minus = dec.S_half_inv * dec.X_minus * dec.lambda_minus.asDiagonal() * dec.X_minus.transpose() * dec.S_half;
  return s;
}

}  // namespace

Eigen::MatrixXd random_state(int cells, int moments, std::uint64_t seed)
{
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  Eigen::MatrixXd a(cells, moments);
  for (int i = 0; i < cells; ++i)
    for (int k = 0; k < moments; ++k) a(i, k) = dist(gen);
  return a;
}

EnergyTrace time_march_energy(const ChannelConfig& cfg, const MomentSystem& sys, const BoundaryOperator& bc,
                              const MarchOptions& opt)
{
  cfg.validate();
  if (sys.basis.normal != Axis::y) throw std::invalid_argument("time march needs a system assembled with normal y");
  if (!(opt.cfl > 0.0 && opt.cfl <= 1.0)) throw std::invalid_argument("cfl must lie in (0, 1]");
  if (opt.order != 1 && opt.order != 2) throw std::invalid_argument("order must be 1 or 2");
  if (!(opt.crossing_times > 0.0)) throw std::invalid_argument("crossing_times must be positive");

  const int n = cfg.cells, m = sys.size();
  const double h = 1.0 / n;
  const Eigen::MatrixXd& a = sys.flux(Axis::y);

  const auto dec = characteristic_decomposition(sys, Axis::y, Orientation::plus);
  const auto dec_left = characteristic_decomposition(sys, Axis::y, Orientation::minus);
  const Splitting sp = split(dec);
  const BoundaryClosure right = boundary_closure(dec, bc.matrix(Orientation::plus));
  const BoundaryClosure left = boundary_closure(dec_left, bc.matrix(Orientation::minus));

  Eigen::VectorXd g_right = Eigen::VectorXd::Zero(sys.n_o), g_left = Eigen::VectorXd::Zero(sys.n_o);
  if (!opt.homogeneous) {
    g_right = bc.rhs(cfg.right, Orientation::plus);
    g_left = bc.rhs(cfg.left, Orientation::minus);
  }
  const Eigen::VectorXd wall_r = right.data * g_right, wall_l = left.data * g_left;

  // columns are cells
  Eigen::MatrixXd src = Eigen::MatrixXd::Zero(m, n);
  EnergyTrace tr;
  tr.y.resize(n);
  for (int j = 0; j < n; ++j) {
    tr.y(j) = -0.5 + (j + 0.5) * h;
    // cell average of a y^2
    if (!opt.homogeneous) {
      const double y0 = tr.y(j) - 0.5 * h, y1 = tr.y(j) + 0.5 * h;
      src.col(j) = source_vector(sys.basis, cfg.source_amplitude, 1.0) * ((y1 * y1 * y1 - y0 * y0 * y0) / (3.0 * h));
    }
  }
  const Eigen::VectorXd relax = -sys.P / cfg.kn;

  double speed = 0.0;
  if (dec.lambda_plus.size()) speed = std::max(speed, dec.lambda_plus.cwiseAbs().maxCoeff());
  if (dec.lambda_minus.size()) speed = std::max(speed, dec.lambda_minus.cwiseAbs().maxCoeff());
  tr.max_speed = speed;
  const double t_final = opt.crossing_times / speed;
  double dt = std::min(opt.cfl * h / speed, 0.5 * cfg.kn);
  const int steps = static_cast<int>(std::ceil(t_final / dt));
  dt = t_final / steps;
  tr.dt = dt;

  Eigen::MatrixXd u = opt.random_initial ? Eigen::MatrixXd(random_state(n, m, opt.seed).transpose())
                                         : Eigen::MatrixXd::Zero(m, n);

  const double kappa = 1.0 / 3.0;
  Eigen::MatrixXd ul(m, n + 1), ur(m, n + 1), flux(m, n + 1);
  auto rate = [&](const Eigen::MatrixXd& v) {
    // face f sits between cell f-1 and cell f
    for (int f = 1; f < n; ++f) {
      ul.col(f) = v.col(f - 1);
      ur.col(f) = v.col(f);
      if (opt.order == 2) {
        if (f >= 2)
          ul.col(f) += 0.25 * ((1 - kappa) * (v.col(f - 1) - v.col(f - 2)) + (1 + kappa) * (v.col(f) - v.col(f - 1)));
        else
          ul.col(f) += 0.5 * (v.col(1) - v.col(0));
        if (f <= n - 2)
          ur.col(f) -= 0.25 * ((1 - kappa) * (v.col(f + 1) - v.col(f)) + (1 + kappa) * (v.col(f) - v.col(f - 1)));
        else
          ur.col(f) -= 0.5 * (v.col(n - 1) - v.col(n - 2));
      }
    }
    flux.middleCols(1, n - 1) = sp.plus * ul.middleCols(1, n - 1) + sp.minus * ur.middleCols(1, n - 1);
    Eigen::VectorXd in_l = v.col(0), in_r = v.col(n - 1);
    if (opt.order == 2) {
      in_l -= 0.5 * (v.col(1) - v.col(0));
      in_r += 0.5 * (v.col(n - 1) - v.col(n - 2));
    }
    flux.col(0) = a * (left.state * in_l + wall_l);
    flux.col(n) = a * (right.state * in_r + wall_r);
    Eigen::MatrixXd r = (flux.leftCols(n) - flux.rightCols(n)) / h;
    r += relax.asDiagonal() * v;
    r += src;
    return r;
  };
  auto energy = [&](const Eigen::MatrixXd& v) { return h * (v.cwiseProduct(sys.S * v)).sum(); };

  const double e0 = energy(u);
  double e_min = e0;
  const double e_ref = e0 > 0.0 ? e0 : 1.0;
  tr.t.push_back(0.0);
  tr.energy.push_back(e0);

  for (int s = 1; s <= steps; ++s) {
    const Eigen::MatrixXd u1 = u + dt * rate(u);
    const Eigen::MatrixXd u2 = 0.75 * u + 0.25 * (u1 + dt * rate(u1));
    Eigen::MatrixXd next = (1.0 / 3.0) * u + (2.0 / 3.0) * (u2 + dt * rate(u2));
    tr.final_rate = (next - u).cwiseAbs().maxCoeff() / dt;
    u.swap(next);
    tr.steps = s;

    const double e = energy(u);
    if (!std::isfinite(e) || e > opt.blow_up_factor * (1.0 + e0)) {
      tr.blow_up = true;
      tr.t.push_back(s * dt);
      tr.energy.push_back(e);
      break;
    }
    tr.max_relative_increase = std::max(tr.max_relative_increase, (e - e_min) / e_ref);
    e_min = std::min(e_min, e);
    if (s % std::max(1, opt.record_every) == 0 || s == steps) {
      tr.t.push_back(s * dt);
      tr.energy.push_back(e);
    }
    if (opt.steady_tol > 0.0 && tr.final_rate < opt.steady_tol) {
      tr.reached_steady = true;
      if (tr.t.back() != s * dt) {
        tr.t.push_back(s * dt);
        tr.energy.push_back(e);
      }
      break;
    }
  }
  tr.alpha = u.transpose();
  return tr;
}

double max_difference_to_steady(const EnergyTrace& march, const ChannelSolution& steady)
{
  const Eigen::Index n = march.alpha.rows();
  if (steady.alpha.rows() != n + 1 || steady.alpha.cols() != march.alpha.cols())
    throw std::invalid_argument("march and steady solution use different grids or theories");
  const Eigen::MatrixXd centres = 0.5 * (steady.alpha.topRows(n) + steady.alpha.bottomRows(n));
  return (centres - march.alpha).cwiseAbs().maxCoeff();
}

}  // namespace momentbc
