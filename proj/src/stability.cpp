#include "momentbc/stability.hpp"

#include <cmath>
#include <limits>

namespace momentbc {

std::string_view verdict_name(Verdict v)
{
  switch (v) {
    case Verdict::stable: return "stable";
    case Verdict::unstable: return "unstable";
    default: return "degenerate";
  }
}

StabilityReport check_stability(const CharacteristicDecomposition& dec, const Eigen::MatrixXd& B,
                                const Eigen::MatrixXd& data, const StabilityOptions& opt)
{
  StabilityReport rep;
  rep.boundary_rows = static_cast<int>(B.rows());
  rep.n_minus = dec.n_minus();
  if (rep.boundary_rows != rep.n_minus) {
    rep.note = "boundary operator has " + std::to_string(rep.boundary_rows) + " rows but there are " +
               std::to_string(rep.n_minus) + " incoming characteristics";
    return rep;
  }
  const int nm = dec.n_minus(), n0 = dec.n_zero(), np = dec.n_plus();

  const Eigen::MatrixXd b_scaled = B * dec.S_half_inv;
  const Eigen::MatrixXd b_minus = b_scaled * dec.X_minus;
  const Eigen::MatrixXd b_zero = b_scaled * dec.X_zero;
  const Eigen::MatrixXd b_plus = b_scaled * dec.X_plus;

  const double b_scale = std::max(1.0, B.cwiseAbs().maxCoeff());
  rep.kernel_residual = n0 > 0 ? b_zero.cwiseAbs().maxCoeff() : 0.0;
  rep.kernel_ok = rep.kernel_residual < opt.kernel_tol * b_scale;

  if (nm == 0) {
    rep.note = "no incoming characteristics";
    rep.bx_minus_cond = 1.0;
  } else {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(b_minus);
    const auto& sv = svd.singularValues();
    rep.bx_minus_cond = sv(nm - 1) > 0.0 ? sv(0) / sv(nm - 1) : std::numeric_limits<double>::infinity();
  }
  if (!(rep.bx_minus_cond < opt.max_condition)) {
    rep.note = "B X_- is singular; the conditions do not determine the incoming characteristics";
    return rep;
  }

  const auto lu = b_minus.partialPivLu();
  rep.R_plus = nm > 0 ? Eigen::MatrixXd(-lu.solve(b_plus)) : Eigen::MatrixXd::Zero(0, np);
  rep.R_zero = nm > 0 ? Eigen::MatrixXd(-lu.solve(b_zero)) : Eigen::MatrixXd::Zero(0, n0);

  rep.schur = rep.R_plus.transpose() * dec.lambda_minus.asDiagonal() * rep.R_plus;
  rep.schur.diagonal() += dec.lambda_plus;
  rep.schur_asymmetry = np > 0 ? (rep.schur - rep.schur.transpose()).cwiseAbs().maxCoeff() : 0.0;
  const Eigen::MatrixXd sym = 0.5 * (rep.schur + rep.schur.transpose());

  const double lam_scale = np > 0 ? dec.lambda_plus.cwiseAbs().maxCoeff() : 1.0;
  if (np == 0) {
    rep.min_schur_eig = std::numeric_limits<double>::infinity();
    rep.strictly_positive = true;
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
    const Eigen::VectorXd& ev = es.eigenvalues();
    rep.min_schur_eig = ev(0);
    rep.strictly_positive = ev(0) > opt.schur_margin * lam_scale;

    // zero directions of the form, and whether wall data can excite them
    const double null_scale = opt.null_tol * std::max(lam_scale, ev.cwiseAbs().maxCoeff());
    std::vector<int> null_idx;
    for (int i = 0; i < ev.size(); ++i)
      if (std::abs(ev(i)) <= null_scale) null_idx.push_back(i);
    rep.schur_null_dim = static_cast<int>(null_idx.size());
    if (!null_idx.empty() && data.size() > 0) {
      Eigen::MatrixXd z(np, rep.schur_null_dim);
      for (int k = 0; k < rep.schur_null_dim; ++k) z.col(k) = es.eigenvectors().col(null_idx[k]);
      const Eigen::MatrixXd coupling =
          z.transpose() * rep.R_plus.transpose() * dec.lambda_minus.asDiagonal() * lu.solve(data);
      rep.null_data_coupling = coupling.cwiseAbs().maxCoeff() / std::max(1.0, data.cwiseAbs().maxCoeff());
    }
    if (!rep.strictly_positive && ev(0) < -null_scale) rep.note = "Schur matrix has a negative eigenvalue";
  }

  const bool bounded = rep.strictly_positive ||
                       (rep.min_schur_eig >= -opt.null_tol * lam_scale && rep.null_data_coupling <= opt.coupling_tol);
  rep.verdict = rep.kernel_ok && bounded ? Verdict::stable : Verdict::unstable;
  if (!rep.kernel_ok) rep.note = "kernel of the normal flux is not contained in ker B";
  return rep;
}

StabilityReport check_stability(const MomentSystem& sys, const BoundaryOperator& bc, Orientation orientation,
                                const StabilityOptions& opt)
{
  const auto dec = characteristic_decomposition(sys, bc.normal, orientation);
  return check_stability(dec, bc.matrix(orientation), bc.data_map(orientation), opt);
}

double quadratic_form_H(const MomentSystem& sys, const Eigen::VectorXd& alpha, Orientation orientation)
{
  const double sign = orientation == Orientation::plus ? 1.0 : -1.0;
  return sign * alpha.dot(sys.S * (sys.flux(sys.basis.normal) * alpha));
}

double quadratic_form_H(const CharacteristicDecomposition& dec, const Eigen::VectorXd& alpha)
{
  const Eigen::VectorXd v = dec.S_half * alpha;
  const Eigen::VectorXd wm = dec.X_minus.transpose() * v;
  const Eigen::VectorXd wp = dec.X_plus.transpose() * v;
  return wm.dot(dec.lambda_minus.cwiseProduct(wm)) + wp.dot(dec.lambda_plus.cwiseProduct(wp));
}

BoundaryClosure boundary_closure(const CharacteristicDecomposition& dec, const Eigen::MatrixXd& B)
{
  const int nm = dec.n_minus(), n0 = dec.n_zero(), np = dec.n_plus();
  const int m = nm + n0 + np;
  if (B.rows() != nm) throw std::invalid_argument("boundary operator row count differs from the incoming count");
  const Eigen::MatrixXd b_scaled = B * dec.S_half_inv;
  const auto lu = (b_scaled * dec.X_minus).partialPivLu();

  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
  t.block(0, nm, nm, n0) = -lu.solve(b_scaled * dec.X_zero);
  t.block(0, nm + n0, nm, np) = -lu.solve(b_scaled * dec.X_plus);
  t.block(nm, nm, n0 + np, n0 + np).setIdentity();

  const Eigen::MatrixXd x = dec.X();
  BoundaryClosure c;
  c.state = dec.S_half_inv * x * t * x.transpose() * dec.S_half;
  c.data = dec.S_half_inv * dec.X_minus * lu.inverse();
  return c;
}

}  // namespace momentbc
