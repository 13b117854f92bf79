#include "momentbc/system.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace momentbc {

std::string_view orientation_name(Orientation o)
{
  return o == Orientation::plus ? "+" : "-";
}

const Eigen::MatrixXd& MomentSystem::flux(Axis k) const
{
  const auto& a = A[static_cast<int>(k)];
  if (a.size() == 0) throw std::invalid_argument(std::string("no flux matrix assembled for axis ") + axis_name(k));
  return a;
}

Eigen::MatrixXd MomentSystem::odd_even_block() const
{
  const Eigen::MatrixXd sa = S * flux(basis.normal);
  return sa.block(0, n_o, n_o, n_e);
}

Eigen::MatrixXd assemble_flux(const BasisSet& bs, Axis k)
{
  const int m = bs.size();
  const Polynomial3 xi = Polynomial3::coordinate(k);
  std::vector<Polynomial3> shifted;
  shifted.reserve(m);
  for (const auto& phi : bs.reconstruction) shifted.push_back(xi * phi);

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
  for (int r = 0; r < m; ++r) {
    const auto& pa = bs.entries[r];
    for (int c = 0; c < m; ++c) {
      const auto& pb = bs.entries[c];
      // xi_k flips the k-parity and changes the degree by one
      bool zero = std::abs(pa.degree() - pb.degree()) != 1;
      for (Axis ax : {Axis::x, Axis::y, Axis::z}) {
        const bool flip = ax == k;
        zero = zero || ((pa.parity_along(ax) == pb.parity_along(ax)) == flip);
      }
      if (!zero) a(r, c) = inner_full(pa.poly, shifted[c]);
    }
  }
  return a;
}

Eigen::MatrixXd assemble_symmetrizer(const BasisSet& bs)
{
  Eigen::MatrixXd s = 0.5 * bs.expansion.transpose() * bs.expansion;
  Eigen::LLT<Eigen::MatrixXd> llt(s);
  if (llt.info() != Eigen::Success) throw NumericalError("symmetrizer is not positive definite");
  return s;
}

Eigen::VectorXd bgk_projector(const BasisSet& bs)
{
  Eigen::VectorXd p = Eigen::VectorXd::Ones(bs.size());
  for (int k = 0; k < bs.size(); ++k) {
    const auto& b = bs.entries[k];
    if ((b.rank <= 1 && b.radial == 0) || (b.rank == 0 && b.radial == 1)) p(k) = 0.0;
  }
  return p;
}

MomentSystem assemble_system(const MomentTheory& theory, Axis normal)
{
  MomentSystem sys;
  sys.basis = build_basis_set(theory, normal);
  sys.A[0] = assemble_flux(sys.basis, Axis::x);
  sys.A[1] = assemble_flux(sys.basis, Axis::y);
  if (theory.reduction == Reduction::full3d) sys.A[2] = assemble_flux(sys.basis, Axis::z);
  sys.S = assemble_symmetrizer(sys.basis);
  sys.P = bgk_projector(sys.basis);
  sys.n_o = sys.basis.n_odd;
  sys.n_e = sys.basis.n_even;
  return sys;
}

FullSymmetryReport verify_full_symmetry(const BasisSet& bs, Axis k)
{
  std::vector<const Polynomial3*> polys;
  for (const auto& g : bs.groups)
    for (const auto& p : g.multiset_polys) polys.push_back(&p);
  const Polynomial3 xi = Polynomial3::coordinate(k);
  std::vector<Polynomial3> shifted;
  for (const auto* p : polys) shifted.push_back(xi * *p);

  FullSymmetryReport rep;
  for (std::size_t a = 0; a < polys.size(); ++a)
    for (std::size_t b = a; b < polys.size(); ++b) {
      const double ab = inner_full(*polys[a], shifted[b]);
      const double ba = inner_full(*polys[b], shifted[a]);
      rep.max_asymmetry = std::max(rep.max_asymmetry, std::abs(ab - ba));
      ++rep.pairs;
    }
  return rep;
}

double symmetrized_flux_asymmetry(const MomentSystem& sys, Axis k)
{
  const Eigen::MatrixXd sa = sys.S * sys.flux(k);
  return (sa - sa.transpose()).cwiseAbs().maxCoeff();
}

Eigen::VectorXd parity_reflection(const BasisSet& bs, Axis k)
{
  Eigen::VectorXd r(bs.size());
  for (int i = 0; i < bs.size(); ++i) r(i) = bs.entries[i].parity_along(k) == Parity::odd ? -1.0 : 1.0;
  return r;
}

Eigen::MatrixXd CharacteristicDecomposition::X() const
{
  Eigen::MatrixXd x(X_minus.rows(), X_minus.cols() + X_zero.cols() + X_plus.cols());
  x << X_minus, X_zero, X_plus;
  return x;
}

Eigen::VectorXd CharacteristicDecomposition::characteristic(const Eigen::VectorXd& alpha) const
{
  return X().transpose() * (S_half * alpha);
}

CharacteristicDecomposition characteristic_decomposition(const MomentSystem& sys, Axis axis,
                                                         Orientation orientation, double relative_zero_tol)
{
  CharacteristicDecomposition dec;
  dec.axis = axis;
  dec.orientation = orientation;
  dec.flux = sys.flux(axis);
  if (orientation == Orientation::minus) {
    const Eigen::VectorXd r = parity_reflection(sys.basis, axis);
    dec.flux = r.asDiagonal() * dec.flux * r.asDiagonal();
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sys.S);
  if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= 0.0)
    throw NumericalError("symmetrizer is not positive definite");
  const Eigen::MatrixXd& q = es.eigenvectors();
  dec.S_half = q * es.eigenvalues().cwiseSqrt().asDiagonal() * q.transpose();
  dec.S_half_inv = q * es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() * q.transpose();

  Eigen::MatrixXd c = dec.S_half * dec.flux * dec.S_half_inv;
  dec.asymmetry = (c - c.transpose()).cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, c.cwiseAbs().maxCoeff());
  if (dec.asymmetry > 1e-8 * scale)
    throw NumericalError("symmetrized flux is not symmetric (asymmetry " + std::to_string(dec.asymmetry) + ")");
  c = 0.5 * (c + c.transpose());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ef(c);
  const Eigen::VectorXd& lam = ef.eigenvalues();  // ascending
  const double radius = std::max(std::abs(lam(0)), std::abs(lam(lam.size() - 1)));
  dec.zero_tolerance = relative_zero_tol * std::max(radius, 1.0);
  std::vector<int> neg, zero, pos;
  for (int i = 0; i < lam.size(); ++i) {
    if (lam(i) < -dec.zero_tolerance)
      neg.push_back(i);
    else if (lam(i) > dec.zero_tolerance)
      pos.push_back(i);
    else
      zero.push_back(i);
  }
  auto take = [&](const std::vector<int>& idx, Eigen::MatrixXd& x, Eigen::VectorXd* l) {
    x.resize(c.rows(), static_cast<Eigen::Index>(idx.size()));
    if (l) l->resize(static_cast<Eigen::Index>(idx.size()));
    for (std::size_t k = 0; k < idx.size(); ++k) {
      x.col(k) = ef.eigenvectors().col(idx[k]);
      if (l) (*l)(k) = lam(idx[k]);
    }
  };
  take(neg, dec.X_minus, &dec.lambda_minus);
  take(zero, dec.X_zero, nullptr);
  take(pos, dec.X_plus, &dec.lambda_plus);

  const Eigen::MatrixXd x = dec.X();
  Eigen::VectorXd all(lam.size());
  all << dec.lambda_minus, Eigen::VectorXd::Zero(dec.n_zero()), dec.lambda_plus;
  dec.reconstruction_error = (x * all.asDiagonal() * x.transpose() - c).cwiseAbs().maxCoeff();
  return dec;
}

StructureReport check_normal_structure(const MomentSystem& sys)
{
  StructureReport rep;
  const auto& a = sys.flux(sys.basis.normal);
  const int no = sys.n_o, ne = sys.n_e;
  if (no > 0) rep.max_odd_odd = a.topLeftCorner(no, no).cwiseAbs().maxCoeff();
  if (ne > 0) rep.max_even_even = a.bottomRightCorner(ne, ne).cwiseAbs().maxCoeff();

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double tol = 1e-10 * std::max(1.0, sv(0));
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > tol) continue;
    ++rep.kernel_dim;
    const Eigen::VectorXd v = svd.matrixV().col(i).normalized();
    if (no > 0) rep.max_kernel_odd = std::max(rep.max_kernel_odd, v.head(no).cwiseAbs().maxCoeff());
  }

  const auto dec = characteristic_decomposition(sys, sys.basis.normal);
  rep.n_negative = dec.n_minus();
  rep.n_positive = dec.n_plus();
  if (dec.n_minus() == dec.n_plus()) {
    for (int i = 0; i < dec.n_minus(); ++i)
      rep.spectrum_asymmetry = std::max(rep.spectrum_asymmetry,
                                        std::abs(dec.lambda_minus(i) + dec.lambda_plus(dec.n_plus() - 1 - i)));
  } else {
    rep.spectrum_asymmetry = std::numeric_limits<double>::infinity();
  }
  return rep;
}

}  // namespace momentbc
