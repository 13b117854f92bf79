#include "momentbc/boundary.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace momentbc {

std::string_view bc_name(BcKind k)
{
  return k == BcKind::mbc ? "mbc" : "obc";
}

BcKind bc_from_string(std::string_view s)
{
  if (s == "mbc" || s == "MBC") return BcKind::mbc;
  if (s == "obc" || s == "OBC") return BcKind::obc;
  throw std::invalid_argument("unknown boundary condition '" + std::string(s) + "' (expected mbc or obc)");
}

WallData WallData::heated()
{
  WallData w;
  w.temperature = -std::sqrt(1.5);
  return w;
}

double accommodation_beta(double chi)
{
  if (!(chi > 0.0 && chi <= 1.0)) throw std::invalid_argument("accommodation coefficient chi must lie in (0, 1]");
  return chi / (2.0 - chi);
}

MaxwellOperator assemble_mbc(const MomentSystem& sys)
{
  const auto& bs = sys.basis;
  const Axis n = bs.normal;
  const int no = sys.n_o, ne = sys.n_e;

  MaxwellOperator op;
  op.H.resize(no, ne);
  for (int i = 0; i < no; ++i)
    for (int j = 0; j < ne; ++j) op.H(i, j) = inner_half(bs.entries[i].poly, bs.reconstruction[no + j], n);

  const std::string normal_label(1, axis_name(n));
  op.no_penetration_row = bs.index(1, 0, normal_label);
  const int density = bs.index(0, 0, "") - no;
  op.denominator = op.H(op.no_penetration_row, density);
  if (std::abs(op.denominator) < 1e-14)
    throw NumericalError("half-space product <psi_n, psi_0>_+ vanishes; cannot eliminate the wall density");

  op.M = op.H - op.H.col(density) * op.H.row(op.no_penetration_row) / op.denominator;

  op.g_map = Eigen::MatrixXd::Zero(no, wall_columns);
  op.g_map.col(wall_temperature) = -op.M.col(bs.index(0, 1, "") - no);
  for (Axis t : {Axis::x, Axis::y, Axis::z}) {
    if (t == n) continue;
    if (auto k = bs.find(1, 0, MultiIndex::parse(std::string(1, axis_name(t)))))
      op.g_map.col(wall_velocity_x + static_cast<int>(t)) = -op.M.col(*k - no);
  }
  return op;
}

Eigen::VectorXd wall_inhomogeneity(const Eigen::MatrixXd& g_map, const WallData& w)
{
  Eigen::Vector4d d(w.temperature, w.velocity[0], w.velocity[1], w.velocity[2]);
  return g_map * d;
}

Eigen::MatrixXd BoundaryOperator::matrix(Orientation o) const
{
  if (o == Orientation::plus) return B;
  return -B * reflection.asDiagonal();
}

Eigen::MatrixXd BoundaryOperator::data_map(Orientation o) const
{
  const double sign = o == Orientation::plus ? 1.0 : -1.0;
  return sign * 2.0 * beta * g_map;
}

Eigen::VectorXd BoundaryOperator::rhs(const WallData& w, Orientation o) const
{
  if (w.velocity[static_cast<int>(normal)] != 0.0)
    throw std::invalid_argument("wall velocity along the normal must be zero");
  for (int a = 0; a < 3; ++a)
    if (w.velocity[a] != 0.0 && g_map.col(wall_velocity_x + a).isZero(0.0))
      throw std::invalid_argument(std::string("wall velocity along ") + axis_name(static_cast<Axis>(a)) +
                                  " is not representable in this theory");
  Eigen::Vector4d d(w.temperature, w.velocity[0], w.velocity[1], w.velocity[2]);
  return data_map(o) * d;
}

namespace {

BoundaryOperator common(const MomentSystem& sys, BcKind kind, double chi)
{
  BoundaryOperator op;
  op.kind = kind;
  op.normal = sys.basis.normal;
  op.chi = chi;
  op.beta = accommodation_beta(chi);
  const MaxwellOperator mbc = assemble_mbc(sys);
  op.M = mbc.M;
  op.g_map = mbc.g_map;
  op.reflection = parity_reflection(sys.basis, op.normal);
  return op;
}

}  // namespace

BoundaryOperator make_mbc(const MomentSystem& sys, double chi)
{
  BoundaryOperator op = common(sys, BcKind::mbc, chi);
  const int no = sys.n_o;
  op.B.resize(no, sys.size());
  op.B << Eigen::MatrixXd::Identity(no, no), -2.0 * op.beta * op.M;
  return op;
}

BoundaryOperator make_obc(const MomentSystem& sys, double chi)
{
  BoundaryOperator op = common(sys, BcKind::obc, chi);
  const int no = sys.n_o;
  if (sys.n_e < no) throw NumericalError("fewer even than odd moments; the Onsager model is undefined");
  const Eigen::MatrixXd aoe = sys.odd_even_block();
  const Eigen::MatrixXd a_hat = aoe.leftCols(no);

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a_hat);
  const auto& sv = svd.singularValues();
  op.cond_Aoe_hat = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1) : std::numeric_limits<double>::infinity();
  if (!(op.cond_Aoe_hat < 1e12)) {
    std::ostringstream msg;
    msg << "leading odd-even block is singular (condition number " << op.cond_Aoe_hat << ")";
    throw NumericalError(msg.str());
  }

  const Eigen::MatrixXd l = 2.0 * op.beta * a_hat.transpose().partialPivLu().solve(op.M.leftCols(no).transpose()).transpose();
  op.L_asymmetry = (l - l.transpose()).cwiseAbs().maxCoeff();
  op.L = 0.5 * (l + l.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(op.L);
  op.L_min_eig = es.eigenvalues().minCoeff();
  op.L_norm = es.eigenvalues().cwiseAbs().maxCoeff();
  if (op.L_min_eig < -1e-9 * std::max(op.L_norm, 1e-300)) {
    std::ostringstream msg;
    msg << "Onsager matrix is not positive semi-definite (min eigenvalue " << op.L_min_eig << ")";
    throw NumericalError(msg.str());
  }

  op.B.resize(no, sys.size());
  op.B << Eigen::MatrixXd::Identity(no, no), -op.L * aoe;
  return op;
}

BoundaryOperator make_boundary(const MomentSystem& sys, BcKind kind, double chi)
{
  return kind == BcKind::mbc ? make_mbc(sys, chi) : make_obc(sys, chi);
}

}  // namespace momentbc
