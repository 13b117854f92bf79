#pragma once

#include <array>
#include <string_view>

#include <Eigen/Dense>

#include "momentbc/system.hpp"

namespace momentbc {

enum class BcKind { mbc, obc };

std::string_view bc_name(BcKind k);
BcKind bc_from_string(std::string_view s);

/// Wall attributes.  The wall never moves along its own normal.  The
/// accommodation coefficient belongs to the BoundaryOperator.
struct WallData
{
  double temperature = 0.0;                 ///< alpha_w^(1)
  std::array<double, 3> velocity{0, 0, 0};  ///< alpha_i^w; the normal entry must be 0

  /// Wall at rest with alpha_w^(1) = -sqrt(3/2).
  static WallData heated();
};

/// Columns of the wall-data map, in this order.
enum WallColumn { wall_temperature = 0, wall_velocity_x, wall_velocity_y, wall_velocity_z, wall_columns };

/// Maxwell accommodation pieces before the 2 beta scaling, for an outward
/// normal along +axis.
struct MaxwellOperator
{
  Eigen::MatrixXd H;  ///< n_o x n_e half-space products <psi_o, phi_e>_+
  Eigen::MatrixXd M;  ///< H after eliminating the wall density
  /// n_o x 4, g = g_map * (alpha_w^(1), u_x, u_y, u_z)
  Eigen::MatrixXd g_map;
  double denominator = 0.0;  ///< <psi_n^(0), psi^(0)>_+
  int no_penetration_row = 0;
};

MaxwellOperator assemble_mbc(const MomentSystem& sys);

/// g = -(alpha_w^(1) m_alpha1 + sum_t u_t m_alpha_t)
Eigen::VectorXd wall_inhomogeneity(const Eigen::MatrixXd& g_map, const WallData& w);

struct BoundaryOperator
{
  BcKind kind = BcKind::mbc;
  Axis normal = Axis::x;
  double chi = 1.0;
  double beta = 1.0;
  Eigen::MatrixXd M;      ///< n_o x n_e Maxwell matrix
  Eigen::MatrixXd L;      ///< n_o x n_o Onsager matrix (OBC only)
  Eigen::MatrixXd g_map;  ///< n_o x 4
  Eigen::MatrixXd B;      ///< n_o x m, for an outward normal along +axis
  Eigen::VectorXd reflection;  ///< parity reflection along the normal
  double L_asymmetry = 0.0;
  double L_min_eig = 0.0;
  double L_norm = 0.0;
  double cond_Aoe_hat = 0.0;

  int rows() const { return static_cast<int>(B.rows()); }
  /// B alpha = rhs with alpha in global coordinates.  For the minus
  /// orientation this is -B R, which keeps the identity odd block.
  Eigen::MatrixXd matrix(Orientation o) const;
  Eigen::VectorXd rhs(const WallData& w, Orientation o) const;
  /// Right-hand side per unit wall datum: rhs = data_map(o) * (alpha_w^(1), u).
  Eigen::MatrixXd data_map(Orientation o) const;
};

BoundaryOperator make_mbc(const MomentSystem& sys, double chi);

/// Throws NumericalError when the leading odd-even block is singular or L
/// has an eigenvalue below -1e-9 ||L||.
BoundaryOperator make_obc(const MomentSystem& sys, double chi);

BoundaryOperator make_boundary(const MomentSystem& sys, BcKind kind, double chi);

double accommodation_beta(double chi);

}  // namespace momentbc
