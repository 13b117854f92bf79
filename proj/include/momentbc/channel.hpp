#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "momentbc/boundary.hpp"
#include "momentbc/system.hpp"

namespace momentbc {

/// Heat-conduction channel y in [-1/2, 1/2], walls at rest, BGK relaxation
/// and the volumetric source r(y) = a y^2 acting on the energy equation.
struct ChannelConfig
{
  MomentTheory theory = grad_theory(3, Reduction::planar);
  double kn = 0.3;
  double chi = 1.0;
  BcKind bc = BcKind::obc;
  WallData left = WallData::heated();
  WallData right = WallData::heated();
  double source_amplitude = 0.81649658092772603;  ///< sqrt(2/3)
  int cells = 512;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

struct ChannelFields
{
  Eigen::VectorXd rho, v_y, theta, sigma_yy, q_y;
};

struct ChannelDiagnostics
{
  double residual = 0.0;     ///< |K x - F|_2 of the discrete system
  double rhs_norm = 0.0;
  double flux_balance = 0.0;  ///< q_y(1/2) - q_y(-1/2)
  double max_abs_v = 0.0;
  double max_cross_parity = 0.0;  ///< largest moment odd in x or z
  double theta_jump_left = 0.0;   ///< theta(-1/2) - theta_wall
  double theta_jump_right = 0.0;
};

struct ChannelSolution
{
  std::string theory;
  BcKind bc = BcKind::obc;
  Eigen::VectorXd y;      ///< N + 1 nodes, walls included
  Eigen::MatrixXd alpha;  ///< nodes x moments (empty for averaged references)
  std::vector<std::string> moment_keys;
  ChannelFields fields;
  ChannelDiagnostics diagnostics;
};

/// -sqrt(2/3) a y^2 in the alpha^(1) slot, zero elsewhere.
Eigen::VectorXd source_vector(const BasisSet& bs, double a, double y);

/// Linear maps from a moment vector to the macroscopic fields.
ChannelFields fields_from_moments(const BasisSet& bs, const Eigen::MatrixXd& alpha);

/// Temperature of a wall, -sqrt(2/3) alpha_w^(1).
double wall_theta(const WallData& w);

/// Staggered finite differences: odd moments (in y) live on the N+1 nodes,
/// even moments on the N cell centres.  At each wall node the odd equations
/// are the boundary conditions.  The no-penetration row of the right wall
/// is implied by continuity and is replaced by a zero total mass condition.
/// `sys` must be assembled with normal y.
ChannelSolution solve_steady(const ChannelConfig& cfg, const MomentSystem& sys, const BoundaryOperator& bc);
ChannelSolution solve_steady(const ChannelConfig& cfg);

/// Pointwise mean of the fields of several solutions on one grid.
ChannelSolution average_solutions(const std::vector<ChannelSolution>& runs, const std::string& name);

/// Average of the given theories (G56, G84, G120 by default).
ChannelSolution reference_solution(ChannelConfig cfg, const std::vector<MomentTheory>& theories);
std::vector<MomentTheory> default_reference_theories();

struct ErrorProfile
{
  Eigen::VectorXd y, e_theta, e_sigma;
};

/// Throws std::invalid_argument unless both live on the same nodes.
ErrorProfile error_profile(const ChannelSolution& run, const ChannelSolution& reference);

}  // namespace momentbc
