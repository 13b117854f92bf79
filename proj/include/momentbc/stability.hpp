#pragma once

#include <string_view>

#include <Eigen/Dense>

#include "momentbc/boundary.hpp"
#include "momentbc/system.hpp"

namespace momentbc {

enum class Verdict { stable, unstable, degenerate };

std::string_view verdict_name(Verdict v);

struct StabilityOptions
{
  double kernel_tol = 1e-9;     ///< relative to max |B|
  double schur_margin = 1e-10;  ///< strict test: min eig > margin * max(Lambda_+)
  double null_tol = 1e-8;       ///< eigenvalues of the Schur matrix below this (relative) count as zero
  double coupling_tol = 1e-8;
  double max_condition = 1e12;  ///< for B X_-
};

struct StabilityReport
{
  int boundary_rows = 0;
  int n_minus = 0;
  double kernel_residual = 0.0;  ///< max |B S^{-1/2} X_0|
  bool kernel_ok = false;
  double bx_minus_cond = 0.0;
  Eigen::MatrixXd R_plus;
  Eigen::MatrixXd R_zero;
  Eigen::MatrixXd schur;  ///< R_+^T Lambda_- R_+ + Lambda_+
  double schur_asymmetry = 0.0;
  double min_schur_eig = 0.0;
  /// min_schur_eig > margin: the strict condition
  bool strictly_positive = false;
  /// Directions where the Schur form vanishes.  A bound still holds there
  /// when the wall data cannot reach them (null_data_coupling == 0).
  int schur_null_dim = 0;
  double null_data_coupling = 0.0;
  Verdict verdict = Verdict::degenerate;
  std::string note;
};

/// B is given in the same frame as dec (see BoundaryOperator::matrix).
/// `data` maps wall data to the right-hand side of B alpha = data * d; it may
/// be empty for homogeneous conditions.
StabilityReport check_stability(const CharacteristicDecomposition& dec, const Eigen::MatrixXd& B,
                                const Eigen::MatrixXd& data = {}, const StabilityOptions& opt = {});

/// Convenience: decomposition, operator and wall-data map for one orientation.
StabilityReport check_stability(const MomentSystem& sys, const BoundaryOperator& bc,
                                Orientation orientation = Orientation::plus, const StabilityOptions& opt = {});

/// alpha^T S A alpha with A the outward normal flux of the orientation.
double quadratic_form_H(const MomentSystem& sys, const Eigen::VectorXd& alpha,
                        Orientation orientation = Orientation::plus);

/// W_-^T Lambda_- W_- + W_+^T Lambda_+ W_+
double quadratic_form_H(const CharacteristicDecomposition& dec, const Eigen::VectorXd& alpha);

/// The boundary state that keeps the outgoing and zero-speed characteristics
/// of alpha and sets W_- = R_+ W_+ + R_0 W_0 + (B X_-)^{-1} rhs:
/// alpha_b = state * alpha + data * rhs, and B alpha_b = rhs exactly.
struct BoundaryClosure
{
  Eigen::MatrixXd state;
  Eigen::MatrixXd data;
};

BoundaryClosure boundary_closure(const CharacteristicDecomposition& dec, const Eigen::MatrixXd& B);

}  // namespace momentbc
