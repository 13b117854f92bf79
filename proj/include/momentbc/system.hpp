#pragma once

#include <array>

#include <Eigen/Dense>

#include "momentbc/basis.hpp"
#include "momentbc/errors.hpp"

namespace momentbc {

/// Which way the outward wall normal points along its axis.
enum class Orientation { plus, minus };

std::string_view orientation_name(Orientation o);

struct MomentSystem
{
  BasisSet basis;
  /// A^(k) for k = x, y, z; the z matrix is empty for planar theories.
  std::array<Eigen::MatrixXd, 3> A;
  Eigen::MatrixXd S;
  Eigen::VectorXd P;  ///< diagonal of the BGK projector
  int n_o = 0;
  int n_e = 0;

  int size() const { return basis.size(); }
  const Eigen::MatrixXd& flux(Axis k) const;
  bool has_axis(Axis k) const { return A[static_cast<int>(k)].size() > 0; }
  /// S A^(normal) = [[0, A_oe], [A_oe^T, 0]]; returns the n_o x n_e block.
  Eigen::MatrixXd odd_even_block() const;
};

/// A^(k)_ab = <psi_a, xi_k phi_b>.
Eigen::MatrixXd assemble_flux(const BasisSet& bs, Axis k);

/// S = E^T E / 2.  Throws NumericalError if S is not SPD.
Eigen::MatrixXd assemble_symmetrizer(const BasisSet& bs);

Eigen::VectorXd bgk_projector(const BasisSet& bs);

/// Builds the basis for `normal` and every flux matrix, S and P.
MomentSystem assemble_system(const MomentTheory& theory, Axis normal);

struct FullSymmetryReport
{
  double max_asymmetry = 0.0;
  int pairs = 0;
};

/// <psi_t, xi_k psi_u> against <psi_u, xi_k psi_t> over every pair of
/// multiset basis functions (this covers all full tuples).
FullSymmetryReport verify_full_symmetry(const BasisSet& bs, Axis k);

/// max |S A^(k) - (S A^(k))^T|
double symmetrized_flux_asymmetry(const MomentSystem& sys, Axis k);

/// Diagonal of the reflection xi_k -> -xi_k acting on the state:
/// -1 on moments odd in xi_k, +1 otherwise.
Eigen::VectorXd parity_reflection(const BasisSet& bs, Axis k);

struct CharacteristicDecomposition
{
  Axis axis = Axis::x;
  Orientation orientation = Orientation::plus;
  /// Flux in the oriented frame (R A R for the minus orientation).
  Eigen::MatrixXd flux;
  Eigen::MatrixXd S_half;
  Eigen::MatrixXd S_half_inv;
  Eigen::MatrixXd X_minus, X_zero, X_plus;
  Eigen::VectorXd lambda_minus;  ///< ascending
  Eigen::VectorXd lambda_plus;   ///< ascending
  double zero_tolerance = 0.0;
  double asymmetry = 0.0;        ///< of S^{1/2} A S^{-1/2} before symmetrizing
  double reconstruction_error = 0.0;

  int n_minus() const { return static_cast<int>(lambda_minus.size()); }
  int n_zero() const { return static_cast<int>(X_zero.cols()); }
  int n_plus() const { return static_cast<int>(lambda_plus.size()); }
  /// [X_- X_0 X_+]
  Eigen::MatrixXd X() const;
  /// W = X^T S^{1/2} alpha
  Eigen::VectorXd characteristic(const Eigen::VectorXd& alpha) const;
};

CharacteristicDecomposition characteristic_decomposition(const MomentSystem& sys, Axis axis,
                                                         Orientation orientation = Orientation::plus,
                                                         double relative_zero_tol = 1e-10);

struct StructureReport
{
  double max_odd_odd = 0.0;    ///< of A^(normal)
  double max_even_even = 0.0;
  int kernel_dim = 0;
  double max_kernel_odd = 0.0;  ///< largest odd entry of a normalized null vector
  int n_negative = 0;
  int n_positive = 0;
  double spectrum_asymmetry = 0.0;  ///< max |lambda_-,i + lambda_+,(n-i)|
};

StructureReport check_normal_structure(const MomentSystem& sys);

}  // namespace momentbc
