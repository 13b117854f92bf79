#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "momentbc/polynomial.hpp"
#include "momentbc/tensor.hpp"
#include "momentbc/theory.hpp"

namespace momentbc {

/// Radial factor L_s^(n)(x) = (2x)^{n/2} * sum_p coefficients[p] x^p, with the
/// normalization folded into the coefficients.
struct RadialPolynomial
{
  int rank = 0;
  int radial = 0;
  std::vector<double> coefficients;

  double operator()(double x) const;
};

RadialPolynomial laguerre_radial(int rank, int radial);

/// |xi|^n nu_t(xi): the homogeneous degree-n harmonic polynomial of the
/// trace-free tensor component t, obtained by differentiating 1/|x|.
Polynomial3 harmonic_tensor(const MultiIndex& t);

/// psi^(s)_t as a polynomial in the nondimensional velocity.
Polynomial3 basis_polynomial(int rank, int radial, const MultiIndex& t);

struct BasisFunction
{
  int rank = 0;
  int radial = 0;
  MultiIndex component;
  Polynomial3 poly;
  std::array<Parity, 3> parities{Parity::even, Parity::even, Parity::even};

  int degree() const { return rank + 2 * radial; }
  Parity parity_along(Axis a) const { return parities[static_cast<int>(a)]; }
  /// e.g. "alpha_xy^(0)"; "alpha^(1)" for rank 0.
  std::string label() const;
  /// CSV friendly form, e.g. "a0_xy", "a1".
  std::string key() const;
};

/// One (rank, radial index) block of the expansion.
struct BasisGroup
{
  int rank = 0;
  int radial = 0;
  std::vector<MultiIndex> multisets;        ///< every multiset of the rank
  std::vector<Polynomial3> multiset_polys;  ///< psi for each multiset
  Eigen::MatrixXd multiset_expansion;       ///< rows: multisets, cols: local independent
  std::vector<int> columns;                 ///< global column of each local independent
  long long full_row_offset = 0;            ///< first row in the global expansion
};

struct BasisSet
{
  MomentTheory theory;
  Axis normal = Axis::x;
  std::vector<BasisFunction> entries;
  int n_odd = 0;
  int n_even = 0;
  std::vector<BasisGroup> groups;
  /// Rows: every full tuple of every group, columns: ordered independent moments.
  Eigen::MatrixXd expansion;
  /// phi_b = sum_t E_{t,b} psi_t; the Ansatz is f = sum_b alpha_b phi_b f0.
  std::vector<Polynomial3> reconstruction;

  int size() const { return static_cast<int>(entries.size()); }
  std::optional<int> find(int rank, int radial, const MultiIndex& t) const;
  /// Same as find() but throws std::out_of_range.
  int index(int rank, int radial, std::string_view labels) const;
};

/// Odd block (w.r.t. normal) first, then even; inside each block ordered by
/// degree n + 2s, then rank, then component.
BasisSet build_basis_set(const MomentTheory& theory, Axis normal);

struct OrthogonalityReport
{
  Eigen::MatrixXd reconstruction;  ///< M_ab, should be the identity
  double max_deviation = 0.0;      ///< max |M - I|
  double max_cross_parity = 0.0;   ///< max |<psi_a, psi_b>| over odd/even pairs
};

OrthogonalityReport verify_orthogonality(const BasisSet& bs);

}  // namespace momentbc
