#pragma once

#include <array>
#include <map>

#include "momentbc/tensor.hpp"

namespace momentbc {

using Exponent = std::array<int, 3>;

/// Sparse polynomial in three variables (the nondimensional velocity).
class Polynomial3
{
 public:
  Polynomial3() = default;
  static Polynomial3 constant(double c);
  static Polynomial3 monomial(int a, int b, int c, double coeff = 1.0);
  static Polynomial3 coordinate(Axis axis);
  /// xi . xi
  static Polynomial3 squared_norm();

  void add_term(const Exponent& e, double coeff);
  double coefficient(const Exponent& e) const;
  const std::map<Exponent, double>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  int degree() const;

  double operator()(double x, double y, double z) const;

  /// p(xi with xi_axis negated).
  Polynomial3 reflected(Axis axis) const;

  Polynomial3& operator+=(const Polynomial3& o);
  Polynomial3& operator-=(const Polynomial3& o);
  Polynomial3& operator*=(double s);
  friend Polynomial3 operator+(Polynomial3 a, const Polynomial3& b) { return a += b; }
  friend Polynomial3 operator-(Polynomial3 a, const Polynomial3& b) { return a -= b; }
  friend Polynomial3 operator*(Polynomial3 a, double s) { return a *= s; }
  friend Polynomial3 operator*(double s, Polynomial3 a) { return a *= s; }
  friend Polynomial3 operator*(const Polynomial3& a, const Polynomial3& b);

 private:
  std::map<Exponent, double> terms_;
};

/// Moments of the standard Gaussian along one axis: integral of t^k over R
/// ((k-1)!! for even k) and over t > 0 (h_0 = 1/2, h_1 = 1/sqrt(2 pi),
/// h_k = (k-1) h_{k-2}).
double gaussian_moment(int k);
double gaussian_half_moment(int k);

/// <p, q> with the unit-mass weight (2 pi)^{-3/2} exp(-|xi|^2 / 2).
double inner_full(const Polynomial3& p, const Polynomial3& q);
/// Same weight, integral restricted to xi_normal > 0.
double inner_half(const Polynomial3& p, const Polynomial3& q, Axis normal);

/// Expectation of a single polynomial under the weight.
double expectation(const Polynomial3& p);

}  // namespace momentbc
