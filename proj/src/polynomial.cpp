#include "momentbc/polynomial.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace momentbc {

namespace {

constexpr int kMomentTable = 96;

const std::vector<double>& full_table()
{
  static const std::vector<double> table = [] {
    std::vector<double> t(kMomentTable, 0.0);
    t[0] = 1.0;
    for (int k = 2; k < kMomentTable; k += 2) t[k] = (k - 1) * t[k - 2];
    return t;
  }();
  return table;
}

const std::vector<double>& half_table()
{
  static const std::vector<double> table = [] {
    std::vector<double> t(kMomentTable, 0.0);
    t[0] = 0.5;
    t[1] = 1.0 / std::sqrt(2.0 * std::numbers::pi);
    for (int k = 2; k < kMomentTable; ++k) t[k] = (k - 1) * t[k - 2];
    return t;
  }();
  return table;
}

double table_lookup(const std::vector<double>& t, int k)
{
  if (k < 0 || k >= kMomentTable) throw std::out_of_range("Gaussian moment order out of range");
  return t[k];
}

template <class MomentFn>
double pairwise_integral(const Polynomial3& p, const Polynomial3& q, MomentFn&& moment)
{
  long double sum = 0.0L;
  for (const auto& [ea, ca] : p.terms())
    for (const auto& [eb, cb] : q.terms())
      sum += static_cast<long double>(ca) * cb * moment(ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]);
  return static_cast<double>(sum);
}

}  // namespace

Polynomial3 Polynomial3::constant(double c)
{
  Polynomial3 p;
  p.add_term({0, 0, 0}, c);
  return p;
}

Polynomial3 Polynomial3::monomial(int a, int b, int c, double coeff)
{
  Polynomial3 p;
  p.add_term({a, b, c}, coeff);
  return p;
}

Polynomial3 Polynomial3::coordinate(Axis axis)
{
  Exponent e{0, 0, 0};
  e[static_cast<int>(axis)] = 1;
  Polynomial3 p;
  p.add_term(e, 1.0);
  return p;
}

Polynomial3 Polynomial3::squared_norm()
{
  Polynomial3 p;
  p.add_term({2, 0, 0}, 1.0);
  p.add_term({0, 2, 0}, 1.0);
  p.add_term({0, 0, 2}, 1.0);
  return p;
}

void Polynomial3::add_term(const Exponent& e, double coeff)
{
  if (coeff == 0.0) return;
  auto [it, inserted] = terms_.try_emplace(e, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0.0) terms_.erase(it);
  }
}

double Polynomial3::coefficient(const Exponent& e) const
{
  const auto it = terms_.find(e);
  return it == terms_.end() ? 0.0 : it->second;
}

int Polynomial3::degree() const
{
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e[0] + e[1] + e[2]);
  return d;
}

double Polynomial3::operator()(double x, double y, double z) const
{
  double sum = 0.0;
  for (const auto& [e, c] : terms_) sum += c * std::pow(x, e[0]) * std::pow(y, e[1]) * std::pow(z, e[2]);
  return sum;
}

Polynomial3 Polynomial3::reflected(Axis axis) const
{
  Polynomial3 r;
  const int k = static_cast<int>(axis);
  for (const auto& [e, c] : terms_) r.add_term(e, e[k] % 2 == 1 ? -c : c);
  return r;
}

Polynomial3& Polynomial3::operator+=(const Polynomial3& o)
{
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial3& Polynomial3::operator-=(const Polynomial3& o)
{
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial3& Polynomial3::operator*=(double s)
{
  if (s == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

Polynomial3 operator*(const Polynomial3& a, const Polynomial3& b)
{
  Polynomial3 r;
  for (const auto& [ea, ca] : a.terms())
    for (const auto& [eb, cb] : b.terms()) r.add_term({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
  return r;
}

double gaussian_moment(int k)
{
  return table_lookup(full_table(), k);
}

double gaussian_half_moment(int k)
{
  return table_lookup(half_table(), k);
}

double inner_full(const Polynomial3& p, const Polynomial3& q)
{
  const auto& t = full_table();
  return pairwise_integral(p, q, [&](int a, int b, int c) {
    return table_lookup(t, a) * table_lookup(t, b) * table_lookup(t, c);
  });
}

double inner_half(const Polynomial3& p, const Polynomial3& q, Axis normal)
{
  const auto& full = full_table();
  const auto& half = half_table();
  const int n = static_cast<int>(normal);
  return pairwise_integral(p, q, [&](int a, int b, int c) {
    const int k[3] = {a, b, c};
    double v = 1.0;
    for (int i = 0; i < 3; ++i) v *= table_lookup(i == n ? half : full, k[i]);
    return v;
  });
}

double expectation(const Polynomial3& p)
{
  return inner_full(p, Polynomial3::constant(1.0));
}

}  // namespace momentbc
