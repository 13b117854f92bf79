#include "momentbc/basis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <tuple>

#include <boost/rational.hpp>

namespace momentbc {

namespace {

using Rational = boost::rational<long long>;

// (x^e, k) -> c for the term c * x^e * |x|^(-k)
using RationalSum = std::map<std::pair<Exponent, int>, Rational>;

void accumulate(RationalSum& sum, const Exponent& e, int k, Rational c)
{
  if (c.numerator() == 0) return;
  auto [it, inserted] = sum.try_emplace({e, k}, c);
  if (!inserted) {
    it->second += c;
    if (it->second.numerator() == 0) sum.erase(it);
  }
}

RationalSum differentiate(const RationalSum& f, int axis)
{
  RationalSum out;
  for (const auto& [key, c] : f) {
    const auto& [e, k] = key;
    if (e[axis] > 0) {
      Exponent lower = e;
      lower[axis] -= 1;
      accumulate(out, lower, k, c * static_cast<long long>(e[axis]));
    }
    Exponent higher = e;
    higher[axis] += 1;
    accumulate(out, higher, k + 2, c * static_cast<long long>(-k));
  }
  return out;
}

Polynomial3 norm_power(int p)
{
  Polynomial3 r = Polynomial3::constant(1.0);
  for (int k = 0; k < p; ++k) r = r * Polynomial3::squared_norm();
  return r;
}

double factorial(int n)
{
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

double binomial(int n, int k)
{
  return factorial(n) / (factorial(k) * factorial(n - k));
}

}  // namespace

double RadialPolynomial::operator()(double x) const
{
  double sum = 0.0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) sum = sum * x + *it;
  return std::pow(2.0 * x, 0.5 * rank) * sum;
}

RadialPolynomial laguerre_radial(int rank, int radial)
{
  if (rank < 0 || radial < 0) throw std::invalid_argument("laguerre_radial: negative index");
  const int n = rank, s = radial;
  // Gamma(n+s+3/2)/Gamma(n+p+3/2) as a finite product
  auto rising = [n](int from, int to) {
    double prod = 1.0;
    for (int j = from; j < to; ++j) prod *= n + j + 1.5;
    return prod;
  };
  const double norm = std::sqrt(1.0 / (factorial(n) * factorial(s) * rising(0, s)));
  RadialPolynomial r;
  r.rank = n;
  r.radial = s;
  r.coefficients.resize(s + 1);
  for (int p = 0; p <= s; ++p)
    r.coefficients[p] = norm * ((p % 2) ? -1.0 : 1.0) * rising(p, s) * binomial(s, p);
  return r;
}

Polynomial3 harmonic_tensor(const MultiIndex& t)
{
  const int n = t.rank();
  RationalSum f;
  accumulate(f, {0, 0, 0}, 1, Rational(1));
  for (int axis = 0; axis < 3; ++axis)
    for (int c = 0; c < t.counts()[axis]; ++c) f = differentiate(f, axis);

  long long double_fact = 1;
  for (int k = 2 * n - 1; k > 1; k -= 2) double_fact *= k;
  const Rational scale((n % 2) ? -1 : 1, double_fact);

  // every term is homogeneous of degree -(n+1); times |x|^(2n+1) leaves
  // x^e |x|^(n-|e|) with n-|e| even
  Polynomial3 out;
  for (const auto& [key, c] : f) {
    const auto& [e, k] = key;
    const int deg = e[0] + e[1] + e[2];
    if (deg - k != -(n + 1) || (n - deg) % 2 != 0) throw std::logic_error("harmonic_tensor: inhomogeneous term");
    Polynomial3 term = norm_power((n - deg) / 2) * Polynomial3::monomial(e[0], e[1], e[2]);
    out += term * boost::rational_cast<double>(c * scale);
  }
  return out;
}

Polynomial3 basis_polynomial(int rank, int radial, const MultiIndex& t)
{
  if (t.rank() != rank) throw std::invalid_argument("basis_polynomial: component rank mismatch");
  const RadialPolynomial lag = laguerre_radial(rank, radial);
  const Polynomial3 half_norm = Polynomial3::squared_norm() * 0.5;
  Polynomial3 radial_part;
  Polynomial3 power = Polynomial3::constant(1.0);
  for (double c : lag.coefficients) {
    radial_part += power * c;
    power = power * half_norm;
  }
  return radial_part * harmonic_tensor(t);
}

std::string BasisFunction::label() const
{
  std::string s = "alpha";
  if (rank > 0) s += "_" + component.str();
  return s + "^(" + std::to_string(radial) + ")";
}

std::string BasisFunction::key() const
{
  std::string s = "a" + std::to_string(radial);
  if (rank > 0) s += "_" + component.str();
  return s;
}

std::optional<int> BasisSet::find(int rank, int radial, const MultiIndex& t) const
{
  for (int k = 0; k < size(); ++k) {
    const auto& b = entries[k];
    if (b.rank == rank && b.radial == radial && b.component == t) return k;
  }
  return std::nullopt;
}

int BasisSet::index(int rank, int radial, std::string_view labels) const
{
  const auto k = find(rank, radial, MultiIndex::parse(labels));
  if (!k)
    throw std::out_of_range("moment alpha_" + std::string(labels) + "^(" + std::to_string(radial) +
                            ") is not part of theory " + theory.name);
  return *k;
}

BasisSet build_basis_set(const MomentTheory& theory, Axis normal)
{
  theory.validate();
  if (theory.reduction == Reduction::planar && normal == Axis::z)
    throw std::invalid_argument("planar theories only support x or y normals");

  BasisSet bs;
  bs.theory = theory;
  bs.normal = normal;

  struct Pending
  {
    BasisFunction fn;
    int group = 0;
    int local = 0;
  };
  std::vector<Pending> pending;

  for (int n = 0; n <= theory.max_rank(); ++n) {
    const ComponentBasis cb = expansion_matrix(n, theory.reduction);
    const auto multisets = all_multisets(n);
    for (int s = 0; s < theory.radial_counts[n]; ++s) {
      BasisGroup g;
      g.rank = n;
      g.radial = s;
      g.multisets = multisets;
      for (const auto& u : multisets) g.multiset_polys.push_back(basis_polynomial(n, s, u));
      g.multiset_expansion = cb.multiset_expansion;
      g.columns.assign(cb.independent.size(), -1);
      const int gi = static_cast<int>(bs.groups.size());
      for (std::size_t c = 0; c < cb.independent.size(); ++c) {
        Pending p;
        p.fn.rank = n;
        p.fn.radial = s;
        p.fn.component = cb.independent[c];
        const auto row = std::find(multisets.begin(), multisets.end(), cb.independent[c]) - multisets.begin();
        p.fn.poly = g.multiset_polys[row];
        for (Axis a : {Axis::x, Axis::y, Axis::z}) p.fn.parities[static_cast<int>(a)] = parity(p.fn.component, s, a);
        p.group = gi;
        p.local = static_cast<int>(c);
        pending.push_back(std::move(p));
      }
      bs.groups.push_back(std::move(g));
    }
  }

  // local position inside the rank doubles as the component order
  std::stable_sort(pending.begin(), pending.end(), [normal](const Pending& a, const Pending& b) {
    const int pa = a.fn.parity_along(normal) == Parity::odd ? 0 : 1;
    const int pb = b.fn.parity_along(normal) == Parity::odd ? 0 : 1;
    return std::make_tuple(pa, a.fn.degree(), a.fn.rank, a.local) <
           std::make_tuple(pb, b.fn.degree(), b.fn.rank, b.local);
  });

  for (std::size_t k = 0; k < pending.size(); ++k) {
    auto& p = pending[k];
    bs.groups[p.group].columns[p.local] = static_cast<int>(k);
    if (p.fn.parity_along(normal) == Parity::odd)
      ++bs.n_odd;
    else
      ++bs.n_even;
    bs.entries.push_back(std::move(p.fn));
  }

  long long rows = 0;
  for (auto& g : bs.groups) {
    g.full_row_offset = rows;
    rows += full_tuple_count(g.rank);
  }
  const int m = bs.size();
  bs.expansion = Eigen::MatrixXd::Zero(rows, m);
  bs.reconstruction.assign(m, Polynomial3{});
  for (const auto& g : bs.groups) {
    const long long nt = full_tuple_count(g.rank);
    for (long long k = 0; k < nt; ++k) {
      const auto u = MultiIndex::from_tuple(full_tuple(g.rank, k));
      const auto r = std::find(g.multisets.begin(), g.multisets.end(), u) - g.multisets.begin();
      for (std::size_t c = 0; c < g.columns.size(); ++c)
        bs.expansion(g.full_row_offset + k, g.columns[c]) = g.multiset_expansion(r, c);
    }
    for (std::size_t r = 0; r < g.multisets.size(); ++r) {
      const double mult = static_cast<double>(multiplicity(g.multisets[r]));
      for (std::size_t c = 0; c < g.columns.size(); ++c) {
        const double e = g.multiset_expansion(r, c);
        if (e != 0.0) bs.reconstruction[g.columns[c]] += g.multiset_polys[r] * (mult * e);
      }
    }
  }
  return bs;
}

OrthogonalityReport verify_orthogonality(const BasisSet& bs)
{
  const int m = bs.size();
  OrthogonalityReport rep;
  rep.reconstruction.resize(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      rep.reconstruction(a, b) = inner_full(bs.entries[a].poly, bs.reconstruction[b]);
      const double target = a == b ? 1.0 : 0.0;
      rep.max_deviation = std::max(rep.max_deviation, std::abs(rep.reconstruction(a, b) - target));
      if (bs.entries[a].parity_along(bs.normal) != bs.entries[b].parity_along(bs.normal))
        rep.max_cross_parity =
            std::max(rep.max_cross_parity, std::abs(inner_full(bs.entries[a].poly, bs.entries[b].poly)));
    }
  return rep;
}

}  // namespace momentbc
