#include <doctest.h>

#include <cmath>
#include <random>

#include "momentbc/basis.hpp"

using namespace momentbc;

namespace {

const double pi = 3.14159265358979323846;

// double factorial moments of N(0,1), written out independently
double mu(int k)
{
  if (k % 2) return 0.0;
  double r = 1.0;
  for (int j = k - 1; j > 1; j -= 2) r *= j;
  return r;
}

double oracle_expect(const Polynomial3& p)
{
  double s = 0.0;
  for (const auto& [e, c] : p.terms()) s += c * mu(e[0]) * mu(e[1]) * mu(e[2]);
  return s;
}

Polynomial3 X() { return Polynomial3::coordinate(Axis::x); }
Polynomial3 Y() { return Polynomial3::coordinate(Axis::y); }
Polynomial3 Z() { return Polynomial3::coordinate(Axis::z); }

}  // namespace

TEST_CASE("radial factors")
{
  const auto l00 = laguerre_radial(0, 0);
  const auto l01 = laguerre_radial(0, 1);
  const auto l20 = laguerre_radial(2, 0);
  for (double x : {0.0, 0.3, 1.0, 2.5}) {
    CHECK(l00(x) == doctest::Approx(1.0));
    CHECK(l01(x) == doctest::Approx(std::sqrt(2.0 / 3.0) * (1.5 - x)));
    CHECK(l20(x) == doctest::Approx(std::sqrt(2.0) * x));
  }
}

TEST_CASE("harmonic polynomials")
{
  const auto hx = harmonic_tensor(MultiIndex::parse("x"));
  CHECK(hx.terms().size() == 1);
  CHECK(hx.coefficient({1, 0, 0}) == doctest::Approx(1.0));

  const auto hxx = harmonic_tensor(MultiIndex::parse("xx"));
  CHECK(hxx.coefficient({2, 0, 0}) == doctest::Approx(2.0 / 3.0));
  CHECK(hxx.coefficient({0, 2, 0}) == doctest::Approx(-1.0 / 3.0));
  CHECK(hxx.coefficient({0, 0, 2}) == doctest::Approx(-1.0 / 3.0));

  // x^3 - 3/5 x |xi|^2
  const auto hxxx = harmonic_tensor(MultiIndex::parse("xxx"));
  CHECK(hxxx.coefficient({3, 0, 0}) == doctest::Approx(0.4));
  CHECK(hxxx.coefficient({1, 2, 0}) == doctest::Approx(-0.6));
  CHECK(hxxx.coefficient({1, 0, 2}) == doctest::Approx(-0.6));

  const auto h0 = harmonic_tensor(MultiIndex());
  CHECK(h0.coefficient({0, 0, 0}) == 1.0);

  // trace free in every rank
  for (const char* t : {"", "x", "y"}) {
    const auto base = MultiIndex::parse(t);
    const auto sum = harmonic_tensor(base.with(Axis::x, 2)) + harmonic_tensor(base.with(Axis::y, 2)) +
                     harmonic_tensor(base.with(Axis::z, 2));
    double worst = 0.0;
    for (const auto& [e, c] : sum.terms()) worst = std::max(worst, std::abs(c));
    CHECK(worst < 1e-14);
  }
}

TEST_CASE("G20 planar basis ordering along x")
{
  const auto bs = build_basis_set(grad_theory(3, Reduction::planar), Axis::x);
  REQUIRE(bs.size() == 13);
  CHECK(bs.n_odd == 5);
  CHECK(bs.n_even == 8);
  const std::vector<std::string> expected = {
      "alpha_x^(0)", "alpha_xy^(0)", "alpha_x^(1)",  "alpha_xxx^(0)", "alpha_xyy^(0)", "alpha^(0)",    "alpha_y^(0)",
      "alpha^(1)",   "alpha_xx^(0)", "alpha_yy^(0)", "alpha_y^(1)",   "alpha_xxy^(0)", "alpha_yyy^(0)"};
  for (int i = 0; i < 13; ++i) CHECK(bs.entries[i].label() == expected[i]);
  for (int i = 0; i < 13; ++i) CHECK(bs.entries[i].poly.degree() == bs.entries[i].degree());
}

TEST_CASE("moment counts")
{
  CHECK(build_basis_set(grad_theory(2, Reduction::full3d), Axis::x).size() == 10);
  CHECK(build_basis_set(grad_theory(3, Reduction::full3d), Axis::y).size() == 20);
  CHECK(build_basis_set(grad_theory(2, Reduction::planar), Axis::x).size() == 7);
  CHECK_THROWS_AS(build_basis_set(grad_theory(3, Reduction::planar), Axis::z), std::invalid_argument);
}

TEST_CASE("full space products")
{
  const auto one = Polynomial3::constant(1.0);
  CHECK(inner_full(one, one) == doctest::Approx(1.0));
  const auto px = basis_polynomial(1, 0, MultiIndex::parse("x"));
  CHECK(inner_full(px, px) == doctest::Approx(1.0));
  const auto pxx = basis_polynomial(2, 0, MultiIndex::parse("xx"));
  const auto pyy = basis_polynomial(2, 0, MultiIndex::parse("yy"));
  CHECK(inner_full(pxx, pyy) == doctest::Approx(-1.0 / 3.0));

  // against the hand built polynomials
  const auto hand_xx = (X() * X() - (1.0 / 3.0) * (X() * X() + Y() * Y() + Z() * Z())) * (1.0 / std::sqrt(2.0));
  const auto hand_yy = (Y() * Y() - (1.0 / 3.0) * (X() * X() + Y() * Y() + Z() * Z())) * (1.0 / std::sqrt(2.0));
  CHECK(oracle_expect(hand_xx * hand_yy) == doctest::Approx(-1.0 / 3.0));
  CHECK(inner_full(pxx, pxx) == doctest::Approx(oracle_expect(hand_xx * hand_xx)));

  std::mt19937_64 gen(3);
  std::uniform_int_distribution<int> pick(0, 3);
  std::normal_distribution<double> c(0.0, 1.0);
  for (int k = 0; k < 50; ++k) {
    Polynomial3 p, q;
    for (int t = 0; t < 4; ++t) {
      p.add_term({pick(gen), pick(gen), pick(gen)}, c(gen));
      q.add_term({pick(gen), pick(gen), pick(gen)}, c(gen));
    }
    CHECK(inner_full(p, q) == doctest::Approx(oracle_expect(p * q)).epsilon(1e-12));
  }
}

TEST_CASE("half space products")
{
  const auto one = Polynomial3::constant(1.0);
  CHECK(inner_half(one, one, Axis::x) == doctest::Approx(0.5));
  const auto px = basis_polynomial(1, 0, MultiIndex::parse("x"));
  CHECK(inner_half(px, one, Axis::x) == doctest::Approx(1.0 / std::sqrt(2.0 * pi)));
  CHECK(inner_half(px, one, Axis::x) == doctest::Approx(0.398942).epsilon(1e-6));
  CHECK(inner_half(px, px, Axis::x) == doctest::Approx(0.5));
  CHECK(gaussian_half_moment(3) == doctest::Approx(2.0 / std::sqrt(2.0 * pi)));
}

TEST_CASE("half products over both sides add up to the full product")
{
  const auto bs = build_basis_set(grad_theory(4, Reduction::full3d), Axis::x);
  for (Axis a : {Axis::x, Axis::y, Axis::z}) {
    for (int i = 0; i < bs.size(); i += 3) {
      for (int j = 0; j < bs.size(); j += 2) {
        const auto& p = bs.entries[i].poly;
        const auto& q = bs.entries[j].poly;
        const double two_sides = inner_half(p, q, a) + inner_half(p.reflected(a), q.reflected(a), a);
        CHECK(two_sides == doctest::Approx(inner_full(p, q)).epsilon(1e-12).scale(1.0));
      }
    }
  }
}

TEST_CASE("reconstruction identity")
{
  for (int deg = 2; deg <= 5; ++deg) {
    for (auto red : {Reduction::planar, Reduction::full3d}) {
      CAPTURE(deg);
      const auto rep = verify_orthogonality(build_basis_set(grad_theory(deg, red), Axis::x));
      CHECK(rep.max_deviation < 1e-12);
      CHECK(rep.max_cross_parity == 0.0);
    }
  }
  const auto rank0 = verify_orthogonality(build_basis_set(custom_theory({1}, Reduction::full3d), Axis::x));
  CHECK(rank0.reconstruction.rows() == 1);
  CHECK(rank0.reconstruction(0, 0) == doctest::Approx(1.0));
}

TEST_CASE("every basis function has positive norm")
{
  const auto bs = build_basis_set(grad_theory(7, Reduction::full3d), Axis::x);
  for (const auto& b : bs.entries) CHECK(inner_full(b.poly, b.poly) > 0.0);
}

TEST_CASE("macroscopic quantities of the reconstructed distribution")
{
  const auto bs = build_basis_set(grad_theory(4, Reduction::full3d), Axis::y);
  std::mt19937_64 gen(11);
  std::normal_distribution<double> d(0.0, 1.0);
  Eigen::VectorXd alpha(bs.size());
  for (int i = 0; i < bs.size(); ++i) alpha(i) = d(gen);
  Polynomial3 f;
  for (int i = 0; i < bs.size(); ++i) f += alpha(i) * bs.reconstruction[i];

  const int rho = bs.index(0, 0, ""), a1 = bs.index(0, 1, "");
  CHECK(expectation(f) == doctest::Approx(alpha(rho)).epsilon(1e-12));
  for (Axis a : {Axis::x, Axis::y, Axis::z}) {
    const int u = bs.index(1, 0, std::string(1, axis_name(a)));
    CHECK(expectation(Polynomial3::coordinate(a) * f) == doctest::Approx(alpha(u)).epsilon(1e-12));
  }
  // (|xi|^2 / 3 - 1) picks out the temperature
  const auto energy = (1.0 / 3.0) * Polynomial3::squared_norm() - Polynomial3::constant(1.0);
  CHECK(oracle_expect(energy * f) == doctest::Approx(-std::sqrt(2.0 / 3.0) * alpha(a1)).epsilon(1e-12));
}
