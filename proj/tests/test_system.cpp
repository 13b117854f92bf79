#include <doctest.h>

#include <cmath>
#include <random>

#include "momentbc/system.hpp"

using namespace momentbc;

namespace {

Eigen::MatrixXd golden_s_g20()
{
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(13, 13);
  for (int k : {0, 2, 5, 6, 7, 10}) s(k, k) = 0.5;
  s(1, 1) = 1.0;
  s(3, 3) = 2.0;
  s(3, 4) = s(4, 3) = 1.5;
  s(4, 4) = 3.0;
  s(8, 8) = s(9, 9) = 1.0;
  s(8, 9) = s(9, 8) = 0.5;
  s(11, 11) = 3.0;
  s(11, 12) = s(12, 11) = 1.5;
  s(12, 12) = 2.0;
  return s;
}

}  // namespace

TEST_CASE("G20 symmetrizer equals the printed matrix")
{
  const auto sys = assemble_system(grad_theory(3, Reduction::planar), Axis::x);
  CHECK((sys.S - golden_s_g20()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("rank 2 symmetrizer block")
{
  const auto sys = assemble_system(custom_theory({1, 1, 1}, Reduction::planar), Axis::x);
  const auto& bs = sys.basis;
  const int xy = bs.index(2, 0, "xy"), xx = bs.index(2, 0, "xx"), yy = bs.index(2, 0, "yy");
  Eigen::Matrix3d block;
  const int idx[3] = {xy, xx, yy};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) block(i, j) = sys.S(idx[i], idx[j]);
  Eigen::Matrix3d expected;
  expected << 1, 0, 0, 0, 1, 0.5, 0, 0.5, 1;
  CHECK((block - expected).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("symmetrized fluxes, all axes")
{
  for (int deg = 2; deg <= 4; ++deg) {
    for (auto red : {Reduction::planar, Reduction::full3d}) {
      const auto sys = assemble_system(grad_theory(deg, red), Axis::x);
      CHECK(sys.S.llt().info() == Eigen::Success);
      for (Axis k : {Axis::x, Axis::y, Axis::z}) {
        if (!sys.has_axis(k)) continue;
        CHECK(symmetrized_flux_asymmetry(sys, k) < 1e-10);
      }
      CHECK(sys.has_axis(Axis::z) == (red == Reduction::full3d));
    }
  }
}

TEST_CASE("flux entries of the conservation laws")
{
  const auto sys = assemble_system(grad_theory(3, Reduction::planar), Axis::x);
  const auto& bs = sys.basis;
  const auto& a = sys.flux(Axis::x);
  const int rho = bs.index(0, 0, ""), ux = bs.index(1, 0, "x"), a1 = bs.index(0, 1, ""), sxx = bs.index(2, 0, "xx");
  // continuity: d rho/dt + d u_x/dx = 0
  CHECK(a(rho, ux) == doctest::Approx(1.0));
  // momentum: d u_x/dt + d(rho + theta + sigma_xx)/dx = 0 with theta = -sqrt(2/3) alpha^(1), sigma = sqrt(2) alpha_xx
  CHECK(a(ux, rho) == doctest::Approx(1.0));
  CHECK(a(ux, a1) == doctest::Approx(-std::sqrt(2.0 / 3.0)));
  CHECK(a(ux, sxx) == doctest::Approx(std::sqrt(2.0)));
  for (int c = 0; c < sys.size(); ++c)
    if (c != ux) CHECK(a(rho, c) == 0.0);
}

TEST_CASE("full flux symmetry of the elongated system")
{
  const auto bs = build_basis_set(grad_theory(3, Reduction::full3d), Axis::x);
  for (Axis k : {Axis::x, Axis::y, Axis::z}) {
    const auto rep = verify_full_symmetry(bs, k);
    CHECK(rep.max_asymmetry < 1e-12);
    CHECK(rep.pairs > 0);
  }
}

TEST_CASE("BGK projector")
{
  const auto sys = assemble_system(grad_theory(4, Reduction::full3d), Axis::x);
  const auto& bs = sys.basis;
  for (int i = 0; i < sys.size(); ++i) {
    const auto& b = bs.entries[i];
    const bool conserved = (b.rank == 0 && b.radial <= 1) || (b.rank == 1 && b.radial == 0);
    CHECK(sys.P(i) == (conserved ? 0.0 : 1.0));
  }
}

TEST_CASE("normal flux structure")
{
  struct Expect
  {
    int deg, kernel, negatives;
  };
  for (auto e : {Expect{2, 3, 2}, Expect{3, 3, 5}, Expect{4, 6, 8}}) {
    for (Axis n : {Axis::x, Axis::y}) {
      const auto sys = assemble_system(grad_theory(e.deg, Reduction::planar), n);
      const auto st = check_normal_structure(sys);
      CHECK(st.max_odd_odd == 0.0);
      CHECK(st.max_even_even == 0.0);
      CHECK(st.max_kernel_odd < 1e-10);
      CHECK(st.kernel_dim == e.kernel);
      CHECK(st.n_negative == sys.n_o);
      CHECK(st.n_negative == e.negatives);
      CHECK(st.n_positive == sys.n_o);
      CHECK(st.spectrum_asymmetry < 1e-10);
    }
  }
}

TEST_CASE("characteristic decomposition")
{
  const auto sys = assemble_system(grad_theory(4, Reduction::planar), Axis::y);
  for (auto o : {Orientation::plus, Orientation::minus}) {
    const auto dec = characteristic_decomposition(sys, Axis::y, o);
    CHECK(dec.reconstruction_error < 1e-10);
    CHECK(dec.n_minus() == sys.n_o);
    CHECK(dec.n_plus() == sys.n_o);
    CHECK(dec.n_minus() + dec.n_zero() + dec.n_plus() == sys.size());
    CHECK((dec.lambda_minus.array() < 0.0).all());
    CHECK((dec.lambda_plus.array() > 0.0).all());
    const Eigen::MatrixXd x = dec.X();
    CHECK((x.transpose() * x - Eigen::MatrixXd::Identity(sys.size(), sys.size())).cwiseAbs().maxCoeff() < 1e-10);
    // S^{1/2} A S^{-1/2} = X diag X^T
    Eigen::VectorXd lam(sys.size());
    lam << dec.lambda_minus, Eigen::VectorXd::Zero(dec.n_zero()), dec.lambda_plus;
    const Eigen::MatrixXd sym = dec.S_half * dec.flux * dec.S_half_inv;
    CHECK((sym - x * lam.asDiagonal() * x.transpose()).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("reflection flips the normal flux")
{
  const auto sys = assemble_system(grad_theory(3, Reduction::planar), Axis::y);
  const Eigen::VectorXd r = parity_reflection(sys.basis, Axis::y);
  const Eigen::MatrixXd a = sys.flux(Axis::y);
  CHECK((r.asDiagonal() * a * r.asDiagonal() + a).cwiseAbs().maxCoeff() == 0.0);
  CHECK(r.head(sys.n_o).isConstant(-1.0));
  CHECK(r.tail(sys.n_e).isConstant(1.0));
}
