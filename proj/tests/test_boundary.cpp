#include <doctest.h>

#include <cmath>

#include "momentbc/boundary.hpp"
#include "momentbc/errors.hpp"

using namespace momentbc;

TEST_CASE("accommodation beta")
{
  CHECK(accommodation_beta(1.0) == 1.0);
  CHECK(accommodation_beta(0.5) == doctest::Approx(1.0 / 3.0));
  CHECK_THROWS_AS(accommodation_beta(0.0), std::invalid_argument);
  CHECK_THROWS_AS(accommodation_beta(1.5), std::invalid_argument);
}

TEST_CASE("Maxwell operator of G20")
{
  const auto sys = assemble_system(grad_theory(3, Reduction::planar), Axis::x);
  const auto& bs = sys.basis;
  const auto op = assemble_mbc(sys);
  CHECK(op.denominator == doctest::Approx(1.0 / std::sqrt(2.0 * 3.14159265358979323846)));
  CHECK(op.no_penetration_row == bs.index(1, 0, "x"));

  // direct half-space products
  for (int i = 0; i < sys.n_o; ++i)
    for (int j = 0; j < sys.n_e; ++j)
      CHECK(op.H(i, j) == doctest::Approx(inner_half(bs.entries[i].poly, bs.reconstruction[sys.n_o + j], Axis::x)));

  // density drops out everywhere, the no-penetration row is empty
  const int rho = bs.index(0, 0, "") - sys.n_o;
  CHECK(op.M.col(rho).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(op.M.row(op.no_penetration_row).cwiseAbs().maxCoeff() < 1e-15);

  // the data map repeats the temperature and tangential velocity columns
  CHECK((op.g_map.col(wall_temperature) + op.M.col(bs.index(0, 1, "") - sys.n_o)).norm() == 0.0);
  CHECK((op.g_map.col(wall_velocity_y) + op.M.col(bs.index(1, 0, "y") - sys.n_o)).norm() == 0.0);
  CHECK(op.g_map.col(wall_velocity_x).isZero(0.0));
  CHECK(op.g_map.col(wall_velocity_z).isZero(0.0));
}

TEST_CASE("boundary matrices keep an identity odd block")
{
  const auto sys = assemble_system(grad_theory(4, Reduction::planar), Axis::y);
  for (auto kind : {BcKind::mbc, BcKind::obc}) {
    const auto bc = make_boundary(sys, kind, 0.7);
    CHECK(bc.rows() == sys.n_o);
    CHECK(bc.beta == doctest::Approx(0.7 / 1.3));
    for (auto o : {Orientation::plus, Orientation::minus}) {
      const Eigen::MatrixXd b = bc.matrix(o);
      CHECK((b.leftCols(sys.n_o) - Eigen::MatrixXd::Identity(sys.n_o, sys.n_o)).cwiseAbs().maxCoeff() == 0.0);
    }
    CHECK((bc.matrix(Orientation::minus).rightCols(sys.n_e) + bc.B.rightCols(sys.n_e)).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("Onsager matrix is symmetric positive semi-definite")
{
  for (int deg = 2; deg <= 5; ++deg) {
    for (Axis n : {Axis::x, Axis::y}) {
      CAPTURE(deg);
      const auto sys = assemble_system(grad_theory(deg, Reduction::planar), n);
      const auto bc = make_obc(sys, 1.0);
      CHECK(bc.L_asymmetry < 1e-9);
      CHECK(bc.L_min_eig >= -1e-9 * bc.L_norm);
      CHECK(bc.cond_Aoe_hat < 1e3);
      // L A_oe reproduces 2 beta M on the leading block
      const Eigen::MatrixXd aoe = sys.odd_even_block();
      CHECK((bc.L * aoe.leftCols(sys.n_o) - 2.0 * bc.beta * bc.M.leftCols(sys.n_o)).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("Onsager matrix scales with beta")
{
  const auto sys = assemble_system(grad_theory(3, Reduction::planar), Axis::x);
  const auto one = make_obc(sys, 1.0);
  const auto half = make_obc(sys, 0.5);
  CHECK((half.L - one.L / 3.0).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("G10 Maxwell and Onsager operators coincide")
{
  for (auto red : {Reduction::planar, Reduction::full3d}) {
    const auto sys = assemble_system(grad_theory(2, red), Axis::x);
    for (double chi : {0.3, 1.0}) {
      const auto mbc = make_mbc(sys, chi);
      const auto obc = make_obc(sys, chi);
      CHECK((mbc.B - obc.B).cwiseAbs().maxCoeff() < 1e-14);
    }
  }
}

TEST_CASE("wall data")
{
  const auto sys = assemble_system(grad_theory(3, Reduction::planar), Axis::y);
  const auto bc = make_obc(sys, 1.0);
  const WallData hot = WallData::heated();
  CHECK(hot.temperature == doctest::Approx(-std::sqrt(1.5)));
  const Eigen::VectorXd g = bc.rhs(hot, Orientation::plus);
  CHECK((g - 2.0 * bc.g_map.col(wall_temperature) * hot.temperature).norm() < 1e-15);
  CHECK((bc.rhs(hot, Orientation::minus) + g).norm() == 0.0);

  WallData moving;
  moving.velocity[0] = 0.1;
  const Eigen::VectorXd gm = bc.rhs(moving, Orientation::plus);
  CHECK(gm.norm() > 0.0);
  CHECK((wall_inhomogeneity(bc.g_map, moving) * 2.0 - gm).norm() < 1e-15);

  WallData bad;
  bad.velocity[1] = 0.1;
  CHECK_THROWS_AS(bc.rhs(bad, Orientation::plus), std::invalid_argument);
  WallData out_of_plane;
  out_of_plane.velocity[2] = 0.1;
  CHECK_THROWS_AS(bc.rhs(out_of_plane, Orientation::plus), std::invalid_argument);
}

TEST_CASE("bc names")
{
  CHECK(bc_from_string("mbc") == BcKind::mbc);
  CHECK(bc_from_string("OBC") == BcKind::obc);
  CHECK_THROWS_AS(bc_from_string("dirichlet"), std::invalid_argument);
}
