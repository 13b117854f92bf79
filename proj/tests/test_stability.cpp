#include <doctest.h>

#include <random>

#include "momentbc/stability.hpp"

using namespace momentbc;

TEST_CASE("verdicts at full accommodation")
{
  for (int deg = 3; deg <= 5; ++deg) {
    CAPTURE(deg);
    const auto sys = assemble_system(grad_theory(deg, Reduction::planar), Axis::x);
    for (auto o : {Orientation::plus, Orientation::minus}) {
      const auto obc = check_stability(sys, make_obc(sys, 1.0), o);
      CHECK(obc.verdict == Verdict::stable);
      CHECK(obc.kernel_ok);
      CHECK(obc.schur_null_dim <= 1);
      CHECK(obc.null_data_coupling < 1e-8);
      const auto mbc = check_stability(sys, make_mbc(sys, 1.0), o);
      CHECK(mbc.verdict == Verdict::unstable);
      CHECK_FALSE(mbc.kernel_ok);
    }
  }
}

TEST_CASE("OBC stays stable over chi")
{
  const auto sys = assemble_system(grad_theory(3, Reduction::planar), Axis::y);
  for (double chi : {0.05, 0.3, 0.8, 1.0})
    CHECK(check_stability(sys, make_obc(sys, chi)).verdict == Verdict::stable);
}

TEST_CASE("row count mismatch is degenerate")
{
  const auto sys = assemble_system(grad_theory(3, Reduction::planar), Axis::x);
  const auto dec = characteristic_decomposition(sys, Axis::x);
  const Eigen::MatrixXd b = make_obc(sys, 1.0).B.topRows(2);
  const auto rep = check_stability(dec, b);
  CHECK(rep.verdict == Verdict::degenerate);
  CHECK_FALSE(rep.note.empty());
}

TEST_CASE("conditions that miss the incoming characteristics are degenerate")
{
  const auto sys = assemble_system(grad_theory(3, Reduction::planar), Axis::x);
  const auto dec = characteristic_decomposition(sys, Axis::x);
  const Eigen::MatrixXd b = Eigen::MatrixXd::Zero(sys.n_o, sys.size());
  CHECK(check_stability(dec, b).verdict == Verdict::degenerate);
}

TEST_CASE("quadratic form in moments and in characteristics")
{
  const auto sys = assemble_system(grad_theory(4, Reduction::planar), Axis::y);
  std::mt19937_64 gen(5);
  std::normal_distribution<double> d(0.0, 1.0);
  for (auto o : {Orientation::plus, Orientation::minus}) {
    const auto dec = characteristic_decomposition(sys, Axis::y, o);
    for (int k = 0; k < 10; ++k) {
      Eigen::VectorXd a(sys.size());
      for (int i = 0; i < a.size(); ++i) a(i) = d(gen);
      CHECK(quadratic_form_H(sys, a, o) == doctest::Approx(quadratic_form_H(dec, a)).epsilon(1e-10));
    }
  }
}

TEST_CASE("boundary closure satisfies the conditions and keeps outgoing waves")
{
  const auto sys = assemble_system(grad_theory(3, Reduction::planar), Axis::y);
  const auto bc = make_obc(sys, 1.0);
  std::mt19937_64 gen(9);
  std::normal_distribution<double> d(0.0, 1.0);
  for (auto o : {Orientation::plus, Orientation::minus}) {
    const auto dec = characteristic_decomposition(sys, Axis::y, o);
    const Eigen::MatrixXd b = bc.matrix(o);
    const auto cl = boundary_closure(dec, b);
    Eigen::VectorXd a(sys.size()), g(sys.n_o);
    for (int i = 0; i < a.size(); ++i) a(i) = d(gen);
    for (int i = 0; i < g.size(); ++i) g(i) = d(gen);
    const Eigen::VectorXd ab = cl.state * a + cl.data * g;
    CHECK((b * ab - g).cwiseAbs().maxCoeff() < 1e-12);
    const Eigen::VectorXd w = dec.X_plus.transpose() * dec.S_half * a;
    const Eigen::VectorXd wb = dec.X_plus.transpose() * dec.S_half * ab;
    CHECK((w - wb).cwiseAbs().maxCoeff() < 1e-12);
    // homogeneous conditions: the boundary state carries no energy inflow
    const Eigen::VectorXd a0 = cl.state * a;
    CHECK(quadratic_form_H(sys, a0, o) >= -1e-12);
  }
}
