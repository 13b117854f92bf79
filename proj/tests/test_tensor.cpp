#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "momentbc/basis.hpp"
#include "momentbc/tensor.hpp"

using namespace momentbc;

namespace {

std::set<std::string> names(const std::vector<MultiIndex>& v)
{
  std::set<std::string> s;
  for (const auto& t : v) s.insert(t.str());
  return s;
}

int column_of(const ComponentBasis& cb, const char* labels)
{
  const auto t = MultiIndex::parse(labels);
  for (std::size_t i = 0; i < cb.independent.size(); ++i)
    if (cb.independent[i] == t) return static_cast<int>(i);
  return -1;
}

Eigen::RowVectorXd tuple_row(const ComponentBasis& cb, std::vector<Axis> tuple)
{
  return cb.expansion.row(full_tuple_index(tuple));
}

// brute force: contract slots 0 and 1 of every column, all remaining tuples
double max_trace(const ComponentBasis& cb)
{
  const int n = cb.rank;
  if (n < 2) return 0.0;
  double worst = 0.0;
  for (long long r = 0; r < full_tuple_count(n - 2); ++r) {
    const auto rest = full_tuple(n - 2, r);
    for (Eigen::Index c = 0; c < cb.expansion.cols(); ++c) {
      double sum = 0.0;
      for (Axis j : {Axis::x, Axis::y, Axis::z}) {
        std::vector<Axis> t{j, j};
        t.insert(t.end(), rest.begin(), rest.end());
        sum += cb.expansion(full_tuple_index(t), c);
      }
      worst = std::max(worst, std::abs(sum));
    }
  }
  return worst;
}

}  // namespace

TEST_CASE("independent components of low ranks")
{
  CHECK(names(independent_components(2, Reduction::planar)) == std::set<std::string>{"xx", "xy", "yy"});
  CHECK(names(independent_components(3, Reduction::planar)) == std::set<std::string>{"xxx", "xxy", "xyy", "yyy"});
  const auto scalar = independent_components(0, Reduction::full3d);
  REQUIRE(scalar.size() == 1);
  CHECK(scalar[0].rank() == 0);
}

TEST_CASE("component counts and z labels up to rank 7")
{
  for (int n = 0; n <= 7; ++n) {
    const auto full = independent_components(n, Reduction::full3d);
    const auto planar = independent_components(n, Reduction::planar);
    CHECK(full.size() == static_cast<std::size_t>(2 * n + 1));
    CHECK(planar.size() == static_cast<std::size_t>(n + 1));
    for (const auto& t : full) CHECK(t.count(Axis::z) <= 1);
    for (const auto& t : planar) CHECK(t.count(Axis::z) == 0);
    CHECK(std::is_sorted(full.begin(), full.end()));
  }
}

TEST_CASE("rank 2 planar expansion rows")
{
  const auto cb = expansion_matrix(2, Reduction::planar);
  const int xx = column_of(cb, "xx"), xy = column_of(cb, "xy"), yy = column_of(cb, "yy");
  REQUIRE(xx >= 0);
  const auto zz = tuple_row(cb, {Axis::z, Axis::z});
  CHECK(zz(xx) == -1.0);
  CHECK(zz(yy) == -1.0);
  CHECK(zz(xy) == 0.0);
  for (auto t : {std::vector<Axis>{Axis::x, Axis::y}, std::vector<Axis>{Axis::y, Axis::x}}) {
    const auto r = tuple_row(cb, t);
    CHECK(r(xy) == 1.0);
    CHECK(r(xx) == 0.0);
    CHECK(r(yy) == 0.0);
  }
}

TEST_CASE("rank 3 planar xzz row")
{
  const auto cb = expansion_matrix(3, Reduction::planar);
  const auto r = tuple_row(cb, {Axis::x, Axis::z, Axis::z});
  CHECK(r(column_of(cb, "xxx")) == -1.0);
  CHECK(r(column_of(cb, "xyy")) == -1.0);
  CHECK(r(column_of(cb, "xxy")) == 0.0);
  CHECK(r(column_of(cb, "yyy")) == 0.0);
}

TEST_CASE("scalar expansion")
{
  const auto cb = expansion_matrix(0, Reduction::full3d);
  CHECK(cb.expansion.rows() == 1);
  CHECK(cb.expansion(0, 0) == 1.0);
}

TEST_CASE("expansions are trace free, identity on representatives, planar rows vanish")
{
  for (auto red : {Reduction::full3d, Reduction::planar}) {
    for (int n = 0; n <= 7; ++n) {
      CAPTURE(n);
      const auto cb = expansion_matrix(n, red);
      CHECK(max_trace(cb) < 1e-12);
      if (n >= 2) CHECK((trace_contraction(n) * cb.expansion).cwiseAbs().maxCoeff() < 1e-12);
      for (std::size_t k = 0; k < cb.independent.size(); ++k) {
        const auto& t = cb.independent[k];
        std::vector<Axis> tuple;
        for (Axis a : {Axis::x, Axis::y, Axis::z})
          for (int i = 0; i < t.count(a); ++i) tuple.push_back(a);
        Eigen::RowVectorXd unit = Eigen::RowVectorXd::Zero(cb.independent.size());
        unit(k) = 1.0;
        CHECK(tuple_row(cb, tuple) == unit);
      }
      if (red == Reduction::planar) {
        for (long long r = 0; r < full_tuple_count(n); ++r) {
          const auto t = MultiIndex::from_tuple(full_tuple(n, r));
          if (t.count(Axis::z) % 2 == 1) CHECK(cb.expansion.row(r).cwiseAbs().maxCoeff() == 0.0);
        }
      }
    }
  }
}

TEST_CASE("multiplicity")
{
  CHECK(multiplicity(MultiIndex::parse("xy")) == 2);
  CHECK(multiplicity(MultiIndex::parse("xxy")) == 3);
  CHECK(multiplicity(MultiIndex::parse("")) == 1);
  CHECK(multiplicity(MultiIndex::parse("xxyyzz")) == 90);
}

TEST_CASE("multi index parsing is order independent")
{
  CHECK(MultiIndex::parse("yx") == MultiIndex::parse("xy"));
  CHECK(MultiIndex::parse("zyx").str() == "xyz");
  CHECK_THROWS(MultiIndex::parse("xq"));
}

TEST_CASE("parity examples")
{
  CHECK(parity(MultiIndex::parse("x"), 1, Axis::x) == Parity::odd);
  CHECK(parity(MultiIndex::parse("xx"), 0, Axis::x) == Parity::even);
  CHECK(parity(MultiIndex::parse("xx"), 3, Axis::x) == Parity::even);
  CHECK(parity(MultiIndex::parse("xy"), 0, Axis::y) == Parity::odd);
}

TEST_CASE("parity matches the sign of the basis function under reflection")
{
  std::mt19937_64 gen(7);
  std::normal_distribution<double> d(0.0, 1.5);
  for (int n = 0; n <= 4; ++n) {
    for (int s = 0; s <= 2; ++s) {
      for (const auto& t : independent_components(n, Reduction::full3d)) {
        const auto p = basis_polynomial(n, s, t);
        for (Axis a : {Axis::x, Axis::y, Axis::z}) {
          const double sign = parity(t, s, a) == Parity::odd ? -1.0 : 1.0;
          for (int k = 0; k < 20; ++k) {
            double v[3] = {d(gen), d(gen), d(gen)};
            const double base = p(v[0], v[1], v[2]);
            v[static_cast<int>(a)] *= -1.0;
            CHECK(p(v[0], v[1], v[2]) == doctest::Approx(sign * base).epsilon(1e-12));
          }
        }
      }
    }
  }
}
