#include "momentbc/tensor.hpp"

#include <algorithm>
#include <stdexcept>

#include <boost/rational.hpp>

namespace momentbc {

namespace {

using Rational = boost::rational<long long>;

long long factorial(int n)
{
  long long f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

long long pow3(int n)
{
  long long p = 1;
  for (int k = 0; k < n; ++k) p *= 3;
  return p;
}

// Solves C_dep * x = rhs for several right-hand sides by Gauss-Jordan
// elimination in exact arithmetic.  Returns false when C_dep is singular.
bool solve_exact(std::vector<std::vector<Rational>> a, std::vector<std::vector<Rational>>& rhs)
{
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col].numerator() == 0) ++pivot;
    if (pivot == n) return false;
    std::swap(a[col], a[pivot]);
    std::swap(rhs[col], rhs[pivot]);
    const Rational inv = Rational(1) / a[col][col];
    for (auto& v : a[col]) v *= inv;
    for (auto& v : rhs[col]) v *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col].numerator() == 0) continue;
      const Rational f = a[r][col];
      for (std::size_t c = 0; c < n; ++c) a[r][c] -= f * a[col][c];
      for (std::size_t c = 0; c < rhs[r].size(); ++c) rhs[r][c] -= f * rhs[col][c];
    }
  }
  return true;
}

}  // namespace

char axis_name(Axis a)
{
  return "xyz"[static_cast<int>(a)];
}

Axis axis_from_char(char c)
{
  switch (c) {
    case 'x': return Axis::x;
    case 'y': return Axis::y;
    case 'z': return Axis::z;
    default: throw std::invalid_argument(std::string("unknown axis label '") + c + "'");
  }
}

std::string_view reduction_name(Reduction r)
{
  return r == Reduction::planar ? "planar" : "full3d";
}

Reduction reduction_from_string(std::string_view s)
{
  if (s == "planar") return Reduction::planar;
  if (s == "full3d") return Reduction::full3d;
  throw std::invalid_argument("unknown reduction '" + std::string(s) + "' (expected planar or full3d)");
}

MultiIndex::MultiIndex(int nx, int ny, int nz) : counts_{nx, ny, nz}
{
  if (nx < 0 || ny < 0 || nz < 0) throw std::invalid_argument("negative axis count in MultiIndex");
}

MultiIndex MultiIndex::parse(std::string_view labels)
{
  MultiIndex t;
  for (char c : labels) t.counts_[static_cast<int>(axis_from_char(c))] += 1;
  return t;
}

MultiIndex MultiIndex::from_tuple(std::span<const Axis> tuple)
{
  MultiIndex t;
  for (Axis a : tuple) t.counts_[static_cast<int>(a)] += 1;
  return t;
}

std::string MultiIndex::str() const
{
  std::string s;
  s.append(counts_[0], 'x');
  s.append(counts_[1], 'y');
  s.append(counts_[2], 'z');
  return s;
}

MultiIndex MultiIndex::with(Axis a, int extra) const
{
  MultiIndex t = *this;
  t.counts_[static_cast<int>(a)] += extra;
  return t;
}

std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b)
{
  if (auto c = a.count(Axis::z) <=> b.count(Axis::z); c != 0) return c;
  return a.str() <=> b.str();
}

long long multiplicity(const MultiIndex& t)
{
  return factorial(t.rank()) /
         (factorial(t.count(Axis::x)) * factorial(t.count(Axis::y)) * factorial(t.count(Axis::z)));
}

Parity parity(const MultiIndex& t, int /*radial_index*/, Axis axis)
{
  return t.count(axis) % 2 == 1 ? Parity::odd : Parity::even;
}

std::vector<MultiIndex> all_multisets(int rank)
{
  std::vector<MultiIndex> out;
  for (int nz = 0; nz <= rank; ++nz)
    for (int nx = rank - nz; nx >= 0; --nx) out.emplace_back(nx, rank - nz - nx, nz);
  std::sort(out.begin(), out.end());
  return out;
}

long long full_tuple_count(int rank)
{
  return pow3(rank);
}

std::vector<Axis> full_tuple(int rank, long long index)
{
  std::vector<Axis> t(rank);
  for (int k = rank - 1; k >= 0; --k) {
    t[k] = static_cast<Axis>(index % 3);
    index /= 3;
  }
  return t;
}

long long full_tuple_index(std::span<const Axis> tuple)
{
  long long index = 0;
  for (Axis a : tuple) index = 3 * index + static_cast<int>(a);
  return index;
}

std::vector<MultiIndex> independent_components(int rank, Reduction reduction)
{
  if (rank < 0) throw std::invalid_argument("negative tensor rank");
  std::vector<MultiIndex> out;
  for (const auto& t : all_multisets(rank)) {
    const int nz = t.count(Axis::z);
    if (nz == 0 || (nz == 1 && reduction == Reduction::full3d)) out.push_back(t);
  }
  return out;
}

int ComponentBasis::multiset_row(const MultiIndex& t) const
{
  const auto all = all_multisets(rank);
  const auto it = std::find(all.begin(), all.end(), t);
  if (t.rank() != rank || it == all.end()) throw std::out_of_range("multiset not of rank " + std::to_string(rank));
  return static_cast<int>(it - all.begin());
}

ComponentBasis expansion_matrix(int rank, Reduction reduction)
{
  if (rank < 0) throw std::invalid_argument("negative tensor rank");
  const auto multisets = all_multisets(rank);
  const auto independent3d = independent_components(rank, Reduction::full3d);
  const int n_all = static_cast<int>(multisets.size());
  const int n_ind = static_cast<int>(independent3d.size());

  std::vector<int> ind_pos, dep_pos;
  for (int k = 0; k < n_all; ++k) {
    const bool is_ind = std::find(independent3d.begin(), independent3d.end(), multisets[k]) != independent3d.end();
    (is_ind ? ind_pos : dep_pos).push_back(k);
  }

  // Values of every multiset in terms of the independent ones (rows: multisets).
  std::vector<std::vector<Rational>> value(n_all, std::vector<Rational>(n_ind, Rational(0)));
  for (int c = 0; c < n_ind; ++c) value[ind_pos[c]][c] = 1;

  if (!dep_pos.empty()) {
    // One trace constraint per multiset m of rank n-2: sum_j T(m + jj) = 0.
    const auto contracted = all_multisets(rank - 2);
    if (contracted.size() != dep_pos.size())
      throw std::logic_error("trace constraint count does not match dependent component count");
    const std::size_t nd = dep_pos.size();
    std::vector<std::vector<Rational>> cdep(nd, std::vector<Rational>(nd, Rational(0)));
    std::vector<std::vector<Rational>> rhs(nd, std::vector<Rational>(n_ind, Rational(0)));
    for (std::size_t r = 0; r < nd; ++r) {
      for (Axis j : {Axis::x, Axis::y, Axis::z}) {
        const MultiIndex target = contracted[r].with(j, 2);
        const int k = static_cast<int>(std::find(multisets.begin(), multisets.end(), target) - multisets.begin());
        if (auto it = std::find(dep_pos.begin(), dep_pos.end(), k); it != dep_pos.end()) {
          cdep[r][it - dep_pos.begin()] += 1;
        } else {
          const auto ic = std::find(ind_pos.begin(), ind_pos.end(), k) - ind_pos.begin();
          rhs[r][ic] -= 1;
        }
      }
    }
    if (!solve_exact(cdep, rhs))
      throw std::logic_error("independent component selection is not a coordinate chart at rank " +
                             std::to_string(rank));
    for (std::size_t r = 0; r < nd; ++r) value[dep_pos[r]] = rhs[r];
  }

  ComponentBasis basis;
  basis.rank = rank;
  basis.reduction = reduction;
  basis.independent = independent_components(rank, reduction);

  std::vector<int> columns;
  for (const auto& t : basis.independent)
    columns.push_back(static_cast<int>(std::find(independent3d.begin(), independent3d.end(), t) - independent3d.begin()));

  basis.multiset_expansion.resize(n_all, static_cast<Eigen::Index>(columns.size()));
  for (int r = 0; r < n_all; ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c)
      basis.multiset_expansion(r, c) = boost::rational_cast<double>(value[r][columns[c]]);
  }

  const long long n_full = full_tuple_count(rank);
  basis.expansion.resize(n_full, basis.multiset_expansion.cols());
  for (long long k = 0; k < n_full; ++k) {
    const auto tuple = full_tuple(rank, k);
    const auto t = MultiIndex::from_tuple(tuple);
    const int r = static_cast<int>(std::find(multisets.begin(), multisets.end(), t) - multisets.begin());
    basis.expansion.row(k) = basis.multiset_expansion.row(r);
  }
  return basis;
}

Eigen::MatrixXd trace_contraction(int rank)
{
  if (rank < 2) return Eigen::MatrixXd::Zero(0, full_tuple_count(rank));
  const long long n_out = full_tuple_count(rank - 2);
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n_out, full_tuple_count(rank));
  for (long long k = 0; k < n_out; ++k) {
    const auto rest = full_tuple(rank - 2, k);
    for (Axis j : {Axis::x, Axis::y, Axis::z}) {
      std::vector<Axis> t{j, j};
      t.insert(t.end(), rest.begin(), rest.end());
      c(k, full_tuple_index(t)) += 1.0;
    }
  }
  return c;
}

}  // namespace momentbc
