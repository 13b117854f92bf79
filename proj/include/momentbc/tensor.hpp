#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace momentbc {

enum class Axis : std::uint8_t { x = 0, y = 1, z = 2 };

enum class Reduction { full3d, planar };

enum class Parity { even, odd };

char axis_name(Axis a);
Axis axis_from_char(char c);
std::string_view reduction_name(Reduction r);
Reduction reduction_from_string(std::string_view s);

/// Symmetric tensor index stored as a multiset (how many x, y and z labels).
/// The rank-0 index is the empty multiset.
class MultiIndex
{
 public:
  MultiIndex() = default;
  MultiIndex(int nx, int ny, int nz);

  /// Accepts any ordering of the labels, e.g. "yx" == "xy".  "" is the scalar.
  static MultiIndex parse(std::string_view labels);
  static MultiIndex from_tuple(std::span<const Axis> tuple);

  int rank() const { return counts_[0] + counts_[1] + counts_[2]; }
  int count(Axis a) const { return counts_[static_cast<int>(a)]; }
  const std::array<int, 3>& counts() const { return counts_; }

  /// Sorted label string, x < y < z.  Empty for the scalar.
  std::string str() const;

  MultiIndex with(Axis a, int extra = 1) const;

  bool operator==(const MultiIndex&) const = default;

  /// Ordering used for independent components: z-count first, then
  /// lexicographic on the sorted label string.
  friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b);

 private:
  std::array<int, 3> counts_{0, 0, 0};
};

/// Number of distinct orderings of the multiset, n!/(nx! ny! nz!).
long long multiplicity(const MultiIndex& t);

/// Parity of a basis function under xi_axis -> -xi_axis.  The radial factor is
/// even in every component, so the radial index does not enter.
Parity parity(const MultiIndex& t, int radial_index, Axis axis);

/// All multisets of the given rank in canonical order.
std::vector<MultiIndex> all_multisets(int rank);

/// Full tuples are enumerated in lexicographic order; tuple k of rank n has
/// digits (base 3, most significant first) naming the axes.
long long full_tuple_count(int rank);
std::vector<Axis> full_tuple(int rank, long long index);
long long full_tuple_index(std::span<const Axis> tuple);

std::vector<MultiIndex> independent_components(int rank, Reduction reduction);

/// Coordinates of the symmetric trace-free tensors of one rank.
struct ComponentBasis
{
  int rank = 0;
  Reduction reduction = Reduction::full3d;
  std::vector<MultiIndex> independent;
  /// Rows: every multiset of the rank (see all_multisets), columns: independent.
  Eigen::MatrixXd multiset_expansion;
  /// Rows: every full tuple (3^rank of them), columns: independent.
  Eigen::MatrixXd expansion;

  /// Row of `multiset_expansion` holding the given multiset.
  int multiset_row(const MultiIndex& t) const;
};

/// Solves the trace constraints exactly in rational arithmetic.  Throws
/// std::logic_error when the independent set is not a coordinate chart.
ComponentBasis expansion_matrix(int rank, Reduction reduction);

/// Rows: full tuples of rank n-2, columns: full tuples of rank n.  Contracts the
/// first two slots; E^T-compatible trace check is contraction * expansion == 0.
Eigen::MatrixXd trace_contraction(int rank);

}  // namespace momentbc
