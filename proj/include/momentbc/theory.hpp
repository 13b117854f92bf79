#pragma once

#include <string>
#include <vector>

#include "momentbc/tensor.hpp"

namespace momentbc {

/// Velocity-space resolution: radial_counts[n] = M_n radial indices
/// (s = 0 .. M_n - 1) for every tensor rank n = 0 .. max_rank.
struct MomentTheory
{
  std::string name;
  std::vector<int> radial_counts;
  Reduction reduction = Reduction::planar;

  int max_rank() const { return static_cast<int>(radial_counts.size()) - 1; }
  /// Number of independent moments under the reduction.
  int size() const;
  /// Throws std::invalid_argument with a description of the first problem.
  void validate() const;
};

/// Number of Hermite moments of total degree <= total_degree in 3D.
int grad_moment_count(int total_degree);

/// All basis functions of total degree n + 2s <= total_degree; named G<count>.
MomentTheory grad_theory(int total_degree, Reduction reduction);

MomentTheory custom_theory(std::vector<int> radial_counts, Reduction reduction, std::string name = "custom");

/// "G20", "g56", ...  Throws std::invalid_argument for names that are not
/// Grad counts (10, 20, 35, 56, 84, 120, ...).
MomentTheory theory_from_name(const std::string& name, Reduction reduction);

}  // namespace momentbc
