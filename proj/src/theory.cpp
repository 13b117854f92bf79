#include "momentbc/theory.hpp"

#include <cctype>
#include <stdexcept>

namespace momentbc {

int MomentTheory::size() const
{
  int total = 0;
  for (int n = 0; n <= max_rank(); ++n) {
    const int per_rank = reduction == Reduction::planar ? n + 1 : 2 * n + 1;
    total += per_rank * radial_counts[n];
  }
  return total;
}

void MomentTheory::validate() const
{
  if (radial_counts.empty()) throw std::invalid_argument("theory '" + name + "' has no tensor ranks");
  for (std::size_t n = 0; n < radial_counts.size(); ++n)
    if (radial_counts[n] < 1)
      throw std::invalid_argument("theory '" + name + "': M_" + std::to_string(n) + " must be >= 1");
  if (max_rank() > 12) throw std::invalid_argument("theory '" + name + "': tensor rank above 12 is not supported");
}

int grad_moment_count(int total_degree)
{
  const int l = total_degree;
  return (l + 1) * (l + 2) * (l + 3) / 6;
}

MomentTheory grad_theory(int total_degree, Reduction reduction)
{
  if (total_degree < 2) throw std::invalid_argument("Grad theories need total degree >= 2");
  MomentTheory t;
  t.name = "G" + std::to_string(grad_moment_count(total_degree));
  t.reduction = reduction;
  for (int n = 0; n <= total_degree; ++n) t.radial_counts.push_back((total_degree - n) / 2 + 1);
  return t;
}

MomentTheory custom_theory(std::vector<int> radial_counts, Reduction reduction, std::string name)
{
  MomentTheory t{std::move(name), std::move(radial_counts), reduction};
  t.validate();
  return t;
}

MomentTheory theory_from_name(const std::string& name, Reduction reduction)
{
  if (name.size() < 2 || (name[0] != 'G' && name[0] != 'g'))
    throw std::invalid_argument("unknown theory '" + name + "' (expected G<count>, e.g. G20)");
  int count = 0;
  for (std::size_t k = 1; k < name.size(); ++k) {
    if (!std::isdigit(static_cast<unsigned char>(name[k])))
      throw std::invalid_argument("unknown theory '" + name + "' (expected G<count>, e.g. G20)");
    count = 10 * count + (name[k] - '0');
    if (count > 100000) break;
  }
  for (int l = 2; grad_moment_count(l) <= count; ++l)
    if (grad_moment_count(l) == count) return grad_theory(l, reduction);
  throw std::invalid_argument("'" + name + "' is not a Grad moment count (10, 20, 35, 56, 84, 120, ...); " +
                              "use --theory custom --m M0,M1,... for other resolutions");
}

}  // namespace momentbc
