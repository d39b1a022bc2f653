#ifndef ASG_KSHOT_HPP
#define ASG_KSHOT_HPP

#include <string>
#include <vector>

#include "asg/types.hpp"

namespace asg {

/// Concatenates prototype sets in shot order. Vectors are copied bit-exactly
/// and never deduplicated; provenance records the position of the source set.
template <class Scalar>
PrototypeSet<Scalar> merge_shots(const std::vector<PrototypeSet<Scalar>>& sets) {
  if (sets.empty()) fail(errc::empty_list, "merge_shots: no prototype sets");
  const Index dim = sets.front().dim();
  Index total = 0;
  for (const auto& s : sets) {
    if (s.dim() != dim)
      fail(errc::dim_mismatch, "merge_shots: prototype dimensions disagree");
    total += s.count();
  }

  PrototypeSet<Scalar> merged;
  merged.vectors.resize(total, dim);
  merged.shot.reserve(static_cast<std::size_t>(total));
  Index row = 0;
  for (std::size_t k = 0; k < sets.size(); ++k) {
    merged.vectors.middleRows(row, sets[k].count()) = sets[k].vectors;
    merged.shot.insert(merged.shot.end(), static_cast<std::size_t>(sets[k].count()),
                       static_cast<int>(k));
    row += sets[k].count();
  }
  return merged;
}

}  // namespace asg

#endif  // ASG_KSHOT_HPP
