#include "vlstore/core.hpp"

#include <algorithm>

namespace vlstore {

void validate_sparse_deltas(const SparseDeltaList& deltas) {
  std::uint64_t min_next = 0;
  bool first = true;
  for (const auto& d : deltas) {
    if (d.data.empty()) {
      throw LengthError("sparse delta entry has empty data");
    }
    if (!first && d.offset < min_next) {
      throw DeltaListError("sparse delta entries must be sorted by offset and "
                           "non-overlapping");
    }
    min_next = static_cast<std::uint64_t>(d.offset) + d.data.size();
    if (min_next > kMaxStateLength) {
      throw LengthError("sparse delta extends state past the maximum length");
    }
    first = false;
  }
}

std::uint32_t overlaid_length(std::uint32_t base_length,
                              const SparseDeltaList& deltas) {
  std::uint64_t len = base_length;
  if (!deltas.empty()) {
    const auto& last = deltas.back();
    std::uint64_t end = static_cast<std::uint64_t>(last.offset) + last.data.size();
    if (end > len) len = end;
  }
  return static_cast<std::uint32_t>(len);
}

Vector apply_sparse(std::span<const Slot> base, const SparseDeltaList& deltas) {
  const std::uint32_t n =
      overlaid_length(static_cast<std::uint32_t>(base.size()), deltas);
  Vector out(n, 0);
  std::copy(base.begin(), base.end(), out.begin());
  for (const SparseDelta& d : deltas) {
    std::copy(d.data.begin(), d.data.end(), out.begin() + d.offset);
  }
  return out;
}

}  // namespace vlstore
