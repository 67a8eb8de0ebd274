#include "crsched/spectrum.hpp"

#include <algorithm>
#include <string>

#include "crsched/errors.hpp"

namespace crsched {

void CellConfig::validate() const {
  if (num_rb < 1) throw ConfigInvalid("num_rb", "must be positive");
  if (num_pu < 1) throw ConfigInvalid("num_pu", "must be positive");
  if (num_su < 0) throw ConfigInvalid("num_su", "must be non-negative");
  if (num_rb < num_pu) throw ConfigInvalid("num_rb", "must be at least num_pu");
  if (!(rb_capacity_units > 0.0)) throw ConfigInvalid("rb_capacity_units", "must be positive");
}

SpectrumState::SpectrumState(int num_rb, double rb_bandwidth_mhz)
    : blocks_(static_cast<std::size_t>(std::max(num_rb, 0))), rb_bandwidth_mhz_(rb_bandwidth_mhz) {}

int SpectrumState::count_free() const {
  return static_cast<int>(std::ranges::count_if(blocks_, &RbOccupancy::is_free));
}

int SpectrumState::count_owned(UserId user) const {
  return static_cast<int>(
      std::ranges::count_if(blocks_, [user](const RbOccupancy& b) { return b.is_owned_by(user); }));
}

std::vector<int> SpectrumState::free_indices() const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i) {
    if (blocks_[i].is_free()) out.push_back(i);
  }
  return out;
}

void SpectrumState::reset() { std::ranges::fill(blocks_, RbOccupancy::free()); }

void SpectrumState::allocate(UserId owner, std::span<const int> indices) {
  for (int i : indices) {
    if (i < 0 || i >= size()) {
      throw AllocationConflict("block " + std::to_string(i) + " is out of range");
    }
    if (!blocks_[i].is_free()) {
      throw AllocationConflict("block " + std::to_string(i) + " is not free");
    }
  }
  // A duplicated index would pass the scan above but still double-book.
  std::vector<int> sorted(indices.begin(), indices.end());
  std::ranges::sort(sorted);
  if (std::ranges::adjacent_find(sorted) != sorted.end()) {
    throw AllocationConflict("duplicate block index in request");
  }
  const auto occupancy = RbOccupancy::busy(owner);
  for (int i : indices) blocks_[i] = occupancy;
}

double throughput(const SpectrumState& state, UserId user, const CellConfig& config) {
  return state.count_owned(user) * config.rb_capacity_units;
}

}  // namespace crsched
