#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace crsched {

enum class UserType : std::uint8_t { Primary, Secondary };

struct UserId {
  UserType type = UserType::Primary;
  int index = 0;

  static constexpr UserId pu(int i) { return {UserType::Primary, i}; }
  static constexpr UserId su(int i) { return {UserType::Secondary, i}; }

  auto operator<=>(const UserId&) const = default;
};

// State of one resource block: free, or busy for a specific PU or SU.
struct RbOccupancy {
  enum class Kind : std::uint8_t { Free, BusyPu, BusySu };

  Kind kind = Kind::Free;
  int owner = -1;

  static constexpr RbOccupancy free() { return {}; }
  static constexpr RbOccupancy busy(UserId user) {
    return {user.type == UserType::Primary ? Kind::BusyPu : Kind::BusySu, user.index};
  }

  bool is_free() const { return kind == Kind::Free; }
  bool is_owned_by(UserId user) const { return !is_free() && *this == busy(user); }

  bool operator==(const RbOccupancy&) const = default;
};

struct CellConfig {
  int num_rb = 75;
  int num_pu = 5;
  int num_su = 5;
  // Throughput one RB contributes in one TTI.
  double rb_capacity_units = 1.0;

  // Throws ConfigInvalid.
  void validate() const;
  double total_capacity() const { return num_rb * rb_capacity_units; }
};

// Occupancy of the cell's resource-block grid during one TTI.
class SpectrumState {
 public:
  static constexpr double kDefaultRbBandwidthMhz = 0.2;

  explicit SpectrumState(int num_rb = 75, double rb_bandwidth_mhz = kDefaultRbBandwidthMhz);

  int size() const { return static_cast<int>(blocks_.size()); }
  double rb_bandwidth_mhz() const { return rb_bandwidth_mhz_; }
  const RbOccupancy& block(int index) const { return blocks_.at(index); }
  std::span<const RbOccupancy> blocks() const { return blocks_; }

  int count_free() const;
  int count_owned(UserId user) const;

  // Ascending indices of free blocks.
  std::vector<int> free_indices() const;

  // Marks every block free. Length and bandwidth are kept.
  void reset();

  // Gives `indices` to `owner`. All-or-nothing: throws AllocationConflict
  // (and leaves the state untouched) if any index is busy or out of range.
  void allocate(UserId owner, std::span<const int> indices);

  bool operator==(const SpectrumState&) const = default;

 private:
  std::vector<RbOccupancy> blocks_;
  double rb_bandwidth_mhz_;
};

double throughput(const SpectrumState& state, UserId user, const CellConfig& config);

}  // namespace crsched
