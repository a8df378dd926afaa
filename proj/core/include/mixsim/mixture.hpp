#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "mixsim/subarray.hpp"

namespace mixsim {

// Which access order a substrate placement serves. Horizontal packs values
// along columns (value v -> data row v/W, column v%W); vertical is the
// transpose of that grid (row v%W, column v/W), so walking one column in
// row order enumerates consecutive values.
enum class Layout { Horizontal, Vertical };

// A set over the universe [0, 2^K) stored as one bit per value: position IS
// the value, so the same bits serve word-at-a-time set algebra through the
// horizontal word view and per-value membership queries through the vertical
// cursor, with no layout transformation in between.
//
// Mixture is a plain value; concurrent reads are safe, mutation needs
// exclusive access.
class Mixture {
 public:
  static constexpr std::uint32_t kWordBits = 64;
  static constexpr std::uint32_t kDefaultKbitsCap = 24;

  explicit Mixture(std::uint32_t kbits,
                   std::uint32_t kbits_cap = kDefaultKbitsCap);

  std::uint32_t kbits() const { return kbits_; }
  std::uint64_t universe() const { return std::uint64_t{1} << kbits_; }

  void insert(std::uint64_t value);  // idempotent
  bool contains(std::uint64_t value) const;

  // Number of members strictly below `value`; value == universe() is legal.
  std::uint64_t rank(std::uint64_t value) const;
  // The (k+1)-th smallest member; select(rank(v)) == v for every member v.
  std::uint64_t select(std::uint64_t k) const;

  std::uint64_t cardinality() const;
  std::vector<std::uint64_t> members() const;

  // Horizontal view: word w covers values [w*64, w*64+64), LSB first.
  std::span<const std::uint64_t> words() const { return store_; }

  // Serialized form: "MIX1", K as 4-byte little-endian, then ceil(2^K/8)
  // payload bytes with value v at byte v/8, bit v%8. Byte-exact round trip.
  void serialize(std::ostream& out) const;
  static Mixture deserialize(std::istream& in,
                             std::uint32_t kbits_cap = kDefaultKbitsCap);

  // Materializes the store onto DATA rows starting at `base` (default: the
  // first DATA row). Placement goes through host-write micro-ops.
  void to_subarray(Subarray& sub, Layout layout) const;
  void to_subarray(Subarray& sub, Layout layout, RowId base) const;
  static Mixture from_subarray(const Subarray& sub, std::uint32_t kbits,
                               Layout layout);
  static Mixture from_subarray(const Subarray& sub, std::uint32_t kbits,
                               Layout layout, RowId base);
  // Rows a horizontal placement occupies on a subarray of width `width`.
  std::uint32_t placement_rows(std::uint32_t width) const;

  friend bool operator==(const Mixture&, const Mixture&) = default;

  // Set algebra over equal universes, computed word-at-a-time on the
  // horizontal view; no per-element loop.
  friend Mixture set_union(const Mixture& a, const Mixture& b);
  friend Mixture set_intersection(const Mixture& a, const Mixture& b);
  friend Mixture set_difference(const Mixture& a, const Mixture& b);

 private:
  void check_value(std::uint64_t value) const;

  std::uint32_t kbits_;
  std::vector<std::uint64_t> store_;
};

// Query-order access: yields (value, present) for each value exactly once,
// in value order or reversed (reading the map bottom to top).
class VerticalCursor {
 public:
  enum class Direction { Forward, Reverse };

  explicit VerticalCursor(const Mixture& m,
                          Direction dir = Direction::Forward);

  std::optional<std::pair<std::uint64_t, bool>> next();

 private:
  const Mixture* mixture_;
  Direction dir_;
  std::uint64_t remaining_;
  std::uint64_t pos_;
};

}  // namespace mixsim
