#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mixsim {

// Fixed-width bit string, the value of one subarray row. Bits are indexed by
// column; storage packs column j into word j/64, bit j%64. Hex text follows
// the trace convention: width-padded, most significant hex bit = column 0.
class RowBits {
 public:
  RowBits() = default;
  explicit RowBits(std::size_t width);

  // Hex string of exactly ceil(width/4) digits; bits beyond width must be 0.
  static RowBits from_hex(std::string_view hex, std::size_t width);
  // Low `width` bits of `word`, column j = bit j. Requires width <= 64.
  static RowBits from_word(std::uint64_t word, std::size_t width);

  std::string to_hex() const;
  std::uint64_t to_word() const;  // requires width <= 64

  bool bit(std::size_t col) const;
  void set_bit(std::size_t col, bool value);

  std::size_t width() const { return width_; }
  std::size_t popcount() const;

  std::span<const std::uint64_t> words() const { return words_; }
  std::span<std::uint64_t> words() { return words_; }

  friend bool operator==(const RowBits&, const RowBits&) = default;

 private:
  std::size_t width_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace mixsim
