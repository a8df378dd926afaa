#include "mixsim/row_bits.hpp"

#include <bit>

#include "mixsim/error.hpp"

namespace mixsim {

namespace {

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

RowBits::RowBits(std::size_t width)
    : width_(width), words_((width + 63) / 64, 0) {}

RowBits RowBits::from_hex(std::string_view hex, std::size_t width) {
  const std::size_t digits = (width + 3) / 4;
  if (hex.size() != digits) {
    throw Error(Errc::trace_parse,
                "hex word '" + std::string(hex) + "' has " +
                    std::to_string(hex.size()) + " digits, expected " +
                    std::to_string(digits) + " for width " +
                    std::to_string(width));
  }
  RowBits out(width);
  // Digit 0 is the most significant nibble; its top bit is column 0.
  for (std::size_t d = 0; d < digits; ++d) {
    const int v = hex_digit(hex[d]);
    if (v < 0) {
      throw Error(Errc::trace_parse,
                  std::string("bad hex digit '") + hex[d] + "'");
    }
    for (int b = 3; b >= 0; --b) {
      if (!((v >> b) & 1)) continue;
      const std::size_t value_bit = 4 * (digits - 1 - d) + b;
      if (value_bit >= width) {
        throw Error(Errc::trace_parse, "hex word '" + std::string(hex) +
                                           "' has bits beyond width " +
                                           std::to_string(width));
      }
      out.set_bit(width - 1 - value_bit, true);
    }
  }
  return out;
}

RowBits RowBits::from_word(std::uint64_t word, std::size_t width) {
  RowBits out(width);
  if (width < 64) word &= (std::uint64_t{1} << width) - 1;
  if (!out.words_.empty()) out.words_[0] = word;
  return out;
}

std::string RowBits::to_hex() const {
  const std::size_t digits = (width_ + 3) / 4;
  std::string out(digits, '0');
  for (std::size_t col = 0; col < width_; ++col) {
    if (!bit(col)) continue;
    const std::size_t value_bit = width_ - 1 - col;
    const std::size_t d = digits - 1 - value_bit / 4;
    const int v = hex_digit(out[d]) | (1 << (value_bit % 4));
    out[d] = "0123456789ABCDEF"[v];
  }
  return out;
}

std::uint64_t RowBits::to_word() const {
  if (width_ > 64) {
    throw Error(Errc::width_mismatch,
                "row of width " + std::to_string(width_) +
                    " does not fit one machine word");
  }
  return words_.empty() ? 0 : words_[0];
}

bool RowBits::bit(std::size_t col) const {
  return (words_[col / 64] >> (col % 64)) & 1;
}

void RowBits::set_bit(std::size_t col, bool value) {
  const std::uint64_t mask = std::uint64_t{1} << (col % 64);
  if (value) {
    words_[col / 64] |= mask;
  } else {
    words_[col / 64] &= ~mask;
  }
}

std::size_t RowBits::popcount() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

}  // namespace mixsim
