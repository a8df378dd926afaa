#include "mixsim/mixture.hpp"

#include <bit>
#include <istream>
#include <ostream>
#include <string>

#include "mixsim/error.hpp"

namespace mixsim {

namespace {

constexpr char kMagic[4] = {'M', 'I', 'X', '1'};

std::uint64_t word_count(std::uint32_t kbits) {
  return ((std::uint64_t{1} << kbits) + 63) / 64;
}

}  // namespace

Mixture::Mixture(std::uint32_t kbits, std::uint32_t kbits_cap)
    : kbits_(kbits) {
  if (kbits > kbits_cap) {
    throw Error(Errc::capacity, "kbits " + std::to_string(kbits) +
                                    " exceeds the cap of " +
                                    std::to_string(kbits_cap));
  }
  store_.assign(word_count(kbits_), 0);
}

void Mixture::check_value(std::uint64_t value) const {
  if (value >= universe()) {
    throw Error(Errc::value_out_of_universe,
                "value " + std::to_string(value) + " outside universe [0, 2^" +
                    std::to_string(kbits_) + ")");
  }
}

void Mixture::insert(std::uint64_t value) {
  check_value(value);
  store_[value / 64] |= std::uint64_t{1} << (value % 64);
}

bool Mixture::contains(std::uint64_t value) const {
  check_value(value);
  return (store_[value / 64] >> (value % 64)) & 1;
}

std::uint64_t Mixture::rank(std::uint64_t value) const {
  if (value > universe()) {
    throw Error(Errc::value_out_of_universe,
                "rank argument " + std::to_string(value) + " beyond 2^" +
                    std::to_string(kbits_));
  }
  std::uint64_t count = 0;
  for (std::uint64_t w = 0; w < value / 64; ++w) {
    count += std::popcount(store_[w]);
  }
  if (const std::uint64_t rem = value % 64; rem != 0) {
    count += std::popcount(store_[value / 64] & ((std::uint64_t{1} << rem) - 1));
  }
  return count;
}

std::uint64_t Mixture::select(std::uint64_t k) const {
  std::uint64_t skipped = 0;
  for (std::uint64_t w = 0; w < store_.size(); ++w) {
    const auto ones = static_cast<std::uint64_t>(std::popcount(store_[w]));
    if (skipped + ones > k) {
      std::uint64_t word = store_[w];
      for (std::uint64_t seen = skipped;; ++seen) {
        const int bit = std::countr_zero(word);
        if (seen == k) return w * 64 + static_cast<std::uint64_t>(bit);
        word &= word - 1;
      }
    }
    skipped += ones;
  }
  throw Error(Errc::select_out_of_range,
              "select(" + std::to_string(k) + ") but cardinality is " +
                  std::to_string(skipped));
}

std::uint64_t Mixture::cardinality() const {
  std::uint64_t count = 0;
  for (std::uint64_t w : store_) count += std::popcount(w);
  return count;
}

std::vector<std::uint64_t> Mixture::members() const {
  std::vector<std::uint64_t> out;
  for (std::uint64_t w = 0; w < store_.size(); ++w) {
    std::uint64_t word = store_[w];
    while (word != 0) {
      out.push_back(w * 64 + static_cast<std::uint64_t>(std::countr_zero(word)));
      word &= word - 1;
    }
  }
  return out;
}

void Mixture::serialize(std::ostream& out) const {
  out.write(kMagic, 4);
  for (int i = 0; i < 4; ++i) {
    out.put(static_cast<char>((kbits_ >> (8 * i)) & 0xFF));
  }
  const std::uint64_t payload_bytes = (universe() + 7) / 8;
  for (std::uint64_t b = 0; b < payload_bytes; ++b) {
    out.put(static_cast<char>((store_[b / 8] >> (8 * (b % 8))) & 0xFF));
  }
  if (!out) throw Error(Errc::io_error, "mixture write failed");
}

Mixture Mixture::deserialize(std::istream& in, std::uint32_t kbits_cap) {
  char magic[4];
  if (!in.read(magic, 4)) {
    throw Error(Errc::io_error, "mixture read failed: truncated header");
  }
  if (!std::equal(magic, magic + 4, kMagic)) {
    throw Error(Errc::bad_format, "bad magic, expected MIX1");
  }
  std::uint32_t kbits = 0;
  for (int i = 0; i < 4; ++i) {
    const int byte = in.get();
    if (byte < 0) {
      throw Error(Errc::io_error, "mixture read failed: truncated kbits");
    }
    kbits |= static_cast<std::uint32_t>(byte) << (8 * i);
  }
  Mixture m(kbits, kbits_cap);
  const std::uint64_t payload_bytes = (m.universe() + 7) / 8;
  for (std::uint64_t b = 0; b < payload_bytes; ++b) {
    const int byte = in.get();
    if (byte < 0) {
      throw Error(Errc::io_error, "mixture read failed: truncated payload");
    }
    m.store_[b / 8] |= static_cast<std::uint64_t>(byte) << (8 * (b % 8));
  }
  // Padding bits in the last byte are ignored.
  if (const std::uint64_t tail = m.universe() % 64; tail != 0) {
    m.store_.back() &= (std::uint64_t{1} << tail) - 1;
  }
  return m;
}

void Mixture::to_subarray(Subarray& sub, Layout layout) const {
  to_subarray(sub, layout, Subarray::first_data_row());
}

std::uint32_t Mixture::placement_rows(std::uint32_t width) const {
  return static_cast<std::uint32_t>((universe() + width - 1) / width);
}

void Mixture::to_subarray(Subarray& sub, Layout layout, RowId base) const {
  const std::uint64_t u = universe();
  const std::uint32_t w = sub.width();
  if (base < Subarray::first_data_row()) {
    throw Error(Errc::capacity,
                "placement base row " + std::to_string(base) +
                    " is below the DATA region");
  }
  std::uint64_t rows_needed;
  std::uint64_t cols_needed;
  if (layout == Layout::Horizontal) {
    rows_needed = (u + w - 1) / w;
    cols_needed = std::min<std::uint64_t>(u, w);
  } else {
    rows_needed = std::min<std::uint64_t>(u, w);
    cols_needed = (u + w - 1) / w;
  }
  if (base + rows_needed > sub.rows() || cols_needed > w) {
    throw Error(Errc::capacity,
                "placement needs " + std::to_string(rows_needed) +
                    " rows from row " + std::to_string(base) + " and " +
                    std::to_string(cols_needed) + " columns; subarray is " +
                    std::to_string(sub.rows()) + "x" + std::to_string(w));
  }
  for (std::uint64_t r = 0; r < rows_needed; ++r) {
    RowBits bits(w);
    for (std::uint64_t c = 0; c < w; ++c) {
      const std::uint64_t v =
          layout == Layout::Horizontal ? r * w + c : c * w + r;
      if (v < u && contains(v)) bits.set_bit(c, true);
    }
    sub.exec(HostWriteOp{static_cast<RowId>(base + r), std::move(bits)});
  }
}

Mixture Mixture::from_subarray(const Subarray& sub, std::uint32_t kbits,
                               Layout layout) {
  return from_subarray(sub, kbits, layout, Subarray::first_data_row());
}

Mixture Mixture::from_subarray(const Subarray& sub, std::uint32_t kbits,
                               Layout layout, RowId base) {
  Mixture m(kbits);
  const std::uint64_t u = m.universe();
  const std::uint32_t w = sub.width();
  const std::uint64_t rows_needed = layout == Layout::Horizontal
                                        ? (u + w - 1) / w
                                        : std::min<std::uint64_t>(u, w);
  if (base < Subarray::first_data_row() || base + rows_needed > sub.rows()) {
    throw Error(Errc::capacity,
                "readback needs rows " + std::to_string(base) + ".." +
                    std::to_string(base + rows_needed - 1) + "; subarray has " +
                    std::to_string(sub.rows()));
  }
  for (std::uint64_t v = 0; v < u; ++v) {
    const std::uint64_t r = layout == Layout::Horizontal ? v / w : v % w;
    const std::uint64_t c = layout == Layout::Horizontal ? v % w : v / w;
    if (sub.bit(static_cast<RowId>(base + r), c)) m.insert(v);
  }
  return m;
}

namespace {

void check_same_universe(const Mixture& a, const Mixture& b) {
  if (a.kbits() != b.kbits()) {
    throw Error(Errc::universe_mismatch,
                "universe mismatch: 2^" + std::to_string(a.kbits()) + " vs 2^" +
                    std::to_string(b.kbits()));
  }
}

}  // namespace

Mixture set_union(const Mixture& a, const Mixture& b) {
  check_same_universe(a, b);
  Mixture out = a;
  for (std::size_t i = 0; i < out.store_.size(); ++i) {
    out.store_[i] |= b.store_[i];
  }
  return out;
}

Mixture set_intersection(const Mixture& a, const Mixture& b) {
  check_same_universe(a, b);
  Mixture out = a;
  for (std::size_t i = 0; i < out.store_.size(); ++i) {
    out.store_[i] &= b.store_[i];
  }
  return out;
}

Mixture set_difference(const Mixture& a, const Mixture& b) {
  check_same_universe(a, b);
  Mixture out = a;
  for (std::size_t i = 0; i < out.store_.size(); ++i) {
    out.store_[i] &= ~b.store_[i];
  }
  return out;
}

VerticalCursor::VerticalCursor(const Mixture& m, Direction dir)
    : mixture_(&m),
      dir_(dir),
      remaining_(m.universe()),
      pos_(dir == Direction::Forward ? 0 : m.universe() - 1) {}

std::optional<std::pair<std::uint64_t, bool>> VerticalCursor::next() {
  if (remaining_ == 0) return std::nullopt;
  const std::pair<std::uint64_t, bool> out{pos_, mixture_->contains(pos_)};
  --remaining_;
  if (remaining_ != 0) pos_ = dir_ == Direction::Forward ? pos_ + 1 : pos_ - 1;
  return out;
}

}  // namespace mixsim
