#include "mixsim/subarray.hpp"

#include <algorithm>
#include <string>

namespace mixsim {

namespace {

std::string row_str(RowId r) { return std::to_string(r); }

}  // namespace

void CostReport::add(const MicroOp& op) {
  switch (op.index()) {
    case 0: ++copy_count; break;
    case 1: ++tra_count; break;
    case 2: ++not_count; break;
    default: ++hostio_count; break;
  }
}

Subarray::Subarray(std::uint32_t rows, std::uint32_t width)
    : rows_(rows), width_(width), words_per_row_((width + 63) / 64) {
  if (rows < 6 || width < 1) {
    throw Error(Errc::dimension_too_small,
                "subarray needs rows >= 6 and width >= 1, got " +
                    std::to_string(rows) + "x" + std::to_string(width));
  }
  cells_.assign(std::size_t{rows_} * words_per_row_, 0);
  // CONST1 holds all ones across the row width; tail bits stay zero.
  std::uint64_t* c1 = words_of(const1_row());
  for (std::uint32_t w = 0; w < words_per_row_; ++w) c1[w] = ~std::uint64_t{0};
  const std::uint32_t tail = width_ % 64;
  if (tail != 0) c1[words_per_row_ - 1] = (std::uint64_t{1} << tail) - 1;
}

RowGroup Subarray::group(RowId row) const {
  check_row(row);
  if (row == const0_row()) return RowGroup::Const0;
  if (row == const1_row()) return RowGroup::Const1;
  if (row < first_data_row()) return RowGroup::Temp;
  return RowGroup::Data;
}

bool Subarray::is_writable(RowId row) const {
  return row != const0_row() && row != const1_row();
}

bool Subarray::bit(RowId row, std::size_t col) const {
  check_row(row);
  return (words_of(row)[col / 64] >> (col % 64)) & 1;
}

RowBits Subarray::row(RowId row) const {
  check_row(row);
  RowBits out(width_);
  std::copy_n(words_of(row), words_per_row_, out.words().begin());
  return out;
}

std::span<const std::uint64_t> Subarray::row_words(RowId row) const {
  check_row(row);
  return {words_of(row), words_per_row_};
}

void Subarray::check_row(RowId row) const {
  if (row >= rows_) {
    throw Error(Errc::row_out_of_range, "row " + row_str(row) +
                                            " out of range, subarray has " +
                                            std::to_string(rows_) + " rows");
  }
}

void Subarray::check_dst(RowId row) const {
  check_row(row);
  if (!is_writable(row)) {
    throw Error(Errc::const_row_write,
                "row " + row_str(row) + " is a constant row");
  }
}

void Subarray::validate(const MicroOp& op) const {
  if (const auto* c = std::get_if<CopyOp>(&op)) {
    check_row(c->src);
    check_dst(c->dst);
    if (c->src == c->dst) {
      throw Error(Errc::aliased_operands,
                  "COPY src and dst are both row " + row_str(c->src));
    }
  } else if (const auto* t = std::get_if<TraOp>(&op)) {
    check_row(t->a);
    check_row(t->b);
    check_row(t->c);
    if (t->a == t->b || t->b == t->c || t->a == t->c) {
      throw Error(Errc::aliased_operands,
                  "TRA operands must be pairwise distinct, got " +
                      row_str(t->a) + " " + row_str(t->b) + " " +
                      row_str(t->c));
    }
    // TRA overwrites all three rows, so each needs a writable destination.
    check_dst(t->a);
    check_dst(t->b);
    check_dst(t->c);
  } else if (const auto* n = std::get_if<NotOp>(&op)) {
    check_row(n->src);
    check_dst(n->dst);
    if (n->src == n->dst) {
      throw Error(Errc::aliased_operands,
                  "NOT src and dst are both row " + row_str(n->src));
    }
  } else if (const auto* w = std::get_if<HostWriteOp>(&op)) {
    check_dst(w->dst);
    if (w->bits.width() != width_) {
      throw Error(Errc::width_mismatch,
                  "WRITE word width " + std::to_string(w->bits.width()) +
                      " != subarray width " + std::to_string(width_));
    }
  } else {
    check_row(std::get<HostReadOp>(op).src);
  }
}

std::optional<RowBits> Subarray::exec(const MicroOp& op) {
  validate(op);
  if (const auto* c = std::get_if<CopyOp>(&op)) {
    std::copy_n(words_of(c->src), words_per_row_, words_of(c->dst));
  } else if (const auto* t = std::get_if<TraOp>(&op)) {
    std::uint64_t* a = words_of(t->a);
    std::uint64_t* b = words_of(t->b);
    std::uint64_t* c = words_of(t->c);
    for (std::uint32_t w = 0; w < words_per_row_; ++w) {
      const std::uint64_t maj = (a[w] & b[w]) | (b[w] & c[w]) | (a[w] & c[w]);
      a[w] = maj;
      b[w] = maj;
      c[w] = maj;
    }
  } else if (const auto* n = std::get_if<NotOp>(&op)) {
    const std::uint64_t* src = words_of(n->src);
    std::uint64_t* dst = words_of(n->dst);
    for (std::uint32_t w = 0; w < words_per_row_; ++w) dst[w] = ~src[w];
    const std::uint32_t tail = width_ % 64;
    if (tail != 0) dst[words_per_row_ - 1] &= (std::uint64_t{1} << tail) - 1;
  } else if (const auto* w = std::get_if<HostWriteOp>(&op)) {
    std::copy_n(w->bits.words().begin(), words_per_row_, words_of(w->dst));
  } else {
    return row(std::get<HostReadOp>(op).src);
  }
  return std::nullopt;
}

RunResult Subarray::run(std::span<const MicroOp> program) {
  RunResult result;
  for (std::size_t i = 0; i < program.size(); ++i) {
    try {
      auto read = exec(program[i]);
      if (read) {
        result.reads.push_back(
            {i, std::get<HostReadOp>(program[i]).src, std::move(*read)});
      }
    } catch (const Error& e) {
      throw ProgramError(e.code(),
                         std::string(e.what()) + " (op index " +
                             std::to_string(i) + ")",
                         i);
    }
    result.cost.add(program[i]);
  }
  return result;
}

std::uint64_t* Subarray::words_of(RowId row) {
  return cells_.data() + std::size_t{row} * words_per_row_;
}

const std::uint64_t* Subarray::words_of(RowId row) const {
  return cells_.data() + std::size_t{row} * words_per_row_;
}

}  // namespace mixsim
