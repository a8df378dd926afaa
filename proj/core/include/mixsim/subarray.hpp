#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "mixsim/error.hpp"
#include "mixsim/row_bits.hpp"

namespace mixsim {

using RowId = std::uint32_t;

// Fixed row designation scheme: row 0 = CONST0, row 1 = CONST1,
// rows 2..4 = TEMP, everything above = DATA. NEG is reserved for row
// variants the default scheme never assigns.
enum class RowGroup : std::uint8_t { Data, Const0, Const1, Temp, Neg };

struct CopyOp {
  RowId src;
  RowId dst;
  friend bool operator==(const CopyOp&, const CopyOp&) = default;
};

struct TraOp {
  RowId a;
  RowId b;
  RowId c;
  friend bool operator==(const TraOp&, const TraOp&) = default;
};

struct NotOp {
  RowId src;
  RowId dst;
  friend bool operator==(const NotOp&, const NotOp&) = default;
};

struct HostWriteOp {
  RowId dst;
  RowBits bits;
  friend bool operator==(const HostWriteOp&, const HostWriteOp&) = default;
};

struct HostReadOp {
  RowId src;
  friend bool operator==(const HostReadOp&, const HostReadOp&) = default;
};

using MicroOp = std::variant<CopyOp, TraOp, NotOp, HostWriteOp, HostReadOp>;
using MicroProgram = std::vector<MicroOp>;

struct CostReport {
  std::uint64_t tra_count = 0;
  std::uint64_t copy_count = 0;
  std::uint64_t not_count = 0;
  std::uint64_t hostio_count = 0;

  std::uint64_t total() const {
    return tra_count + copy_count + not_count + hostio_count;
  }
  void add(const MicroOp& op);

  friend bool operator==(const CostReport&, const CostReport&) = default;
};

// One READ probe emitted while running a program.
struct ReadRecord {
  std::size_t op_index;
  RowId row;
  RowBits bits;
};

struct RunResult {
  CostReport cost;
  std::vector<ReadRecord> reads;
};

// Idealized DRAM subarray: an R x W bit grid driven by row-granularity
// micro-ops. Triple row activation (TRA) overwrites all three operand rows
// with their bitwise majority; COPY/NOT/host I/O complete the op set.
//
// A Subarray is a plain value: copy it to snapshot, compare with == for
// bit-exact equality. One writer at a time; no internal sharing.
class Subarray {
 public:
  Subarray(std::uint32_t rows, std::uint32_t width);

  std::uint32_t rows() const { return rows_; }
  std::uint32_t width() const { return width_; }

  static constexpr RowId const0_row() { return 0; }
  static constexpr RowId const1_row() { return 1; }
  static constexpr RowId temp_row(std::uint32_t i) { return 2 + i; }
  static constexpr std::uint32_t temp_row_count() { return 3; }
  static constexpr RowId first_data_row() { return 5; }
  std::uint32_t data_row_count() const { return rows_ - first_data_row(); }

  RowGroup group(RowId row) const;
  bool is_writable(RowId row) const;

  bool bit(RowId row, std::size_t col) const;
  RowBits row(RowId row) const;
  std::span<const std::uint64_t> row_words(RowId row) const;

  // Applies one micro-op. HOSTREAD returns the row, everything else returns
  // nothing. Throws Error on an ill-formed op; the grid is untouched then.
  std::optional<RowBits> exec(const MicroOp& op);

  // Applies ops in order, tallying cost per category. The first ill-formed
  // op aborts with ProgramError carrying its index; ops before it have been
  // applied.
  RunResult run(std::span<const MicroOp> program);

  friend bool operator==(const Subarray&, const Subarray&) = default;

 private:
  void validate(const MicroOp& op) const;
  void check_row(RowId row) const;
  void check_dst(RowId row) const;
  std::uint64_t* words_of(RowId row);
  const std::uint64_t* words_of(RowId row) const;

  std::uint32_t rows_;
  std::uint32_t width_;
  std::uint32_t words_per_row_;
  std::vector<std::uint64_t> cells_;
};

}  // namespace mixsim
