#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mixsim {

// Every failure the library reports, one code per distinct contract breach.
// The CLI maps these onto process exit codes.
enum class Errc {
  dimension_too_small,   // subarray smaller than the minimum legal shape
  row_out_of_range,      // row id >= row count
  const_row_write,       // micro-op would overwrite CONST0/CONST1
  aliased_operands,      // TRA operands not pairwise distinct, or src == dst
  width_mismatch,        // host word width != subarray width
  shape_mismatch,        // vertical vectors disagree on nbits/lanes
  range_overlap,         // vertical vector row ranges intersect
  value_out_of_universe, // mixture value >= 2^K
  select_out_of_range,   // select(k) with k >= cardinality
  universe_mismatch,     // set algebra across different K
  capacity,              // target too small for the requested placement
  row_exhaustion,        // compiler ran out of data rows
  unbound_variable,      // expression references an unbound variable
  expr_parse,            // malformed expression text
  trace_parse,           // malformed trace line
  bad_format,            // malformed serialized mixture
  io_error,              // stream read/write failed
};

std::string_view errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// Raised by program execution; remembers which op failed.
class ProgramError : public Error {
 public:
  ProgramError(Errc code, const std::string& message, std::size_t op_index)
      : Error(code, message), op_index_(op_index) {}

  std::size_t op_index() const noexcept { return op_index_; }

 private:
  std::size_t op_index_;
};

// Raised by the lowering pass; carries the exact row demand so callers can
// resize and retry.
class RowExhaustionError : public Error {
 public:
  RowExhaustionError(const std::string& message, std::uint32_t required_rows,
                     std::uint32_t available_rows)
      : Error(Errc::row_exhaustion, message),
        required_rows_(required_rows),
        available_rows_(available_rows) {}

  // Total subarray rows that would make the lowering fit.
  std::uint32_t required_rows() const noexcept { return required_rows_; }
  std::uint32_t available_rows() const noexcept { return available_rows_; }

 private:
  std::uint32_t required_rows_;
  std::uint32_t available_rows_;
};

}  // namespace mixsim
