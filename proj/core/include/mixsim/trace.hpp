#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "mixsim/subarray.hpp"

namespace mixsim {

// Line-oriented trace text, one micro-op per line, '#' starts a comment:
//   COPY <src> <dst>
//   TRA <a> <b> <c>
//   NOT <src> <dst>
//   WRITE <dst> <hex-word>
//   READ <src>
// Hex words are width-padded, most significant bit = column 0.

struct TraceProgram {
  MicroProgram ops;
  std::vector<std::size_t> lines;  // 1-based source line of each op
};

// `width` fixes the expected WRITE word width. Throws Error(trace_parse)
// with the offending line number in the message.
TraceProgram parse_trace(std::istream& in, std::uint32_t width);
TraceProgram parse_trace_text(const std::string& text, std::uint32_t width);

std::string format_op(const MicroOp& op);
void write_trace(std::ostream& out, std::span<const MicroOp> program);

}  // namespace mixsim
