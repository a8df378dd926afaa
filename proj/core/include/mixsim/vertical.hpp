#pragma once

#include <cstdint>
#include <vector>

#include "mixsim/subarray.hpp"

namespace mixsim {

// One unsigned integer per column: lane j holds sum over i of
// cells[base+i][j] << i, LSB at the base row. One row op therefore touches
// bit position i of all `lanes` integers at once.
struct VerticalVector {
  RowId base = 0;
  std::uint32_t nbits = 0;
  std::uint32_t lanes = 0;

  friend bool operator==(const VerticalVector&, const VerticalVector&) = default;
};

// Ripple-carry addition, out = (x + y) mod 2^nbits per lane. The carry lives
// in TEMP row 4, zeroed from CONST0 before the ripple; at each bit position
// the emitted ops produce carry = MAJ(x_i, y_i, c) and sum = x_i ^ y_i ^ c.
// x and y are preserved; TEMP rows are clobbered.
MicroProgram emit_vadd(const VerticalVector& x, const VerticalVector& y,
                       const VerticalVector& out);
void vadd(Subarray& sub, const VerticalVector& x, const VerticalVector& y,
          const VerticalVector& out);

// Host-side decode of the vertical layout; the grid is not modified.
std::vector<std::uint64_t> vsum_reduce(const Subarray& sub,
                                       const VerticalVector& x);

// outrow bit j = 1 iff lane j of x >= lane j of y (unsigned). Scans bit
// positions in increasing significance, folding each into the running
// verdict with a single TRA: ge' = MAJ(x_i, NOT y_i, ge). x and y are
// preserved; TEMP rows are clobbered.
MicroProgram emit_vcompare_ge(const VerticalVector& x, const VerticalVector& y,
                              RowId outrow);
void vcompare_ge(Subarray& sub, const VerticalVector& x,
                 const VerticalVector& y, RowId outrow);

}  // namespace mixsim
