#include "mixsim/vertical.hpp"

#include <string>

namespace mixsim {

namespace {

constexpr RowId kC0 = Subarray::const0_row();
constexpr RowId kC1 = Subarray::const1_row();
constexpr RowId kT0 = Subarray::temp_row(0);
constexpr RowId kT1 = Subarray::temp_row(1);
constexpr RowId kT2 = Subarray::temp_row(2);

void check_vector(const VerticalVector& v) {
  if (v.nbits < 1 || v.lanes < 1) {
    throw Error(Errc::shape_mismatch, "vertical vector needs nbits >= 1 and "
                                      "lanes >= 1");
  }
  if (v.base < Subarray::first_data_row()) {
    throw Error(Errc::row_out_of_range,
                "vertical vector base row " + std::to_string(v.base) +
                    " is below the DATA region");
  }
}

void check_same_shape(const VerticalVector& a, const VerticalVector& b) {
  if (a.nbits != b.nbits || a.lanes != b.lanes) {
    throw Error(Errc::shape_mismatch,
                "vertical vectors disagree on shape: " +
                    std::to_string(a.nbits) + "b x " + std::to_string(a.lanes) +
                    " vs " + std::to_string(b.nbits) + "b x " +
                    std::to_string(b.lanes));
  }
}

bool rows_overlap(const VerticalVector& a, const VerticalVector& b) {
  return a.base < b.base + b.nbits && b.base < a.base + a.nbits;
}

void check_disjoint(const VerticalVector& a, const VerticalVector& b) {
  if (rows_overlap(a, b)) {
    throw Error(Errc::range_overlap,
                "vertical vector row ranges overlap at rows " +
                    std::to_string(std::max(a.base, b.base)) + "..");
  }
}

void check_in_grid(const Subarray& sub, const VerticalVector& v) {
  if (std::uint64_t{v.base} + v.nbits > sub.rows()) {
    throw Error(Errc::row_out_of_range,
                "vertical vector rows " + std::to_string(v.base) + ".." +
                    std::to_string(v.base + v.nbits - 1) + " exceed " +
                    std::to_string(sub.rows()) + " rows");
  }
  if (v.lanes != sub.width()) {
    throw Error(Errc::shape_mismatch,
                "vector has " + std::to_string(v.lanes) + " lanes, subarray " +
                    std::to_string(sub.width()) + " columns");
  }
}

}  // namespace

MicroProgram emit_vadd(const VerticalVector& x, const VerticalVector& y,
                       const VerticalVector& out) {
  check_vector(x);
  check_vector(y);
  check_vector(out);
  check_same_shape(x, y);
  check_same_shape(x, out);
  check_disjoint(x, y);
  check_disjoint(x, out);
  check_disjoint(y, out);

  MicroProgram prog;
  prog.push_back(CopyOp{kC0, kT2});  // carry = 0
  for (std::uint32_t i = 0; i < x.nbits; ++i) {
    const RowId xi = x.base + i;
    const RowId yi = y.base + i;
    const RowId di = out.base + i;
    // Carry-out first, parked in the destination row while the sum bit is
    // assembled from MAJ(MAJ(y, ~cout, c), ~cout, x) = x ^ y ^ c.
    prog.push_back(CopyOp{kT2, di});
    prog.push_back(CopyOp{xi, kT0});
    prog.push_back(CopyOp{yi, kT1});
    prog.push_back(TraOp{kT0, kT1, di});  // di = MAJ(x, y, c) = carry-out
    prog.push_back(NotOp{di, kT0});
    prog.push_back(CopyOp{yi, kT1});
    prog.push_back(TraOp{kT1, kT0, kT2});
    prog.push_back(NotOp{di, kT1});
    prog.push_back(CopyOp{xi, kT2});
    prog.push_back(TraOp{kT0, kT1, kT2});  // sum bit
    prog.push_back(CopyOp{di, kT2});       // carry into the next position
    prog.push_back(CopyOp{kT0, di});
  }
  return prog;
}

void vadd(Subarray& sub, const VerticalVector& x, const VerticalVector& y,
          const VerticalVector& out) {
  MicroProgram prog = emit_vadd(x, y, out);
  check_in_grid(sub, x);
  check_in_grid(sub, y);
  check_in_grid(sub, out);
  sub.run(prog);
}

std::vector<std::uint64_t> vsum_reduce(const Subarray& sub,
                                       const VerticalVector& x) {
  check_vector(x);
  check_in_grid(sub, x);
  if (x.nbits > 64) {
    throw Error(Errc::shape_mismatch,
                "cannot decode " + std::to_string(x.nbits) +
                    "-bit lanes into 64-bit values");
  }
  std::vector<std::uint64_t> values(sub.width(), 0);
  for (std::uint32_t i = 0; i < x.nbits; ++i) {
    const auto words = sub.row_words(x.base + i);
    for (std::uint32_t j = 0; j < sub.width(); ++j) {
      values[j] |= ((words[j / 64] >> (j % 64)) & 1) << i;
    }
  }
  return values;
}

MicroProgram emit_vcompare_ge(const VerticalVector& x, const VerticalVector& y,
                              RowId outrow) {
  check_vector(x);
  check_vector(y);
  check_same_shape(x, y);
  if (outrow < Subarray::first_data_row()) {
    throw Error(Errc::row_out_of_range, "outrow " + std::to_string(outrow) +
                                            " is below the DATA region");
  }
  const VerticalVector out_span{outrow, 1, x.lanes};
  if (rows_overlap(x, out_span) || rows_overlap(y, out_span)) {
    throw Error(Errc::range_overlap,
                "outrow " + std::to_string(outrow) + " lies inside an operand");
  }

  // ge' = MAJ(x_i, ~y_i, ge), scanned LSB to MSB with ge seeded to 1, is the
  // running x >= y verdict over the bits seen so far: a higher differing bit
  // overrides everything below it.
  MicroProgram prog;
  prog.push_back(CopyOp{kC1, kT2});
  for (std::uint32_t i = 0; i < x.nbits; ++i) {
    prog.push_back(CopyOp{x.base + i, kT0});
    prog.push_back(NotOp{y.base + i, kT1});
    prog.push_back(TraOp{kT0, kT1, kT2});
  }
  prog.push_back(CopyOp{kT2, outrow});
  return prog;
}

void vcompare_ge(Subarray& sub, const VerticalVector& x,
                 const VerticalVector& y, RowId outrow) {
  MicroProgram prog = emit_vcompare_ge(x, y, outrow);
  check_in_grid(sub, x);
  check_in_grid(sub, y);
  if (outrow >= sub.rows()) {
    throw Error(Errc::row_out_of_range,
                "outrow " + std::to_string(outrow) + " out of range");
  }
  sub.run(prog);
}

}  // namespace mixsim
