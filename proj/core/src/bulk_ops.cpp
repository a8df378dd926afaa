#include "mixsim/bulk_ops.hpp"

#include <string>

namespace mixsim {

namespace {

constexpr RowId kC0 = Subarray::const0_row();
constexpr RowId kC1 = Subarray::const1_row();
constexpr RowId kT0 = Subarray::temp_row(0);
constexpr RowId kT1 = Subarray::temp_row(1);
constexpr RowId kT2 = Subarray::temp_row(2);

// Control-row form: staging `control` as the third TRA operand selects the
// operation, 0 -> AND, 1 -> OR.
void emit_controlled(MicroProgram& prog, RowId a, RowId b, RowId control,
                     RowId out) {
  prog.push_back(CopyOp{a, kT0});
  prog.push_back(CopyOp{b, kT1});
  prog.push_back(CopyOp{control, kT2});
  prog.push_back(TraOp{kT0, kT1, kT2});
  prog.push_back(CopyOp{kT0, out});
}

void check_bulk(const Subarray& sub, std::span<const RowId> inputs,
                RowId out) {
  for (RowId r : inputs) {
    if (sub.group(r) == RowGroup::Temp) {
      throw Error(Errc::aliased_operands,
                  "input row " + std::to_string(r) +
                      " is a TEMP row clobbered by staging");
    }
    if (r == out) {
      throw Error(Errc::aliased_operands,
                  "out row " + std::to_string(r) + " aliases an input row");
    }
  }
  if (sub.group(out) != RowGroup::Data) {
    throw Error(Errc::const_row_write,
                "out row " + std::to_string(out) + " is not a DATA row");
  }
}

}  // namespace

void emit_and(MicroProgram& prog, RowId a, RowId b, RowId out) {
  emit_controlled(prog, a, b, kC0, out);
}

void emit_or(MicroProgram& prog, RowId a, RowId b, RowId out) {
  emit_controlled(prog, a, b, kC1, out);
}

void emit_not(MicroProgram& prog, RowId src, RowId out) {
  prog.push_back(NotOp{src, out});
}

void emit_maj3(MicroProgram& prog, RowId a, RowId b, RowId c, RowId out) {
  prog.push_back(CopyOp{a, kT0});
  prog.push_back(CopyOp{b, kT1});
  prog.push_back(CopyOp{c, kT2});
  prog.push_back(TraOp{kT0, kT1, kT2});
  prog.push_back(CopyOp{kT0, out});
}

// (a or b) and not(a and b), using `out` as the fourth scratch row.
void emit_xor(MicroProgram& prog, RowId a, RowId b, RowId out) {
  prog.push_back(CopyOp{a, kT0});
  prog.push_back(CopyOp{b, kT1});
  prog.push_back(CopyOp{kC0, kT2});
  prog.push_back(TraOp{kT0, kT1, kT2});  // a.b
  prog.push_back(CopyOp{kT0, out});
  prog.push_back(NotOp{out, kT2});       // t2 = ~(a.b)
  prog.push_back(CopyOp{a, kT0});
  prog.push_back(CopyOp{b, kT1});
  prog.push_back(CopyOp{kC1, out});
  prog.push_back(TraOp{kT0, kT1, out});  // a+b
  prog.push_back(CopyOp{kC0, kT1});
  prog.push_back(TraOp{kT0, kT2, kT1});  // (a+b).~(a.b)
  prog.push_back(CopyOp{kT0, out});
}

void bulk_and(Subarray& sub, RowId a, RowId b, RowId out) {
  const RowId inputs[] = {a, b};
  check_bulk(sub, inputs, out);
  MicroProgram prog;
  emit_and(prog, a, b, out);
  sub.run(prog);
}

void bulk_or(Subarray& sub, RowId a, RowId b, RowId out) {
  const RowId inputs[] = {a, b};
  check_bulk(sub, inputs, out);
  MicroProgram prog;
  emit_or(prog, a, b, out);
  sub.run(prog);
}

void bulk_not(Subarray& sub, RowId src, RowId out) {
  const RowId inputs[] = {src};
  check_bulk(sub, inputs, out);
  MicroProgram prog;
  emit_not(prog, src, out);
  sub.run(prog);
}

void bulk_xor(Subarray& sub, RowId a, RowId b, RowId out) {
  const RowId inputs[] = {a, b};
  check_bulk(sub, inputs, out);
  MicroProgram prog;
  emit_xor(prog, a, b, out);
  sub.run(prog);
}

void bulk_maj3(Subarray& sub, RowId a, RowId b, RowId c, RowId out) {
  const RowId inputs[] = {a, b, c};
  check_bulk(sub, inputs, out);
  MicroProgram prog;
  emit_maj3(prog, a, b, c, out);
  sub.run(prog);
}

std::size_t bulk_arity(BulkOpKind kind) {
  switch (kind) {
    case BulkOpKind::Not: return 1;
    case BulkOpKind::Maj3: return 3;
    default: return 2;
  }
}

void emit_bulk(MicroProgram& prog, BulkOpKind kind,
               std::span<const RowId> inputs, RowId out) {
  if (inputs.size() != bulk_arity(kind)) {
    throw Error(Errc::shape_mismatch,
                "bulk op takes " + std::to_string(bulk_arity(kind)) +
                    " input row(s), got " + std::to_string(inputs.size()));
  }
  switch (kind) {
    case BulkOpKind::And: emit_and(prog, inputs[0], inputs[1], out); break;
    case BulkOpKind::Or: emit_or(prog, inputs[0], inputs[1], out); break;
    case BulkOpKind::Not: emit_not(prog, inputs[0], out); break;
    case BulkOpKind::Xor: emit_xor(prog, inputs[0], inputs[1], out); break;
    case BulkOpKind::Maj3:
      emit_maj3(prog, inputs[0], inputs[1], inputs[2], out);
      break;
  }
}

void bulk_apply(Subarray& sub, BulkOpKind kind, std::span<const RowId> inputs,
                RowId out) {
  MicroProgram prog;
  emit_bulk(prog, kind, inputs, out);  // validates arity first
  check_bulk(sub, inputs, out);
  sub.run(prog);
}

}  // namespace mixsim
