#pragma once

#include <span>

#include "mixsim/subarray.hpp"

namespace mixsim {

enum class BulkOpKind { And, Or, Not, Xor, Maj3 };

// 1 for Not, 3 for Maj3, 2 otherwise.
std::size_t bulk_arity(BulkOpKind kind);

// Full-width bitwise ops built from TRA with a control row: staging the
// constant-0 row as the third operand selects AND, constant-1 selects OR.
// Named input rows come back bit-identical; the out row takes the result.
// TEMP rows 2..4 are clobbered.
//
// The emit_* builders append the canonical micro-op sequence for the fixed
// row scheme. Inputs may be any non-TEMP row; `out` must be a DATA row
// distinct from every input (emit_xor scribbles on it mid-sequence).

void emit_and(MicroProgram& prog, RowId a, RowId b, RowId out);
void emit_or(MicroProgram& prog, RowId a, RowId b, RowId out);
void emit_not(MicroProgram& prog, RowId src, RowId out);
void emit_xor(MicroProgram& prog, RowId a, RowId b, RowId out);
void emit_maj3(MicroProgram& prog, RowId a, RowId b, RowId c, RowId out);

void bulk_and(Subarray& sub, RowId a, RowId b, RowId out);
void bulk_or(Subarray& sub, RowId a, RowId b, RowId out);
void bulk_not(Subarray& sub, RowId src, RowId out);
void bulk_xor(Subarray& sub, RowId a, RowId b, RowId out);
void bulk_maj3(Subarray& sub, RowId a, RowId b, RowId c, RowId out);

// Kind-directed dispatch; inputs.size() must equal bulk_arity(kind).
void emit_bulk(MicroProgram& prog, BulkOpKind kind,
               std::span<const RowId> inputs, RowId out);
void bulk_apply(Subarray& sub, BulkOpKind kind, std::span<const RowId> inputs,
                RowId out);

}  // namespace mixsim
