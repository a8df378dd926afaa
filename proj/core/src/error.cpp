#include "mixsim/error.hpp"

namespace mixsim {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::dimension_too_small: return "dimension-too-small";
    case Errc::row_out_of_range: return "row-out-of-range";
    case Errc::const_row_write: return "const-row-write";
    case Errc::aliased_operands: return "aliased-operands";
    case Errc::width_mismatch: return "width-mismatch";
    case Errc::shape_mismatch: return "shape-mismatch";
    case Errc::range_overlap: return "range-overlap";
    case Errc::value_out_of_universe: return "value-out-of-universe";
    case Errc::select_out_of_range: return "select-out-of-range";
    case Errc::universe_mismatch: return "universe-mismatch";
    case Errc::capacity: return "capacity";
    case Errc::row_exhaustion: return "row-exhaustion";
    case Errc::unbound_variable: return "unbound-variable";
    case Errc::expr_parse: return "expr-parse";
    case Errc::trace_parse: return "trace-parse";
    case Errc::bad_format: return "bad-format";
    case Errc::io_error: return "io-error";
  }
  return "unknown";
}

}  // namespace mixsim
