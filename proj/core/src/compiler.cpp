#include "mixsim/compiler.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "mixsim/bulk_ops.hpp"

namespace mixsim {

namespace {

// Hands out free DATA rows for intermediate results, smallest id first.
// Once the pool is dry it keeps allocating phantom rows past the grid so a
// single pass can still measure the full demand before the caller throws.
class RowPool {
 public:
  RowPool(const std::map<std::string, RowId>& bindings, GridShape shape)
      : next_phantom_(shape.rows) {
    for (RowId r = Subarray::first_data_row(); r < shape.rows; ++r) {
      if (std::none_of(bindings.begin(), bindings.end(),
                       [r](const auto& kv) { return kv.second == r; })) {
        free_.push_back(r);
      }
    }
    pool_size_ = static_cast<std::uint32_t>(free_.size());
  }

  RowId alloc() {
    RowId row;
    if (!free_.empty()) {
      row = free_.front();
      free_.erase(free_.begin());
    } else {
      row = next_phantom_++;
    }
    owned_.insert(row);
    peak_ = std::max<std::uint32_t>(peak_, static_cast<std::uint32_t>(owned_.size()));
    return row;
  }

  void release(RowId row) {
    if (owned_.erase(row) == 0) return;  // binding or constant row
    free_.insert(std::lower_bound(free_.begin(), free_.end(), row), row);
  }

  bool exhausted() const { return peak_ > pool_size_; }
  std::uint32_t peak() const { return peak_; }
  std::uint32_t pool_size() const { return pool_size_; }

 private:
  std::vector<RowId> free_;
  std::set<RowId> owned_;
  RowId next_phantom_;
  std::uint32_t pool_size_ = 0;
  std::uint32_t peak_ = 0;
};

class Lowering {
 public:
  Lowering(const std::map<std::string, RowId>& bindings, GridShape shape)
      : bindings_(bindings), shape_(shape), pool_(bindings, shape) {}

  RowId lower_node(const Expr& e) {
    switch (e.kind()) {
      case Expr::Kind::Var: {
        const auto it = bindings_.find(e.name());
        if (it == bindings_.end()) {
          throw Error(Errc::unbound_variable,
                      "variable '" + e.name() + "' is not bound to a row");
        }
        return it->second;
      }
      case Expr::Kind::Const:
        return e.value() ? Subarray::const1_row() : Subarray::const0_row();
      case Expr::Kind::Not: {
        const RowId src = lower_node(*e.children()[0]);
        const RowId out = pool_.alloc();
        emit_not(prog_, src, out);
        pool_.release(src);
        return out;
      }
      case Expr::Kind::And:
      case Expr::Kind::Or:
      case Expr::Kind::Xor: {
        const RowId lhs = lower_node(*e.children()[0]);
        const RowId rhs = lower_node(*e.children()[1]);
        const RowId out = pool_.alloc();
        if (e.kind() == Expr::Kind::And) {
          emit_and(prog_, lhs, rhs, out);
        } else if (e.kind() == Expr::Kind::Or) {
          emit_or(prog_, lhs, rhs, out);
        } else {
          emit_xor(prog_, lhs, rhs, out);
        }
        pool_.release(lhs);
        pool_.release(rhs);
        return out;
      }
      case Expr::Kind::Maj3: {
        const RowId a = lower_node(*e.children()[0]);
        const RowId b = lower_node(*e.children()[1]);
        const RowId c = lower_node(*e.children()[2]);
        const RowId out = pool_.alloc();
        emit_maj3(prog_, a, b, c, out);
        pool_.release(a);
        pool_.release(b);
        pool_.release(c);
        return out;
      }
    }
    throw Error(Errc::expr_parse, "corrupt expression node");
  }

  MicroProgram take_program() { return std::move(prog_); }
  const RowPool& pool() const { return pool_; }

 private:
  const std::map<std::string, RowId>& bindings_;
  GridShape shape_;
  RowPool pool_;
  MicroProgram prog_;
};

void check_bindings(const std::map<std::string, RowId>& bindings,
                    GridShape shape) {
  for (const auto& [name, row] : bindings) {
    if (row < Subarray::first_data_row() || row >= shape.rows) {
      throw Error(Errc::row_out_of_range,
                  "binding '" + name + "' -> row " + std::to_string(row) +
                      " is not a DATA row of a " + std::to_string(shape.rows) +
                      "-row subarray");
    }
  }
}

}  // namespace

CompiledProgram lower(const Expr& e,
                      const std::map<std::string, RowId>& bindings,
                      GridShape shape) {
  if (shape.rows < 6 || shape.width < 1) {
    throw Error(Errc::dimension_too_small,
                "lowering target must satisfy rows >= 6 and width >= 1");
  }
  check_bindings(bindings, shape);

  Lowering lowering(bindings, shape);
  const RowId result = lowering.lower_node(e);
  if (lowering.pool().exhausted()) {
    const std::uint32_t required = Subarray::first_data_row() +
                                   static_cast<std::uint32_t>(bindings.size()) +
                                   lowering.pool().peak();
    throw RowExhaustionError(
        "expression needs " + std::to_string(lowering.pool().peak()) +
            " intermediate rows but only " +
            std::to_string(lowering.pool().pool_size()) +
            " DATA rows are free (subarray of " + std::to_string(required) +
            " rows would fit)",
        required, shape.rows);
  }

  CompiledProgram cp;
  cp.prog = lowering.take_program();
  cp.bindings = bindings;
  cp.result_row = result;
  cp.shape = shape;
  for (const MicroOp& op : cp.prog) cp.cost.add(op);
  return cp;
}

RowBits eval_compiled(const CompiledProgram& cp,
                      const std::map<std::string, bool>& assignment,
                      std::uint32_t width) {
  Subarray sub(cp.shape.rows, width);
  for (const auto& [name, row] : cp.bindings) {
    const auto it = assignment.find(name);
    if (it == assignment.end()) {
      throw Error(Errc::unbound_variable,
                  "assignment is missing variable '" + name + "'");
    }
    sub.exec(HostWriteOp{
        row, it->second ? sub.row(Subarray::const1_row()) : RowBits(width)});
  }
  sub.run(cp.prog);
  return sub.row(cp.result_row);
}

CostReport cost_of(const Expr& e) {
  std::map<std::string, RowId> bindings;
  RowId next = Subarray::first_data_row();
  for (const std::string& name : e.free_vars()) bindings[name] = next++;
  const GridShape guess{next + 8, 1};
  try {
    return lower(e, bindings, guess).cost;
  } catch (const RowExhaustionError& ex) {
    return lower(e, bindings, GridShape{ex.required_rows(), 1}).cost;
  }
}

}  // namespace mixsim
