// mixsim command-line front end: replay micro-op traces, compile boolean
// expressions to traces, run the dual-access-order demonstration, and
// manipulate serialized mixture files.
//
// Exit codes: 0 success (or MATCH), 1 verification mismatch, 2 usage error,
// 3 file I/O error, 4 input parse error, 5 execution/validation error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mixsim/bulk_ops.hpp"
#include "mixsim/compiler.hpp"
#include "mixsim/error.hpp"
#include "mixsim/expr.hpp"
#include "mixsim/mixture.hpp"
#include "mixsim/subarray.hpp"
#include "mixsim/trace.hpp"

namespace {

using nlohmann::json;
using namespace mixsim;

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitParse = 4;
constexpr int kExitExec = 5;

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::io_error:
      return kExitIo;
    case Errc::trace_parse:
    case Errc::expr_parse:
    case Errc::bad_format:
      return kExitParse;
    default:
      return kExitExec;
  }
}

void report_error(const Error& e) {
  std::cerr << "error: " << errc_name(e.code()) << ": " << e.what() << "\n";
}

void print_cost(const CostReport& cost, bool jsonl) {
  if (jsonl) {
    json j{{"event", "cost"},
           {"tra", cost.tra_count},
           {"copy", cost.copy_count},
           {"not", cost.not_count},
           {"hostio", cost.hostio_count},
           {"total", cost.total()}};
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "cost tra=" << cost.tra_count << " copy=" << cost.copy_count
              << " not=" << cost.not_count << " hostio=" << cost.hostio_count
              << " total=" << cost.total() << "\n";
  }
}

int cmd_run(const std::string& path, std::uint32_t rows, std::uint32_t width,
            bool jsonl) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: io-error: cannot open trace '" << path << "'\n";
    return kExitIo;
  }
  TraceProgram trace;
  try {
    trace = parse_trace(in, width);
  } catch (const Error& e) {
    report_error(e);
    return exit_code_for(e.code());
  }

  Subarray sub(rows, width);
  RunResult result;
  try {
    result = sub.run(trace.ops);
  } catch (const ProgramError& e) {
    std::cerr << "error: " << errc_name(e.code()) << ": " << e.what()
              << " at line " << trace.lines[e.op_index()] << "\n";
    return exit_code_for(e.code());
  }

  for (const ReadRecord& read : result.reads) {
    if (jsonl) {
      json j{{"event", "read"},
             {"row", read.row},
             {"hex", read.bits.to_hex()},
             {"op", read.op_index},
             {"line", trace.lines[read.op_index]}};
      std::cout << j.dump() << "\n";
    } else {
      std::cout << "read row=" << read.row << " hex=" << read.bits.to_hex()
                << " op=" << read.op_index << " line="
                << trace.lines[read.op_index] << "\n";
    }
  }
  print_cost(result.cost, jsonl);
  if (jsonl) {
    json j{{"event", "ok"}, {"rows", rows}, {"width", width},
           {"ops", trace.ops.size()}};
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "ok rows=" << rows << " width=" << width
              << " ops=" << trace.ops.size() << "\n";
  }
  return kExitOk;
}

std::map<std::string, RowId> parse_bindings(
    const std::vector<std::string>& binds) {
  std::map<std::string, RowId> out;
  for (const std::string& b : binds) {
    const auto eq = b.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == b.size()) {
      throw Error(Errc::expr_parse,
                  "binding '" + b + "' is not of the form name=row");
    }
    try {
      out[b.substr(0, eq)] =
          static_cast<RowId>(std::stoul(b.substr(eq + 1)));
    } catch (const std::exception&) {
      throw Error(Errc::expr_parse, "binding '" + b + "' has a bad row number");
    }
  }
  return out;
}

int cmd_compile(const std::string& expr_text,
                const std::vector<std::string>& binds, std::uint32_t rows,
                std::uint32_t width, bool jsonl) {
  ExprPtr expr = parse_expr(expr_text);
  std::map<std::string, RowId> bindings = parse_bindings(binds);

  // Auto-bind remaining free variables to the lowest untaken DATA rows.
  RowId next = Subarray::first_data_row();
  for (const std::string& name : expr->free_vars()) {
    if (bindings.count(name)) continue;
    while (std::any_of(bindings.begin(), bindings.end(),
                       [next](const auto& kv) { return kv.second == next; })) {
      ++next;
    }
    bindings[name] = next++;
  }

  CompiledProgram cp;
  if (rows != 0) {
    cp = lower(*expr, bindings, GridShape{rows, width});
  } else {
    // Grow until the intermediates fit.
    RowId top = Subarray::first_data_row();
    for (const auto& [name, row] : bindings) top = std::max(top, row + 1);
    try {
      cp = lower(*expr, bindings, GridShape{top + 8, width});
    } catch (const RowExhaustionError& e) {
      cp = lower(*expr, bindings, GridShape{e.required_rows(), width});
    }
  }

  std::cout << "# expr " << format_expr(*expr) << "\n";
  for (const auto& [name, row] : cp.bindings) {
    std::cout << "# bind " << name << " " << row << "\n";
  }
  std::cout << "# result " << cp.result_row << "\n";
  std::cout << "# rows " << cp.shape.rows << " width " << cp.shape.width
            << "\n";
  write_trace(std::cout, cp.prog);
  std::cout << "# cost tra=" << cp.cost.tra_count
            << " copy=" << cp.cost.copy_count << " not=" << cp.cost.not_count
            << " hostio=" << cp.cost.hostio_count
            << " total=" << cp.cost.total() << "\n";
  if (jsonl) {
    json j{{"event", "compiled"},
           {"expr", format_expr(*expr)},
           {"result_row", cp.result_row},
           {"rows", cp.shape.rows},
           {"width", cp.shape.width},
           {"tra", cp.cost.tra_count},
           {"copy", cp.cost.copy_count},
           {"not", cp.cost.not_count},
           {"total", cp.cost.total()}};
    std::cerr << j.dump() << "\n";
  }
  return kExitOk;
}

Mixture random_mixture(std::uint32_t kbits, std::mt19937_64& rng) {
  Mixture m(kbits);
  for (std::uint64_t v = 0; v < m.universe(); ++v) {
    if (rng() & 1) m.insert(v);
  }
  return m;
}

// The duality demonstration: the same stored bits, placed once, answer set
// algebra through row-wide substrate ops and membership through per-value
// host queries; the two readings must coincide exactly.
int cmd_demo_duality(std::uint32_t kbits, std::uint64_t seed, bool jsonl) {
  std::mt19937_64 rng(seed);
  const std::uint32_t width = 64;
  Mixture a = random_mixture(kbits, rng);
  Mixture b = random_mixture(kbits, rng);

  const std::uint32_t n = a.placement_rows(width);
  const RowId base_a = Subarray::first_data_row();
  const RowId base_b = base_a + n;
  const RowId base_neg = base_b + n;
  const RowId base_out = base_neg + n;
  Subarray sub(base_out + n, width);
  a.to_subarray(sub, Layout::Horizontal, base_a);
  b.to_subarray(sub, Layout::Horizontal, base_b);

  if (jsonl) {
    json j{{"event", "duality"}, {"kbits", kbits}, {"seed", seed},
           {"width", width}, {"card_a", a.cardinality()},
           {"card_b", b.cardinality()}};
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "duality kbits=" << kbits << " seed=" << seed
              << " width=" << width << " card_a=" << a.cardinality()
              << " card_b=" << b.cardinality() << "\n";
  }

  bool all_match = true;
  const char* op_names[3] = {"union", "intersect", "difference"};
  for (int op = 0; op < 3; ++op) {
    for (std::uint32_t r = 0; r < n; ++r) {
      if (op == 0) {
        bulk_or(sub, base_a + r, base_b + r, base_out + r);
      } else if (op == 1) {
        bulk_and(sub, base_a + r, base_b + r, base_out + r);
      } else {
        bulk_not(sub, base_b + r, base_neg + r);
        bulk_and(sub, base_a + r, base_neg + r, base_out + r);
      }
    }
    const Mixture substrate =
        Mixture::from_subarray(sub, kbits, Layout::Horizontal, base_out);

    // Host route: walk the two maps in query order, one value at a time.
    Mixture host(kbits);
    VerticalCursor ca(a);
    VerticalCursor cb(b);
    while (auto pa = ca.next()) {
      const auto pb = cb.next();
      const bool in_a = pa->second;
      const bool in_b = pb->second;
      const bool member =
          op == 0 ? (in_a || in_b) : op == 1 ? (in_a && in_b) : (in_a && !in_b);
      if (member) host.insert(pa->first);
    }

    const Mixture word_route = op == 0   ? set_union(a, b)
                               : op == 1 ? set_intersection(a, b)
                                         : set_difference(a, b);
    const bool match = substrate == host && substrate == word_route;
    all_match = all_match && match;
    if (jsonl) {
      json j{{"event", "op"}, {"op", op_names[op]},
             {"substrate", substrate.cardinality()},
             {"host", host.cardinality()},
             {"words", word_route.cardinality()}, {"match", match}};
      std::cout << j.dump() << "\n";
    } else {
      std::cout << op_names[op] << " substrate=" << substrate.cardinality()
                << " host=" << host.cardinality()
                << " words=" << word_route.cardinality()
                << " match=" << (match ? "yes" : "no") << "\n";
    }
  }

  const Mixture u = set_union(a, b);
  std::uint64_t checks = 0;
  bool rs_ok = true;
  for (std::uint64_t v : u.members()) {
    rs_ok = rs_ok && u.select(u.rank(v)) == v;
    ++checks;
  }
  for (std::uint64_t k = 0; k < u.cardinality(); ++k) {
    rs_ok = rs_ok && u.rank(u.select(k)) == k;
    ++checks;
  }
  all_match = all_match && rs_ok;
  if (jsonl) {
    json j{{"event", "rank_select"}, {"checks", checks}, {"ok", rs_ok}};
    std::cout << j.dump() << "\n";
    std::cout << json{{"event", "result"},
                      {"match", all_match}}.dump() << "\n";
  } else {
    std::cout << "rank_select checks=" << checks
              << " ok=" << (rs_ok ? "yes" : "no") << "\n";
    std::cout << "result " << (all_match ? "MATCH" : "MISMATCH") << "\n";
  }
  return all_match ? kExitOk : kExitMismatch;
}

Mixture load_mixture(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io_error, "cannot open mixture '" + path + "'");
  return Mixture::deserialize(in);
}

void save_mixture(const Mixture& m, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::io_error, "cannot write mixture '" + path + "'");
  m.serialize(out);
}

void print_kv(const char* event, std::uint64_t arg, const char* field,
              const json& value, bool jsonl) {
  if (jsonl) {
    json j{{"event", event}, {"value", arg}, {field, value}};
    std::cout << j.dump() << "\n";
  } else {
    std::cout << event << " " << arg << " = "
              << (value.is_boolean() ? (value.get<bool>() ? "true" : "false")
                                     : value.dump())
              << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mixsim: majority-logic memory substrate and mixture toolkit"};
  app.require_subcommand(1);
  bool jsonl = false;

  // run
  auto* run = app.add_subcommand("run", "replay a micro-op trace file");
  std::string trace_path;
  std::uint32_t run_rows = 8, run_width = 8;
  run->add_option("trace", trace_path, "trace file")->required();
  run->add_option("--rows", run_rows, "subarray rows (default 8)");
  run->add_option("--width", run_width, "subarray width in bits (default 8)");

  // compile
  auto* compile =
      app.add_subcommand("compile", "lower an expression to a trace");
  std::string expr_text;
  std::vector<std::string> binds;
  std::uint32_t compile_rows = 0, compile_width = 8;
  compile->add_option("expr", expr_text,
                      "prefix expression, e.g. '(xor a (and b (not c)))'")
      ->required();
  compile->add_option("--bind", binds, "variable binding name=row")
      ->take_all();
  compile->add_option("--rows", compile_rows,
                      "subarray rows (default: grow to fit)");
  compile->add_option("--width", compile_width, "subarray width (default 8)");

  // demo-duality
  auto* demo = app.add_subcommand(
      "demo-duality",
      "compute set algebra on the substrate and by per-value queries");
  std::uint32_t demo_kbits = 8;
  std::uint64_t demo_seed = 1;
  demo->add_option("--kbits", demo_kbits, "universe is 2^kbits (default 8)");
  demo->add_option("--seed", demo_seed, "PRNG seed (default 1)");

  // mix
  auto* mix = app.add_subcommand("mix", "operate on serialized mixture files");
  mix->require_subcommand(1);
  std::string mix_file, mix_file_b, mix_out;
  std::uint32_t mix_kbits = 8;
  std::vector<std::uint64_t> mix_values;
  std::uint64_t mix_value = 0;

  auto* mix_new = mix->add_subcommand("new", "create an empty mixture file");
  mix_new->add_option("--kbits", mix_kbits, "universe is 2^kbits (default 8)");
  mix_new->add_option("-o,--out", mix_out, "output file")->required();

  auto* mix_insert = mix->add_subcommand("insert", "insert values");
  mix_insert->add_option("file", mix_file)->required();
  mix_insert->add_option("values", mix_values, "values to insert")->required();
  mix_insert->add_option("-o,--out", mix_out, "output file (default in-place)");

  auto* mix_contains = mix->add_subcommand("contains", "membership query");
  mix_contains->add_option("file", mix_file)->required();
  mix_contains->add_option("value", mix_value)->required();

  auto* mix_rank = mix->add_subcommand("rank", "members strictly below value");
  mix_rank->add_option("file", mix_file)->required();
  mix_rank->add_option("value", mix_value)->required();

  auto* mix_select = mix->add_subcommand("select", "k-th smallest member");
  mix_select->add_option("file", mix_file)->required();
  mix_select->add_option("value", mix_value)->required();

  auto* mix_card = mix->add_subcommand("card", "cardinality");
  mix_card->add_option("file", mix_file)->required();

  auto* mix_union = mix->add_subcommand("union", "set union of two files");
  mix_union->add_option("a", mix_file)->required();
  mix_union->add_option("b", mix_file_b)->required();
  mix_union->add_option("-o,--out", mix_out, "output file")->required();

  auto* mix_intersect = mix->add_subcommand("intersect", "set intersection");
  mix_intersect->add_option("a", mix_file)->required();
  mix_intersect->add_option("b", mix_file_b)->required();
  mix_intersect->add_option("-o,--out", mix_out, "output file")->required();

  auto* mix_difference = mix->add_subcommand("difference", "set difference");
  mix_difference->add_option("a", mix_file)->required();
  mix_difference->add_option("b", mix_file_b)->required();
  mix_difference->add_option("-o,--out", mix_out, "output file")->required();

  std::string format = "text";
  app.add_option("--format", format, "output format: text | jsonl")
      ->check(CLI::IsMember({"text", "jsonl"}));
  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();
  for (CLI::App* sub : mix->get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  jsonl = format == "jsonl";

  try {
    if (run->parsed()) return cmd_run(trace_path, run_rows, run_width, jsonl);
    if (compile->parsed()) {
      return cmd_compile(expr_text, binds, compile_rows, compile_width, jsonl);
    }
    if (demo->parsed()) return cmd_demo_duality(demo_kbits, demo_seed, jsonl);
    if (mix->parsed()) {
      if (mix_new->parsed()) {
        save_mixture(Mixture(mix_kbits), mix_out);
        std::cout << "written " << mix_out << " cardinality=0\n";
      } else if (mix_insert->parsed()) {
        Mixture m = load_mixture(mix_file);
        for (std::uint64_t v : mix_values) m.insert(v);
        const std::string& dst = mix_out.empty() ? mix_file : mix_out;
        save_mixture(m, dst);
        std::cout << "written " << dst << " cardinality=" << m.cardinality()
                  << "\n";
      } else if (mix_contains->parsed()) {
        print_kv("contains", mix_value,
                 "result", load_mixture(mix_file).contains(mix_value), jsonl);
      } else if (mix_rank->parsed()) {
        print_kv("rank", mix_value, "result",
                 load_mixture(mix_file).rank(mix_value), jsonl);
      } else if (mix_select->parsed()) {
        print_kv("select", mix_value, "result",
                 load_mixture(mix_file).select(mix_value), jsonl);
      } else if (mix_card->parsed()) {
        const Mixture m = load_mixture(mix_file);
        if (jsonl) {
          std::cout << json{{"event", "card"},
                            {"result", m.cardinality()}}.dump() << "\n";
        } else {
          std::cout << "cardinality = " << m.cardinality() << "\n";
        }
      } else {
        const Mixture a = load_mixture(mix_file);
        const Mixture b = load_mixture(mix_file_b);
        const Mixture out = mix_union->parsed()       ? set_union(a, b)
                            : mix_intersect->parsed() ? set_intersection(a, b)
                                                      : set_difference(a, b);
        save_mixture(out, mix_out);
        std::cout << "written " << mix_out
                  << " cardinality=" << out.cardinality() << "\n";
      }
      return kExitOk;
    }
  } catch (const Error& e) {
    report_error(e);
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitExec;
  }
  return kExitUsage;
}
