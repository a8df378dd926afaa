#include "mixsim/trace.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "mixsim/error.hpp"

namespace mixsim {

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw Error(Errc::trace_parse,
              "trace line " + std::to_string(line) + ": " + what);
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < text.size() && text[i] != ' ' && text[i] != '\t') ++i;
    if (i > start) tokens.emplace_back(text.substr(start, i - start));
  }
  return tokens;
}

RowId parse_row(const std::string& tok, std::size_t line) {
  RowId value = 0;
  const auto [ptr, ec] =
      std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    fail(line, "expected row number, got '" + tok + "'");
  }
  return value;
}

void expect_args(const std::vector<std::string>& tokens, std::size_t n,
                 std::size_t line) {
  if (tokens.size() != n + 1) {
    fail(line, tokens[0] + " takes " + std::to_string(n) + " operand(s), got " +
                   std::to_string(tokens.size() - 1));
  }
}

}  // namespace

TraceProgram parse_trace(std::istream& in, std::uint32_t width) {
  TraceProgram out;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    const std::string& mnemonic = tokens[0];
    if (mnemonic == "COPY") {
      expect_args(tokens, 2, line_no);
      out.ops.push_back(
          CopyOp{parse_row(tokens[1], line_no), parse_row(tokens[2], line_no)});
    } else if (mnemonic == "TRA") {
      expect_args(tokens, 3, line_no);
      out.ops.push_back(TraOp{parse_row(tokens[1], line_no),
                              parse_row(tokens[2], line_no),
                              parse_row(tokens[3], line_no)});
    } else if (mnemonic == "NOT") {
      expect_args(tokens, 2, line_no);
      out.ops.push_back(
          NotOp{parse_row(tokens[1], line_no), parse_row(tokens[2], line_no)});
    } else if (mnemonic == "WRITE") {
      expect_args(tokens, 2, line_no);
      RowId dst = parse_row(tokens[1], line_no);
      try {
        out.ops.push_back(HostWriteOp{dst, RowBits::from_hex(tokens[2], width)});
      } catch (const Error& e) {
        fail(line_no, e.what());
      }
    } else if (mnemonic == "READ") {
      expect_args(tokens, 1, line_no);
      out.ops.push_back(HostReadOp{parse_row(tokens[1], line_no)});
    } else {
      fail(line_no, "unknown micro-op '" + mnemonic + "'");
    }
    out.lines.push_back(line_no);
  }
  return out;
}

TraceProgram parse_trace_text(const std::string& text, std::uint32_t width) {
  std::istringstream in(text);
  return parse_trace(in, width);
}

std::string format_op(const MicroOp& op) {
  if (const auto* c = std::get_if<CopyOp>(&op)) {
    return "COPY " + std::to_string(c->src) + " " + std::to_string(c->dst);
  }
  if (const auto* t = std::get_if<TraOp>(&op)) {
    return "TRA " + std::to_string(t->a) + " " + std::to_string(t->b) + " " +
           std::to_string(t->c);
  }
  if (const auto* n = std::get_if<NotOp>(&op)) {
    return "NOT " + std::to_string(n->src) + " " + std::to_string(n->dst);
  }
  if (const auto* w = std::get_if<HostWriteOp>(&op)) {
    return "WRITE " + std::to_string(w->dst) + " " + w->bits.to_hex();
  }
  return "READ " + std::to_string(std::get<HostReadOp>(op).src);
}

void write_trace(std::ostream& out, std::span<const MicroOp> program) {
  for (const MicroOp& op : program) out << format_op(op) << '\n';
}

}  // namespace mixsim
