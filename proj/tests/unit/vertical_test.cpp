#include "mixsim/vertical.hpp"

#include <doctest.h>

#include <random>
#include <vector>

using namespace mixsim;

namespace {

void write_lanes(Subarray& sub, const VerticalVector& v,
                 const std::vector<std::uint64_t>& values) {
  REQUIRE(values.size() == sub.width());
  for (std::uint32_t i = 0; i < v.nbits; ++i) {
    RowBits row(sub.width());
    for (std::uint32_t j = 0; j < sub.width(); ++j) {
      row.set_bit(j, (values[j] >> i) & 1);
    }
    sub.exec(HostWriteOp{v.base + i, row});
  }
}

std::vector<std::uint64_t> lanes(std::uint64_t fill, std::uint32_t width) {
  return std::vector<std::uint64_t>(width, fill);
}

}  // namespace

TEST_SUITE("vertical") {

TEST_CASE("4-bit lanes: 3 + 5 = 8") {
  Subarray sub(20, 4);
  const VerticalVector x{5, 4, 4}, y{9, 4, 4}, out{13, 4, 4};
  write_lanes(sub, x, lanes(3, 4));
  write_lanes(sub, y, lanes(5, 4));
  vadd(sub, x, y, out);
  for (std::uint64_t v : vsum_reduce(sub, out)) CHECK(v == 8);
  // Operands preserved.
  for (std::uint64_t v : vsum_reduce(sub, x)) CHECK(v == 3);
  for (std::uint64_t v : vsum_reduce(sub, y)) CHECK(v == 5);
}

TEST_CASE("adding zero is the identity") {
  std::mt19937_64 rng(5);
  Subarray sub(30, 64);
  const VerticalVector x{5, 8, 64}, y{13, 8, 64}, out{21, 8, 64};
  std::vector<std::uint64_t> vals(64);
  for (auto& v : vals) v = rng() & 0xFF;
  write_lanes(sub, x, vals);
  write_lanes(sub, y, lanes(0, 64));
  vadd(sub, x, y, out);
  CHECK(vsum_reduce(sub, out) == vals);
}

TEST_CASE("overflow wraps modulo 2^N") {
  Subarray sub(20, 4);
  const VerticalVector x{5, 4, 4}, y{9, 4, 4}, out{13, 4, 4};
  write_lanes(sub, x, lanes(15, 4));
  write_lanes(sub, y, lanes(1, 4));
  vadd(sub, x, y, out);
  for (std::uint64_t v : vsum_reduce(sub, out)) CHECK(v == 0);
}

TEST_CASE("full adder behaves exhaustively on narrow lanes") {
  // N=2 over a single column exercises every (x, y, carry) combination of
  // the per-bit network; N=3 re-checks with carry chains of length two.
  for (std::uint32_t n : {2u, 3u}) {
    const std::uint64_t limit = std::uint64_t{1} << n;
    for (std::uint64_t a = 0; a < limit; ++a) {
      for (std::uint64_t b = 0; b < limit; ++b) {
        Subarray sub(5 + 3 * n + 1, 1);
        const VerticalVector x{5, n, 1};
        const VerticalVector y{5 + n, n, 1};
        const VerticalVector out{5 + 2 * n, n, 1};
        write_lanes(sub, x, {a});
        write_lanes(sub, y, {b});
        vadd(sub, x, y, out);
        CHECK(vsum_reduce(sub, out)[0] == ((a + b) & (limit - 1)));
      }
    }
  }
}

TEST_CASE("random lanes agree with the integer addition oracle") {
  std::mt19937_64 rng(6);
  for (std::uint32_t n : {1u, 4u, 8u, 16u}) {
    const std::uint64_t mask = n == 64 ? ~std::uint64_t{0}
                                       : (std::uint64_t{1} << n) - 1;
    Subarray sub(5 + 3 * n, 64);
    const VerticalVector x{5, n, 64}, y{5 + n, n, 64}, out{5 + 2 * n, n, 64};
    for (int rep = 0; rep < 20; ++rep) {
      std::vector<std::uint64_t> xs(64), ys(64);
      for (auto& v : xs) v = rng() & mask;
      for (auto& v : ys) v = rng() & mask;
      write_lanes(sub, x, xs);
      write_lanes(sub, y, ys);
      vadd(sub, x, y, out);
      const auto got = vsum_reduce(sub, out);
      for (std::uint32_t j = 0; j < 64; ++j) {
        CHECK(got[j] == ((xs[j] + ys[j]) & mask));
      }
      CHECK(vsum_reduce(sub, x) == xs);
      CHECK(vsum_reduce(sub, y) == ys);
    }
  }
}

TEST_CASE("vadd is commutative and associative modulo 2^N") {
  std::mt19937_64 rng(7);
  const std::uint32_t n = 8;
  Subarray sub(5 + 5 * n, 64);
  const VerticalVector a{5, n, 64}, b{5 + n, n, 64}, c{5 + 2 * n, n, 64};
  const VerticalVector t{5 + 3 * n, n, 64}, u{5 + 4 * n, n, 64};
  for (int rep = 0; rep < 10; ++rep) {
    std::vector<std::uint64_t> as(64), bs(64), cs(64);
    for (auto& v : as) v = rng() & 0xFF;
    for (auto& v : bs) v = rng() & 0xFF;
    for (auto& v : cs) v = rng() & 0xFF;
    write_lanes(sub, a, as);
    write_lanes(sub, b, bs);
    write_lanes(sub, c, cs);

    vadd(sub, a, b, t);
    vadd(sub, b, a, u);
    CHECK(vsum_reduce(sub, t) == vsum_reduce(sub, u));

    vadd(sub, t, c, u);  // (a + b) + c
    const auto lhs = vsum_reduce(sub, u);
    vadd(sub, b, c, t);
    vadd(sub, a, t, u);  // a + (b + c)
    CHECK(lhs == vsum_reduce(sub, u));
  }
}

TEST_CASE("lanes are independent") {
  std::mt19937_64 rng(8);
  const std::uint32_t n = 8;
  Subarray sub(5 + 3 * n, 64);
  const VerticalVector x{5, n, 64}, y{5 + n, n, 64}, out{5 + 2 * n, n, 64};
  std::vector<std::uint64_t> xs(64), ys(64);
  for (auto& v : xs) v = rng() & 0xFF;
  for (auto& v : ys) v = rng() & 0xFF;
  write_lanes(sub, x, xs);
  write_lanes(sub, y, ys);
  vadd(sub, x, y, out);
  const auto before = vsum_reduce(sub, out);

  xs[17] ^= 0x5A;  // poke exactly one lane
  write_lanes(sub, x, xs);
  vadd(sub, x, y, out);
  const auto after = vsum_reduce(sub, out);
  for (std::uint32_t j = 0; j < 64; ++j) {
    if (j == 17) {
      CHECK(after[j] == ((xs[j] + ys[j]) & 0xFF));
    } else {
      CHECK(after[j] == before[j]);
    }
  }
}

TEST_CASE("vsum_reduce decodes positional weights") {
  Subarray sub(16, 8);
  const VerticalVector x{5, 4, 8};
  CHECK(vsum_reduce(sub, x) == std::vector<std::uint64_t>(8, 0));

  RowBits row(8);
  row.set_bit(5, true);
  sub.exec(HostWriteOp{static_cast<RowId>(x.base + 2), row});
  const auto vals = vsum_reduce(sub, x);
  for (std::uint32_t j = 0; j < 8; ++j) CHECK(vals[j] == (j == 5 ? 4u : 0u));
}

TEST_CASE("vsum_reduce matches a direct power-of-two decode") {
  std::mt19937_64 rng(9);
  Subarray sub(20, 64);
  const VerticalVector x{5, 12, 64};
  for (std::uint32_t i = 0; i < x.nbits; ++i) {
    sub.exec(HostWriteOp{x.base + i, RowBits::from_word(rng(), 64)});
  }
  const Subarray before = sub;
  const auto vals = vsum_reduce(sub, x);
  CHECK(sub == before);
  for (std::uint32_t j = 0; j < 64; ++j) {
    std::uint64_t expect = 0;
    for (std::uint32_t i = 0; i < x.nbits; ++i) {
      expect += sub.bit(x.base + i, j) ? (std::uint64_t{1} << i) : 0;
    }
    CHECK(vals[j] == expect);
  }
}

TEST_CASE("vcompare_ge: reflexive, strict, and random against the oracle") {
  std::mt19937_64 rng(10);
  const std::uint32_t n = 8;
  Subarray sub(5 + 2 * n + 1, 64);
  const VerticalVector x{5, n, 64}, y{5 + n, n, 64};
  const RowId outrow = 5 + 2 * n;

  std::vector<std::uint64_t> xs(64);
  for (auto& v : xs) v = rng() & 0xFF;
  write_lanes(sub, x, xs);
  write_lanes(sub, y, xs);
  vcompare_ge(sub, x, y, outrow);
  CHECK(sub.row(outrow).popcount() == 64);  // x >= x everywhere

  std::vector<std::uint64_t> ys(64, 7);
  std::vector<std::uint64_t> xs2(64, 5);
  write_lanes(sub, x, xs2);
  write_lanes(sub, y, ys);
  vcompare_ge(sub, x, y, outrow);
  CHECK(sub.row(outrow).popcount() == 0);  // 5 < 7 in every lane

  for (int rep = 0; rep < 20; ++rep) {
    for (auto& v : xs) v = rng() & 0xFF;
    for (auto& v : ys) v = rng() & 0xFF;
    write_lanes(sub, x, xs);
    write_lanes(sub, y, ys);
    vcompare_ge(sub, x, y, outrow);
    for (std::uint32_t j = 0; j < 64; ++j) {
      CHECK(sub.bit(outrow, j) == (xs[j] >= ys[j]));
    }
    CHECK(vsum_reduce(sub, x) == xs);
    CHECK(vsum_reduce(sub, y) == ys);
  }
}

TEST_CASE("shape and placement validation") {
  Subarray sub(40, 64);
  const VerticalVector x{5, 8, 64}, y{13, 8, 64}, out{21, 8, 64};
  CHECK_THROWS_AS(vadd(sub, x, VerticalVector{13, 4, 64}, out), Error);
  CHECK_THROWS_AS(vadd(sub, x, VerticalVector{10, 8, 64}, out), Error);  // overlap
  CHECK_THROWS_AS(vadd(sub, x, y, VerticalVector{16, 8, 64}), Error);
  CHECK_THROWS_AS(vadd(sub, x, VerticalVector{13, 8, 32}, out), Error);
  CHECK_THROWS_AS(vadd(sub, x, VerticalVector{36, 8, 64}, out), Error);  // off grid
  CHECK_THROWS_AS(vadd(sub, VerticalVector{3, 8, 64}, y, out), Error);   // temp base
  CHECK_THROWS_AS(vcompare_ge(sub, x, y, 15), Error);  // outrow inside y
  try {
    vadd(sub, x, VerticalVector{10, 8, 64}, out);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::range_overlap);
  }
  try {
    vadd(sub, x, VerticalVector{13, 4, 64}, out);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::shape_mismatch);
  }
}

}  // TEST_SUITE
