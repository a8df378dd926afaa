#include "mixsim/mixture.hpp"

#include <doctest.h>

#include <random>
#include <sstream>
#include <unordered_set>

#include "mixsim/bulk_ops.hpp"
#include "../support/generators.hpp"

using namespace mixsim;

TEST_SUITE("mixture") {

TEST_CASE("insert sets the bit whose position is the value") {
  Mixture m(3);
  m.insert(3);
  CHECK(m.words()[0] == 0b1000);
  m.insert(3);  // idempotent
  CHECK(m.words()[0] == 0b1000);
  CHECK(m.cardinality() == 1);
  CHECK_THROWS_AS(m.insert(8), Error);
  try {
    m.insert(8);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::value_out_of_universe);
  }
}

TEST_CASE("contains") {
  Mixture m(3);
  for (std::uint64_t v = 0; v < 8; ++v) CHECK_FALSE(m.contains(v));
  m.insert(1);
  m.insert(3);
  CHECK(m.contains(1));
  CHECK_FALSE(m.contains(2));
  CHECK(m.contains(3));
  CHECK_THROWS_AS(m.contains(8), Error);
}

TEST_CASE("random sets agree with a hash-set oracle") {
  std::mt19937_64 rng(21);
  for (int rep = 0; rep < 20; ++rep) {
    Mixture m(10);
    std::unordered_set<std::uint64_t> oracle;
    for (int i = 0; i < 300; ++i) {
      const std::uint64_t v = rng() % 1024;
      m.insert(v);
      oracle.insert(v);
    }
    for (std::uint64_t v = 0; v < 1024; ++v) {
      CHECK(m.contains(v) == (oracle.count(v) != 0));
    }
    CHECK(m.cardinality() == oracle.size());
  }
}

TEST_CASE("rank counts members strictly below") {
  Mixture m(3);
  m.insert(1);
  m.insert(3);
  m.insert(6);
  CHECK(m.rank(0) == 0);
  CHECK(m.rank(6) == 2);
  CHECK(m.rank(8) == 3);  // one past the universe is legal
  CHECK_THROWS_AS(m.rank(9), Error);
}

TEST_CASE("select is the k-th smallest member") {
  Mixture m(3);
  m.insert(1);
  m.insert(3);
  m.insert(6);
  CHECK(m.select(0) == 1);
  CHECK(m.select(1) == 3);
  CHECK(m.select(2) == 6);
  CHECK_THROWS_AS(m.select(3), Error);
  try {
    m.select(3);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::select_out_of_range);
  }
}

TEST_CASE("rank and select agree with a naive scan on random sets") {
  std::mt19937_64 rng(22);
  for (int rep = 0; rep < 10; ++rep) {
    const Mixture m = testgen::random_mixture(8, rng);
    std::vector<std::uint64_t> sorted;
    std::uint64_t below = 0;
    for (std::uint64_t v = 0; v < m.universe(); ++v) {
      CHECK(m.rank(v) == below);
      if (m.contains(v)) {
        sorted.push_back(v);
        ++below;
      }
    }
    CHECK(m.members() == sorted);
    for (std::uint64_t k = 0; k < sorted.size(); ++k) {
      CHECK(m.select(k) == sorted[k]);
      CHECK(m.rank(m.select(k)) == k);
    }
    for (std::uint64_t v : sorted) CHECK(m.select(m.rank(v)) == v);
  }
}

TEST_CASE("cardinality of empty and full universes") {
  Mixture empty(3);
  CHECK(empty.cardinality() == 0);
  Mixture full(3);
  for (std::uint64_t v = 0; v < 8; ++v) full.insert(v);
  CHECK(full.cardinality() == 8);
}

TEST_CASE("set algebra matches the element-wise oracle") {
  Mixture a(3), b(3);
  a.insert(0);
  a.insert(3);
  b.insert(1);
  b.insert(3);
  CHECK(set_union(a, b).members() == std::vector<std::uint64_t>{0, 1, 3});
  CHECK(set_intersection(a, b).members() == std::vector<std::uint64_t>{3});
  CHECK(set_difference(a, b).members() == std::vector<std::uint64_t>{0});

  CHECK(set_union(a, Mixture(3)) == a);
  CHECK(set_intersection(a, a) == a);

  std::mt19937_64 rng(23);
  for (int rep = 0; rep < 10; ++rep) {
    const Mixture x = testgen::random_mixture(9, rng);
    const Mixture y = testgen::random_mixture(9, rng);
    const Mixture u = set_union(x, y);
    const Mixture i = set_intersection(x, y);
    const Mixture d = set_difference(x, y);
    for (std::uint64_t v = 0; v < x.universe(); ++v) {
      CHECK(u.contains(v) == (x.contains(v) || y.contains(v)));
      CHECK(i.contains(v) == (x.contains(v) && y.contains(v)));
      CHECK(d.contains(v) == (x.contains(v) && !y.contains(v)));
    }
  }
}

TEST_CASE("set algebra demands one universe") {
  CHECK_THROWS_AS(set_union(Mixture(3), Mixture(4)), Error);
  try {
    set_intersection(Mixture(3), Mixture(4));
  } catch (const Error& e) {
    CHECK(e.code() == Errc::universe_mismatch);
  }
}

TEST_CASE("vertical cursor walks every value once, both directions") {
  std::mt19937_64 rng(24);
  const Mixture m = testgen::random_mixture(6, rng);

  VerticalCursor fwd(m);
  std::uint64_t expect = 0;
  while (auto p = fwd.next()) {
    CHECK(p->first == expect);
    CHECK(p->second == m.contains(p->first));
    ++expect;
  }
  CHECK(expect == m.universe());

  VerticalCursor rev(m, VerticalCursor::Direction::Reverse);
  std::uint64_t seen = 0;
  while (auto p = rev.next()) {
    CHECK(p->first == m.universe() - 1 - seen);
    CHECK(p->second == m.contains(p->first));
    ++seen;
  }
  CHECK(seen == m.universe());
}

TEST_CASE("views stay coherent after mutation") {
  std::mt19937_64 rng(25);
  Mixture m(7);
  for (int i = 0; i < 60; ++i) {
    m.insert(rng() % m.universe());
    // Word view and cursor view must decode to the same membership.
    std::uint64_t card_from_words = 0;
    for (std::uint64_t w : m.words()) {
      card_from_words += static_cast<std::uint64_t>(__builtin_popcountll(w));
    }
    CHECK(card_from_words == m.cardinality());
    VerticalCursor cur(m);
    while (auto p = cur.next()) {
      CHECK(p->second == ((m.words()[p->first / 64] >> (p->first % 64)) & 1));
    }
  }
}

TEST_CASE("serialized golden file for K=3, members {0,3}") {
  Mixture m(3);
  m.insert(0);
  m.insert(3);
  std::ostringstream out;
  m.serialize(out);
  const std::string bytes = out.str();
  REQUIRE(bytes.size() == 9);
  CHECK(bytes.substr(0, 4) == "MIX1");
  CHECK(static_cast<unsigned char>(bytes[4]) == 3);
  CHECK(bytes[5] == 0);
  CHECK(bytes[6] == 0);
  CHECK(bytes[7] == 0);
  CHECK(static_cast<unsigned char>(bytes[8]) == 0x09);
}

TEST_CASE("serialization round trip is byte identical") {
  std::mt19937_64 rng(26);
  for (std::uint32_t k = 0; k <= 12; ++k) {
    const Mixture m = testgen::random_mixture(k, rng);
    std::ostringstream out;
    m.serialize(out);
    std::istringstream in(out.str());
    const Mixture back = Mixture::deserialize(in);
    CHECK(back == m);
    std::ostringstream out2;
    back.serialize(out2);
    CHECK(out.str() == out2.str());
  }
}

TEST_CASE("deserialize rejects junk") {
  std::istringstream bad_magic("MIXX\x03\x00\x00\x00\x09");
  CHECK_THROWS_AS(Mixture::deserialize(bad_magic), Error);
  std::istringstream truncated("MIX1\x05");
  try {
    Mixture::deserialize(truncated);
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::io_error);
  }
  // A universe beyond the cap is refused before allocation.
  std::istringstream huge("MIX1\x3f\x00\x00\x00");
  CHECK_THROWS_AS(Mixture::deserialize(huge), Error);
}

TEST_CASE("kbits cap is enforced but configurable") {
  CHECK_THROWS_AS(Mixture(25), Error);
  const Mixture wide(25, 25);
  CHECK(wide.universe() == (std::uint64_t{1} << 25));
}

TEST_CASE("the one-bit universe works end to end") {
  Mixture m(0);
  CHECK(m.universe() == 1);
  CHECK_FALSE(m.contains(0));
  m.insert(0);
  CHECK(m.contains(0));
  std::ostringstream out;
  m.serialize(out);
  std::istringstream in(out.str());
  CHECK(Mixture::deserialize(in) == m);
}

TEST_CASE("subarray round trips in both layouts") {
  // Width 16 takes vertical universes up to 16*16 = 256 values.
  std::mt19937_64 rng(27);
  for (const Layout layout : {Layout::Horizontal, Layout::Vertical}) {
    for (std::uint32_t k : {0u, 3u, 6u, 8u}) {
      const Mixture m = testgen::random_mixture(k, rng);
      Subarray sub(80, 16);
      m.to_subarray(sub, layout);
      CHECK(Mixture::from_subarray(sub, k, layout) == m);
    }
  }
}

TEST_CASE("placements that do not fit raise capacity errors") {
  const Mixture m(10);  // universe 1024
  Subarray small(8, 8);
  CHECK_THROWS_AS(m.to_subarray(small, Layout::Horizontal), Error);
  CHECK_THROWS_AS(m.to_subarray(small, Layout::Vertical), Error);
  try {
    m.to_subarray(small, Layout::Horizontal);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::capacity);
  }
}

TEST_CASE("union computed on the substrate equals the host-side union") {
  std::mt19937_64 rng(28);
  const std::uint32_t k = 7;
  const Mixture a = testgen::random_mixture(k, rng);
  const Mixture b = testgen::random_mixture(k, rng);

  const std::uint32_t width = 32;
  const std::uint32_t n = a.placement_rows(width);
  const RowId base_a = Subarray::first_data_row();
  const RowId base_b = base_a + n;
  const RowId base_out = base_b + n;
  Subarray sub(base_out + n, width);
  a.to_subarray(sub, Layout::Horizontal, base_a);
  b.to_subarray(sub, Layout::Horizontal, base_b);
  for (std::uint32_t r = 0; r < n; ++r) {
    bulk_or(sub, base_a + r, base_b + r, base_out + r);
  }
  const Mixture on_substrate =
      Mixture::from_subarray(sub, k, Layout::Horizontal, base_out);
  CHECK(on_substrate == set_union(a, b));
}

}  // TEST_SUITE
