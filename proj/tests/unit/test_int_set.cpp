#include <doctest.h>

#include <vector>

#include "mstd/int_set.hpp"
#include "mstd/rng.hpp"
#include "oracles.hpp"

using namespace mstd;

TEST_CASE("parse and format round-trip") {
  const IntSet s = parse_set("0,2,3,4,7,11,12,14");
  CHECK(s.universe_size() == 15);
  CHECK(s.count() == 8);
  CHECK(format_set(s) == "0,2,3,4,7,11,12,14");

  CHECK(format_set(parse_set(" 3 , 5 ", 8)) == "3,5");
  CHECK(parse_set("", 5).empty());
  CHECK(parse_set("   ", 5).empty());
}

TEST_CASE("parse rejects malformed input") {
  CHECK_THROWS_AS(parse_set("0,2,"), std::invalid_argument);
  CHECK_THROWS_AS(parse_set(",1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_set("1,,2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_set("a"), std::invalid_argument);
  CHECK_THROWS_AS(parse_set("-1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_set("1,1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_set("9", 5), std::out_of_range);
}

TEST_CASE("element operations") {
  IntSet s(10);
  CHECK(s.empty());
  CHECK(s.min_element() == -1);
  CHECK(s.max_element() == -1);
  s.add(3);
  s.add(7);
  s.add(0);
  CHECK(s.count() == 3);
  CHECK(s.contains(3));
  CHECK_FALSE(s.contains(4));
  CHECK_FALSE(s.contains(-2));
  CHECK_FALSE(s.contains(99));
  CHECK(s.min_element() == 0);
  CHECK(s.max_element() == 7);
  s.remove(3);
  CHECK_FALSE(s.contains(3));
  CHECK(s.elements() == std::vector<int>{0, 7});
  CHECK_THROWS_AS(s.add(10), std::out_of_range);
  CHECK_THROWS_AS(s.add(-1), std::out_of_range);
  s.clear();
  CHECK(s.empty());
}

TEST_CASE("from_elements and resized") {
  const IntSet s = IntSet::from_elements({5, 1, 3});
  CHECK(s.universe_size() == 6);
  CHECK(s.elements() == std::vector<int>{1, 3, 5});

  const IntSet grown = s.resized(100);
  CHECK(grown.universe_size() == 100);
  CHECK(grown.elements() == s.elements());
  CHECK_THROWS_AS(s.resized(5), std::invalid_argument);

  CHECK(IntSet::full(7).count() == 7);
  CHECK(IntSet::from_elements({}).universe_size() == 1);
}

TEST_CASE("equality compares universe and content") {
  CHECK(parse_set("1,2", 5) == parse_set("1,2", 5));
  CHECK(parse_set("1,2", 5) != parse_set("1,2", 6));
  CHECK(parse_set("1,2", 5) != parse_set("1,3", 5));
}

TEST_CASE("mask32 guard") {
  CHECK(parse_set("0,5", 32).mask32() == 0b100001u);
  CHECK_THROWS_AS(parse_set("0", 33).mask32(), std::invalid_argument);
}

TEST_CASE("reverse_word is an involution and maps bit i to 63-i") {
  CHECK(bits::reverse_word(1) == uint64_t(1) << 63);
  CHECK(bits::reverse_word(0) == 0);
  SplitMix64 rng(11);
  for (int t = 0; t < 200; ++t) {
    const uint64_t w = rng.next();
    CHECK(bits::reverse_word(bits::reverse_word(w)) == w);
  }
  for (int i = 0; i < 64; ++i) {
    CHECK(bits::reverse_word(uint64_t(1) << i) == uint64_t(1) << (63 - i));
  }
}

TEST_CASE("reverse_into matches elementwise reversal across word boundaries") {
  SplitMix64 rng(12);
  for (const int universe : {1, 7, 63, 64, 65, 70, 128, 130, 200}) {
    IntSet s(universe);
    for (int e = 0; e < universe; ++e) {
      if (rng.next_unit() < 0.4) s.add(e);
    }
    std::vector<uint64_t> rev(std::size_t(bits::words_for(universe)));
    bits::reverse_into(rev, s.words(), universe);
    IntSet expect(universe);
    s.for_each([&](int e) { expect.add(universe - 1 - e); });
    for (std::size_t i = 0; i < rev.size(); ++i) CHECK(rev[i] == expect.words()[i]);
  }
}

TEST_CASE("or_shifted matches element shifts") {
  SplitMix64 rng(13);
  for (int t = 0; t < 100; ++t) {
    const int universe = 1 + int(rng.next() % 120);
    const int shift = int(rng.next() % 100);
    IntSet src(universe);
    for (int e = 0; e < universe; ++e) {
      if (rng.next_unit() < 0.3) src.add(e);
    }
    std::vector<uint64_t> dest(std::size_t(bits::words_for(universe + shift)));
    bits::or_shifted(dest, src.words(), shift);
    IntSet expect(universe + shift);
    src.for_each([&](int e) { expect.add(e + shift); });
    for (std::size_t i = 0; i < dest.size(); ++i) CHECK(dest[i] == expect.words()[i]);
  }
}

TEST_CASE("contains_range") {
  const IntSet s = parse_set("2,3,4,5,9", 10);
  CHECK(bits::contains_range(s.words(), 2, 5));
  CHECK(bits::contains_range(s.words(), 3, 3));
  CHECK_FALSE(bits::contains_range(s.words(), 2, 6));
  CHECK_FALSE(bits::contains_range(s.words(), 0, 2));
  IntSet big = IntSet::full(300);
  CHECK(bits::contains_range(big.words(), 0, 299));
  big.remove(170);
  CHECK_FALSE(bits::contains_range(big.words(), 0, 299));
  CHECK(bits::contains_range(big.words(), 171, 299));
}

TEST_CASE("SignedIntSet holds negative values and checks symmetry") {
  SignedIntSet s(5);
  s.add(-3);
  s.add(0);
  s.add(3);
  CHECK(s.contains(-3));
  CHECK(s.contains(3));
  CHECK_FALSE(s.contains(2));
  CHECK(s.count() == 3);
  CHECK(s.elements() == std::vector<int>{-3, 0, 3});
  CHECK(s.symmetric());
  s.add(4);
  CHECK_FALSE(s.symmetric());
}
