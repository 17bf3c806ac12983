#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "cgt/errors.hpp"
#include "cgt/perm.hpp"

using cgt::Permutation;
using cgt::parse_cycles;

TEST_CASE("cycle parsing on fixed examples") {
  CHECK(parse_cycles("(1 2 3)", 3).images() == std::vector<int>{2, 3, 1});
  CHECK(parse_cycles("()", 4) == Permutation(4));
  CHECK(parse_cycles("(1 2)(3 4)", 4).images() == std::vector<int>{2, 1, 4, 3});
  CHECK(parse_cycles("(1,2)(3,4)", 4).images() == std::vector<int>{2, 1, 4, 3});
  CHECK(parse_cycles("  (2 3) ", 5).images() == std::vector<int>{1, 3, 2, 4, 5});
  CHECK(parse_cycles("(5 1 3)", 5).apply(5) == 1);
}

TEST_CASE("parsing rejects malformed input") {
  CHECK_THROWS_AS(parse_cycles("(1 2", 3), cgt::ParseError);
  CHECK_THROWS_AS(parse_cycles("1 2)", 3), cgt::ParseError);
  CHECK_THROWS_AS(parse_cycles("(1 2)(2 3)", 3), cgt::ParseError);
  CHECK_THROWS_AS(parse_cycles("(1 1)", 3), cgt::ParseError);
  CHECK_THROWS_AS(parse_cycles("(1 4)", 3), cgt::ParseError);
  CHECK_THROWS_AS(parse_cycles("(0 1)", 3), cgt::ParseError);
  CHECK_THROWS_AS(parse_cycles("(1 x)", 3), cgt::ParseError);
  CHECK_THROWS_AS(parse_cycles("", 3), cgt::ParseError);
}

TEST_CASE("canonical cycle strings") {
  CHECK(Permutation(4).cycle_string() == "()");
  CHECK(parse_cycles("(2 3 1)", 3).cycle_string() == "(1 2 3)");
  CHECK(parse_cycles("(3 4)(1 2)", 4).cycle_string() == "(1 2)(3 4)");
  CHECK(parse_cycles("(5 4 3)", 6).cycle_string() == "(3 5 4)");
}

TEST_CASE("image table validation") {
  CHECK_THROWS_AS(Permutation(std::vector<int>{1, 1}), cgt::DomainError);
  CHECK_THROWS_AS(Permutation(std::vector<int>{0, 1}), cgt::DomainError);
  CHECK_THROWS_AS(Permutation(std::vector<int>{3, 1}), cgt::DomainError);
}

TEST_CASE("composition applies the left factor first") {
  auto a = parse_cycles("(1 2)", 3);
  auto b = parse_cycles("(1 3)", 3);
  CHECK((a * b).cycle_string() == "(1 2 3)");
  CHECK((b * a).cycle_string() == "(1 3 2)");
  CHECK((a * b).apply(1) == b.apply(a.apply(1)));
}

TEST_CASE("inverse and identity") {
  auto p = parse_cycles("(1 4 2)(3 5)", 5);
  CHECK((p * p.inverse()).is_identity());
  CHECK((p.inverse() * p).is_identity());
  CHECK(p.inverse().apply(4) == 1);
}

TEST_CASE("element order") {
  CHECK(Permutation(3).order() == 1);
  CHECK(parse_cycles("(1 2)", 2).order() == 2);
  CHECK(parse_cycles("(1 2)(3 4 5)", 5).order() == 6);
  CHECK(parse_cycles("(1 2 3 4)(5 6 7 8 9 10)", 10).order() == 12);
}

TEST_CASE("conjugation relabels points") {
  auto p = parse_cycles("(1 2 3)", 5);
  auto g = parse_cycles("(1 4)(2 5)", 5);
  auto c = p.conjugated_by(g);
  CHECK(c.cycle_string() == "(3 4 5)");
  CHECK(c.order() == p.order());
}

TEST_CASE("smallest moved point") {
  CHECK(Permutation(6).smallest_moved() == 0);
  CHECK(parse_cycles("(3 5)", 6).smallest_moved() == 3);
}

TEST_CASE("parse and print round-trip on random permutations") {
  std::mt19937 rng(20240817);
  for (int deg : {1, 2, 5, 9, 16}) {
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<int> img(deg);
      std::iota(img.begin(), img.end(), 1);
      std::shuffle(img.begin(), img.end(), rng);
      Permutation p(img);
      CHECK(parse_cycles(p.cycle_string(), deg) == p);
    }
  }
}

TEST_CASE("image table ordering is lexicographic") {
  Permutation a(std::vector<int>{1, 2, 3});
  Permutation b(std::vector<int>{1, 3, 2});
  Permutation c(std::vector<int>{2, 1, 3});
  CHECK(a < b);
  CHECK(b < c);
  CHECK_FALSE(c < a);
}
