#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "cgt/errors.hpp"
#include "cgt/group.hpp"
#include "cgt/perm.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using cgt::Permutation;
using cgt::PermGroup;
using cgt::parse_cycles;

TEST_CASE("group order matches brute-force closure") {
  struct Case {
    std::vector<cgt::Permutation> gens;
    int degree;
  };
  std::vector<Case> cases = {
      {fixtures::sym_gens(1), 1},   {fixtures::sym_gens(2), 2},
      {fixtures::sym_gens(4), 4},   {fixtures::sym_gens(6), 6},
      {fixtures::cyc_gens(12), 12}, {fixtures::dih_gens(7), 7},
      {fixtures::alt_gens(5), 5},   {fixtures::alt_gens(6), 6},
      {{parse_cycles("(1 2 3)", 5), parse_cycles("(4 5)", 5)}, 5},
  };
  for (const auto& c : cases) {
    PermGroup g(c.degree, c.gens);
    CHECK(g.order() == oracle::closure_order(c.gens, c.degree));
  }
}

TEST_CASE("known orders") {
  CHECK(PermGroup(3, {parse_cycles("(1 2)", 3), parse_cycles("(1 2 3)", 3)})
            .order() == 6);
  CHECK(PermGroup(4, fixtures::sym_gens(4)).order() == 24);
  CHECK(PermGroup(7, fixtures::sym_gens(7)).order() == 5040);
  CHECK(PermGroup(8, fixtures::alt_gens(8)).order() == 20160);
  CHECK(PermGroup(5, cgt::PermGroup::trivial(5).generators()).order() == 1);
}

TEST_CASE("membership agrees with closure") {
  auto gens = fixtures::dih_gens(6);
  PermGroup g(6, gens);
  auto all = oracle::closure(gens, 6);
  std::set<std::vector<int>> in;
  for (const auto& p : all) in.insert(p.images());
  CHECK(g.contains(parse_cycles("(1 2 3 4 5 6)", 6)));
  CHECK_FALSE(g.contains(parse_cycles("(1 2)", 6)));
  std::mt19937 rng(7);
  int hits = 0;
  for (int t = 0; t < 200; ++t) {
    std::vector<int> img(6);
    std::iota(img.begin(), img.end(), 1);
    std::shuffle(img.begin(), img.end(), rng);
    Permutation p(img);
    bool expected = in.count(p.images()) > 0;
    CHECK(g.contains(p) == expected);
    if (expected) ++hits;
  }
  CHECK(g.contains(Permutation(6)));
  (void)hits;
}

TEST_CASE("elements enumerates each element once") {
  auto gens = fixtures::alt_gens(5);
  PermGroup g(5, gens);
  auto elems = g.elements();
  CHECK(elems.size() == 60);
  std::set<std::vector<int>> uniq;
  for (const auto& p : elems) {
    CHECK(g.contains(p));
    uniq.insert(p.images());
  }
  CHECK(uniq.size() == 60);
}

TEST_CASE("orbits") {
  PermGroup g(5, {parse_cycles("(1 2 3)", 5), parse_cycles("(4 5)", 5)});
  CHECK(g.orbit(2) == std::vector<int>{1, 2, 3});
  CHECK(g.orbit(5) == std::vector<int>{4, 5});
  auto orbs = g.orbits();
  REQUIRE(orbs.size() == 2);
  CHECK(orbs[0] == std::vector<int>{1, 2, 3});
  CHECK(orbs[1] == std::vector<int>{4, 5});
}

TEST_CASE("point stabilizers") {
  PermGroup s4(4, fixtures::sym_gens(4));
  auto stab4 = s4.stabilizer(4);
  CHECK(stab4.order() == 6);
  CHECK(stab4.degree() == 4);
  for (const auto& p : stab4.elements()) CHECK(p.apply(4) == 4);

  auto stab12 = s4.pointwise_stabilizer({1, 2});
  CHECK(stab12.order() == 2);
  CHECK(stab12.contains(parse_cycles("(3 4)", 4)));

  auto count_fixing = [&](const std::vector<int>& pts) {
    std::size_t n = 0;
    for (const auto& p : oracle::closure(s4.generators(), 4)) {
      bool ok = true;
      for (int q : pts)
        if (p.apply(q) != q) ok = false;
      if (ok) ++n;
    }
    return n;
  };
  CHECK(stab4.order() == count_fixing({4}));
  CHECK(stab12.order() == count_fixing({1, 2}));
  CHECK(s4.pointwise_stabilizer({1, 2, 3}).order() == 1);
  CHECK(s4.pointwise_stabilizer({}).order() == 24);
}

TEST_CASE("orbit-stabilizer counting along random point sequences") {
  std::mt19937 rng(20240818);
  struct Case {
    std::vector<cgt::Permutation> gens;
    int degree;
  };
  std::vector<Case> cases = {
      {fixtures::sym_gens(5), 5},
      {fixtures::dih_gens(8), 8},
      {fixtures::alt_gens(6), 6},
  };
  for (const auto& c : cases) {
    PermGroup g(c.degree, c.gens);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<int> pts;
      int k = 1 + static_cast<int>(rng() % c.degree);
      for (int i = 0; i < k; ++i)
        pts.push_back(1 + static_cast<int>(rng() % c.degree));
      std::size_t product = g.pointwise_stabilizer(pts).order();
      std::vector<int> seen;
      auto fixed = g;
      for (int p : pts) {
        bool dup = false;
        for (int q : seen) dup = dup || q == p;
        if (dup) continue;
        product *= fixed.orbit(p).size();
        fixed = fixed.stabilizer(p);
        seen.push_back(p);
      }
      CHECK(product == g.order());
    }
  }
}

TEST_CASE("stabilizer chain structure is deterministic") {
  auto gens = fixtures::sym_gens(5);
  cgt::StabilizerChain a(5, gens);
  cgt::StabilizerChain b(5, gens);
  REQUIRE(a.levels().size() == b.levels().size());
  for (std::size_t i = 0; i < a.levels().size(); ++i) {
    CHECK(a.levels()[i].base_point == b.levels()[i].base_point);
    CHECK(a.levels()[i].orbit == b.levels()[i].orbit);
  }
  std::vector<cgt::Permutation> reversed(gens.rbegin(), gens.rend());
  cgt::StabilizerChain c(5, reversed);
  CHECK(c.order() == a.order());
}

TEST_CASE("prescribed base prefix is honoured") {
  auto gens = fixtures::sym_gens(5);
  cgt::StabilizerChain chain(5, gens, {3, 1, 4});
  REQUIRE(chain.prefix_levels() == 3);
  CHECK(chain.levels()[0].base_point == 3);
  CHECK(chain.levels()[1].base_point == 1);
  CHECK(chain.levels()[2].base_point == 4);
  std::size_t orbit_product = 1;
  for (std::size_t i = 0; i < 3; ++i)
    orbit_product *= chain.levels()[i].orbit.size();
  auto stab_gens = chain.stabilizer_generators(3);
  PermGroup stab(5, stab_gens);
  CHECK(orbit_product * stab.order() == 120);
  for (const auto& p : stab.elements()) {
    CHECK(p.apply(3) == 3);
    CHECK(p.apply(1) == 1);
    CHECK(p.apply(4) == 4);
  }
}

TEST_CASE("prescribed prefix with repeated and fixed points") {
  auto gens = fixtures::cyc_gens(6);
  cgt::StabilizerChain chain(6, gens, {2, 2, 5});
  CHECK(chain.prefix_levels() == 2);
  CHECK(chain.levels()[0].base_point == 2);
  CHECK(chain.levels()[1].base_point == 5);
  CHECK(chain.levels()[1].orbit.size() == 1);
  CHECK(chain.order() == 6);
  CHECK(PermGroup(6, chain.stabilizer_generators(2)).order() == 1);
}

TEST_CASE("strip factors through the transversal") {
  auto gens = fixtures::sym_gens(4);
  cgt::StabilizerChain chain(4, gens);
  std::mt19937 rng(11);
  for (int t = 0; t < 30; ++t) {
    auto p = oracle::random_element(gens, 4, rng);
    auto [residue, level] = chain.strip(p);
    CHECK(level == chain.levels().size());
    CHECK(residue.is_identity());
  }
  auto odd = parse_cycles("(1 2)", 4);
  cgt::StabilizerChain alt(4, fixtures::alt_gens(4));
  auto [residue, level] = alt.strip(odd);
  bool rejected = level < alt.levels().size() || !residue.is_identity();
  CHECK(rejected);
}

TEST_CASE("conjugated groups") {
  PermGroup g(5, fixtures::dih_gens(5));
  auto c = g.conjugated_by(parse_cycles("(1 5 2)", 5));
  CHECK(c.order() == g.order());
  CHECK_FALSE(c.same_subgroup_as(g));
  auto back = c.conjugated_by(parse_cycles("(1 5 2)", 5).inverse());
  CHECK(back.same_subgroup_as(g));
}

TEST_CASE("subgroup and normality tests") {
  PermGroup s3(3, fixtures::sym_gens(3));
  PermGroup a3(3, {parse_cycles("(1 2 3)", 3)});
  PermGroup flip(3, {parse_cycles("(1 2)", 3)});
  CHECK(a3.is_subgroup_of(s3));
  CHECK(flip.is_subgroup_of(s3));
  CHECK(cgt::is_normal(s3, a3));
  CHECK_FALSE(cgt::is_normal(s3, flip));
  PermGroup v4(4, {parse_cycles("(1 2)(3 4)", 4), parse_cycles("(1 3)(2 4)", 4)});
  PermGroup s4(4, fixtures::sym_gens(4));
  CHECK(cgt::is_normal(s4, v4));
}

TEST_CASE("group text format round-trip") {
  std::string text =
      "# five points\n"
      "degree 5\n"
      "\n"
      "(1 2 3 4 5)\n"
      "(2 5)(3 4)  # reflection\n";
  std::istringstream in(text);
  PermGroup g = cgt::read_group(in);
  CHECK(g.degree() == 5);
  CHECK(g.order() == 10);
  std::ostringstream out;
  cgt::write_group(out, g);
  std::istringstream again(out.str());
  PermGroup h = cgt::read_group(again);
  CHECK(h.degree() == 5);
  CHECK(h.order() == 10);
  CHECK(h.same_subgroup_as(g));
}

TEST_CASE("group text format errors") {
  std::istringstream missing("(1 2)\n");
  CHECK_THROWS_AS(cgt::read_group(missing), cgt::ParseError);
  std::istringstream bad_degree("degree zero\n");
  CHECK_THROWS_AS(cgt::read_group(bad_degree), cgt::ParseError);
  std::istringstream bad_cycle("degree 3\n(1 9)\n");
  CHECK_THROWS_AS(cgt::read_group(bad_cycle), cgt::ParseError);
  std::istringstream empty("");
  CHECK_THROWS_AS(cgt::read_group(empty), cgt::ParseError);
}

TEST_CASE("trivial group edge cases") {
  auto t = PermGroup::trivial(1);
  CHECK(t.order() == 1);
  CHECK(t.degree() == 1);
  CHECK(t.elements().size() == 1);
  CHECK(t.orbit(1) == std::vector<int>{1});
  PermGroup one_point(1, {cgt::Permutation(1)});
  CHECK(one_point.order() == 1);
}
