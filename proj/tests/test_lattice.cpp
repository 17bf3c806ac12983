#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "cgt/errors.hpp"
#include "cgt/group.hpp"
#include "cgt/lattice.hpp"
#include "cgt/perm.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using cgt::ElementSet;
using cgt::Permutation;
using cgt::PermGroup;
using cgt::SubgroupLattice;
using cgt::parse_cycles;

namespace {

constexpr std::size_t kCap = 2000;

std::set<std::vector<int>> lattice_subgroup_sets(const SubgroupLattice& lat) {
  std::set<std::vector<int>> out;
  for (const auto& nd : lat.nodes()) out.insert(nd.set.to_indices());
  return out;
}

std::set<std::vector<int>> oracle_subgroup_sets(const PermGroup& g) {
  auto elems = g.elements();
  std::sort(elems.begin(), elems.end());
  auto find_index = [&](const Permutation& p) {
    return static_cast<int>(
        std::lower_bound(elems.begin(), elems.end(), p) - elems.begin());
  };
  std::set<std::vector<int>> out;
  for (const auto& sub : oracle::all_subgroups(g.elements(), g.degree())) {
    std::vector<int> idx;
    for (const auto& p : sub) idx.push_back(find_index(p));
    std::sort(idx.begin(), idx.end());
    out.insert(idx);
  }
  return out;
}

}  // namespace

TEST_CASE("element sets") {
  ElementSet a(70), b(70);
  a.set(3);
  a.set(64);
  b.set(3);
  CHECK(a.count() == 2);
  CHECK(b.is_subset_of(a));
  CHECK_FALSE(a.is_subset_of(b));
  CHECK((a & b).to_indices() == std::vector<int>{3});
  CHECK((a | b).count() == 2);
  CHECK(b.setlex_less(a) == false);
  ElementSet c(70);
  c.set(2);
  CHECK(c.setlex_less(a));
  CHECK(ElementSet::from_hex(a.to_hex(), 70) == a);
  CHECK_THROWS_AS(ElementSet::from_hex("zz", 8), cgt::ParseError);
  CHECK_THROWS_AS(ElementSet::from_hex("f", 8), cgt::ParseError);
  // Bit 3 of the last nibble would be element 71.
  CHECK_THROWS_AS(ElementSet::from_hex(std::string(17, '0') + "8", 70),
                  cgt::ParseError);
}

TEST_CASE("setlex order matches sorted index lists on equal sizes") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    ElementSet a(130), b(130);
    std::vector<int> ia, ib;
    for (int i = 0; i < 6; ++i) {
      int x = static_cast<int>(rng() % 130);
      int y = static_cast<int>(rng() % 130);
      if (!a.test(x)) {
        a.set(x);
        ia.push_back(x);
      }
      if (!b.test(y)) {
        b.set(y);
        ib.push_back(y);
      }
    }
    std::sort(ia.begin(), ia.end());
    std::sort(ib.begin(), ib.end());
    if (ia.size() != ib.size() || ia == ib) continue;
    CHECK(a.setlex_less(b) == (ia < ib));
  }
}

TEST_CASE("subgroup counts of small groups") {
  struct Row {
    std::vector<Permutation> gens;
    int degree;
    std::size_t nodes;
    std::size_t classes;
  };
  std::vector<Row> rows = {
      {fixtures::sym_gens(3), 3, 6, 4},
      {fixtures::sym_gens(4), 4, 30, 11},
      {fixtures::alt_gens(4), 4, 10, 5},
      {{parse_cycles("(1 2 3 4)", 4), parse_cycles("(1 3)", 4)}, 4, 10, 8},
      {fixtures::q8_gens(), 8, 6, 6},
      {fixtures::cyc_gens(12), 12, 6, 6},
  };
  for (const auto& row : rows) {
    SubgroupLattice lat(PermGroup(row.degree, row.gens), kCap);
    CHECK(lat.nodes().size() == row.nodes);
    CHECK(lat.classes().size() == row.classes);
  }
}

TEST_CASE("every subgroup is found, and nothing else") {
  struct Row {
    std::vector<Permutation> gens;
    int degree;
  };
  std::vector<Row> rows = {
      {fixtures::sym_gens(4), 4},
      {fixtures::alt_gens(4), 4},
      {fixtures::dih_gens(6), 6},
      {fixtures::q8_gens(), 8},
      {fixtures::cyc_gens(12), 12},
  };
  for (const auto& row : rows) {
    PermGroup g(row.degree, row.gens);
    SubgroupLattice lat(g, kCap);
    CHECK(lattice_subgroup_sets(lat) == oracle_subgroup_sets(g));
  }
}

TEST_CASE("larger subgroup counts") {
  SubgroupLattice s5(PermGroup(5, fixtures::sym_gens(5)), kCap);
  CHECK(s5.nodes().size() == 156);
  CHECK(s5.classes().size() == 19);
}

TEST_CASE("nodes are sorted and classified consistently") {
  PermGroup g(5, fixtures::sym_gens(5));
  SubgroupLattice lat(g, kCap);
  const auto& nodes = lat.nodes();
  CHECK(nodes.front().order == 1);
  CHECK(nodes.back().order == 120);
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    bool ordered = nodes[i - 1].order < nodes[i].order ||
                   (nodes[i - 1].order == nodes[i].order &&
                    nodes[i - 1].set.setlex_less(nodes[i].set));
    CHECK(ordered);
  }
  for (std::size_t c = 0; c < lat.classes().size(); ++c) {
    const auto& cls = lat.classes()[c];
    CHECK(cls.rep == cls.members.front());
    CHECK(nodes[cls.rep].from_rep.is_identity());
    for (int m : cls.members) {
      CHECK(nodes[m].class_id == static_cast<int>(c));
      CHECK(lat.conjugate_node(cls.rep, nodes[m].from_rep) == m);
    }
  }
}

TEST_CASE("stored generators generate each node") {
  PermGroup g(4, fixtures::sym_gens(4));
  SubgroupLattice lat(g, kCap);
  for (std::size_t id = 0; id < lat.nodes().size(); ++id) {
    auto h = lat.subgroup(static_cast<int>(id));
    CHECK(h.order() == lat.nodes()[id].order);
    CHECK(lat.node_of_subgroup(h) == static_cast<int>(id));
  }
}

TEST_CASE("normality matches the direct check") {
  PermGroup g(4, fixtures::sym_gens(4));
  SubgroupLattice lat(g, kCap);
  std::size_t normal_count = 0;
  for (std::size_t id = 0; id < lat.nodes().size(); ++id) {
    bool direct = cgt::is_normal(g, lat.subgroup(static_cast<int>(id)));
    CHECK(lat.is_normal_node(static_cast<int>(id)) == direct);
    if (direct) ++normal_count;
  }
  CHECK(normal_count == 4);
}

TEST_CASE("meets and joins agree with brute force") {
  PermGroup g(6, fixtures::dih_gens(6));
  SubgroupLattice lat(g, kCap);
  std::mt19937 rng(5);
  int n = static_cast<int>(lat.nodes().size());
  for (int trial = 0; trial < 60; ++trial) {
    int a = static_cast<int>(rng() % n);
    int b = static_cast<int>(rng() % n);
    int m = lat.meet(a, b);
    int j = lat.join(a, b);
    CHECK(lat.nodes()[m].set ==
          (lat.nodes()[a].set & lat.nodes()[b].set));
    CHECK(lat.meet(b, a) == m);
    CHECK(lat.join(b, a) == j);
    auto ga = lat.subgroup(a).generators();
    auto gb = lat.subgroup(b).generators();
    ga.insert(ga.end(), gb.begin(), gb.end());
    CHECK(lat.nodes()[j].order == oracle::closure_order(ga, 6));
    CHECK(lat.nodes()[a].set.is_subset_of(lat.nodes()[j].set));
    CHECK(lat.nodes()[b].set.is_subset_of(lat.nodes()[j].set));
  }
  CHECK(lat.join(lat.trivial_node(), lat.full_node()) == lat.full_node());
  CHECK(lat.meet(lat.trivial_node(), lat.full_node()) == lat.trivial_node());
}

TEST_CASE("cores") {
  PermGroup g(4, fixtures::sym_gens(4));
  SubgroupLattice lat(g, kCap);
  PermGroup d4(4, {parse_cycles("(1 2 3 4)", 4), parse_cycles("(1 3)", 4)});
  int d4_node = lat.node_of_subgroup(d4);
  CHECK(lat.nodes()[lat.core_of(d4_node)].order == 4);
  int stab_node = lat.node_of_subgroup(g.stabilizer(4));
  CHECK(lat.core_of(stab_node) == lat.trivial_node());
  PermGroup a4(4, fixtures::alt_gens(4));
  int a4_node = lat.node_of_subgroup(a4);
  CHECK(lat.core_of(a4_node) == a4_node);
  CHECK(lat.core_of(lat.full_node()) == lat.full_node());
}

TEST_CASE("longest chain lengths") {
  struct Row {
    std::vector<Permutation> gens;
    int degree;
    std::size_t len;
  };
  std::vector<Row> rows = {
      {fixtures::sym_gens(2), 2, 1},
      {fixtures::sym_gens(3), 3, 2},
      {fixtures::sym_gens(4), 4, 4},
      {fixtures::sym_gens(5), 5, 5},
      {fixtures::alt_gens(4), 4, 3},
      {fixtures::q8_gens(), 8, 3},
      {fixtures::cyc_gens(12), 12, 3},
      {fixtures::cyc_gens(1), 1, 0},
  };
  for (const auto& row : rows) {
    SubgroupLattice lat(PermGroup(row.degree, row.gens), kCap);
    CHECK(lat.longest_chain_length() == row.len);
    auto chain = lat.longest_chain_witness();
    REQUIRE(chain.size() == row.len + 1);
    CHECK(chain.front() == lat.trivial_node());
    CHECK(chain.back() == lat.full_node());
    for (std::size_t i = 1; i < chain.size(); ++i) {
      CHECK(lat.nodes()[chain[i - 1]].order < lat.nodes()[chain[i]].order);
      CHECK(lat.nodes()[chain[i - 1]].set.is_subset_of(
          lat.nodes()[chain[i]].set));
    }
  }
}

TEST_CASE("cover relation on the symmetric group of degree four") {
  PermGroup g(4, fixtures::sym_gens(4));
  SubgroupLattice lat(g, kCap);
  const auto& edges = lat.cover_edges();
  std::set<std::pair<int, int>> edge_set(edges.begin(), edges.end());
  CHECK(edge_set.size() == edges.size());
  int n = static_cast<int>(lat.nodes().size());
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a == b) continue;
      const auto& sa = lat.nodes()[a].set;
      const auto& sb = lat.nodes()[b].set;
      if (!(sa.is_subset_of(sb) && lat.nodes()[a].order < lat.nodes()[b].order))
        continue;
      bool has_between = false;
      for (int c = 0; c < n && !has_between; ++c) {
        if (c == a || c == b) continue;
        if (lat.nodes()[c].order <= lat.nodes()[a].order) continue;
        if (lat.nodes()[c].order >= lat.nodes()[b].order) continue;
        if (sa.is_subset_of(lat.nodes()[c].set) &&
            lat.nodes()[c].set.is_subset_of(sb))
          has_between = true;
      }
      CHECK(edge_set.count({a, b}) == (has_between ? 0u : 1u));
    }
  }
}

TEST_CASE("quaternion group cover count") {
  SubgroupLattice lat(PermGroup(8, fixtures::q8_gens()), kCap);
  CHECK(lat.cover_edges().size() == 7);
  auto dot = lat.to_dot();
  CHECK(dot.find("peripheries=2") != std::string::npos);
  CHECK(dot.find("n0 -- n1") != std::string::npos);
}

TEST_CASE("save and load round-trip") {
  PermGroup g(4, fixtures::sym_gens(4));
  SubgroupLattice lat(g, kCap);
  std::ostringstream out;
  lat.save(out);
  std::ostringstream out2;
  lat.save(out2);
  CHECK(out.str() == out2.str());

  std::istringstream in(out.str());
  SubgroupLattice loaded = SubgroupLattice::load(in);
  REQUIRE(loaded.nodes().size() == lat.nodes().size());
  for (std::size_t i = 0; i < lat.nodes().size(); ++i) {
    CHECK(loaded.nodes()[i].set == lat.nodes()[i].set);
    CHECK(loaded.nodes()[i].class_id == lat.nodes()[i].class_id);
    CHECK(loaded.nodes()[i].from_rep == lat.nodes()[i].from_rep);
  }
  CHECK(loaded.classes().size() == lat.classes().size());
  CHECK(loaded.longest_chain_length() == lat.longest_chain_length());
  CHECK(loaded.join(3, 7) == lat.join(3, 7));
}

TEST_CASE("load rejects bad files") {
  std::istringstream junk("not json");
  CHECK_THROWS_AS(SubgroupLattice::load(junk), cgt::ParseError);
  std::istringstream wrong_format(R"({"format":"something-else","version":1})");
  CHECK_THROWS_AS(SubgroupLattice::load(wrong_format), cgt::ParseError);
  std::istringstream wrong_version(
      R"({"format":"subgroup-lattice","version":999})");
  CHECK_THROWS_AS(SubgroupLattice::load(wrong_version), cgt::ParseError);
}

TEST_CASE("order limit") {
  PermGroup g(5, fixtures::sym_gens(5));
  CHECK_THROWS_AS(SubgroupLattice(g, 100), cgt::BudgetError);
}

TEST_CASE("trivial group lattice") {
  SubgroupLattice lat(PermGroup::trivial(3), kCap);
  CHECK(lat.nodes().size() == 1);
  CHECK(lat.trivial_node() == lat.full_node());
  CHECK(lat.longest_chain_length() == 0);
  CHECK(lat.longest_chain_witness() == std::vector<int>{0});
  CHECK(lat.cover_edges().empty());
}
