#pragma once

#include <cstdint>
#include <iosfwd>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cgt/group.hpp"
#include "cgt/perm.hpp"

namespace cgt {

// Subset of a fixed element universe, stored as a bit vector.
class ElementSet {
 public:
  explicit ElementSet(int universe = 0);

  int universe() const { return universe_; }
  void set(int i);
  bool test(int i) const;
  std::size_t count() const;
  bool is_subset_of(const ElementSet& other) const;

  ElementSet operator&(const ElementSet& other) const;
  ElementSet operator|(const ElementSet& other) const;
  bool operator==(const ElementSet& other) const = default;

  // Orders sets by their smallest differing element; the set containing it
  // comes first.  On sets of equal size this is the lexicographic order of
  // the sorted element lists.
  bool setlex_less(const ElementSet& other) const;

  std::vector<int> to_indices() const;
  std::uint64_t hash() const;

  // Little-endian nibbles: hex digit i holds elements 4i .. 4i+3.
  std::string to_hex() const;
  static ElementSet from_hex(const std::string& hex, int universe);

  const std::vector<std::uint64_t>& words() const { return words_; }

 private:
  int universe_;
  std::vector<std::uint64_t> words_;
};

// Every subgroup of a finite permutation group, organised by conjugacy
// class, with meets, joins, the cover relation and longest subgroup chains.
//
// Nodes are sorted by (order, setlex) and identified by their index; node 0
// is always the trivial subgroup and the last node is the whole group.
// Conjugacy classes are numbered by first appearance in that node order, and
// the representative of a class is its setlex-least member.
class SubgroupLattice {
 public:
  struct Node {
    ElementSet set;
    std::size_t order = 0;
    int class_id = -1;
    // w with rep^w = this node, elementwise x -> w^-1 x w.
    Permutation from_rep;
    std::vector<int> gens;  // element indices generating the subgroup
  };

  struct ClassInfo {
    int rep = -1;
    std::vector<int> members;  // node ids, ascending
  };

  SubgroupLattice(const PermGroup& g, std::size_t max_order);
  explicit SubgroupLattice(std::istream& in);  // the format save() writes

  static SubgroupLattice load(std::istream& in);
  void save(std::ostream& out) const;

  const PermGroup& group() const { return group_; }
  const std::vector<Permutation>& elements() const { return elems_; }
  int element_index(const Permutation& p) const;  // -1 if not in the group

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<ClassInfo>& classes() const { return classes_; }
  int trivial_node() const { return 0; }
  int full_node() const { return static_cast<int>(nodes_.size()) - 1; }

  int node_of_set(const ElementSet& s) const;  // -1 if absent
  int node_of_subgroup(const PermGroup& h) const;
  PermGroup subgroup(int id) const;
  bool is_normal_node(int id) const;
  int conjugate_node(int id, const Permutation& w) const;

  int meet(int a, int b) const;
  int join(int a, int b) const;
  int core_of(int id) const;

  std::size_t longest_chain_length() const;
  // Node ids of one maximal-length chain, ascending from the trivial
  // subgroup to the whole group.
  std::vector<int> longest_chain_witness() const;

  // Pairs (lower, upper) with no subgroup strictly between, ascending.
  const std::vector<std::pair<int, int>>& cover_edges() const;

  std::string to_dot() const;

 private:
  void index_elements(const PermGroup& g);
  void finish_construction();  // conj maps, node map, classes
  int multiply(int a, int b) const;
  int conjugate_element(int x, const Permutation& w) const;
  ElementSet closure_from(const ElementSet& start,
                          const std::vector<int>& gens) const;
  void ensure_chain_dp() const;

  PermGroup group_ = PermGroup::trivial(1);
  std::vector<Permutation> elems_;
  std::vector<Node> nodes_;
  std::vector<ClassInfo> classes_;

  // conj_maps_[i][x]: index of g_i^-1 x g_i for generator g_i
  std::vector<std::vector<int>> conj_maps_;
  std::unordered_map<std::uint64_t, std::vector<int>> nodes_by_hash_;

  mutable std::mutex cache_mutex_;
  mutable std::unordered_map<std::uint64_t, int> join_memo_;
  mutable std::optional<std::vector<std::pair<int, int>>> covers_;
  mutable std::optional<std::vector<std::size_t>> chain_len_;
  mutable std::optional<std::vector<int>> chain_best_;
};

}  // namespace cgt
