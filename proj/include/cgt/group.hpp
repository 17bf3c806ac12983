#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cgt/perm.hpp"

namespace cgt {

// Schreier-Sims stabilizer chain. Base points are chosen deterministically:
// the first base point is the smallest point moved by any generator, and
// every later level uses the smallest point moved by the residue that
// created it. A base prefix can be prescribed; prescribed points always
// get a level of their own (possibly with a singleton orbit), so the
// subgroup fixing the first k prescribed points is generated by the
// generators sitting at levels k and deeper.
class StabilizerChain {
public:
  struct Level {
    int base_point = 0;
    std::vector<Permutation> gens;       // generators assigned to this level
    std::vector<int> orbit;              // discovery order; orbit[0] == base_point
    std::vector<int> slot;               // point -> index into reps, or -1
    std::vector<Permutation> reps;       // reps[slot[p]] maps base_point to p
  };

  StabilizerChain(int degree, const std::vector<Permutation>& gens,
                  const std::vector<int>& base_prefix = {});

  int degree() const { return degree_; }
  long long order() const;
  bool contains(const Permutation& p) const;

  // Divides out transversal representatives level by level. Returns the
  // residue and the level index where sifting stopped (levels_.size() on
  // a full sift; the residue is the identity exactly when p is a member).
  std::pair<Permutation, std::size_t> strip(const Permutation& p) const;

  const std::vector<Level>& levels() const { return levels_; }
  std::size_t prefix_levels() const { return prefix_levels_; }

  // Generators of the subgroup fixing the first k prescribed base points.
  // Requires k <= prefix length passed at construction.
  std::vector<Permutation> stabilizer_generators(std::size_t k) const;

  // Union of all level generators, deduplicated; generates the full group.
  std::vector<Permutation> strong_generators() const;

  // Deterministic enumeration of all group elements.
  std::vector<Permutation> elements() const;

private:
  void extend_orbit(std::size_t level_index);
  std::vector<Permutation> level_gens_from(std::size_t level_index) const;
  bool insert(const Permutation& p);
  void verify_from_bottom();
  std::size_t new_level(const Permutation& mover);

  int degree_;
  std::vector<int> prefix_;
  std::size_t prefix_levels_ = 0;
  std::vector<Level> levels_;
};

// Finite permutation group, immutable after construction. The stabilizer
// chain is built eagerly, so sharing a const group across threads is safe.
class PermGroup {
public:
  PermGroup(int degree, std::vector<Permutation> gens);
  static PermGroup trivial(int degree);

  int degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return gens_; }
  long long order() const { return chain_.order(); }
  bool is_trivial() const { return order() == 1; }
  bool contains(const Permutation& p) const;
  const StabilizerChain& chain() const { return chain_; }

  std::vector<int> orbit(int point) const;
  std::vector<std::vector<int>> orbits() const;  // each sorted; sorted by first point

  // Subgroup fixing every listed point, on the parent's domain.
  PermGroup pointwise_stabilizer(const std::vector<int>& points) const;
  PermGroup stabilizer(int point) const;

  std::vector<Permutation> elements() const { return chain_.elements(); }

  PermGroup conjugated_by(const Permutation& g) const;

  bool is_subgroup_of(const PermGroup& big) const;
  bool same_subgroup_as(const PermGroup& other) const;

private:
  int degree_;
  std::vector<Permutation> gens_;
  StabilizerChain chain_;
};

bool is_normal(const PermGroup& g, const PermGroup& h);  // requires h <= g

// Reads the group file format: first non-comment line "degree n", then one
// generator per line in cycle notation. '#' starts a comment.
PermGroup read_group(std::istream& in);
PermGroup read_group_file(const std::string& path);
void write_group(std::ostream& out, const PermGroup& g);

}  // namespace cgt
