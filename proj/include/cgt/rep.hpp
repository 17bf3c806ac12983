#pragma once

#include <string>
#include <vector>

#include "cgt/group.hpp"
#include "cgt/perm.hpp"

namespace cgt {

struct RepBlock {
  std::string label;
  int offset = 0;  // first point of the block is offset + 1
  int size = 0;
};

// A permutation action of a parent group, given by the images of its
// generators on a fresh point set, organised as a disjoint union of blocks.
// The action need not be faithful.
class Representation {
 public:
  Representation(PermGroup parent, int rep_degree,
                 std::vector<Permutation> gen_images,
                 std::vector<RepBlock> blocks);

  static Representation natural(const PermGroup& g);

  const PermGroup& parent() const { return parent_; }
  int rep_degree() const { return rep_degree_; }
  const std::vector<Permutation>& generator_images() const {
    return gen_images_;
  }
  const std::vector<RepBlock>& blocks() const { return blocks_; }

  // Group induced on the rep points.  A degree-0 representation induces the
  // trivial group on one padding point so that downstream code always has a
  // group to work with.
  const PermGroup& action() const { return action_; }

  // Elements of the parent whose induced action fixes every listed rep point.
  PermGroup preimage_of_stabilizer(const std::vector<int>& rep_points) const;

  PermGroup kernel() const { return preimage_of_stabilizer(all_points()); }
  bool is_faithful() const { return kernel().order() == 1; }

 private:
  std::vector<int> all_points() const;

  PermGroup parent_;
  int rep_degree_;
  std::vector<Permutation> gen_images_;
  std::vector<RepBlock> blocks_;
  PermGroup action_;
};

struct CosetSpace {
  Representation rep;
  // reps[k] is the stored representative of the coset at point k + 1; the
  // subgroup itself sits at point 1 with the identity representative.
  std::vector<Permutation> reps;
};

// Action of g on the right cosets of its subgroup h, numbered breadth-first
// from the coset of the identity.
CosetSpace coset_space(const PermGroup& g, const PermGroup& h);
Representation coset_action(const PermGroup& g, const PermGroup& h);

// Blocks of the parts concatenated into one action.  All parts must have the
// same parent group.
Representation union_representation(const PermGroup& parent,
                                    const std::vector<Representation>& parts);

// Largest normal subgroup of g contained in h.
PermGroup core(const PermGroup& g, const PermGroup& h);

std::string subgroup_label(const PermGroup& h);

}  // namespace cgt
