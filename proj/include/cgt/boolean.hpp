#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cgt/group.hpp"
#include "cgt/measures.hpp"
#include "cgt/rep.hpp"

namespace cgt {

// Ordered family K_1..K_n of subgroups of a common group, read as a
// meet-semilattice image of the Boolean lattice B(n): the subset I maps to
// K_I, the intersection of the K_i with i in I, and the empty set maps to
// the whole group.
struct MeetFamily {
  PermGroup group;
  std::vector<PermGroup> members;
};

// Dual family H_1..H_n: the subset I maps to the subgroup generated by the
// H_i with i in I, and the empty set maps to the trivial subgroup.
struct JoinFamily {
  PermGroup group;
  std::vector<PermGroup> members;
};

// Outcome of an embedding search or decision.
struct EmbeddingReport {
  int n = 0;
  std::string kind;  // "meet", "join", or "lattice"
  bool exists = true;
  bool normal_min = false;  // meet searches: the total intersection is normal
  std::optional<MeetFamily> meet_family;
  std::optional<JoinFamily> join_family;
  bool exhaustive = true;
  SearchBudget budget;
};

// True iff all 2^n derived subgroups are pairwise distinct. Checked through
// the per-index criterion: for meets, no drop-one intersection may equal the
// full intersection; for joins, no member may lie inside the join of the
// others.
bool verify_meet_embedding(const MeetFamily& family);
bool verify_join_embedding(const JoinFamily& family);

// Largest n admitting a verified family. The meet search can additionally
// require the minimal element (the full intersection) to be normal.
EmbeddingReport max_boolean_meet(const GroupContext& ctx, bool require_normal_min,
                                 const SearchBudget& budget = {});
EmbeddingReport max_boolean_join(const GroupContext& ctx,
                                 const SearchBudget& budget = {});

// Order-reversing conversions between the two family kinds: the i-th output
// member is derived from all input members except the i-th. Both require a
// verified input and produce a verified output of the same size.
MeetFamily join_to_meet(const JoinFamily& family);
JoinFamily meet_to_join(const MeetFamily& family);

// An independent set (no element lies in the subgroup generated by the
// others) yields a verified join family of cyclic subgroups, and back.
JoinFamily independent_set_to_join(const PermGroup& g,
                                   const std::vector<Permutation>& elems);
std::vector<Permutation> join_to_independent_set(const JoinFamily& family);

// A minimal base yields the family of its point stabilizers, whose total
// intersection is the representation kernel; a verified meet family with a
// normal minimum yields the union of the coset actions on its members,
// based at the identity cosets.
MeetFamily minimal_base_to_meet(const Representation& rep,
                                const std::vector<int>& base);
BasedRepresentation meet_to_minimal_base(const MeetFamily& family);

// Whether B(n) embeds into the subgroup lattice preserving both operations,
// with bottom mapped to the trivial subgroup and top to the whole group.
EmbeddingReport exists_lattice_embedding(const GroupContext& ctx, int n,
                                         const SearchBudget& budget = {});

// One catalog row of the b2-versus-mu' comparison.
struct GapReport {
  std::string group;
  int b2 = 0;
  int mu_prime = 0;
  int unconstrained_meet = 0;
  bool strict_gap = false;            // b2 < mu_prime
  bool normal_min_achievable = true;  // normal-minimum max equals the free max
  bool exhaustive = true;
};

GapReport hunt_gap(const GroupContext& ctx, const SearchBudget& budget = {});

}  // namespace cgt
