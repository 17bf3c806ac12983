#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "json.hpp"

#include "cgt/group.hpp"
#include "cgt/lattice.hpp"
#include "cgt/rep.hpp"

namespace cgt {

// Caps for the searches that sweep over representations or elements.
// Wall-clock limits are cooperative: they are checked between search
// branches, and a search that runs out of time returns its best result
// so far with exhaustive=false rather than throwing.
struct SearchBudget {
  int max_orbits = 3;
  int max_total_degree = 400;
  int max_classes = 64;
  long long time_limit_ms = 600000;
};

// Result of one invariant computation. The witness layout depends on the
// invariant: bases carry points plus orbit-qualified labels, chains carry
// generator lists per subgroup, element searches carry cycle strings.
struct MeasureReport {
  std::string group;
  std::string invariant;
  int value = 0;
  bool exhaustive = true;
  nlohmann::json witness;
  SearchBudget budget;
  long long elapsed_ms = 0;
};

// A group under study: display name, the group itself, whether the catalog
// marks it non-abelian simple, and a lazily built subgroup lattice shared
// by every invariant that needs one. Thread-safe to share by const
// reference.
class GroupContext {
 public:
  GroupContext(std::string name, PermGroup group, bool non_abelian_simple = false,
               std::size_t lattice_cap = 2000);

  const std::string& name() const { return name_; }
  const PermGroup& group() const { return group_; }
  bool non_abelian_simple() const { return simple_; }
  std::size_t lattice_cap() const { return lattice_cap_; }

  // Built on first use; throws BudgetError when the group order exceeds
  // the cap given at construction.
  const SubgroupLattice& lattice() const;

  // Installs a lattice loaded from a cache file. Rejects a lattice whose
  // group does not match.
  void adopt_lattice(std::shared_ptr<SubgroupLattice> lat);

 private:
  std::string name_;
  PermGroup group_;
  bool simple_;
  std::size_t lattice_cap_;
  mutable std::mutex mutex_;
  mutable std::shared_ptr<SubgroupLattice> lattice_;
};

// A representation together with a distinguished base for it.
struct BasedRepresentation {
  Representation rep;
  std::vector<int> base;
};

// Sequence predicates. A base is a sequence of points whose pointwise
// stabilizer equals the kernel of the representation; irredundant means no
// point is fixed by the stabilizer of its predecessors; a minimal base is a
// base in which no point is fixed by the stabilizer of the other points.
bool is_base(const Representation& rep, const std::vector<int>& seq);
bool is_irredundant(const Representation& rep, const std::vector<int>& seq);
bool is_minimal_base(const Representation& rep, const std::vector<int>& seq);

// Repeatedly appends the smallest point moved by the stabilizer of the
// points chosen so far. The result is always an irredundant base.
std::vector<int> greedy_irredundant_base(const Representation& rep);

// Exact searches over one representation.
MeasureReport max_irredundant_base(const Representation& rep,
                                   const SearchBudget& budget = {});
MeasureReport min_base(const Representation& rep,
                       const SearchBudget& budget = {});
MeasureReport max_minimal_base(const Representation& rep,
                               const SearchBudget& budget = {});

// Turns a strictly descending subgroup chain (chain[0] = g, chain.back()
// trivial) into the union of the coset actions on its proper subgroups,
// based at the identity cosets in chain order.
BasedRepresentation chain_to_irredundant_base(const PermGroup& g,
                                              const std::vector<PermGroup>& chain);

// Group invariants. b1/b2/b3 are the maxima over all permutation
// representations of the maximum irredundant, maximum minimal, and minimum
// base sizes.
MeasureReport b1(const GroupContext& ctx, const SearchBudget& budget = {});
MeasureReport b2(const GroupContext& ctx, const SearchBudget& budget = {});
MeasureReport b3(const GroupContext& ctx, const SearchBudget& budget = {});

// Length of the longest strictly descending subgroup chain, reported with
// one witness chain.
MeasureReport subgroup_chain_length(const GroupContext& ctx,
                                    const SearchBudget& budget = {});

// Minimum number of generators.
MeasureReport min_generator_count(const GroupContext& ctx,
                                  const SearchBudget& budget = {});
// Maximum size of an independent generating set / of an independent set.
MeasureReport max_independent_generating_set(const GroupContext& ctx,
                                             const SearchBudget& budget = {});
MeasureReport max_independent_set(const GroupContext& ctx,
                                  const SearchBudget& budget = {});

// max over subgroup-class representatives H of invariant(H); "dprime" is
// the lift of "d". Supported inner invariants: d, mu, muprime, l.
MeasureReport lift_max_over_subgroups(const std::string& invariant,
                                      const GroupContext& ctx,
                                      const SearchBudget& budget = {});

// Dispatch by CLI name: b1, b2, b3, l, d, dprime, mu, muprime.
MeasureReport compute_invariant(const std::string& invariant,
                                const GroupContext& ctx,
                                const SearchBudget& budget = {});

// Orbit-qualified display label of a representation point, e.g.
// "natural[3]" or "cosets of <(1 2 3)>[1]".
std::string point_label(const Representation& rep, int point);

}  // namespace cgt
