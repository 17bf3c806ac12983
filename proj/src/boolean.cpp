#include "cgt/boolean.hpp"

#include <algorithm>
#include <chrono>
#include <functional>

#include "cgt/errors.hpp"
#include "cgt/lattice.hpp"

namespace cgt {
namespace {

class Deadline {
 public:
  explicit Deadline(long long ms)
      : end_(std::chrono::steady_clock::now() + std::chrono::milliseconds(ms)) {}

  bool expired() {
    if (!hit_ && std::chrono::steady_clock::now() >= end_) hit_ = true;
    return hit_;
  }
  bool was_hit() const { return hit_; }

 private:
  std::chrono::steady_clock::time_point end_;
  bool hit_ = false;
};

int floor_log2(long long v) {
  int r = 0;
  while (v > 1) {
    v >>= 1;
    ++r;
  }
  return r;
}

void check_members(const PermGroup& group, const std::vector<PermGroup>& members) {
  for (const auto& k : members) {
    if (k.degree() != group.degree())
      throw DomainError("family member acts on a different domain");
    if (!k.is_subgroup_of(group))
      throw DomainError("family member is not a subgroup of the ambient group");
  }
}

std::vector<Permutation> sorted_elements(const PermGroup& h) {
  std::vector<Permutation> out = h.elements();
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Permutation> intersect_sorted(const std::vector<Permutation>& a,
                                          const std::vector<Permutation>& b) {
  std::vector<Permutation> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

// Intersection of the members with index != skip, as a sorted element list.
// With everything skipped or no members at all this is the whole group.
std::vector<Permutation> meet_except(const PermGroup& group,
                                     const std::vector<std::vector<Permutation>>& members,
                                     std::size_t skip) {
  std::vector<Permutation> acc = sorted_elements(group);
  for (std::size_t j = 0; j < members.size(); ++j)
    if (j != skip) acc = intersect_sorted(acc, members[j]);
  return acc;
}

std::vector<Permutation> concat_generators(const std::vector<PermGroup>& members,
                                           std::size_t skip) {
  std::vector<Permutation> gens;
  for (std::size_t j = 0; j < members.size(); ++j)
    if (j != skip)
      for (const auto& g : members[j].generators()) gens.push_back(g);
  return gens;
}

// Shared state for the meet and join searches over lattice nodes. Families
// are unordered; the DFS fixes one member to a conjugacy class
// representative (any family can be conjugated to arrange that) and then
// runs over plain id-ordered combinations for the rest, which may sit on
// either side of the seed.
struct FamilySearch {
  const SubgroupLattice* lat = nullptr;
  Deadline* dl = nullptr;
  bool require_normal = false;
  long long full_order = 1;
  int best = -1;
  std::vector<int> best_nodes;
  int best_bound = -1;  // node of the total meet / join of the best family
};

void meet_dfs(FamilySearch& st, std::vector<int>& members, std::vector<int>& drops,
              int m, int seed, int next_max) {
  if (st.dl->expired()) return;
  if ((!st.require_normal || st.lat->is_normal_node(m)) &&
      static_cast<int>(members.size()) > st.best) {
    st.best = static_cast<int>(members.size());
    st.best_nodes = members;
    st.best_bound = m;
  }
  long long m_order = static_cast<long long>(st.lat->nodes()[m].order);
  if (static_cast<int>(members.size()) + floor_log2(m_order) <= st.best) return;
  for (int id = next_max; id >= 0; --id) {
    if (id == seed) continue;
    if (st.dl->expired()) return;
    int m2 = st.lat->meet(m, id);
    if (m2 == m) continue;  // the new member would be redundant
    bool collapsed = false;
    std::vector<int> drops2;
    drops2.reserve(drops.size() + 1);
    for (int d : drops) {
      int d2 = st.lat->meet(d, id);
      if (d2 == m2) {
        collapsed = true;
        break;
      }
      drops2.push_back(d2);
    }
    if (collapsed) continue;
    drops2.push_back(m);
    members.push_back(id);
    meet_dfs(st, members, drops2, m2, seed, id - 1);
    members.pop_back();
  }
}

void join_dfs(FamilySearch& st, std::vector<int>& members, std::vector<int>& drops,
              int j, int seed, std::size_t next_pos,
              const std::vector<int>& pool) {
  if (st.dl->expired()) return;
  if (static_cast<int>(members.size()) > st.best) {
    st.best = static_cast<int>(members.size());
    st.best_nodes = members;
    st.best_bound = j;
  }
  long long j_order = static_cast<long long>(st.lat->nodes()[j].order);
  if (static_cast<int>(members.size()) + floor_log2(st.full_order / j_order) <=
      st.best)
    return;
  for (std::size_t pos = next_pos; pos < pool.size(); ++pos) {
    int id = pool[pos];
    if (id == seed) continue;
    if (st.dl->expired()) return;
    int j2 = st.lat->join(j, id);
    if (j2 == j) continue;  // the new member would already lie in the join
    bool collapsed = false;
    std::vector<int> drops2;
    drops2.reserve(drops.size() + 1);
    for (int d : drops) {
      int d2 = st.lat->join(d, id);
      if (d2 == j2) {
        collapsed = true;
        break;
      }
      drops2.push_back(d2);
    }
    if (collapsed) continue;
    drops2.push_back(j);
    members.push_back(id);
    join_dfs(st, members, drops2, j2, seed, pos + 1, pool);
    members.pop_back();
  }
}

std::vector<PermGroup> family_subgroups(const SubgroupLattice& lat,
                                        std::vector<int> nodes) {
  std::sort(nodes.begin(), nodes.end());
  std::vector<PermGroup> out;
  out.reserve(nodes.size());
  for (int id : nodes) out.push_back(lat.subgroup(id));
  return out;
}

std::vector<int> cyclic_nodes(const SubgroupLattice& lat) {
  std::vector<long long> elem_order(lat.elements().size());
  for (std::size_t i = 0; i < lat.elements().size(); ++i)
    elem_order[i] = lat.elements()[i].order();
  std::vector<int> out;
  for (int id = 1; id < static_cast<int>(lat.nodes().size()); ++id) {
    const auto& node = lat.nodes()[id];
    for (int e : node.set.to_indices())
      if (elem_order[e] == static_cast<long long>(node.order)) {
        out.push_back(id);
        break;
      }
  }
  return out;
}

}  // namespace

bool verify_meet_embedding(const MeetFamily& family) {
  check_members(family.group, family.members);
  if (family.members.empty()) return true;
  std::vector<std::vector<Permutation>> elems;
  elems.reserve(family.members.size());
  for (const auto& k : family.members) elems.push_back(sorted_elements(k));
  std::vector<Permutation> total = meet_except(family.group, elems, elems.size());
  for (std::size_t i = 0; i < elems.size(); ++i)
    if (meet_except(family.group, elems, i).size() == total.size()) return false;
  return true;
}

bool verify_join_embedding(const JoinFamily& family) {
  check_members(family.group, family.members);
  for (std::size_t i = 0; i < family.members.size(); ++i) {
    PermGroup others(family.group.degree(), concat_generators(family.members, i));
    bool inside = true;
    for (const auto& g : family.members[i].generators())
      if (!others.contains(g)) {
        inside = false;
        break;
      }
    if (inside) return false;
  }
  return true;
}

EmbeddingReport max_boolean_meet(const GroupContext& ctx, bool require_normal_min,
                                 const SearchBudget& budget) {
  Deadline dl(budget.time_limit_ms);
  const SubgroupLattice& lat = ctx.lattice();
  FamilySearch st;
  st.lat = &lat;
  st.dl = &dl;
  st.require_normal = require_normal_min;
  st.best = 0;
  st.best_bound = lat.full_node();

  std::vector<int> seeds;
  for (const auto& cls : lat.classes())
    if (cls.rep != lat.full_node()) seeds.push_back(cls.rep);
  std::sort(seeds.rbegin(), seeds.rend());
  for (int seed : seeds) {
    if (dl.expired()) break;
    std::vector<int> members{seed};
    std::vector<int> drops{lat.full_node()};
    meet_dfs(st, members, drops, seed, seed, lat.full_node() - 1);
  }

  EmbeddingReport out;
  out.n = st.best;
  out.kind = "meet";
  out.normal_min = lat.is_normal_node(st.best_bound);
  out.meet_family = MeetFamily{ctx.group(), family_subgroups(lat, st.best_nodes)};
  out.exhaustive = !dl.was_hit();
  out.budget = budget;
  return out;
}

EmbeddingReport max_boolean_join(const GroupContext& ctx, const SearchBudget& budget) {
  Deadline dl(budget.time_limit_ms);
  const SubgroupLattice& lat = ctx.lattice();
  std::vector<int> pool = cyclic_nodes(lat);
  FamilySearch st;
  st.lat = &lat;
  st.dl = &dl;
  st.full_order = static_cast<long long>(ctx.group().order());
  st.best = 0;
  st.best_bound = lat.trivial_node();

  for (int seed : pool) {
    if (dl.expired()) break;
    if (lat.nodes()[seed].class_id >= 0 &&
        lat.classes()[lat.nodes()[seed].class_id].rep != seed)
      continue;  // one seed per conjugacy class is enough
    std::vector<int> members{seed};
    std::vector<int> drops{lat.trivial_node()};
    join_dfs(st, members, drops, seed, seed, 0, pool);
  }

  EmbeddingReport out;
  out.n = st.best;
  out.kind = "join";
  out.join_family = JoinFamily{ctx.group(), family_subgroups(lat, st.best_nodes)};
  out.exhaustive = !dl.was_hit();
  out.budget = budget;
  return out;
}

MeetFamily join_to_meet(const JoinFamily& family) {
  if (!verify_join_embedding(family))
    throw DomainError("family is not a join embedding");
  MeetFamily out{family.group, {}};
  for (std::size_t i = 0; i < family.members.size(); ++i)
    out.members.emplace_back(family.group.degree(), concat_generators(family.members, i));
  if (!verify_meet_embedding(out))
    throw InternalError("complement of a join family must meet-embed");
  return out;
}

JoinFamily meet_to_join(const MeetFamily& family) {
  if (!verify_meet_embedding(family))
    throw DomainError("family is not a meet embedding");
  std::vector<std::vector<Permutation>> elems;
  for (const auto& k : family.members) elems.push_back(sorted_elements(k));
  JoinFamily out{family.group, {}};
  for (std::size_t i = 0; i < family.members.size(); ++i)
    out.members.emplace_back(family.group.degree(),
                             meet_except(family.group, elems, i));
  if (!verify_join_embedding(out))
    throw InternalError("complement of a meet family must join-embed");
  return out;
}

JoinFamily independent_set_to_join(const PermGroup& g,
                                   const std::vector<Permutation>& elems) {
  JoinFamily out{g, {}};
  for (const auto& e : elems) {
    if (!g.contains(e)) throw DomainError("element is not in the group");
    out.members.emplace_back(g.degree(), std::vector<Permutation>{e});
  }
  if (!verify_join_embedding(out))
    throw DomainError("elements are not independent");
  return out;
}

std::vector<Permutation> join_to_independent_set(const JoinFamily& family) {
  if (!verify_join_embedding(family))
    throw DomainError("family is not a join embedding");
  std::vector<Permutation> out;
  for (std::size_t i = 0; i < family.members.size(); ++i) {
    PermGroup others(family.group.degree(), concat_generators(family.members, i));
    std::vector<Permutation> pool = sorted_elements(family.members[i]);
    auto it = std::find_if(pool.begin(), pool.end(),
                           [&](const Permutation& p) { return !others.contains(p); });
    if (it == pool.end())
      throw InternalError("verified join member had no element outside the others");
    out.push_back(*it);
  }
  return out;
}

MeetFamily minimal_base_to_meet(const Representation& rep,
                                const std::vector<int>& base) {
  if (!is_minimal_base(rep, base))
    throw DomainError("sequence is not a minimal base");
  MeetFamily out{rep.parent(), {}};
  for (int p : base) out.members.push_back(rep.preimage_of_stabilizer({p}));
  if (!verify_meet_embedding(out))
    throw InternalError("point stabilizers of a minimal base must meet-embed");
  return out;
}

BasedRepresentation meet_to_minimal_base(const MeetFamily& family) {
  if (!verify_meet_embedding(family))
    throw DomainError("family is not a meet embedding");
  std::vector<std::vector<Permutation>> elems;
  for (const auto& k : family.members) elems.push_back(sorted_elements(k));
  PermGroup bottom(family.group.degree(),
                   meet_except(family.group, elems, elems.size()));
  if (!is_normal(family.group, bottom))
    throw DomainError("the minimum of the family is not normal");

  std::vector<Representation> parts;
  parts.reserve(family.members.size());
  for (const auto& k : family.members)
    parts.push_back(coset_action(family.group, k));
  BasedRepresentation out{union_representation(family.group, parts), {}};
  for (const auto& b : out.rep.blocks()) out.base.push_back(b.offset + 1);
  if (!is_minimal_base(out.rep, out.base))
    throw InternalError("coset union of a normal-minimum meet family must give a minimal base");
  return out;
}

EmbeddingReport exists_lattice_embedding(const GroupContext& ctx, int n,
                                         const SearchBudget& budget) {
  if (n < 0) throw DomainError("embedding dimension must be non-negative");
  Deadline dl(budget.time_limit_ms);
  const SubgroupLattice& lat = ctx.lattice();
  EmbeddingReport out;
  out.n = n;
  out.kind = "lattice";
  out.budget = budget;
  if (n == 0) {
    out.exists = ctx.group().order() == 1;
    if (out.exists) out.join_family = JoinFamily{ctx.group(), {}};
    return out;
  }

  // Atom images determine the whole embedding: a subset maps to the join of
  // its atoms. Joins are then preserved by construction, so only the top
  // anchor, injectivity and the pairwise meets need checking.
  int node_count = static_cast<int>(lat.nodes().size());
  std::vector<int> atoms;
  std::vector<int> phi(std::size_t{1} << n, lat.trivial_node());
  std::function<bool(int)> choose = [&](int from) -> bool {
    if (dl.expired()) return false;
    if (static_cast<int>(atoms.size()) == n) {
      for (unsigned mask = 1; mask < phi.size(); ++mask) {
        int low = static_cast<int>(mask & (mask - 1));
        int bit = atoms[static_cast<std::size_t>(floor_log2(mask & -mask))];
        phi[mask] = lat.join(phi[low], bit);
      }
      if (phi[phi.size() - 1] != lat.full_node()) return false;
      for (std::size_t a = 0; a < phi.size(); ++a)
        for (std::size_t b = a + 1; b < phi.size(); ++b)
          if (phi[a] == phi[b]) return false;
      for (std::size_t a = 0; a < phi.size(); ++a)
        for (std::size_t b = 0; b < phi.size(); ++b)
          if (lat.meet(phi[a], phi[b]) != phi[a & b]) return false;
      return true;
    }
    for (int id = from; id < node_count; ++id) {
      atoms.push_back(id);
      if (choose(id + 1)) return true;
      atoms.pop_back();
      if (dl.expired()) return false;
    }
    return false;
  };
  out.exists = choose(1);
  out.exhaustive = !dl.was_hit();
  if (out.exists)
    out.join_family = JoinFamily{ctx.group(), family_subgroups(lat, atoms)};
  return out;
}

GapReport hunt_gap(const GroupContext& ctx, const SearchBudget& budget) {
  EmbeddingReport anchored = max_boolean_meet(ctx, true, budget);
  EmbeddingReport free_meet = max_boolean_meet(ctx, false, budget);
  MeasureReport mu_prime = max_independent_set(ctx, budget);
  GapReport out;
  out.group = ctx.name();
  out.b2 = anchored.n;
  out.mu_prime = mu_prime.value;
  out.unconstrained_meet = free_meet.n;
  out.strict_gap = anchored.n < mu_prime.value;
  out.normal_min_achievable = anchored.n == free_meet.n;
  out.exhaustive = anchored.exhaustive && free_meet.exhaustive && mu_prime.exhaustive;
  return out;
}

}  // namespace cgt
