#include "cgt/measures.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <utility>

#include "cgt/boolean.hpp"
#include "cgt/errors.hpp"

namespace cgt {
namespace {

using nlohmann::json;

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  long long ms() const {
    auto d = std::chrono::steady_clock::now() - start_;
    return std::chrono::duration_cast<std::chrono::milliseconds>(d).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

// Cooperative wall-clock limit, checked between search branches. Once hit it
// stays hit, so an unwinding search cannot flicker back to exhaustive.
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

std::vector<int> moved_points(const std::vector<Permutation>& gens, int degree) {
  std::vector<int> out;
  for (int p = 1; p <= degree; ++p)
    for (const auto& g : gens)
      if (g(p) != p) {
        out.push_back(p);
        break;
      }
  return out;
}

// Order and generators of the subgroup of `action` fixing every point of
// `prefix`, read off one prescribed-base stabilizer chain.
struct PrefixInfo {
  long long stab_order = 1;
  std::vector<Permutation> stab_gens;
};

PrefixInfo prefix_stabilizer(const PermGroup& action, const std::vector<int>& prefix) {
  StabilizerChain chain(action.degree(), action.generators(), prefix);
  PrefixInfo out;
  out.stab_gens = chain.stabilizer_generators(chain.prefix_levels());
  const auto& levels = chain.levels();
  for (std::size_t i = chain.prefix_levels(); i < levels.size(); ++i)
    out.stab_order *= static_cast<long long>(levels[i].orbit.size());
  return out;
}

void check_seq(const Representation& rep, const std::vector<int>& seq) {
  for (int p : seq)
    if (p < 1 || p > rep.rep_degree())
      throw DomainError("point " + std::to_string(p) +
                        " is outside the representation domain");
}

json base_witness(const Representation& rep, const std::vector<int>& pts) {
  json points = json::array();
  json labels = json::array();
  for (int p : pts) {
    points.push_back(p);
    labels.push_back(point_label(rep, p));
  }
  return json{{"points", points}, {"labels", labels}};
}

json rep_json(const Representation& rep) {
  json blocks = json::array();
  for (const auto& b : rep.blocks())
    blocks.push_back(json{{"label", b.label}, {"size", b.size}});
  return json{{"degree", rep.rep_degree()}, {"blocks", blocks}};
}

json gens_json(const PermGroup& h) {
  json out = json::array();
  for (const auto& g : h.generators()) out.push_back(g.cycle_string());
  return out;
}

std::string rep_owner(const Representation& rep) {
  return subgroup_label(rep.parent());
}

MeasureReport make_report(std::string group, std::string invariant, int value,
                          bool exhaustive, json witness, const SearchBudget& budget,
                          const Stopwatch& sw) {
  MeasureReport r;
  r.group = std::move(group);
  r.invariant = std::move(invariant);
  r.value = value;
  r.exhaustive = exhaustive;
  r.witness = std::move(witness);
  r.budget = budget;
  r.elapsed_ms = sw.ms();
  return r;
}

// ---- maximum irredundant base ----

struct MaxIrrSearch {
  const PermGroup* action = nullptr;
  Deadline* dl = nullptr;
  int best = -1;
  std::vector<int> best_seq;
};

void max_irr_dfs(MaxIrrSearch& st, std::vector<int>& prefix, const PrefixInfo& info) {
  if (st.dl->expired()) return;
  if (info.stab_order == 1) {
    if (static_cast<int>(prefix.size()) > st.best) {
      st.best = static_cast<int>(prefix.size());
      st.best_seq = prefix;
    }
    return;
  }
  // Every further stabilizer at least halves, so the depth left is bounded.
  if (static_cast<int>(prefix.size()) + floor_log2(info.stab_order) <= st.best)
    return;
  for (int p : moved_points(info.stab_gens, st.action->degree())) {
    prefix.push_back(p);
    PrefixInfo child = prefix_stabilizer(*st.action, prefix);
    max_irr_dfs(st, prefix, child);
    prefix.pop_back();
    if (st.dl->expired()) return;
  }
}

// ---- minimum base ----

struct MinBaseSearch {
  const PermGroup* action = nullptr;
  Deadline* dl = nullptr;
  int best = 0;
  std::vector<int> best_seq;
};

// Base points needed to kill a stabilizer of this order, each step cutting
// by at most the largest orbit length.
int min_base_lower_bound(const PrefixInfo& info, int degree) {
  if (info.stab_order == 1) return 0;
  std::size_t max_orbit = 2;
  std::vector<char> seen(degree + 1, 0);
  for (int p : moved_points(info.stab_gens, degree)) {
    if (seen[p]) continue;
    std::vector<int> frontier{p};
    seen[p] = 1;
    std::size_t size = 0;
    while (!frontier.empty()) {
      int q = frontier.back();
      frontier.pop_back();
      ++size;
      for (const auto& g : info.stab_gens) {
        int r = g(q);
        if (!seen[r]) {
          seen[r] = 1;
          frontier.push_back(r);
        }
      }
    }
    max_orbit = std::max(max_orbit, size);
  }
  double steps = std::log(static_cast<double>(info.stab_order)) /
                 std::log(static_cast<double>(max_orbit));
  return std::max(1, static_cast<int>(std::ceil(steps - 1e-9)));
}

void min_base_dfs(MinBaseSearch& st, std::vector<int>& chosen, const PrefixInfo& info) {
  if (st.dl->expired()) return;
  if (info.stab_order == 1) {
    if (static_cast<int>(chosen.size()) < st.best) {
      st.best = static_cast<int>(chosen.size());
      st.best_seq = chosen;
    }
    return;
  }
  if (static_cast<int>(chosen.size()) + min_base_lower_bound(info, st.action->degree()) >=
      st.best)
    return;
  int last = chosen.empty() ? 0 : chosen.back();
  for (int p : moved_points(info.stab_gens, st.action->degree())) {
    if (p <= last) continue;
    chosen.push_back(p);
    PrefixInfo child = prefix_stabilizer(*st.action, chosen);
    min_base_dfs(st, chosen, child);
    chosen.pop_back();
    if (st.dl->expired()) return;
  }
}

struct MinBaseResult {
  int value = 0;
  std::vector<int> base;
  bool exhausted = true;
};

MinBaseResult min_base_impl(const Representation& rep, Deadline& dl) {
  const PermGroup& action = rep.action();
  std::vector<int> greedy = greedy_irredundant_base(rep);
  MinBaseSearch st;
  st.action = &action;
  st.dl = &dl;
  st.best = static_cast<int>(greedy.size());
  st.best_seq = greedy;
  std::vector<int> chosen;
  if (st.best > 0) min_base_dfs(st, chosen, prefix_stabilizer(action, {}));
  return MinBaseResult{st.best, st.best_seq, !dl.was_hit()};
}

// ---- maximum minimal base ----

struct MaxMinimalSearch {
  const PermGroup* action = nullptr;
  Deadline* dl = nullptr;
  int best = -1;
  std::vector<int> best_seq;
};

// chosen is ascending and drop_orders[i] is the stabilizer order of chosen
// with its i-th point removed. A collapsed drop (equal to the full
// stabilizer order) can never recover, which is what makes pruning on it
// sound.
void max_minimal_dfs(MaxMinimalSearch& st, std::vector<int>& chosen,
                     const PrefixInfo& info, const std::vector<long long>& drop_orders) {
  if (st.dl->expired()) return;
  if (info.stab_order == 1) {
    bool minimal = true;
    for (long long d : drop_orders)
      if (d == 1) {
        minimal = false;
        break;
      }
    if (minimal && static_cast<int>(chosen.size()) > st.best) {
      st.best = static_cast<int>(chosen.size());
      st.best_seq = chosen;
    }
    return;
  }
  if (static_cast<int>(chosen.size()) + floor_log2(info.stab_order) <= st.best) return;
  int last = chosen.empty() ? 0 : chosen.back();
  for (int p : moved_points(info.stab_gens, st.action->degree())) {
    if (p <= last) continue;
    chosen.push_back(p);
    PrefixInfo child = prefix_stabilizer(*st.action, chosen);
    std::vector<long long> child_drops;
    child_drops.reserve(chosen.size());
    bool collapsed = false;
    for (std::size_t i = 0; i + 1 < chosen.size(); ++i) {
      std::vector<int> rest;
      rest.reserve(chosen.size() - 1);
      for (std::size_t j = 0; j < chosen.size(); ++j)
        if (j != i) rest.push_back(chosen[j]);
      long long o = prefix_stabilizer(*st.action, rest).stab_order;
      if (o == child.stab_order) {
        collapsed = true;
        break;
      }
      child_drops.push_back(o);
    }
    if (!collapsed) {
      child_drops.push_back(info.stab_order);  // dropping p itself
      max_minimal_dfs(st, chosen, child, child_drops);
    }
    chosen.pop_back();
    if (st.dl->expired()) return;
  }
}

// ---- element searches: d, mu, mu' ----

struct ElementData {
  std::vector<int> order;                // element order, by element index
  std::vector<std::string> cycles;       // canonical cycle string
  std::vector<int> cyclic_node;          // node id of the generated subgroup
  std::vector<int> candidates;           // one canonical generator per cyclic node
  std::vector<int> class_canonical;      // one canonical element per conjugacy class
};

bool element_before(const ElementData& ed, int a, int b) {
  if (ed.order[a] != ed.order[b]) return ed.order[a] < ed.order[b];
  return ed.cycles[a] < ed.cycles[b];
}

ElementData build_element_data(const SubgroupLattice& lat) {
  const auto& elems = lat.elements();
  int n = static_cast<int>(elems.size());
  ElementData ed;
  ed.order.resize(n);
  ed.cycles.resize(n);
  ed.cyclic_node.resize(n);
  for (int i = 0; i < n; ++i) {
    ed.order[i] = static_cast<int>(elems[i].order());
    ed.cycles[i] = elems[i].cycle_string();
    ElementSet powers(n);
    Permutation cur = elems[i];
    while (true) {
      powers.set(lat.element_index(cur));
      if (cur.is_identity()) break;
      cur = cur.compose(elems[i]);
    }
    int node = lat.node_of_set(powers);
    if (node < 0) throw InternalError("cyclic subgroup missing from the lattice");
    ed.cyclic_node[i] = node;
  }

  std::map<int, int> best_gen;  // cyclic node -> canonical generator
  for (int i = 0; i < n; ++i) {
    if (ed.cyclic_node[i] == lat.trivial_node()) continue;
    auto it = best_gen.find(ed.cyclic_node[i]);
    if (it == best_gen.end() || element_before(ed, i, it->second))
      best_gen[ed.cyclic_node[i]] = i;
  }
  for (const auto& [node, gen] : best_gen) ed.candidates.push_back(gen);
  std::sort(ed.candidates.begin(), ed.candidates.end(),
            [&](int a, int b) { return element_before(ed, a, b); });

  // Conjugacy classes of elements, walked with the group generators.
  std::vector<int> cls(n, -1);
  for (int i = 0; i < n; ++i) {
    if (cls[i] >= 0) continue;
    std::vector<int> frontier{i};
    cls[i] = i;
    int canon = i;
    while (!frontier.empty()) {
      int x = frontier.back();
      frontier.pop_back();
      for (const auto& g : lat.group().generators()) {
        int y = lat.element_index(elems[x].conjugated_by(g));
        if (cls[y] < 0) {
          cls[y] = i;
          if (element_before(ed, y, canon)) canon = y;
          frontier.push_back(y);
        }
      }
    }
    ed.class_canonical.push_back(canon);
  }
  std::sort(ed.class_canonical.begin(), ed.class_canonical.end(),
            [&](int a, int b) { return element_before(ed, a, b); });
  return ed;
}

PermGroup span_of(const SubgroupLattice& lat, const std::vector<int>& elem_ids) {
  std::vector<Permutation> gens;
  gens.reserve(elem_ids.size());
  for (int e : elem_ids) gens.push_back(lat.elements()[e]);
  return PermGroup(lat.group().degree(), std::move(gens));
}

// For each node, the length of a longest chain from it up to the whole
// group. Bounds how many strict span growths a search can still make.
std::vector<int> up_chain_lengths(const SubgroupLattice& lat) {
  const auto& covers = lat.cover_edges();
  std::vector<int> up(lat.nodes().size(), 0);
  // The upper node of a cover always has the larger id, so a reverse sweep
  // finishes every upper before a lower needs it.
  for (auto it = covers.rbegin(); it != covers.rend(); ++it)
    up[it->first] = std::max(up[it->first], up[it->second] + 1);
  return up;
}

struct IndepSearch {
  const SubgroupLattice* lat = nullptr;
  const ElementData* ed = nullptr;
  Deadline* dl = nullptr;
  bool require_generating = false;
  std::vector<int> up_len;
  int best = -1;
  std::vector<int> best_set;  // element indices
};

// Members live on distinct cyclic nodes, so spans and the drop-one spans
// are lattice joins and membership is a bit test. The set is unordered: the
// seed is pinned to a conjugacy class representative and the rest range
// over a plain position-ordered combination on either side of it.
void indep_dfs(IndepSearch& st, std::vector<int>& members, std::vector<int>& drops,
               int span, int seed_pos, std::size_t next_pos) {
  if (st.dl->expired()) return;
  bool counts = !st.require_generating || span == st.lat->full_node();
  if (counts && static_cast<int>(members.size()) > st.best) {
    st.best = static_cast<int>(members.size());
    st.best_set = members;
  }
  if (static_cast<int>(members.size()) + st.up_len[span] <= st.best) return;
  const auto& cands = st.ed->candidates;
  for (std::size_t pos = next_pos; pos < cands.size(); ++pos) {
    if (static_cast<int>(pos) == seed_pos) continue;
    if (st.dl->expired()) return;
    int e = cands[pos];
    int enode = st.ed->cyclic_node[e];
    int span2 = st.lat->join(span, enode);
    if (span2 == span) continue;  // e is already in the span
    bool ok = true;
    std::vector<int> drops2;
    drops2.reserve(drops.size() + 1);
    for (std::size_t i = 0; i < drops.size(); ++i) {
      int d2 = st.lat->join(drops[i], enode);
      if (st.lat->nodes()[d2].set.test(members[i])) {
        ok = false;
        break;
      }
      drops2.push_back(d2);
    }
    if (!ok) continue;
    drops2.push_back(span);
    members.push_back(e);
    indep_dfs(st, members, drops2, span2, seed_pos, pos + 1);
    members.pop_back();
  }
}

MeasureReport independent_search(const GroupContext& ctx, const SearchBudget& budget,
                                 bool require_generating, const std::string& name) {
  Stopwatch sw;
  Deadline dl(budget.time_limit_ms);
  const SubgroupLattice& lat = ctx.lattice();
  ElementData ed = build_element_data(lat);
  IndepSearch st;
  st.lat = &lat;
  st.ed = &ed;
  st.dl = &dl;
  st.require_generating = require_generating;
  st.up_len = up_chain_lengths(lat);
  if (!require_generating || ctx.group().order() == 1) {
    st.best = 0;  // the empty set
  }
  for (std::size_t pos = 0; pos < ed.candidates.size(); ++pos) {
    if (dl.expired()) break;
    int e = ed.candidates[pos];
    int enode = ed.cyclic_node[e];
    if (lat.classes()[lat.nodes()[enode].class_id].rep != enode) continue;
    std::vector<int> members{e};
    std::vector<int> drops{lat.trivial_node()};
    indep_dfs(st, members, drops, enode, static_cast<int>(pos), 0);
  }
  std::vector<int> best = st.best_set;
  std::sort(best.begin(), best.end(),
            [&](int a, int b) { return element_before(ed, a, b); });
  json elements = json::array();
  for (int e : best) elements.push_back(ed.cycles[e]);
  return make_report(ctx.name(), name, std::max(st.best, 0), !dl.was_hit(),
                     json{{"elements", elements}}, budget, sw);
}

json search_note(const std::string& kind) { return json{{"kind", kind}}; }

}  // namespace

// ---- GroupContext ----

GroupContext::GroupContext(std::string name, PermGroup group, bool non_abelian_simple,
                           std::size_t lattice_cap)
    : name_(std::move(name)),
      group_(std::move(group)),
      simple_(non_abelian_simple),
      lattice_cap_(lattice_cap) {}

const SubgroupLattice& GroupContext::lattice() const {
  std::lock_guard<std::mutex> lock(mutex_);
  if (!lattice_) lattice_ = std::make_shared<SubgroupLattice>(group_, lattice_cap_);
  return *lattice_;
}

void GroupContext::adopt_lattice(std::shared_ptr<SubgroupLattice> lat) {
  if (!lat) throw DomainError("cannot adopt an empty lattice");
  if (lat->group().degree() != group_.degree() ||
      !lat->group().same_subgroup_as(group_))
    throw DomainError("lattice was built for a different group");
  std::lock_guard<std::mutex> lock(mutex_);
  lattice_ = std::move(lat);
}

// ---- predicates ----

bool is_base(const Representation& rep, const std::vector<int>& seq) {
  check_seq(rep, seq);
  return prefix_stabilizer(rep.action(), seq).stab_order == 1;
}

bool is_irredundant(const Representation& rep, const std::vector<int>& seq) {
  check_seq(rep, seq);
  const PermGroup& action = rep.action();
  std::vector<int> prefix;
  long long prev = prefix_stabilizer(action, prefix).stab_order;
  for (int p : seq) {
    prefix.push_back(p);
    long long cur = prefix_stabilizer(action, prefix).stab_order;
    if (cur == prev) return false;
    prev = cur;
  }
  return true;
}

bool is_minimal_base(const Representation& rep, const std::vector<int>& seq) {
  if (!is_base(rep, seq)) return false;
  const PermGroup& action = rep.action();
  for (std::size_t i = 0; i < seq.size(); ++i) {
    std::vector<int> rest;
    rest.reserve(seq.size() - 1);
    for (std::size_t j = 0; j < seq.size(); ++j)
      if (j != i) rest.push_back(seq[j]);
    if (prefix_stabilizer(action, rest).stab_order == 1) return false;
  }
  return true;
}

std::vector<int> greedy_irredundant_base(const Representation& rep) {
  const PermGroup& action = rep.action();
  std::vector<int> base;
  while (true) {
    PrefixInfo info = prefix_stabilizer(action, base);
    if (info.stab_order == 1) return base;
    base.push_back(moved_points(info.stab_gens, action.degree()).front());
  }
}

// ---- per-representation searches ----

MeasureReport max_irredundant_base(const Representation& rep, const SearchBudget& budget) {
  Stopwatch sw;
  Deadline dl(budget.time_limit_ms);
  std::vector<int> greedy = greedy_irredundant_base(rep);
  MaxIrrSearch st;
  st.action = &rep.action();
  st.dl = &dl;
  st.best = static_cast<int>(greedy.size());
  st.best_seq = greedy;
  std::vector<int> prefix;
  max_irr_dfs(st, prefix, prefix_stabilizer(rep.action(), prefix));
  return make_report(rep_owner(rep), "max_irredundant_base", st.best, !dl.was_hit(),
                     json{{"base", base_witness(rep, st.best_seq)}}, budget, sw);
}

MeasureReport min_base(const Representation& rep, const SearchBudget& budget) {
  Stopwatch sw;
  Deadline dl(budget.time_limit_ms);
  MinBaseResult res = min_base_impl(rep, dl);
  return make_report(rep_owner(rep), "min_base", res.value, res.exhausted,
                     json{{"base", base_witness(rep, res.base)}}, budget, sw);
}

MeasureReport max_minimal_base(const Representation& rep, const SearchBudget& budget) {
  Stopwatch sw;
  Deadline dl(budget.time_limit_ms);
  MaxMinimalSearch st;
  st.action = &rep.action();
  st.dl = &dl;
  std::vector<int> chosen;
  max_minimal_dfs(st, chosen, prefix_stabilizer(rep.action(), chosen), {});
  if (st.best < 0) throw InternalError("no minimal base found at all");
  return make_report(rep_owner(rep), "max_minimal_base", st.best, !dl.was_hit(),
                     json{{"base", base_witness(rep, st.best_seq)}}, budget, sw);
}

// ---- chains and b1 ----

BasedRepresentation chain_to_irredundant_base(const PermGroup& g,
                                              const std::vector<PermGroup>& chain) {
  if (chain.empty() || chain.front().degree() != g.degree() ||
      chain.front().order() != g.order() || !chain.front().is_subgroup_of(g))
    throw DomainError("chain must start at the whole group");
  for (std::size_t i = 1; i < chain.size(); ++i) {
    if (!chain[i].is_subgroup_of(chain[i - 1]) ||
        chain[i].order() >= chain[i - 1].order())
      throw DomainError("chain is not strictly descending");
  }
  if (chain.back().order() != 1)
    throw DomainError("chain must end at the trivial subgroup");

  std::vector<Representation> parts;
  parts.reserve(chain.size() - 1);
  for (std::size_t i = 1; i < chain.size(); ++i)
    parts.push_back(coset_action(g, chain[i]));
  BasedRepresentation out{union_representation(g, parts), {}};
  for (const auto& b : out.rep.blocks()) out.base.push_back(b.offset + 1);
  if (!is_irredundant(out.rep, out.base) || !is_base(out.rep, out.base))
    throw InternalError("coset union of a descending chain must give an irredundant base");
  return out;
}

namespace {

json chain_json(const std::vector<PermGroup>& chain) {
  json out = json::array();
  for (const auto& h : chain) out.push_back(gens_json(h));
  return out;
}

std::vector<PermGroup> descending_chain(const SubgroupLattice& lat) {
  std::vector<int> ids = lat.longest_chain_witness();
  std::vector<PermGroup> chain;
  chain.reserve(ids.size());
  for (auto it = ids.rbegin(); it != ids.rend(); ++it)
    chain.push_back(lat.subgroup(*it));
  return chain;
}

}  // namespace

MeasureReport subgroup_chain_length(const GroupContext& ctx, const SearchBudget& budget) {
  Stopwatch sw;
  const SubgroupLattice& lat = ctx.lattice();
  std::vector<PermGroup> chain = descending_chain(lat);
  int value = static_cast<int>(lat.longest_chain_length());
  return make_report(ctx.name(), "l", value, true, json{{"chain", chain_json(chain)}},
                     budget, sw);
}

MeasureReport b1(const GroupContext& ctx, const SearchBudget& budget) {
  Stopwatch sw;
  const SubgroupLattice& lat = ctx.lattice();
  std::vector<PermGroup> chain = descending_chain(lat);
  BasedRepresentation br = chain_to_irredundant_base(ctx.group(), chain);
  int value = static_cast<int>(lat.longest_chain_length());
  if (static_cast<int>(br.base.size()) != value)
    throw InternalError("chain length and constructed base size disagree");
  json witness{{"chain", chain_json(chain)},
               {"representation", rep_json(br.rep)},
               {"base", base_witness(br.rep, br.base)}};
  return make_report(ctx.name(), "b1", value, true, std::move(witness), budget, sw);
}

// ---- b2 ----

MeasureReport b2(const GroupContext& ctx, const SearchBudget& budget) {
  Stopwatch sw;
  EmbeddingReport er = max_boolean_meet(ctx, true, budget);
  if (!er.meet_family) throw InternalError("meet search returned no family");
  BasedRepresentation br = meet_to_minimal_base(*er.meet_family);
  if (!is_minimal_base(br.rep, br.base))
    throw InternalError("meet family did not convert to a minimal base");
  if (static_cast<int>(br.base.size()) != er.n)
    throw InternalError("meet family size and minimal base size disagree");
  json members = json::array();
  for (const auto& k : er.meet_family->members) members.push_back(gens_json(k));
  json witness{{"family", json{{"members", members}}},
               {"kernel_order", static_cast<long long>(br.rep.kernel().order())},
               {"representation", rep_json(br.rep)},
               {"base", base_witness(br.rep, br.base)}};
  return make_report(ctx.name(), "b2", er.n, er.exhaustive, std::move(witness), budget,
                     sw);
}

// ---- b3 ----

namespace {

MeasureReport b3_simple(const GroupContext& ctx, const SearchBudget& budget,
                        const Stopwatch& sw) {
  Deadline dl(budget.time_limit_ms);
  const SubgroupLattice& lat = ctx.lattice();
  std::set<int> maximal_classes;
  for (const auto& [lo, hi] : lat.cover_edges())
    if (hi == lat.full_node()) maximal_classes.insert(lat.nodes()[lo].class_id);

  int best = -1;
  Representation best_rep = Representation::natural(ctx.group());
  std::vector<int> best_base;
  for (int c : maximal_classes) {
    if (dl.expired()) break;
    Representation rep = coset_action(ctx.group(), lat.subgroup(lat.classes()[c].rep));
    MinBaseResult r = min_base_impl(rep, dl);
    if (!r.exhausted) break;
    if (r.value > best) {
      best = r.value;
      best_rep = rep;
      best_base = r.base;
    }
  }
  if (best < 0) throw InternalError("a non-abelian simple group must have a maximal subgroup");
  json witness{{"search", search_note("maximal-coset-actions")},
               {"representation", rep_json(best_rep)},
               {"base", base_witness(best_rep, best_base)}};
  return make_report(ctx.name(), "b3", best, !dl.was_hit(), std::move(witness), budget,
                     sw);
}

MeasureReport b3_union_sweep(const GroupContext& ctx, const SearchBudget& budget,
                             const Stopwatch& sw) {
  Deadline dl(budget.time_limit_ms);
  const SubgroupLattice& lat = ctx.lattice();
  const PermGroup& g = ctx.group();

  std::vector<int> eligible;
  for (std::size_t c = 0; c < lat.classes().size(); ++c)
    if (lat.classes()[c].rep != lat.full_node()) eligible.push_back(static_cast<int>(c));
  bool truncated = false;
  if (static_cast<int>(eligible.size()) > budget.max_classes) {
    eligible.resize(budget.max_classes);
    truncated = true;
  }

  std::vector<long long> index_of(eligible.size());
  std::vector<int> core_of(eligible.size());
  std::vector<std::optional<Representation>> orbit_rep(eligible.size());
  for (std::size_t i = 0; i < eligible.size(); ++i) {
    int rep_node = lat.classes()[eligible[i]].rep;
    index_of[i] = g.order() / static_cast<long long>(lat.nodes()[rep_node].order);
    core_of[i] = lat.core_of(rep_node);
  }
  auto orbit_action = [&](std::size_t i) -> const Representation& {
    if (!orbit_rep[i])
      orbit_rep[i] = coset_action(g, lat.subgroup(lat.classes()[eligible[i]].rep));
    return *orbit_rep[i];
  };

  int best = -1;
  Representation best_rep = union_representation(g, {});
  std::vector<int> best_base;
  bool degree_skipped = false;

  std::vector<std::size_t> combo;
  auto kernel_of = [&](const std::vector<std::size_t>& ids, std::size_t skip) {
    int k = lat.full_node();
    for (std::size_t j = 0; j < ids.size(); ++j)
      if (j != skip) k = lat.meet(k, core_of[ids[j]]);
    return k;
  };

  std::function<void(std::size_t)> sweep = [&](std::size_t from) {
    if (dl.expired()) return;
    if (!combo.empty()) {
      long long degree = 0;
      for (std::size_t i : combo) degree += index_of[i];
      if (degree > budget.max_total_degree) {
        degree_skipped = true;
      } else {
        int kernel = kernel_of(combo, combo.size());
        bool dominated = false;
        for (std::size_t j = 0; j < combo.size() && !dominated; ++j)
          if (kernel_of(combo, j) == kernel) dominated = true;
        if (!dominated) {
          std::vector<Representation> parts;
          for (std::size_t i : combo) parts.push_back(orbit_action(i));
          Representation rep = union_representation(g, parts);
          if (static_cast<int>(greedy_irredundant_base(rep).size()) > best) {
            MinBaseResult r = min_base_impl(rep, dl);
            if (r.exhausted && r.value > best) {
              best = r.value;
              best_rep = rep;
              best_base = r.base;
            }
          }
        }
      }
    }
    if (static_cast<int>(combo.size()) == budget.max_orbits) return;
    for (std::size_t i = from; i < eligible.size(); ++i) {
      combo.push_back(i);
      sweep(i + 1);
      combo.pop_back();
      if (dl.expired()) return;
    }
  };
  sweep(0);

  if (best < 0) {
    best = 0;
    best_base.clear();
  }
  bool exhaustive = !(truncated || degree_skipped || dl.was_hit());
  json witness{{"search", search_note("orbit-unions")},
               {"representation", rep_json(best_rep)},
               {"base", base_witness(best_rep, best_base)}};
  return make_report(ctx.name(), "b3", best, exhaustive, std::move(witness), budget, sw);
}

}  // namespace

MeasureReport b3(const GroupContext& ctx, const SearchBudget& budget) {
  Stopwatch sw;
  if (ctx.non_abelian_simple()) return b3_simple(ctx, budget, sw);
  return b3_union_sweep(ctx, budget, sw);
}

// ---- d, mu, mu' ----

MeasureReport min_generator_count(const GroupContext& ctx, const SearchBudget& budget) {
  Stopwatch sw;
  Deadline dl(budget.time_limit_ms);
  const SubgroupLattice& lat = ctx.lattice();
  long long order = ctx.group().order();
  json empty_witness{{"elements", json::array()}};
  if (order == 1)
    return make_report(ctx.name(), "d", 0, true, std::move(empty_witness), budget, sw);

  ElementData ed = build_element_data(lat);
  for (int e : ed.class_canonical)
    if (ed.cyclic_node[e] == lat.full_node())
      return make_report(ctx.name(), "d", 1, true,
                         json{{"elements", json::array({ed.cycles[e]})}}, budget, sw);

  for (int k = 2;; ++k) {
    std::vector<int> picked;
    std::function<bool(int, int)> extend = [&](int slot, int from) -> bool {
      if (dl.expired()) return false;
      if (slot == k) return span_of(lat, picked).order() == order;
      const std::vector<int>& pool = slot == 0 ? ed.class_canonical : ed.candidates;
      for (int i = from; i < static_cast<int>(pool.size()); ++i) {
        if (slot > 0 && pool[i] == picked.front()) continue;
        picked.push_back(pool[i]);
        if (extend(slot + 1, slot == 0 ? 0 : i + 1)) return true;
        picked.pop_back();
        if (dl.expired()) return false;
      }
      return false;
    };
    if (extend(0, 0)) {
      json elements = json::array();
      for (int e : picked) elements.push_back(ed.cycles[e]);
      return make_report(ctx.name(), "d", k, true, json{{"elements", elements}}, budget,
                         sw);
    }
    if (dl.was_hit())
      throw BudgetError("generator search for " + ctx.name() + " ran out of time");
    if (k > floor_log2(order) + 1)
      throw InternalError("generator search exceeded the capacity bound");
  }
}

MeasureReport max_independent_generating_set(const GroupContext& ctx,
                                             const SearchBudget& budget) {
  return independent_search(ctx, budget, true, "mu");
}

MeasureReport max_independent_set(const GroupContext& ctx, const SearchBudget& budget) {
  return independent_search(ctx, budget, false, "muprime");
}

// ---- lifts ----

MeasureReport lift_max_over_subgroups(const std::string& invariant,
                                      const GroupContext& ctx,
                                      const SearchBudget& budget) {
  Stopwatch sw;
  using Fn = MeasureReport (*)(const GroupContext&, const SearchBudget&);
  static const std::map<std::string, Fn> inner_ops{
      {"d", &min_generator_count},
      {"mu", &max_independent_generating_set},
      {"muprime", &max_independent_set},
      {"l", &subgroup_chain_length}};
  auto it = inner_ops.find(invariant);
  if (it == inner_ops.end())
    throw DomainError("no lift for invariant '" + invariant + "'");

  const SubgroupLattice& lat = ctx.lattice();
  int best = -1;
  bool exhaustive = true;
  PermGroup best_subgroup = PermGroup::trivial(ctx.group().degree());
  json best_inner;
  for (const auto& cls : lat.classes()) {
    PermGroup h = lat.subgroup(cls.rep);
    GroupContext sub(subgroup_label(h), h, false, ctx.lattice_cap());
    MeasureReport inner = it->second(sub, budget);
    exhaustive = exhaustive && inner.exhaustive;
    if (inner.value > best) {
      best = inner.value;
      best_subgroup = h;
      best_inner = inner.witness;
    }
  }
  std::string name = invariant == "d" ? "dprime" : invariant + "-lift";
  json witness{{"subgroup", gens_json(best_subgroup)},
               {"subgroup_order", static_cast<long long>(best_subgroup.order())},
               {"inner", json{{"invariant", invariant},
                              {"value", std::max(best, 0)},
                              {"witness", best_inner}}}};
  return make_report(ctx.name(), name, std::max(best, 0), exhaustive,
                     std::move(witness), budget, sw);
}

MeasureReport compute_invariant(const std::string& invariant, const GroupContext& ctx,
                                const SearchBudget& budget) {
  if (invariant == "b1") return b1(ctx, budget);
  if (invariant == "b2") return b2(ctx, budget);
  if (invariant == "b3") return b3(ctx, budget);
  if (invariant == "l") return subgroup_chain_length(ctx, budget);
  if (invariant == "d") return min_generator_count(ctx, budget);
  if (invariant == "dprime") return lift_max_over_subgroups("d", ctx, budget);
  if (invariant == "mu") return max_independent_generating_set(ctx, budget);
  if (invariant == "muprime") return max_independent_set(ctx, budget);
  throw DomainError("unknown invariant '" + invariant + "'");
}

std::string point_label(const Representation& rep, int point) {
  if (point < 1 || point > rep.rep_degree())
    throw DomainError("point outside the representation domain");
  for (const auto& b : rep.blocks())
    if (point > b.offset && point <= b.offset + b.size)
      return b.label + "[" + std::to_string(point - b.offset) + "]";
  throw InternalError("representation blocks do not cover the domain");
}

}  // namespace cgt
