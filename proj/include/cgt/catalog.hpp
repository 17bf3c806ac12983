#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "cgt/measures.hpp"
#include "cgt/rep.hpp"

namespace cgt {

// Recipe for one group: a named constructor with a parameter, or a
// generator file. The simple flag is a catalog attribute set only for
// psl27 and alternating n >= 5.
struct GroupSpec {
  std::string kind;  // symmetric, alternating, cyclic, dihedral, quaternion8, psl27, custom
  int n = 0;
  std::string path;  // custom only
  bool non_abelian_simple = false;
};

// Accepts S5, A6, C12, D4, Q8, PSL27 (case-insensitive) and custom:<path>.
GroupSpec parse_group_spec(const std::string& text);
std::string spec_name(const GroupSpec& spec);

PermGroup make_symmetric(int n);
PermGroup make_alternating(int n);
PermGroup make_cyclic(int n);
PermGroup make_dihedral(int n);
PermGroup make_quaternion8();

// Invertible linear maps of the 3-dimensional space over the field with two
// elements, acting on the 7 nonzero vectors.
PermGroup make_psl27();

GroupContext make_group(const GroupSpec& spec, std::size_t lattice_cap = 2000);

// Degree-14 action of make_psl27() on the 7 nonzero vectors (points
// 1..7) followed by the 7 hyperplanes (points 8..14).
Representation fano_incidence_rep();
// Incidence between a point 1..7 and a line 8..14 of that representation.
bool fano_incident(int point, int line);

int popcount_base2(int n);

// Closed forms for the symmetric group: longest subgroup chain (n >= 1),
// max over subgroups of the minimum generator count (n > 3), and the
// maximum independent generating set size (n >= 2).
long long closed_l_Sn(int n);
int closed_dprime_Sn(int n);
int closed_mu_Sn(int n);

struct CatalogEntry {
  std::string name;
  GroupSpec spec;
  long long order = 0;
};

// Built-in groups of order at most max_order, ascending by (order, name).
std::vector<CatalogEntry> builtin_catalog(long long max_order);

// One checkable numeric statement about a catalog group.
struct Claim {
  std::string id;
  std::string group;
  std::string statement;
  std::string source;
};

const std::vector<Claim>& claim_table();

struct VerifyOptions {
  std::vector<std::string> only;               // empty = all claims
  std::map<std::string, int> overrides;        // "<id>.<key>" -> expected value
  SearchBudget budget;
  std::string cache_dir;                       // lattice cache, empty = off
};

struct ClaimResult {
  std::string id;
  std::string group;
  std::string statement;
  std::string source;
  bool pass = false;
  std::string expected;
  std::string computed;
  long long elapsed_ms = 0;
};

struct VerifyOutcome {
  std::vector<ClaimResult> results;
  bool all_pass = true;
  nlohmann::json document;
};

// Runs the claim suite. Unknown ids in `only` raise DomainError.
VerifyOutcome run_verify(const VerifyOptions& opts = {});

// Shared construction-plus-lattice-cache helper: contexts are built once
// per name, and lattices are loaded from / saved to cache_dir when set.
class ContextPool {
 public:
  explicit ContextPool(std::string cache_dir = "", std::size_t lattice_cap = 2000);

  GroupContext& get(const GroupSpec& spec);
  GroupContext& get(const std::string& spec_text);

  // Ensures the lattice is built, touching the cache if configured.
  const SubgroupLattice& lattice_of(GroupContext& ctx);

 private:
  std::string cache_dir_;
  std::size_t lattice_cap_;
  std::map<std::string, std::unique_ptr<GroupContext>> pool_;
};

}  // namespace cgt
