#include "cgt/lattice.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "cgt/errors.hpp"

namespace cgt {

namespace {

bool is_prime_power(int n) {
  if (n < 2) return false;
  int p = 2;
  while (p * p <= n && n % p != 0) ++p;
  if (p * p > n) p = n;
  while (n % p == 0) n /= p;
  return n == 1;
}

}  // namespace

ElementSet::ElementSet(int universe)
    : universe_(universe), words_((universe + 63) / 64, 0) {
  if (universe < 0) throw DomainError("element universe must not be negative");
}

void ElementSet::set(int i) {
  if (i < 0 || i >= universe_) throw DomainError("element index out of range");
  words_[i >> 6] |= std::uint64_t{1} << (i & 63);
}

bool ElementSet::test(int i) const {
  if (i < 0 || i >= universe_) throw DomainError("element index out of range");
  return (words_[i >> 6] >> (i & 63)) & 1;
}

std::size_t ElementSet::count() const {
  std::size_t n = 0;
  for (auto w : words_) n += std::popcount(w);
  return n;
}

bool ElementSet::is_subset_of(const ElementSet& other) const {
  if (universe_ != other.universe_)
    throw DomainError("element sets live in different universes");
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~other.words_[i]) return false;
  return true;
}

ElementSet ElementSet::operator&(const ElementSet& other) const {
  if (universe_ != other.universe_)
    throw DomainError("element sets live in different universes");
  ElementSet out(universe_);
  for (std::size_t i = 0; i < words_.size(); ++i)
    out.words_[i] = words_[i] & other.words_[i];
  return out;
}

ElementSet ElementSet::operator|(const ElementSet& other) const {
  if (universe_ != other.universe_)
    throw DomainError("element sets live in different universes");
  ElementSet out(universe_);
  for (std::size_t i = 0; i < words_.size(); ++i)
    out.words_[i] = words_[i] | other.words_[i];
  return out;
}

bool ElementSet::setlex_less(const ElementSet& other) const {
  if (universe_ != other.universe_)
    throw DomainError("element sets live in different universes");
  for (std::size_t i = 0; i < words_.size(); ++i) {
    std::uint64_t diff = words_[i] ^ other.words_[i];
    if (diff) {
      std::uint64_t low = diff & (~diff + 1);
      return (words_[i] & low) != 0;
    }
  }
  return false;
}

std::vector<int> ElementSet::to_indices() const {
  std::vector<int> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t bits = words_[w];
    while (bits) {
      int b = std::countr_zero(bits);
      out.push_back(static_cast<int>(w * 64 + b));
      bits &= bits - 1;
    }
  }
  return out;
}

std::uint64_t ElementSet::hash() const {
  std::uint64_t h = 1469598103934665603ull;
  for (auto w : words_) {
    h ^= w;
    h *= 1099511628211ull;
  }
  return h;
}

std::string ElementSet::to_hex() const {
  static const char* digits = "0123456789abcdef";
  int nibbles = (universe_ + 3) / 4;
  std::string out(nibbles, '0');
  for (int i = 0; i < nibbles; ++i) {
    int v = 0;
    for (int b = 0; b < 4; ++b) {
      int e = i * 4 + b;
      if (e < universe_ && test(e)) v |= 1 << b;
    }
    out[i] = digits[v];
  }
  return out;
}

ElementSet ElementSet::from_hex(const std::string& hex, int universe) {
  int nibbles = (universe + 3) / 4;
  if (static_cast<int>(hex.size()) != nibbles)
    throw ParseError("element set has the wrong length");
  ElementSet out(universe);
  for (int i = 0; i < nibbles; ++i) {
    char c = hex[i];
    int v;
    if (c >= '0' && c <= '9') v = c - '0';
    else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
    else throw ParseError("element set is not hexadecimal");
    for (int b = 0; b < 4; ++b)
      if (v & (1 << b)) {
        int e = i * 4 + b;
        if (e >= universe) throw ParseError("element set has stray bits");
        out.set(e);
      }
  }
  return out;
}

void SubgroupLattice::index_elements(const PermGroup& g) {
  elems_ = g.elements();
  std::sort(elems_.begin(), elems_.end());
  conj_maps_.clear();
  for (const auto& gen : g.generators()) {
    Permutation inv = gen.inverse();
    std::vector<int> map(elems_.size());
    for (std::size_t x = 0; x < elems_.size(); ++x) {
      Permutation c = inv.compose(elems_[x]).compose(gen);
      map[x] = element_index(c);
    }
    conj_maps_.push_back(std::move(map));
  }
}

int SubgroupLattice::element_index(const Permutation& p) const {
  auto it = std::lower_bound(elems_.begin(), elems_.end(), p);
  if (it == elems_.end() || !(*it == p)) return -1;
  return static_cast<int>(it - elems_.begin());
}

int SubgroupLattice::multiply(int a, int b) const {
  return element_index(elems_[a].compose(elems_[b]));
}

int SubgroupLattice::conjugate_element(int x, const Permutation& w) const {
  return element_index(w.inverse().compose(elems_[x]).compose(w));
}

ElementSet SubgroupLattice::closure_from(const ElementSet& start,
                                         const std::vector<int>& gens) const {
  int n = static_cast<int>(elems_.size());
  ElementSet s = start;
  std::vector<int> queue = s.to_indices();
  std::size_t size = queue.size();
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    for (int t : gens) {
      int p = multiply(queue[qi], t);
      if (!s.test(p)) {
        s.set(p);
        queue.push_back(p);
        ++size;
        // A proper subgroup fills at most half the group, so crossing the
        // halfway mark settles the answer.
        if (size * 2 > static_cast<std::size_t>(n)) {
          ElementSet full(n);
          for (int i = 0; i < n; ++i) full.set(i);
          return full;
        }
      }
    }
  }
  return s;
}

SubgroupLattice::SubgroupLattice(const PermGroup& g, std::size_t max_order) {
  if (static_cast<std::size_t>(g.order()) > max_order) {
    std::ostringstream msg;
    msg << "group order " << g.order() << " exceeds the lattice limit "
        << max_order;
    throw BudgetError(msg.str());
  }
  group_ = g;
  index_elements(g);
  const int n = static_cast<int>(elems_.size());

  struct Seed {
    ElementSet set;
    int gen;
  };
  std::vector<Seed> seeds;
  {
    std::unordered_map<std::uint64_t, std::vector<int>> seen;
    for (int x = 1; x < n; ++x) {
      if (!is_prime_power(elems_[x].order())) continue;
      ElementSet cs(n);
      cs.set(0);
      int cur = x;
      while (cur != 0) {
        cs.set(cur);
        cur = multiply(cur, x);
      }
      auto& bucket = seen[cs.hash()];
      bool fresh = true;
      for (int idx : bucket)
        if (seeds[idx].set == cs) {
          fresh = false;
          break;
        }
      if (fresh) {
        bucket.push_back(static_cast<int>(seeds.size()));
        seeds.push_back(Seed{std::move(cs), x});
      }
    }
  }
  std::sort(seeds.begin(), seeds.end(), [](const Seed& a, const Seed& b) {
    auto ca = a.set.count(), cb = b.set.count();
    if (ca != cb) return ca < cb;
    return a.set.setlex_less(b.set);
  });
  std::unordered_map<std::uint64_t, std::vector<int>> seed_by_hash;
  for (std::size_t i = 0; i < seeds.size(); ++i)
    seed_by_hash[seeds[i].set.hash()].push_back(static_cast<int>(i));
  auto seed_index = [&](const ElementSet& s) {
    auto it = seed_by_hash.find(s.hash());
    if (it != seed_by_hash.end())
      for (int idx : it->second)
        if (seeds[idx].set == s) return idx;
    throw InternalError("conjugate of a cyclic subgroup is missing");
  };

  nodes_.clear();
  nodes_by_hash_.clear();
  auto find_node = [&](const ElementSet& s) {
    auto it = nodes_by_hash_.find(s.hash());
    if (it != nodes_by_hash_.end())
      for (int id : it->second)
        if (nodes_[id].set == s) return id;
    return -1;
  };
  auto add_node = [&](ElementSet s, int class_id, Permutation from_rep,
                      std::vector<int> gens) {
    int id = static_cast<int>(nodes_.size());
    nodes_by_hash_[s.hash()].push_back(id);
    std::size_t order = s.count();
    nodes_.push_back(
        Node{std::move(s), order, class_id, std::move(from_rep), std::move(gens)});
    return id;
  };

  // Lazily built conjugation tables for elements that appear as stored
  // generators; used to walk seed orbits under a subgroup.
  std::unordered_map<int, std::vector<int>> conj_table;
  auto conj_map_of = [&](int u) -> const std::vector<int>& {
    auto it = conj_table.find(u);
    if (it != conj_table.end()) return it->second;
    Permutation w = elems_[u];
    Permutation winv = w.inverse();
    std::vector<int> map(n);
    for (int x = 0; x < n; ++x)
      map[x] = element_index(winv.compose(elems_[x]).compose(w));
    return conj_table.emplace(u, std::move(map)).first->second;
  };
  auto remap_set = [&](const ElementSet& s, const std::vector<int>& map) {
    ElementSet out(n);
    for (int idx : s.to_indices()) out.set(map[idx]);
    return out;
  };

  std::vector<std::vector<int>> disc_members;
  add_node([&] {
    ElementSet t(n);
    t.set(0);
    return t;
  }(), 0, Permutation(g.degree()), {});
  disc_members.push_back({0});
  std::vector<int> worklist{0};

  for (std::size_t wi = 0; wi < worklist.size(); ++wi) {
    const int rid = worklist[wi];
    const std::vector<int> rgens = nodes_[rid].gens;
    const ElementSet rset = nodes_[rid].set;
    std::vector<char> seen(seeds.size(), 0);
    for (std::size_t si = 0; si < seeds.size(); ++si) {
      if (seen[si]) continue;
      seen[si] = 1;
      if (seeds[si].set.is_subset_of(rset)) continue;
      // Joining with any member of this seed's orbit under the subgroup
      // lands in the same conjugacy class, so one representative suffices.
      std::vector<int> orbit{static_cast<int>(si)};
      for (std::size_t oi = 0; oi < orbit.size(); ++oi) {
        for (int u : rgens) {
          int other = seed_index(remap_set(seeds[orbit[oi]].set, conj_map_of(u)));
          if (!seen[other]) {
            seen[other] = 1;
            orbit.push_back(other);
          }
        }
      }
      std::vector<int> jgens = rgens;
      jgens.push_back(seeds[si].gen);
      ElementSet joined = closure_from(rset | seeds[si].set, jgens);
      if (find_node(joined) >= 0) continue;

      int cid = static_cast<int>(disc_members.size());
      disc_members.push_back({});
      int base = add_node(std::move(joined), cid, Permutation(g.degree()), jgens);
      disc_members[cid].push_back(base);
      worklist.push_back(base);
      for (std::size_t mi = 0; mi < disc_members[cid].size(); ++mi) {
        int mid = disc_members[cid][mi];
        for (std::size_t gi = 0; gi < conj_maps_.size(); ++gi) {
          ElementSet cset = remap_set(nodes_[mid].set, conj_maps_[gi]);
          if (find_node(cset) >= 0) continue;
          std::vector<int> cgens;
          cgens.reserve(nodes_[mid].gens.size());
          for (int e : nodes_[mid].gens) cgens.push_back(conj_maps_[gi][e]);
          Permutation w = nodes_[mid].from_rep.compose(g.generators()[gi]);
          int nid = add_node(std::move(cset), cid, std::move(w), std::move(cgens));
          disc_members[cid].push_back(nid);
        }
      }
    }
  }

  // Canonical order: by subgroup order, then by smallest differing element.
  std::vector<int> by_rank(nodes_.size());
  std::iota(by_rank.begin(), by_rank.end(), 0);
  std::sort(by_rank.begin(), by_rank.end(), [&](int a, int b) {
    if (nodes_[a].order != nodes_[b].order)
      return nodes_[a].order < nodes_[b].order;
    return nodes_[a].set.setlex_less(nodes_[b].set);
  });
  std::vector<Node> sorted;
  sorted.reserve(nodes_.size());
  std::vector<int> disc_class_of;
  disc_class_of.reserve(nodes_.size());
  for (int old : by_rank) {
    disc_class_of.push_back(nodes_[old].class_id);
    sorted.push_back(std::move(nodes_[old]));
  }
  nodes_ = std::move(sorted);

  classes_.clear();
  std::vector<int> new_class(disc_members.size(), -1);
  for (std::size_t id = 0; id < nodes_.size(); ++id) {
    int dc = disc_class_of[id];
    if (new_class[dc] < 0) {
      new_class[dc] = static_cast<int>(classes_.size());
      classes_.push_back(ClassInfo{static_cast<int>(id), {}});
    }
    nodes_[id].class_id = new_class[dc];
    classes_[new_class[dc]].members.push_back(static_cast<int>(id));
  }
  for (const auto& cls : classes_) {
    Permutation to_rep = nodes_[cls.rep].from_rep.inverse();
    for (int m : cls.members)
      nodes_[m].from_rep = to_rep.compose(nodes_[m].from_rep);
  }
  finish_construction();
}

void SubgroupLattice::finish_construction() {
  nodes_by_hash_.clear();
  for (std::size_t id = 0; id < nodes_.size(); ++id)
    nodes_by_hash_[nodes_[id].set.hash()].push_back(static_cast<int>(id));
  if (nodes_.empty() || nodes_.front().order != 1 ||
      nodes_.back().order != elems_.size())
    throw InternalError("subgroup collection is malformed");
}

int SubgroupLattice::node_of_set(const ElementSet& s) const {
  auto it = nodes_by_hash_.find(s.hash());
  if (it != nodes_by_hash_.end())
    for (int id : it->second)
      if (nodes_[id].set == s) return id;
  return -1;
}

int SubgroupLattice::node_of_subgroup(const PermGroup& h) const {
  if (h.degree() != group_.degree())
    throw DomainError("subgroup acts on the wrong points");
  ElementSet s(static_cast<int>(elems_.size()));
  for (const auto& p : h.elements()) {
    int idx = element_index(p);
    if (idx < 0) throw DomainError("subgroup is not contained in the group");
    s.set(idx);
  }
  int id = node_of_set(s);
  if (id < 0) throw InternalError("subgroup missing from the lattice");
  return id;
}

PermGroup SubgroupLattice::subgroup(int id) const {
  const Node& nd = nodes_.at(id);
  std::vector<Permutation> gens;
  gens.reserve(nd.gens.size());
  for (int e : nd.gens) gens.push_back(elems_[e]);
  return PermGroup(group_.degree(), gens);
}

bool SubgroupLattice::is_normal_node(int id) const {
  return classes_.at(nodes_.at(id).class_id).members.size() == 1;
}

int SubgroupLattice::conjugate_node(int id, const Permutation& w) const {
  const Node& nd = nodes_.at(id);
  Permutation winv = w.inverse();
  ElementSet out(static_cast<int>(elems_.size()));
  for (int idx : nd.set.to_indices()) {
    int y = element_index(winv.compose(elems_[idx]).compose(w));
    if (y < 0) throw DomainError("conjugating element is not in the group");
    out.set(y);
  }
  int res = node_of_set(out);
  if (res < 0) throw DomainError("conjugating element is not in the group");
  return res;
}

int SubgroupLattice::meet(int a, int b) const {
  int id = node_of_set(nodes_.at(a).set & nodes_.at(b).set);
  if (id < 0) throw InternalError("meet fell outside the lattice");
  return id;
}

int SubgroupLattice::join(int a, int b) const {
  if (a > b) std::swap(a, b);
  std::uint64_t key =
      (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = join_memo_.find(key);
    if (it != join_memo_.end()) return it->second;
  }
  const Node& na = nodes_.at(a);
  const Node& nb = nodes_.at(b);
  int result;
  if (na.set.is_subset_of(nb.set)) {
    result = b;
  } else if (nb.set.is_subset_of(na.set)) {
    result = a;
  } else {
    std::vector<int> gens = na.gens;
    gens.insert(gens.end(), nb.gens.begin(), nb.gens.end());
    result = node_of_set(closure_from(na.set | nb.set, gens));
    if (result < 0) throw InternalError("join fell outside the lattice");
  }
  std::lock_guard<std::mutex> lock(cache_mutex_);
  join_memo_.emplace(key, result);
  return result;
}

int SubgroupLattice::core_of(int id) const {
  const auto& cls = classes_.at(nodes_.at(id).class_id);
  ElementSet acc = nodes_[cls.members[0]].set;
  for (std::size_t i = 1; i < cls.members.size(); ++i)
    acc = acc & nodes_[cls.members[i]].set;
  int res = node_of_set(acc);
  if (res < 0) throw InternalError("core fell outside the lattice");
  return res;
}

void SubgroupLattice::ensure_chain_dp() const {
  std::lock_guard<std::mutex> lock(cache_mutex_);
  if (chain_len_) return;
  std::vector<std::size_t> len(classes_.size(), 0);
  std::vector<int> best(classes_.size(), -1);
  for (std::size_t c = 0; c < classes_.size(); ++c) {
    const Node& rep = nodes_[classes_[c].rep];
    for (std::size_t k = 0; k < nodes_.size(); ++k) {
      const Node& cand = nodes_[k];
      if (cand.order >= rep.order) break;
      if (rep.order % cand.order != 0) continue;
      if (!cand.set.is_subset_of(rep.set)) continue;
      std::size_t via = len[cand.class_id] + 1;
      if (via > len[c]) {
        len[c] = via;
        best[c] = static_cast<int>(k);
      }
    }
  }
  chain_len_ = std::move(len);
  chain_best_ = std::move(best);
}

std::size_t SubgroupLattice::longest_chain_length() const {
  ensure_chain_dp();
  std::lock_guard<std::mutex> lock(cache_mutex_);
  return (*chain_len_)[nodes_.back().class_id];
}

std::vector<int> SubgroupLattice::longest_chain_witness() const {
  ensure_chain_dp();
  std::vector<std::size_t> len;
  std::vector<int> best;
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    len = *chain_len_;
    best = *chain_best_;
  }
  std::vector<int> chain;
  int cur = full_node();
  chain.push_back(cur);
  while (cur != trivial_node()) {
    const Node& nd = nodes_[cur];
    int child = best[nd.class_id];
    if (child < 0) throw InternalError("chain walk lost its way");
    if (cur != classes_[nd.class_id].rep)
      child = conjugate_node(child, nd.from_rep);
    chain.push_back(child);
    cur = child;
  }
  std::reverse(chain.begin(), chain.end());
  return chain;
}

const std::vector<std::pair<int, int>>& SubgroupLattice::cover_edges() const {
  std::lock_guard<std::mutex> lock(cache_mutex_);
  if (covers_) return *covers_;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> sups;
  for (std::size_t a = 0; a < nodes_.size(); ++a) {
    sups.clear();
    for (std::size_t b = a + 1; b < nodes_.size(); ++b) {
      if (nodes_[b].order <= nodes_[a].order) continue;
      if (nodes_[b].order % nodes_[a].order != 0) continue;
      if (nodes_[a].set.is_subset_of(nodes_[b].set))
        sups.push_back(static_cast<int>(b));
    }
    // sups is ordered by (order, setlex), so any witness to non-minimality
    // of b appears before b.
    for (std::size_t i = 0; i < sups.size(); ++i) {
      bool minimal = true;
      for (std::size_t j = 0; j < i && minimal; ++j) {
        if (nodes_[sups[i]].order % nodes_[sups[j]].order != 0) continue;
        if (nodes_[sups[j]].set.is_subset_of(nodes_[sups[i]].set))
          minimal = false;
      }
      if (minimal) edges.emplace_back(static_cast<int>(a), sups[i]);
    }
  }
  std::sort(edges.begin(), edges.end());
  covers_ = std::move(edges);
  return *covers_;
}

std::string SubgroupLattice::to_dot() const {
  const auto& edges = cover_edges();
  std::ostringstream out;
  out << "graph subgroups {\n  rankdir=BT;\n  node [shape=box];\n";
  for (std::size_t id = 0; id < nodes_.size(); ++id) {
    out << "  n" << id << " [label=\"#" << id << " |" << nodes_[id].order
        << "| c" << nodes_[id].class_id << "\"";
    if (is_normal_node(static_cast<int>(id))) out << " peripheries=2";
    out << "];\n";
  }
  for (const auto& [a, b] : edges) out << "  n" << a << " -- n" << b << ";\n";
  out << "}\n";
  return out.str();
}

namespace {
constexpr const char* kLatticeFormat = "subgroup-lattice";
constexpr int kLatticeVersion = 1;
}  // namespace

void SubgroupLattice::save(std::ostream& out) const {
  nlohmann::json j;
  j["format"] = kLatticeFormat;
  j["version"] = kLatticeVersion;
  j["degree"] = group_.degree();
  std::vector<std::string> gens;
  for (const auto& g : group_.generators()) gens.push_back(g.cycle_string());
  j["generators"] = gens;
  j["order"] = elems_.size();
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& nd : nodes_) {
    nlohmann::json e;
    e["set"] = nd.set.to_hex();
    e["class"] = nd.class_id;
    e["from"] = nd.from_rep.cycle_string();
    e["gens"] = nd.gens;
    arr.push_back(std::move(e));
  }
  j["nodes"] = std::move(arr);
  out << j.dump(1) << "\n";
}

SubgroupLattice SubgroupLattice::load(std::istream& in) {
  return SubgroupLattice(in);
}

SubgroupLattice::SubgroupLattice(std::istream& in) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad lattice file: ") + e.what());
  }
  try {
    if (j.at("format").get<std::string>() != kLatticeFormat)
      throw ParseError("not a lattice file");
    if (j.at("version").get<int>() != kLatticeVersion)
      throw ParseError("unsupported lattice file version");
    int degree = j.at("degree").get<int>();
    std::vector<Permutation> gens;
    for (const auto& s : j.at("generators"))
      gens.push_back(parse_cycles(s.get<std::string>(), degree));
    group_ = PermGroup(degree, gens);
    index_elements(group_);
    if (j.at("order").get<std::size_t>() != elems_.size())
      throw ParseError("lattice file order disagrees with the group");
    int n = static_cast<int>(elems_.size());
    for (const auto& e : j.at("nodes")) {
      Node nd;
      nd.set = ElementSet::from_hex(e.at("set").get<std::string>(), n);
      nd.order = nd.set.count();
      nd.class_id = e.at("class").get<int>();
      nd.from_rep = parse_cycles(e.at("from").get<std::string>(), degree);
      nd.gens = e.at("gens").get<std::vector<int>>();
      for (int ge : nd.gens)
        if (ge < 0 || ge >= n) throw ParseError("generator index out of range");
      if (nd.class_id < 0) throw ParseError("negative class id");
      nodes_.push_back(std::move(nd));
    }
    for (std::size_t id = 0; id < nodes_.size(); ++id) {
      int c = nodes_[id].class_id;
      if (c >= static_cast<int>(classes_.size())) {
        if (c != static_cast<int>(classes_.size()))
          throw ParseError("class ids are not contiguous");
        classes_.push_back(ClassInfo{static_cast<int>(id), {}});
      }
      classes_[c].members.push_back(static_cast<int>(id));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad lattice file: ") + e.what());
  }
  finish_construction();
}

}  // namespace cgt
