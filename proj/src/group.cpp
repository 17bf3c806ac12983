#include "cgt/group.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "cgt/errors.hpp"

namespace cgt {

StabilizerChain::StabilizerChain(int degree, const std::vector<Permutation>& gens,
                                 const std::vector<int>& base_prefix)
    : degree_(degree) {
  if (degree < 1) throw DomainError("chain degree must be at least 1");
  for (const auto& g : gens)
    if (g.degree() != degree) throw DomainError("generator degree mismatch");

  std::unordered_set<int> seen;
  for (int p : base_prefix) {
    if (p < 1 || p > degree) throw DomainError("prescribed base point out of range");
    if (seen.insert(p).second) prefix_.push_back(p);
  }
  for (int p : prefix_) {
    Level lvl;
    lvl.base_point = p;
    lvl.orbit.push_back(p);
    lvl.slot.assign(degree + 1, -1);
    lvl.slot[p] = 0;
    lvl.reps.emplace_back(degree);
    levels_.push_back(std::move(lvl));
  }
  prefix_levels_ = levels_.size();

  // Seed the first unprescribed level at the smallest point the group moves,
  // so the base point order does not depend on generator order.
  if (prefix_.empty()) {
    int first = 0;
    for (const auto& g : gens) {
      int m = g.smallest_moved();
      if (m != 0 && (first == 0 || m < first)) first = m;
    }
    if (first != 0) {
      Level lvl;
      lvl.base_point = first;
      lvl.orbit.push_back(first);
      lvl.slot.assign(degree + 1, -1);
      lvl.slot[first] = 0;
      lvl.reps.emplace_back(degree);
      levels_.push_back(std::move(lvl));
    }
  }

  for (const auto& g : gens) insert(g);
  verify_from_bottom();
}

long long StabilizerChain::order() const {
  long long n = 1;
  for (const auto& lvl : levels_) n *= static_cast<long long>(lvl.orbit.size());
  return n;
}

std::pair<Permutation, std::size_t> StabilizerChain::strip(const Permutation& p) const {
  if (p.degree() != degree_) throw DomainError("degree mismatch in membership test");
  Permutation h = p;
  for (std::size_t k = 0; k < levels_.size(); ++k) {
    const Level& lvl = levels_[k];
    int q = h.apply(lvl.base_point);
    if (lvl.slot[q] < 0) return {h, k};
    h = h.compose(lvl.reps[lvl.slot[q]].inverse());
  }
  return {h, levels_.size()};
}

bool StabilizerChain::contains(const Permutation& p) const {
  auto [h, k] = strip(p);
  return k == levels_.size() && h.is_identity();
}

std::vector<Permutation> StabilizerChain::level_gens_from(std::size_t level_index) const {
  std::vector<Permutation> out;
  for (std::size_t k = level_index; k < levels_.size(); ++k)
    out.insert(out.end(), levels_[k].gens.begin(), levels_[k].gens.end());
  return out;
}

void StabilizerChain::extend_orbit(std::size_t level_index) {
  Level& lvl = levels_[level_index];
  auto gens = level_gens_from(level_index);
  lvl.orbit.clear();
  lvl.slot.assign(degree_ + 1, -1);
  lvl.reps.clear();
  lvl.orbit.push_back(lvl.base_point);
  lvl.slot[lvl.base_point] = 0;
  lvl.reps.emplace_back(degree_);
  for (std::size_t i = 0; i < lvl.orbit.size(); ++i) {
    int p = lvl.orbit[i];
    for (const auto& g : gens) {
      int q = g.apply(p);
      if (lvl.slot[q] < 0) {
        lvl.slot[q] = static_cast<int>(lvl.orbit.size());
        lvl.orbit.push_back(q);
        lvl.reps.push_back(lvl.reps[lvl.slot[p]].compose(g));
      }
    }
  }
}

std::size_t StabilizerChain::new_level(const Permutation& mover) {
  Level lvl;
  lvl.base_point = mover.smallest_moved();
  lvl.orbit.push_back(lvl.base_point);
  lvl.slot.assign(degree_ + 1, -1);
  lvl.slot[lvl.base_point] = 0;
  lvl.reps.emplace_back(degree_);
  levels_.push_back(std::move(lvl));
  return levels_.size() - 1;
}

bool StabilizerChain::insert(const Permutation& p) {
  auto [h, j] = strip(p);
  if (j == levels_.size()) {
    if (h.is_identity()) return false;
    j = new_level(h);
  }
  levels_[j].gens.push_back(h);
  for (std::size_t k = 0; k <= j; ++k) extend_orbit(k);
  return true;
}

void StabilizerChain::verify_from_bottom() {
  if (levels_.empty()) return;
  std::size_t i = levels_.size() - 1;
  while (true) {
    bool restart = false;
    auto gens = level_gens_from(i);
    for (std::size_t oi = 0; !restart && oi < levels_[i].orbit.size(); ++oi) {
      int p = levels_[i].orbit[oi];
      Permutation up = levels_[i].reps[levels_[i].slot[p]];
      for (const auto& s : gens) {
        int q = s.apply(p);
        Permutation schreier =
            up.compose(s).compose(levels_[i].reps[levels_[i].slot[q]].inverse());
        if (schreier.is_identity()) continue;
        auto [h, j] = strip(schreier);
        if (j == levels_.size() && h.is_identity()) continue;
        if (j == levels_.size()) j = new_level(h);
        levels_[j].gens.push_back(h);
        for (std::size_t k = 0; k <= j; ++k) extend_orbit(k);
        i = j;
        restart = true;
        break;
      }
    }
    if (restart) continue;
    if (i == 0) break;
    --i;
  }
}

std::vector<Permutation> StabilizerChain::stabilizer_generators(std::size_t k) const {
  if (k > prefix_levels_) throw DomainError("stabilizer prefix length exceeds prescribed base");
  auto gens = level_gens_from(k);
  std::vector<Permutation> out;
  for (const auto& g : gens)
    if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
  return out;
}

std::vector<Permutation> StabilizerChain::strong_generators() const {
  auto gens = level_gens_from(0);
  std::vector<Permutation> out;
  for (const auto& g : gens)
    if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
  return out;
}

std::vector<Permutation> StabilizerChain::elements() const {
  std::vector<Permutation> elems;
  elems.emplace_back(degree_);
  for (std::size_t k = levels_.size(); k-- > 0;) {
    std::vector<Permutation> next;
    next.reserve(elems.size() * levels_[k].reps.size());
    for (const auto& h : elems)
      for (const auto& u : levels_[k].reps) next.push_back(h.compose(u));
    elems = std::move(next);
  }
  return elems;
}

PermGroup::PermGroup(int degree, std::vector<Permutation> gens)
    : degree_(degree), gens_(std::move(gens)), chain_(degree, gens_) {}

PermGroup PermGroup::trivial(int degree) { return PermGroup(degree, {}); }

bool PermGroup::contains(const Permutation& p) const {
  if (p.degree() != degree_) return false;
  return chain_.contains(p);
}

std::vector<int> PermGroup::orbit(int point) const {
  if (point < 1 || point > degree_) throw DomainError("orbit point out of range");
  std::vector<int> out{point};
  std::vector<char> seen(degree_ + 1, 0);
  seen[point] = 1;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (const auto& g : gens_) {
      int q = g.apply(out[i]);
      if (!seen[q]) {
        seen[q] = 1;
        out.push_back(q);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<int>> PermGroup::orbits() const {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(degree_ + 1, 0);
  for (int p = 1; p <= degree_; ++p) {
    if (seen[p]) continue;
    auto orb = orbit(p);
    for (int q : orb) seen[q] = 1;
    out.push_back(std::move(orb));
  }
  return out;
}

PermGroup PermGroup::pointwise_stabilizer(const std::vector<int>& points) const {
  for (int p : points)
    if (p < 1 || p > degree_) throw DomainError("stabilizer point out of range");
  StabilizerChain chain(degree_, gens_, points);
  return PermGroup(degree_, chain.stabilizer_generators(chain.prefix_levels()));
}

PermGroup PermGroup::stabilizer(int point) const {
  return pointwise_stabilizer({point});
}

PermGroup PermGroup::conjugated_by(const Permutation& g) const {
  if (g.degree() != degree_) throw DomainError("degree mismatch in conjugation");
  std::vector<Permutation> gens;
  gens.reserve(gens_.size());
  for (const auto& h : gens_) gens.push_back(h.conjugated_by(g));
  return PermGroup(degree_, std::move(gens));
}

bool PermGroup::is_subgroup_of(const PermGroup& big) const {
  if (degree_ != big.degree()) return false;
  for (const auto& g : gens_)
    if (!big.contains(g)) return false;
  return true;
}

bool PermGroup::same_subgroup_as(const PermGroup& other) const {
  return degree_ == other.degree() && order() == other.order() && is_subgroup_of(other);
}

bool is_normal(const PermGroup& g, const PermGroup& h) {
  if (!h.is_subgroup_of(g)) throw DomainError("is_normal requires a subgroup");
  for (const auto& a : g.generators())
    for (const auto& b : h.generators())
      if (!h.contains(b.conjugated_by(a))) return false;
  return true;
}

namespace {

std::string strip_line(const std::string& raw) {
  std::string s = raw;
  auto hash = s.find('#');
  if (hash != std::string::npos) s.erase(hash);
  auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace

PermGroup read_group(std::istream& in) {
  std::string line;
  int degree = -1;
  std::vector<Permutation> gens;
  while (std::getline(in, line)) {
    std::string s = strip_line(line);
    if (s.empty()) continue;
    if (degree < 0) {
      std::istringstream ls(s);
      std::string word;
      ls >> word;
      if (word != "degree") throw ParseError("group file must start with a degree line");
      if (!(ls >> degree) || degree < 1) throw ParseError("invalid degree in group file");
      std::string extra;
      if (ls >> extra) throw ParseError("trailing text after degree");
      continue;
    }
    gens.push_back(parse_cycles(s, degree));
  }
  if (degree < 0) throw ParseError("group file has no degree line");
  return PermGroup(degree, std::move(gens));
}

PermGroup read_group_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open group file: " + path);
  return read_group(in);
}

void write_group(std::ostream& out, const PermGroup& g) {
  out << "degree " << g.degree() << "\n";
  for (const auto& p : g.generators()) out << p.cycle_string() << "\n";
}

}  // namespace cgt
