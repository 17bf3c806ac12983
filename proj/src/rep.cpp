#include "cgt/rep.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <utility>

#include "cgt/errors.hpp"

namespace cgt {

Representation::Representation(PermGroup parent, int rep_degree,
                               std::vector<Permutation> gen_images,
                               std::vector<RepBlock> blocks)
    : parent_(std::move(parent)),
      rep_degree_(rep_degree),
      gen_images_(std::move(gen_images)),
      blocks_(std::move(blocks)),
      action_(PermGroup::trivial(1)) {
  if (rep_degree_ < 0) throw DomainError("representation degree is negative");
  if (gen_images_.size() != parent_.generators().size())
    throw DomainError("generator image count does not match the parent");
  for (const auto& p : gen_images_)
    if (p.degree() != rep_degree_)
      throw DomainError("generator image degree mismatch");
  int covered = 0;
  for (const auto& b : blocks_) {
    if (b.offset != covered || b.size < 0)
      throw DomainError("representation blocks must tile the points in order");
    covered += b.size;
  }
  if (covered != rep_degree_)
    throw DomainError("representation blocks do not cover the points");

  if (rep_degree_ == 0) {
    action_ = PermGroup::trivial(1);
  } else {
    action_ = PermGroup(rep_degree_, gen_images_);
  }
}

Representation Representation::natural(const PermGroup& g) {
  return Representation(g, g.degree(), g.generators(),
                        {RepBlock{"natural", 0, g.degree()}});
}

std::vector<int> Representation::all_points() const {
  std::vector<int> pts(rep_degree_);
  std::iota(pts.begin(), pts.end(), 1);
  return pts;
}

PermGroup Representation::preimage_of_stabilizer(
    const std::vector<int>& rep_points) const {
  int dg = parent_.degree();
  for (int p : rep_points)
    if (p < 1 || p > rep_degree_)
      throw DomainError("representation point out of range");

  // Run a chain for the graph of the action: each generator acts on the
  // parent points and the rep points side by side.  Prescribing the chosen
  // rep points as the base prefix makes the tail of the chain generate
  // exactly the elements whose action fixes them, and projecting those
  // generators back to the parent points recovers the subgroup of the parent.
  std::vector<Permutation> aug;
  const auto& gens = parent_.generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    std::vector<int> img(dg + rep_degree_);
    for (int p = 1; p <= dg; ++p) img[p - 1] = gens[i].apply(p);
    for (int p = 1; p <= rep_degree_; ++p)
      img[dg + p - 1] = dg + gen_images_[i].apply(p);
    aug.emplace_back(img);
  }
  std::vector<int> prefix;
  prefix.reserve(rep_points.size());
  for (int p : rep_points) prefix.push_back(dg + p);
  StabilizerChain chain(dg + rep_degree_, aug, prefix);
  std::vector<Permutation> sub;
  for (const auto& s : chain.stabilizer_generators(chain.prefix_levels())) {
    std::vector<int> img(s.images().begin(), s.images().begin() + dg);
    sub.emplace_back(img);
  }
  return PermGroup(dg, sub);
}

std::string subgroup_label(const PermGroup& h) {
  std::string out = "<";
  bool first = true;
  for (const auto& g : h.generators()) {
    if (g.is_identity()) continue;
    if (!first) out += ", ";
    out += g.cycle_string();
    first = false;
  }
  if (first) out += "()";
  out += ">";
  return out;
}

CosetSpace coset_space(const PermGroup& g, const PermGroup& h) {
  if (!h.is_subgroup_of(g)) throw DomainError("coset action needs a subgroup");
  auto h_elems = h.elements();
  // A coset is identified by its lexicographically least element, which also
  // serves as the stored representative.  The identity is least overall, so
  // the subgroup itself always becomes point 1.
  auto coset_key = [&](const Permutation& r) {
    std::vector<int> best;
    for (const auto& x : h_elems) {
      auto img = x.compose(r).images();
      if (best.empty() || img < best) best = std::move(img);
    }
    return best;
  };

  std::map<std::vector<int>, int> point_of;
  std::vector<Permutation> reps;
  std::vector<std::vector<int>> images_by_gen(g.generators().size());

  point_of[coset_key(Permutation(g.degree()))] = 0;
  reps.emplace_back(g.degree());
  for (std::size_t k = 0; k < reps.size(); ++k) {
    Permutation r = reps[k];
    for (std::size_t i = 0; i < g.generators().size(); ++i) {
      auto key = coset_key(r.compose(g.generators()[i]));
      auto it = point_of.find(key);
      int target;
      if (it == point_of.end()) {
        target = static_cast<int>(reps.size());
        reps.emplace_back(key);
        point_of.emplace(std::move(key), target);
      } else {
        target = it->second;
      }
      images_by_gen[i].push_back(target + 1);
    }
  }

  int n = static_cast<int>(reps.size());
  std::vector<Permutation> gen_images;
  for (auto& img : images_by_gen) gen_images.emplace_back(img);
  Representation rep(g, n, std::move(gen_images),
                     {RepBlock{"cosets of " + subgroup_label(h), 0, n}});
  return CosetSpace{std::move(rep), std::move(reps)};
}

Representation coset_action(const PermGroup& g, const PermGroup& h) {
  return coset_space(g, h).rep;
}

Representation union_representation(const PermGroup& parent,
                                    const std::vector<Representation>& parts) {
  for (const auto& part : parts) {
    if (part.parent().degree() != parent.degree() ||
        part.parent().generators() != parent.generators())
      throw DomainError("union parts must share the parent group");
  }
  int total = 0;
  std::vector<RepBlock> blocks;
  for (const auto& part : parts) {
    for (RepBlock b : part.blocks()) {
      b.offset += total;
      blocks.push_back(b);
    }
    total += part.rep_degree();
  }
  std::vector<Permutation> images;
  for (std::size_t i = 0; i < parent.generators().size(); ++i) {
    std::vector<int> img(total);
    int at = 0;
    for (const auto& part : parts) {
      const auto& gi = part.generator_images()[i];
      for (int p = 1; p <= part.rep_degree(); ++p)
        img[at + p - 1] = at + gi.apply(p);
      at += part.rep_degree();
    }
    images.emplace_back(img);
  }
  return Representation(parent, total, images, blocks);
}

PermGroup core(const PermGroup& g, const PermGroup& h) {
  return coset_action(g, h).kernel();
}

}  // namespace cgt
