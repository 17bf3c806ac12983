#include "cgt/perm.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "cgt/errors.hpp"

namespace cgt {

Permutation::Permutation(int degree) {
  if (degree < 0) throw DomainError("permutation degree must not be negative");
  images_.resize(degree);
  std::iota(images_.begin(), images_.end(), 1);
}

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  int n = static_cast<int>(images_.size());
  std::vector<char> seen(n + 1, 0);
  for (int v : images_) {
    if (v < 1 || v > n) throw DomainError("image table entry out of range");
    if (seen[v]) throw DomainError("image table is not a bijection");
    seen[v] = 1;
  }
}

int Permutation::apply(int point) const {
  if (point < 1 || point > degree()) throw DomainError("point out of range");
  return images_[point - 1];
}

Permutation Permutation::compose(const Permutation& then) const {
  if (then.degree() != degree()) throw DomainError("degree mismatch in composition");
  std::vector<int> img(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i)
    img[i] = then.images_[images_[i] - 1];
  return Permutation(std::move(img));
}

Permutation Permutation::inverse() const {
  std::vector<int> img(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i)
    img[images_[i] - 1] = static_cast<int>(i) + 1;
  return Permutation(std::move(img));
}

Permutation Permutation::conjugated_by(const Permutation& g) const {
  return g.inverse().compose(*this).compose(g);
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != static_cast<int>(i) + 1) return false;
  return true;
}

int Permutation::smallest_moved() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != static_cast<int>(i) + 1) return static_cast<int>(i) + 1;
  return 0;
}

long long Permutation::order() const {
  long long result = 1;
  for (const auto& cyc : cycles())
    result = std::lcm(result, static_cast<long long>(cyc.size()));
  return result;
}

std::vector<std::vector<int>> Permutation::cycles() const {
  std::vector<std::vector<int>> out;
  std::vector<char> done(images_.size() + 1, 0);
  for (int start = 1; start <= degree(); ++start) {
    if (done[start] || images_[start - 1] == start) continue;
    std::vector<int> cyc;
    int p = start;
    do {
      cyc.push_back(p);
      done[p] = 1;
      p = images_[p - 1];
    } while (p != start);
    out.push_back(std::move(cyc));
  }
  return out;
}

std::string Permutation::cycle_string() const {
  auto cycs = cycles();
  if (cycs.empty()) return "()";
  std::ostringstream os;
  for (const auto& cyc : cycs) {
    os << '(';
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      if (i) os << ' ';
      os << cyc[i];
    }
    os << ')';
  }
  return os.str();
}

bool Permutation::operator<(const Permutation& o) const {
  if (degree() != o.degree()) return degree() < o.degree();
  return images_ < o.images_;
}

Permutation parse_cycles(const std::string& text, int degree) {
  if (degree < 1) throw DomainError("permutation degree must be at least 1");
  std::vector<int> img(degree);
  std::iota(img.begin(), img.end(), 1);
  std::vector<char> used(degree + 1, 0);

  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
  };
  skip_ws();
  if (i == text.size()) throw ParseError("empty permutation text");
  bool saw_cycle = false;
  while (i < text.size()) {
    if (text[i] != '(') throw ParseError("expected '(' in cycle notation");
    ++i;
    std::vector<int> cyc;
    while (true) {
      skip_ws();
      if (i < text.size() && text[i] == ')') {
        ++i;
        break;
      }
      if (i < text.size() && text[i] == ',') {
        ++i;
        continue;
      }
      std::size_t start = i;
      while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
      if (i == start) throw ParseError("expected point or ')' in cycle notation");
      int point = 0;
      for (std::size_t k = start; k < i; ++k) point = point * 10 + (text[k] - '0');
      if (point < 1 || point > degree) throw ParseError("point out of range in cycle notation");
      if (used[point]) throw ParseError("point repeated in cycle notation");
      used[point] = 1;
      cyc.push_back(point);
    }
    saw_cycle = true;
    for (std::size_t k = 0; k < cyc.size(); ++k)
      img[cyc[k] - 1] = cyc[(k + 1) % cyc.size()];
    skip_ws();
  }
  if (!saw_cycle) throw ParseError("no cycles in permutation text");
  return Permutation(std::move(img));
}

}  // namespace cgt
