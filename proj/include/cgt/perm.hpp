#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace cgt {

// Permutation of {1, ..., degree}, stored as an image table.
// Composition is left-to-right: (a * b) maps p to b(a(p)).
class Permutation {
public:
  Permutation() = default;                     // empty domain
  explicit Permutation(int degree);            // identity
  explicit Permutation(std::vector<int> images);

  int degree() const { return static_cast<int>(images_.size()); }
  int apply(int point) const;
  int operator()(int point) const { return apply(point); }

  Permutation compose(const Permutation& then) const;
  Permutation operator*(const Permutation& then) const { return compose(then); }
  Permutation inverse() const;
  Permutation conjugated_by(const Permutation& g) const;  // g^-1 * (*this) * g

  bool is_identity() const;
  int smallest_moved() const;  // 0 when identity
  long long order() const;

  std::vector<std::vector<int>> cycles() const;  // canonical: see cycle_string
  std::string cycle_string() const;

  bool operator==(const Permutation& o) const { return images_ == o.images_; }
  bool operator!=(const Permutation& o) const { return images_ != o.images_; }
  bool operator<(const Permutation& o) const;  // image-table lexicographic

  const std::vector<int>& images() const { return images_; }

private:
  std::vector<int> images_;  // images_[i] is the image of point i+1
};

// Parses cycle notation, e.g. "(1 2 3)(4 5)"; "()" is the identity.
// Cycle entries may be separated by spaces or commas. Points outside
// 1..degree, repeated points, and malformed text raise ParseError.
Permutation parse_cycles(const std::string& text, int degree);

struct PermHash {
  std::size_t operator()(const Permutation& p) const {
    std::uint64_t h = 1469598103934665603ull;
    for (int v : p.images()) {
      h ^= static_cast<std::uint64_t>(v);
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace cgt
