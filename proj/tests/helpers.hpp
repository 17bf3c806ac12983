#pragma once

// Small generator fixtures built by hand, kept separate from the library's
// catalog constructors so catalog tests can compare against an independent
// construction.

#include <vector>

#include "cgt/perm.hpp"

namespace fixtures {

inline cgt::Permutation transposition(int degree, int a, int b) {
  std::vector<int> img(degree);
  for (int i = 0; i < degree; ++i) img[i] = i + 1;
  img[a - 1] = b;
  img[b - 1] = a;
  return cgt::Permutation(img);
}

inline cgt::Permutation full_cycle(int degree) {
  std::vector<int> img(degree);
  for (int i = 0; i < degree; ++i) img[i] = i + 2;
  img[degree - 1] = 1;
  return cgt::Permutation(img);
}

inline std::vector<cgt::Permutation> sym_gens(int n) {
  if (n <= 1) return {cgt::Permutation(n)};
  if (n == 2) return {transposition(2, 1, 2)};
  return {transposition(n, 1, 2), full_cycle(n)};
}

inline std::vector<cgt::Permutation> cyc_gens(int n) {
  return {full_cycle(n)};
}

// Dihedral group of order 2n acting on n vertices.
inline std::vector<cgt::Permutation> dih_gens(int n) {
  std::vector<int> flip(n);
  flip[0] = 1;
  for (int i = 2; i <= n; ++i) flip[i - 1] = n + 2 - i;
  return {full_cycle(n), cgt::Permutation(flip)};
}

// Quaternion group acting on its own eight elements by right multiplication,
// labels 1, -1, i, -i, j, -j, k, -k in that order.
inline std::vector<cgt::Permutation> q8_gens() {
  return {cgt::Permutation(std::vector<int>{3, 4, 2, 1, 8, 7, 5, 6}),
          cgt::Permutation(std::vector<int>{5, 6, 7, 8, 2, 1, 4, 3})};
}

inline std::vector<cgt::Permutation> alt_gens(int n) {
  std::vector<cgt::Permutation> gens;
  for (int k = 3; k <= n; ++k) {
    std::vector<int> img(n);
    for (int i = 0; i < n; ++i) img[i] = i + 1;
    img[0] = 2;
    img[1] = k;
    img[k - 1] = 1;
    gens.push_back(cgt::Permutation(img));
  }
  if (gens.empty()) gens.push_back(cgt::Permutation(n));
  return gens;
}

}  // namespace fixtures
