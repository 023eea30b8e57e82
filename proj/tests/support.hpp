#pragma once

#include <algorithm>
#include <complex>
#include <vector>

#include "brannulus/combinatorics.hpp"

namespace support {

using brannulus::Complex;

// 0.02 (3z^5 - 15z^4 + 20z^3 - 30z^2 + 45z)
inline brannulus::Polynomial running_example() {
  return brannulus::Polynomial::from_coefficients({0.0, 0.9, -0.6, 0.4, -0.3, 0.06});
}

// Approximate roots in the reference labelling a1..a5.
inline const std::vector<Complex>& reference_roots() {
  static const std::vector<Complex> r = {{0.0, 0.0}, {1.7944, 0.0}, {3.5972, 0.0}, {-0.1958, 1.5117}, {-0.1958, -1.5117}};
  return r;
}

// label[id] = reference index (0 for a1, ...) of canonical root id.
inline std::vector<int> reference_labels(const std::vector<Complex>& roots) {
  std::vector<int> label;
  for (Complex z : roots) {
    const auto& ref = reference_roots();
    int best = 0;
    for (size_t i = 1; i < ref.size(); ++i) {
      if (std::abs(z - ref[i]) < std::abs(z - ref[best])) best = static_cast<int>(i);
    }
    label.push_back(best);
  }
  return label;
}

inline brannulus::Partition relabel(const brannulus::Partition& p, const std::vector<int>& label) {
  std::vector<std::vector<int>> blocks;
  for (const auto& b : p.blocks) {
    std::vector<int> nb;
    for (int x : b) nb.push_back(label[x]);
    blocks.push_back(nb);
  }
  return brannulus::Partition::from_blocks(blocks);
}

// Rotation to the smallest element, so cyclic sequences compare with ==.
inline std::vector<int> canonical_cycle(std::vector<int> s) {
  std::rotate(s.begin(), std::min_element(s.begin(), s.end()), s.end());
  return s;
}

// Letters a..e to 0..4.
inline std::vector<int> letters(const char* s) {
  std::vector<int> out;
  for (; *s; ++s) out.push_back(*s - 'a');
  return out;
}

// a (z - b)^d + c.
inline brannulus::Polynomial one_critical_value(Complex a, Complex b, Complex c, int d) {
  auto coeffs = brannulus::coeffs::from_roots(a, std::vector<Complex>(d, b));
  coeffs[0] += c;
  return brannulus::Polynomial::from_coefficients(coeffs);
}

}  // namespace support
