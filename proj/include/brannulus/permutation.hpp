#pragma once

#include <string>
#include <vector>

namespace brannulus {

/// Permutation of {0, ..., n-1} stored as its image list: perm[i] is the image of i.
using Permutation = std::vector<int>;

Permutation identity_permutation(int n);
bool is_permutation(const Permutation& p);
bool is_identity(const Permutation& p);
Permutation inverse(const Permutation& p);
/// Functional composition: (f o g)(i) = f[g[i]], g applied first.
Permutation compose(const Permutation& f, const Permutation& g);
/// Cycles of length >= 2 (or all cycles when include_fixed), each starting at its smallest element.
std::vector<std::vector<int>> cycles(const Permutation& p, bool include_fixed = false);
/// Cycle lengths in decreasing order, fixed points included.
std::vector<int> cycle_type(const Permutation& p);
/// The standard long cycle i -> i+1 mod n.
Permutation long_cycle(int n);
/// Builds a permutation from 0-based cycles.
Permutation from_cycles(int n, const std::vector<std::vector<int>>& cs);
/// 1-based cycle notation such as "(1,4)(2,5,3)"; the identity prints "()".
std::string cycle_string(const Permutation& p);

}  // namespace brannulus
