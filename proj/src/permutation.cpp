#include "brannulus/permutation.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace brannulus {

Permutation identity_permutation(int n) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

bool is_permutation(const Permutation& p) {
  std::vector<bool> seen(p.size(), false);
  for (int v : p) {
    if (v < 0 || v >= static_cast<int>(p.size()) || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

bool is_identity(const Permutation& p) {
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] != static_cast<int>(i)) return false;
  }
  return true;
}

Permutation inverse(const Permutation& p) {
  Permutation q(p.size());
  for (size_t i = 0; i < p.size(); ++i) q[p[i]] = static_cast<int>(i);
  return q;
}

Permutation compose(const Permutation& f, const Permutation& g) {
  Permutation h(g.size());
  for (size_t i = 0; i < g.size(); ++i) h[i] = f[g[i]];
  return h;
}

std::vector<std::vector<int>> cycles(const Permutation& p, bool include_fixed) {
  std::vector<std::vector<int>> out;
  std::vector<bool> seen(p.size(), false);
  for (size_t s = 0; s < p.size(); ++s) {
    if (seen[s]) continue;
    std::vector<int> c;
    for (int i = static_cast<int>(s); !seen[i]; i = p[i]) {
      seen[i] = true;
      c.push_back(i);
    }
    if (c.size() > 1 || include_fixed) out.push_back(std::move(c));
  }
  return out;
}

std::vector<int> cycle_type(const Permutation& p) {
  std::vector<int> t;
  for (const auto& c : cycles(p, true)) t.push_back(static_cast<int>(c.size()));
  std::sort(t.begin(), t.end(), std::greater<>());
  return t;
}

Permutation long_cycle(int n) {
  Permutation p(n);
  for (int i = 0; i < n; ++i) p[i] = (i + 1) % n;
  return p;
}

Permutation from_cycles(int n, const std::vector<std::vector<int>>& cs) {
  Permutation p = identity_permutation(n);
  for (const auto& c : cs) {
    for (size_t i = 0; i < c.size(); ++i) p[c[i]] = c[(i + 1) % c.size()];
  }
  return p;
}

std::string cycle_string(const Permutation& p) {
  const auto cs = cycles(p);
  if (cs.empty()) return "()";
  std::string s;
  for (const auto& c : cs) {
    s += '(';
    for (size_t i = 0; i < c.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(c[i] + 1);
    }
    s += ')';
  }
  return s;
}

}  // namespace brannulus
