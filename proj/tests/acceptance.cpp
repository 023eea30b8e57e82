// Acceptance gate: one PASS/FAIL line per criterion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "brannulus/analysis.hpp"
#include "brannulus/error.hpp"
#include "support.hpp"

using namespace brannulus;
using support::Complex;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void run(int id, const std::string& title, const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  if (!o.pass) ++failures;
  std::printf("[%s] criterion %d: %s (%.2f s)%s%s\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), seconds_since(t0),
              o.detail.empty() ? "" : " -- ", o.detail.c_str());
  std::fflush(stdout);
}

// Every expected value has a distinct computed value within tol.
bool matches(const std::vector<Complex>& got, const std::vector<Complex>& expected, double tol) {
  if (got.size() != expected.size()) return false;
  std::vector<bool> used(got.size(), false);
  for (Complex e : expected) {
    bool found = false;
    for (size_t i = 0; i < got.size() && !found; ++i) {
      if (!used[i] && std::abs(got[i] - e) <= tol) used[i] = found = true;
    }
    if (!found) return false;
  }
  return true;
}

const Analysis& running() {
  static const Analysis a = analyze(support::running_example());
  return a;
}

Outcome criterion1() {
  Outcome o;
  const auto t0 = Clock::now();
  const Analysis a = analyze(support::running_example());
  const double elapsed = seconds_since(t0);
  o.require(matches(a.ctx.roots, support::reference_roots(), 1e-3), "roots");
  o.require(matches(a.ctx.critical.critical_points.values(), {{1, 0}, {3, 0}, {0, 1}, {0, -1}}, 1e-8),
            "critical points");
  o.require(matches(a.ctx.critical.critical_values.values(), {{0.46, 0}, {-1.62, 0}, {0.3, 0.56}, {0.3, -0.56}}, 1e-8),
            "critical values");
  o.require(a.ok(), "analysis checks");
  o.require(elapsed < 5.0, "runtime " + std::to_string(elapsed) + " s");
  return o;
}

Outcome criterion2() {
  Outcome o;
  const auto& c = running().ctx.cells;
  o.require(c.k() == 4 && c.l() == 3, "k, l");
  o.require(c.counts.vertices == 20 && c.counts.edges == 36 && c.counts.faces == 16, "cell counts");
  return o;
}

Outcome criterion3() {
  Outcome o;
  const auto& a = running();
  const auto label = support::reference_labels(a.ctx.roots);
  const auto& chain = a.chain.partitions;
  o.require(chain.size() == 4, "chain length");
  if (!o.pass) return o;
  o.require(chain[0].is_discrete(), "bottom partition");
  o.require(support::relabel(chain[1], label) == Partition::from_blocks({{0, 1}, {2}, {3}, {4}}), "second partition");
  o.require(support::relabel(chain[2], label) == Partition::from_blocks({{0, 1, 3, 4}, {2}}), "third partition");
  o.require(chain[3].is_trivial(), "top partition");
  o.require(a.merge_chain.has_value() && a.merge_chain->partitions == chain, "merge chain differs");
  return o;
}

Outcome criterion4() {
  Outcome o;
  const auto& a = running();
  const auto label = support::reference_labels(a.ctx.roots);
  const std::vector<std::vector<int>> expected = {
      support::letters("cadeb"), support::letters("cdaeb"), support::letters("bdaec"), support::letters("bdeac")};
  o.require(a.orders.size() == 4, "sector count");
  for (size_t s = 0; s < a.orders.size() && o.pass; ++s) {
    std::vector<int> named;
    for (int id : a.orders[s].sequence) named.push_back(label[id]);
    o.require(support::canonical_cycle(named) == support::canonical_cycle(expected[s]),
              "sector " + std::to_string(s));
  }
  return o;
}

Outcome criterion5() {
  Outcome o;
  const auto& f = running().factorization;
  std::string got;
  for (const auto& s : f.sector_permutations) got += cycle_string(s) + " ";
  o.require(got == "(2,3) (1,5) (3,4) (1,4) ", "permutations " + got);
  o.require(cycle_string(f.product) == "(1,2,3,4,5)", "product " + cycle_string(f.product));
  return o;
}

Outcome criterion6() {
  Outcome o;
  const auto& a = running();
  const auto label = support::reference_labels(a.ctx.roots);
  int v = -1;
  const auto& cv = a.ctx.critical.critical_values.entries;
  for (size_t i = 0; i < cv.size(); ++i) {
    if (std::abs(cv[i].value - 0.46) < 1e-8) v = static_cast<int>(i);
  }
  o.require(v >= 0, "critical value 0.46");
  if (!o.pass) return o;
  const auto moved = cycles(a.monodromy.generators[v]);
  o.require(moved.size() == 1 && moved[0].size() == 2, "generator is not a transposition");
  if (!o.pass) return o;
  std::vector<int> named = {label[moved[0][0]], label[moved[0][1]]};
  std::sort(named.begin(), named.end());
  o.require(named == std::vector<int>{0, 1}, "generator does not swap a1, a2");
  o.require(a.monodromy.product_cycle_type == std::vector<int>{5}, "product cycle type");
  o.require(a.monodromy.transitive, "transitivity");
  return o;
}

Outcome criterion7() {
  Outcome o;
  const auto t0 = Clock::now();
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  for (int d = 2; d <= 7; ++d) {
    for (int trial = 0; trial < 20; ++trial) {
      const Complex a{g(rng), g(rng)}, b{g(rng), g(rng)}, c{g(rng), g(rng)};
      const Analysis an = analyze(support::one_critical_value(a, b, c, d));
      const std::string tag = "d=" + std::to_string(d) + " trial " + std::to_string(trial) + ": ";
      const std::vector<int> dcycle = {d};
      o.require(an.chain.partitions.size() == 2 && an.chain.partitions[0].is_discrete() &&
                    an.chain.partitions[1].is_trivial(),
                tag + "chain");
      o.require(an.factorization.sector_permutations.size() == 1 &&
                    cycle_type(an.factorization.sector_permutations[0]) == dcycle,
                tag + "factorization");
      o.require(an.monodromy.generators.size() == 1 && cycle_type(an.monodromy.generators[0]) == dcycle,
                tag + "monodromy generator");
      o.require(an.levels.size() == 2, tag + "level count");
      if (!o.pass) return o;
      o.require(is_identity(an.levels[0].permutation) && an.levels[0].components.size() == static_cast<size_t>(d),
                tag + "level below");
      o.require(cycle_type(an.levels[1].permutation) == dcycle && an.levels[1].components.size() == 1,
                tag + "level above");
    }
  }
  const double elapsed = seconds_since(t0);
  o.require(elapsed < 30.0, "runtime " + std::to_string(elapsed) + " s");
  return o;
}

Outcome criterion8() {
  Outcome o;
  const auto t0 = Clock::now();
  std::mt19937_64 rng(20240601);
  std::normal_distribution<double> g;
  std::uniform_int_distribution<int> degree(4, 8);
  int accepted = 0, drawn = 0;
  while (accepted < 50) {
    ++drawn;
    const int d = degree(rng);
    std::vector<Complex> coeffs(d + 1);
    for (auto& x : coeffs) x = {g(rng), g(rng)};
    const auto p = Polynomial::from_coefficients(coeffs);
    if (!validate_distinct_roots(p).ok) continue;
    ++accepted;
    const std::string tag = "polynomial " + std::to_string(accepted) + ": ";

    const Analysis a = analyze(p);

    int multiplicity = 0;
    for (const auto& e : a.ctx.critical.critical_points.entries) multiplicity += e.multiplicity;
    o.require(multiplicity == d - 1, tag + "multiplicity sum");

    for (const auto& level : a.levels) {
      for (size_t c = 0; c < level.components.size(); ++c) {
        int enclosed = 0;
        for (int w : level.winding_table[c]) enclosed += w == 1;
        o.require(static_cast<int>(level.components[c].cycle.size()) == enclosed, tag + "covering degree");
      }
    }

    const auto& chain = a.chain.partitions;
    o.require(!chain.empty() && chain.front().is_discrete() && chain.back().is_trivial(), tag + "chain ends");
    for (size_t i = 1; i < chain.size(); ++i) {
      o.require(refines(chain[i - 1], chain[i]) && chain[i - 1] != chain[i], tag + "chain monotone");
    }
    for (const auto& part : chain) {
      for (const auto& order : a.orders) o.require(is_noncrossing(part, order), tag + "noncrossing");
    }

    o.require(branched_euler_characteristic(d, a.ctx.cells, a.ctx.critical.critical_points) == 1 - d,
              tag + "Euler characteristic");

    AnalysisOptions half;
    half.policy.step_scale = 0.5;
    o.require(analyze(p, half).combinatorics() == a.combinatorics(), tag + "step halving");
    if (!o.pass) return o;
  }
  const double elapsed = seconds_since(t0);
  o.require(elapsed < 300.0, "runtime " + std::to_string(elapsed) + " s");
  if (o.pass) o.detail = std::to_string(accepted) + " of " + std::to_string(drawn) + " draws had distinct roots";
  return o;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome criterion9() {
  Outcome o;
  const auto dir = std::filesystem::temp_directory_path();
  const std::string input = std::string(BRANNULUS_TEST_DATA) + "/running_example.json";
  std::string outputs[2];
  for (int i = 0; i < 2; ++i) {
    const auto out = dir / ("brannulus_acceptance_" + std::to_string(i) + ".json");
    const std::string cmd = std::string("\"") + BRANNULUS_CLI + "\" analyze \"" + input + "\" --out \"" +
                            out.string() + "\"";
    o.require(std::system(cmd.c_str()) == 0, "analyze exit status");
    outputs[i] = slurp(out);
    std::filesystem::remove(out);
  }
  o.require(!outputs[0].empty(), "empty report");
  o.require(outputs[0] == outputs[1], "reports differ");
  return o;
}

}  // namespace

int main() {
  run(1, "running example roots, critical points and values", criterion1);
  run(2, "running example cell structure", criterion2);
  run(3, "running example partition chain, winding and merge", criterion3);
  run(4, "running example sector cyclic orders", criterion4);
  run(5, "running example factorization", criterion5);
  run(6, "running example monodromy", criterion6);
  run(7, "one-critical-value family", criterion7);
  run(8, "property suite on 50 random polynomials", criterion8);
  run(9, "determinism of analyze", criterion9);
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
