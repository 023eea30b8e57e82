#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "brannulus/error.hpp"
#include "brannulus/polynomial.hpp"
#include "support.hpp"

using namespace brannulus;
using support::Complex;

namespace {

// Taylor coefficients by direct binomial expansion of sum c_i (z0 + h)^i.
std::vector<Complex> expanded_taylor(const std::vector<Complex>& c, Complex z0) {
  const int n = static_cast<int>(c.size()) - 1;
  std::vector<Complex> t(n + 1, 0.0);
  for (int i = 0; i <= n; ++i) {
    double binom = 1.0;
    for (int j = 0; j <= i; ++j) {
      t[j] += c[i] * binom * std::pow(z0, i - j);
      binom = binom * (i - j) / (j + 1);
    }
  }
  return t;
}

bool contains(const std::vector<Complex>& set, Complex z, double tol) {
  return std::any_of(set.begin(), set.end(), [&](Complex w) { return std::abs(w - z) <= tol; });
}

}  // namespace

TEST_CASE("construction rejects degenerate input") {
  CHECK_THROWS_AS(Polynomial::from_coefficients({1.0, 2.0, 0.0}), Error);
  try {
    Polynomial::from_coefficients({1.0, 2.0});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegreeTooSmall);
  }
  try {
    Polynomial::from_coefficients({1.0, 2.0, 0.0});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroLeadingCoefficient);
  }
}

TEST_CASE("from_roots multiplies out") {
  const auto c = coeffs::from_roots(2.0, std::vector<Complex>{1.0, 2.0});
  REQUIRE(c.size() == 3);
  CHECK(std::abs(c[0] - 4.0) < 1e-15);
  CHECK(std::abs(c[1] + 6.0) < 1e-15);
  CHECK(std::abs(c[2] - 2.0) < 1e-15);
}

TEST_CASE("taylor matches binomial expansion") {
  const std::vector<Complex> c = {{1, 2}, {-3, 0.5}, {0.25, -1}, {2, 2}, {-1, 0}};
  const Complex z0{0.7, -1.3};
  const auto t = coeffs::taylor(c, z0);
  const auto oracle = expanded_taylor(c, z0);
  for (size_t j = 0; j < c.size(); ++j) CHECK(std::abs(t[j] - oracle[j]) < 1e-12);
}

TEST_CASE("quadratic roots match the closed form") {
  const Complex b{1.5, -0.25}, c{-2.0, 3.0};
  const auto roots = find_roots(std::vector<Complex>{c, b, 1.0});
  const Complex disc = std::sqrt(b * b - 4.0 * c);
  const std::vector<Complex> found = roots.values();
  CHECK(contains(found, (-b + disc) / 2.0, 1e-12));
  CHECK(contains(found, (-b - disc) / 2.0, 1e-12));
}

TEST_CASE("running example roots, critical points and values") {
  const auto p = support::running_example();
  const auto roots = find_roots(p);
  REQUIRE(roots.entries.size() == 5);
  for (Complex ref : support::reference_roots()) CHECK(contains(roots.values(), ref, 1e-3));
  for (Complex r : roots.values()) CHECK(std::abs(p(r)) < 1e-12);

  // p' = 0.3 (z - 1)(z - 3)(z^2 + 1)
  const auto cd = critical_data(p);
  const std::vector<Complex> cpt = {1.0, 3.0, {0, 1}, {0, -1}};
  REQUIRE(cd.critical_points.entries.size() == 4);
  for (Complex b : cpt) CHECK(contains(cd.critical_points.values(), b, 1e-8));
  const std::vector<Complex> cvl = {0.46, -1.62, {0.3, 0.56}, {0.3, -0.56}};
  REQUIRE(cd.critical_values.entries.size() == 4);
  for (Complex v : cvl) CHECK(contains(cd.critical_values.values(), v, 1e-8));
  for (size_t b = 0; b < cd.critical_points.entries.size(); ++b) {
    const Complex v = cd.critical_values.entries[cd.value_of[b]].value;
    CHECK(std::abs(p(cd.critical_points.entries[b].value) - v) < 1e-12);
  }
}

TEST_CASE("critical multiplicities sum to d - 1") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  for (int d = 2; d <= 10; ++d) {
    std::vector<Complex> c(d + 1);
    for (auto& x : c) x = {g(rng), g(rng)};
    CHECK(critical_data(Polynomial::from_coefficients(c)).critical_points.size() == d - 1);
  }
}

TEST_CASE("one critical value: roots equally spaced, critical point of multiplicity d - 1") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  for (int d = 2; d <= 8; ++d) {
    const Complex a{g(rng), g(rng)}, b{g(rng), g(rng)}, c{g(rng), g(rng)};
    const auto p = support::one_critical_value(a, b, c, d);
    const auto cd = critical_data(p);
    REQUIRE(cd.critical_points.entries.size() == 1);
    CHECK(cd.critical_points.entries[0].multiplicity == d - 1);
    CHECK(std::abs(cd.critical_points.entries[0].value - b) < 1e-8);
    CHECK(std::abs(cd.critical_values.entries[0].value - c) < 1e-8);

    auto roots = find_roots(p).values();
    REQUIRE(roots.size() == static_cast<size_t>(d));
    std::sort(roots.begin(), roots.end(), [&](Complex x, Complex y) { return std::arg(x - b) < std::arg(y - b); });
    const double radius = std::pow(std::abs(c / a), 1.0 / d);
    for (int i = 0; i < d; ++i) {
      CHECK(std::abs(std::abs(roots[i] - b) - radius) < 1e-8);
      const double gap = std::arg((roots[(i + 1) % d] - b) / (roots[i] - b));
      CHECK(circular_distance(gap, 2.0 * std::numbers::pi / d) < 1e-8);
    }
  }
}

TEST_CASE("find_roots then from_roots reproduces coefficients") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int d = 2; d <= 12; ++d) {
    std::vector<Complex> roots;
    while (static_cast<int>(roots.size()) < d) {
      const Complex z{u(rng), u(rng)};
      if (!contains(roots, z, 0.3)) roots.push_back(z);
    }
    const Complex lead{0.8, -0.3};
    const auto c = coeffs::from_roots(lead, roots);
    const auto found = find_roots(c);
    REQUIRE(found.entries.size() == static_cast<size_t>(d));
    const auto back = coeffs::from_roots(lead, found.values());
    double scale = 0.0;
    for (Complex x : c) scale = std::max(scale, std::abs(x));
    for (int i = 0; i <= d; ++i) CHECK(std::abs(back[i] - c[i]) <= 1e-8 * scale);
  }
}

TEST_CASE("multiple roots are grouped") {
  // (z - 1)^3 (z + 2)
  const auto found = find_roots(coeffs::from_roots(1.0, std::vector<Complex>{1.0, 1.0, 1.0, -2.0}));
  REQUIRE(found.entries.size() == 2);
  CHECK(found.entries[0].multiplicity == 1);
  CHECK(found.entries[1].multiplicity == 3);
  CHECK(std::abs(found.entries[1].value - 1.0) < 1e-8);
}

TEST_CASE("distinctness") {
  CHECK_FALSE(validate_distinct_roots(Polynomial::from_coefficients({0.0, 0.0, 1.0})).ok);
  CHECK_FALSE(validate_distinct_roots(Polynomial::from_coefficients(coeffs::from_roots(1.0, std::vector<Complex>{1.0, 1.0, -1.0}))).ok);
  const auto report = validate_distinct_roots(Polynomial::from_coefficients({-1.0, 0.0, 1.0}));
  CHECK(report.ok);
  CHECK(std::abs(report.min_root_separation - 2.0) < 1e-12);
  CHECK(std::abs(report.min_critical_value_modulus - 1.0) < 1e-12);

  const auto p = support::running_example();
  CHECK(validate_distinct_roots(p).ok);
  for (Complex b : critical_data(p).critical_points.values()) CHECK(std::abs(p(b)) > 1e-9);

  // Tolerances are configurable.
  CHECK_FALSE(validate_distinct_roots(Polynomial::from_coefficients({-1.0, 0.0, 1.0}), {3.0, 1e-9}).ok);
}

TEST_CASE("canonical root order is lexicographic") {
  const auto order = canonical_root_order({{1, 0}, {0, 1}, {0, -1}, {-1, 0}});
  CHECK(order[0] == Complex{-1, 0});
  CHECK(order[1] == Complex{0, -1});
  CHECK(order[2] == Complex{0, 1});
  CHECK(order[3] == Complex{1, 0});
}
