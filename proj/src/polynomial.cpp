#include "brannulus/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "brannulus/error.hpp"

namespace brannulus {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Relative size of the Taylor coefficients below order m that still counts
// as a genuine m-fold root (rounding sits around 1e-15).
constexpr double kMultiplicityResidual = 1e-11;

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Taylor-coefficient magnitudes computed with |c_i| and |z0|; the scale
// against which rounding in taylor() is measured.
std::vector<double> taylor_scale(std::span<const Complex> c, double abs_z0) {
  const int n = static_cast<int>(c.size()) - 1;
  std::vector<double> out(c.size(), 0.0);
  for (int j = 0; j <= n; ++j) {
    double s = 0.0;
    for (int i = j; i <= n; ++i) s += std::abs(c[i]) * binomial(i, j) * std::pow(abs_z0, i - j);
    out[j] = s;
  }
  return out;
}

bool is_multiple_root(std::span<const Complex> c, Complex centroid, int m) {
  const auto t = coeffs::taylor(c, centroid);
  const auto scale = taylor_scale(c, std::abs(centroid));
  for (int j = 0; j < m; ++j) {
    if (std::abs(t[j]) > kMultiplicityResidual * scale[j]) return false;
  }
  return std::abs(t[m]) > kMultiplicityResidual * scale[m];
}

// Single-linkage components of `group` at relative radius rho.
std::vector<std::vector<int>> link_components(const std::vector<Complex>& roots,
                                              const std::vector<int>& group, double rho) {
  std::vector<int> parent(group.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (size_t a = 0; a < group.size(); ++a) {
    for (size_t b = a + 1; b < group.size(); ++b) {
      const Complex ra = roots[group[a]], rb = roots[group[b]];
      const double scale = 1.0 + std::max(std::abs(ra), std::abs(rb));
      if (std::abs(ra - rb) <= rho * scale) parent[find(static_cast<int>(a))] = find(static_cast<int>(b));
    }
  }
  std::vector<std::vector<int>> comps;
  std::vector<int> slot(group.size(), -1);
  for (size_t a = 0; a < group.size(); ++a) {
    const int r = find(static_cast<int>(a));
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(comps.size());
      comps.emplace_back();
    }
    comps[slot[r]].push_back(group[a]);
  }
  return comps;
}

// An m-fold root is a simple root of the (m-1)-th derivative; Newton there
// recovers the center far more accurately than the cluster mean.
Complex refine_center(std::span<const Complex> c, Complex z, int m) {
  std::vector<Complex> d(c.begin(), c.end());
  for (int i = 1; i < m; ++i) d = coeffs::derivative(d);
  for (int it = 0; it < 20; ++it) {
    const auto [v, dv] = coeffs::value_and_derivative(d, z);
    if (dv == Complex{0.0, 0.0}) break;
    const Complex step = v / dv;
    z -= step;
    if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(z))) break;
  }
  return z;
}

void cluster_recursive(std::span<const Complex> c, const std::vector<Complex>& roots,
                       const std::vector<int>& group, double rho, double rho_min,
                       std::vector<MultisetEntry>& out) {
  for (const auto& comp : link_components(roots, group, rho)) {
    const int m = static_cast<int>(comp.size());
    Complex centroid{0.0, 0.0};
    for (int i : comp) centroid += roots[i];
    centroid /= static_cast<double>(m);
    if (m == 1) {
      out.push_back({roots[comp[0]], 1});
      continue;
    }
    const Complex center = refine_center(c, centroid, m);
    const bool near = std::abs(center - centroid) <= rho * (1.0 + std::abs(centroid));
    if (near && is_multiple_root(c, center, m)) {
      out.push_back({center, m});
    } else if (rho <= rho_min * 1.000001) {
      out.push_back({centroid, m});
    } else {
      cluster_recursive(c, roots, comp, rho / 10.0, rho_min, out);
    }
  }
}

bool canonical_less(Complex a, Complex b) {
  const double tol = 1e-9 * (1.0 + std::max(std::abs(a), std::abs(b)));
  if (std::abs(a.real() - b.real()) > tol) return a.real() < b.real();
  return a.imag() < b.imag();
}

std::vector<Complex> trimmed_copy(std::span<const Complex> c) {
  std::vector<Complex> out(c.begin(), c.end());
  while (out.size() > 1 && out.back() == Complex{0.0, 0.0}) out.pop_back();
  return out;
}

}  // namespace

int ComplexMultiset::size() const {
  int s = 0;
  for (const auto& e : entries) s += e.multiplicity;
  return s;
}

bool ComplexMultiset::is_set() const {
  return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.multiplicity == 1; });
}

std::vector<Complex> ComplexMultiset::values() const {
  std::vector<Complex> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.value);
  return out;
}

std::vector<Complex> ComplexMultiset::expanded() const {
  std::vector<Complex> out;
  for (const auto& e : entries) out.insert(out.end(), e.multiplicity, e.value);
  return out;
}

Polynomial Polynomial::from_coefficients(std::vector<Complex> coefficients) {
  if (!coefficients.empty() && coefficients.back() == Complex{0.0, 0.0}) {
    throw Error(ErrorCode::ZeroLeadingCoefficient, "last coefficient must be nonzero");
  }
  if (coefficients.size() < 3) {
    throw Error(ErrorCode::DegreeTooSmall, "degree must be at least 2");
  }
  return Polynomial(std::move(coefficients));
}

Polynomial Polynomial::from_roots(Complex leading, const ComplexMultiset& roots) {
  if (leading == Complex{0.0, 0.0}) {
    throw Error(ErrorCode::ZeroLeadingCoefficient, "leading coefficient must be nonzero");
  }
  const auto expanded = roots.expanded();
  if (expanded.size() < 2) throw Error(ErrorCode::DegreeTooSmall, "at least two roots required");
  return Polynomial(coeffs::from_roots(leading, expanded));
}

Complex Polynomial::operator()(Complex z) const { return coeffs::evaluate(coefficients_, z); }

std::pair<Complex, Complex> Polynomial::value_and_derivative(Complex z) const {
  return coeffs::value_and_derivative(coefficients_, z);
}

double Polynomial::magnitude_bound(double abs_z) const {
  double s = 0.0;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) s = s * abs_z + std::abs(*it);
  return s;
}

namespace coeffs {

Complex evaluate(std::span<const Complex> c, Complex z) {
  Complex v{0.0, 0.0};
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * z + *it;
  return v;
}

std::pair<Complex, Complex> value_and_derivative(std::span<const Complex> c, Complex z) {
  Complex v{0.0, 0.0}, dv{0.0, 0.0};
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    dv = dv * z + v;
    v = v * z + *it;
  }
  return {v, dv};
}

std::vector<Complex> derivative(std::span<const Complex> c) {
  std::vector<Complex> d;
  for (size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * static_cast<double>(i));
  if (d.empty()) d.push_back({0.0, 0.0});
  return d;
}

std::vector<Complex> taylor(std::span<const Complex> c, Complex z0) {
  // Repeated synthetic division by (z - z0).
  std::vector<Complex> work(c.begin(), c.end());
  const size_t n = work.size();
  std::vector<Complex> out(n);
  for (size_t j = 0; j < n; ++j) {
    for (size_t i = n - 1; i > j; --i) work[i - 1] += z0 * work[i];
    out[j] = work[j];
  }
  return out;
}

std::vector<Complex> from_roots(Complex leading, std::span<const Complex> roots) {
  std::vector<Complex> c{leading};
  for (Complex r : roots) {
    std::vector<Complex> next(c.size() + 1, Complex{0.0, 0.0});
    for (size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = std::move(next);
  }
  return c;
}

}  // namespace coeffs

std::vector<Complex> aberth_roots(std::span<const Complex> c_in, const RootFinderOptions& opt) {
  const auto c = trimmed_copy(c_in);
  const int n = static_cast<int>(c.size()) - 1;
  if (n < 1) throw Error(ErrorCode::DegreeTooSmall, "root finding needs degree >= 1");
  if (n == 1) return {-c[0] / c[1]};

  double abs_bound = 0.0;  // Fujiwara-style radius estimate
  for (int i = 0; i < n; ++i) {
    abs_bound = std::max(abs_bound, std::pow(std::abs(c[i] / c[n]), 1.0 / (n - i)));
  }
  const Complex center = -c[n - 1] / (static_cast<double>(n) * c[n]);
  double radius = 0.0;
  {
    // Geometric mean distance to the center keeps the start circle at the scale of the roots.
    const auto t = coeffs::taylor(c, center);
    double r = 0.0;
    for (int i = 0; i < n; ++i) {
      if (std::abs(t[i]) > 0.0) r = std::max(r, std::pow(std::abs(t[i] / t[n]), 1.0 / (n - i)));
    }
    radius = r > 0.0 ? r : std::max(abs_bound, 1.0);
  }

  std::vector<Complex> z(n);
  for (int k = 0; k < n; ++k) {
    const double angle = 2.0 * std::numbers::pi * k / n + 0.4;
    z[k] = center + radius * (1.0 + 0.05 * (k % 3)) * std::polar(1.0, angle);
  }

  std::vector<bool> done(n, false);
  int iteration = 0;
  for (; iteration < opt.max_iterations; ++iteration) {
    bool all_done = true;
    for (int i = 0; i < n; ++i) {
      if (done[i]) continue;
      const auto [v, dv] = coeffs::value_and_derivative(c, z[i]);
      const double abs_z = std::abs(z[i]);
      double bound = 0.0;
      for (int j = n; j >= 0; --j) bound = bound * abs_z + std::abs(c[j]);
      if (std::abs(v) <= 4.0 * (n + 1) * kEps * bound) {
        done[i] = true;
        continue;
      }
      Complex repulsion{0.0, 0.0};
      for (int j = 0; j < n; ++j) {
        if (j != i) repulsion += 1.0 / (z[i] - z[j]);
      }
      Complex step;
      if (dv == Complex{0.0, 0.0}) {
        step = Complex{1e-8 * (1.0 + abs_z), 0.0};
      } else {
        const Complex newton = v / dv;
        step = newton / (1.0 - newton * repulsion);
      }
      z[i] -= step;
      if (std::abs(step) <= 1e-15 * (1.0 + std::abs(z[i]))) {
        done[i] = true;
      } else {
        all_done = false;
      }
    }
    if (all_done) break;
  }
  if (iteration == opt.max_iterations) {
    throw Error(ErrorCode::NoConvergence, "Aberth iteration did not converge within the iteration cap");
  }

  // Newton polish; only accept steps that reduce the residual.
  for (int i = 0; i < n; ++i) {
    for (int it = 0; it < 5; ++it) {
      const auto [v, dv] = coeffs::value_and_derivative(c, z[i]);
      if (dv == Complex{0.0, 0.0}) break;
      const Complex candidate = z[i] - v / dv;
      if (std::abs(coeffs::evaluate(c, candidate)) < std::abs(v)) {
        z[i] = candidate;
      } else {
        break;
      }
    }
  }
  return z;
}

ComplexMultiset find_roots(std::span<const Complex> c_in, const RootFinderOptions& opt) {
  const auto c = trimmed_copy(c_in);
  const auto roots = aberth_roots(c, opt);
  std::vector<int> all(roots.size());
  std::iota(all.begin(), all.end(), 0);
  ComplexMultiset out;
  cluster_recursive(c, roots, all, 1e-2, opt.cluster_tolerance, out.entries);
  std::stable_sort(out.entries.begin(), out.entries.end(),
                   [](const auto& a, const auto& b) { return canonical_less(a.value, b.value); });
  return out;
}

ComplexMultiset find_roots(const Polynomial& p, const RootFinderOptions& opt) {
  return find_roots(p.coefficients(), opt);
}

CriticalData critical_data(const Polynomial& p, const RootFinderOptions& opt) {
  CriticalData out;
  const auto dp = coeffs::derivative(p.coefficients());
  out.critical_points = find_roots(dp, opt);

  std::vector<MultisetEntry> values;
  std::vector<int> raw_of;
  for (const auto& cp : out.critical_points.entries) {
    const Complex v = p(cp.value);
    int slot = -1;
    for (size_t j = 0; j < values.size(); ++j) {
      if (std::abs(values[j].value - v) <= 1e-9 * (1.0 + std::abs(v))) {
        slot = static_cast<int>(j);
        break;
      }
    }
    if (slot < 0) {
      slot = static_cast<int>(values.size());
      values.push_back({v, 0});
    }
    values[slot].multiplicity += cp.multiplicity;
    raw_of.push_back(slot);
  }

  std::vector<int> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return canonical_less(values[a].value, values[b].value); });
  std::vector<int> rank(values.size());
  for (size_t i = 0; i < order.size(); ++i) {
    rank[order[i]] = static_cast<int>(i);
    out.critical_values.entries.push_back(values[order[i]]);
  }
  for (int r : raw_of) out.value_of.push_back(rank[r]);
  return out;
}

DistinctnessReport validate_distinct_roots(const Polynomial& p, const DistinctnessOptions& opt) {
  DistinctnessReport report;
  const auto roots = aberth_roots(p.coefficients());
  double sep = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < roots.size(); ++i) {
    for (size_t j = i + 1; j < roots.size(); ++j) sep = std::min(sep, std::abs(roots[i] - roots[j]));
  }
  const auto grouped = find_roots(p);
  if (!grouped.is_set()) sep = 0.0;
  report.min_root_separation = sep;

  const auto cd = critical_data(p);
  double cv = std::numeric_limits<double>::infinity();
  for (const auto& e : cd.critical_values.entries) cv = std::min(cv, std::abs(e.value));
  report.min_critical_value_modulus = cv;
  report.ok = sep > opt.tol_sep && cv > opt.tol_cv;
  return report;
}

std::vector<Complex> canonical_root_order(std::vector<Complex> roots) {
  std::stable_sort(roots.begin(), roots.end(), canonical_less);
  return roots;
}

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroLeadingCoefficient: return "ZeroLeadingCoefficient";
    case ErrorCode::DegreeTooSmall: return "DegreeTooSmall";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::ZeroInput: return "ZeroInput";
    case ErrorCode::EmptyCriticalValues: return "EmptyCriticalValues";
    case ErrorCode::ZeroCriticalValue: return "ZeroCriticalValue";
    case ErrorCode::PathTooCloseToCriticalValue: return "PathTooCloseToCriticalValue";
    case ErrorCode::StepUnderflow: return "StepUnderflow";
    case ErrorCode::EndpointMatchAmbiguous: return "EndpointMatchAmbiguous";
    case ErrorCode::InfinityIndexUnstable: return "InfinityIndexUnstable";
    case ErrorCode::DescentStalled: return "DescentStalled";
    case ErrorCode::PointTooCloseToCurve: return "PointTooCloseToCurve";
    case ErrorCode::WindingInconsistent: return "WindingInconsistent";
    case ErrorCode::ChainNotMonotone: return "ChainNotMonotone";
    case ErrorCode::LabelMismatch: return "LabelMismatch";
    case ErrorCode::ProductNotDCycle: return "ProductNotDCycle";
    case ErrorCode::CompatibilityViolation: return "CompatibilityViolation";
    case ErrorCode::UnroutablePath: return "UnroutablePath";
    case ErrorCode::TransitivityFailure: return "TransitivityFailure";
    case ErrorCode::MissingTraces: return "MissingTraces";
    case ErrorCode::DistinctRootsRequired: return "DistinctRootsRequired";
  }
  return "Unknown";
}

}  // namespace brannulus
