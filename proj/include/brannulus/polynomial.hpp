#pragma once

#include <complex>
#include <span>
#include <vector>

namespace brannulus {

using Complex = std::complex<double>;

struct MultisetEntry {
  Complex value;
  int multiplicity = 1;
};

/// Finite multiset of complex numbers; entries are pairwise separated by more
/// than the clustering tolerance that produced them.
struct ComplexMultiset {
  std::vector<MultisetEntry> entries;

  /// Sum of multiplicities.
  int size() const;
  bool is_set() const;
  std::vector<Complex> values() const;
  /// Expands multiplicities: {2^2, -1} -> [2, 2, -1].
  std::vector<Complex> expanded() const;
};

/// Complex polynomial of degree d >= 2, coefficients in ascending powers.
class Polynomial {
 public:
  /// Throws ZeroLeadingCoefficient when the last entry is zero and
  /// DegreeTooSmall when fewer than three coefficients are given.
  static Polynomial from_coefficients(std::vector<Complex> coefficients);
  /// c_d * prod (z - a)^m over the multiset entries.
  static Polynomial from_roots(Complex leading, const ComplexMultiset& roots);

  int degree() const { return static_cast<int>(coefficients_.size()) - 1; }
  Complex leading() const { return coefficients_.back(); }
  std::span<const Complex> coefficients() const { return coefficients_; }

  Complex operator()(Complex z) const;
  /// p(z) and p'(z) in one Horner pass.
  std::pair<Complex, Complex> value_and_derivative(Complex z) const;
  /// Sum |c_i| |z|^i; the natural scale of rounding error in p(z).
  double magnitude_bound(double abs_z) const;

 private:
  explicit Polynomial(std::vector<Complex> c) : coefficients_(std::move(c)) {}
  std::vector<Complex> coefficients_;
};

// Helpers on raw ascending coefficient vectors (any degree >= 1).
namespace coeffs {

Complex evaluate(std::span<const Complex> c, Complex z);
std::pair<Complex, Complex> value_and_derivative(std::span<const Complex> c, Complex z);
std::vector<Complex> derivative(std::span<const Complex> c);
/// Taylor coefficients about z0: result[j] = p^{(j)}(z0) / j!.
std::vector<Complex> taylor(std::span<const Complex> c, Complex z0);
std::vector<Complex> from_roots(Complex leading, std::span<const Complex> roots);

}  // namespace coeffs

struct RootFinderOptions {
  int max_iterations = 500;
  // Roots closer than this (times 1 + |root|) always merge.
  double cluster_tolerance = 1e-7;
};

/// All d roots (with repetition) via Aberth-Ehrlich iteration followed by a
/// Newton polish. Deterministic. Throws NoConvergence on the iteration cap.
std::vector<Complex> aberth_roots(std::span<const Complex> c, const RootFinderOptions& opt = {});

/// Groups the output of aberth_roots into a multiset.
ComplexMultiset find_roots(std::span<const Complex> c, const RootFinderOptions& opt = {});
ComplexMultiset find_roots(const Polynomial& p, const RootFinderOptions& opt = {});

struct CriticalData {
  ComplexMultiset critical_points;
  ComplexMultiset critical_values;
  /// value_of[i] indexes critical_values.entries for critical point i.
  std::vector<int> value_of;
};

CriticalData critical_data(const Polynomial& p, const RootFinderOptions& opt = {});

struct DistinctnessOptions {
  double tol_sep = 1e-9;
  double tol_cv = 1e-9;
};

struct DistinctnessReport {
  bool ok = false;
  double min_root_separation = 0.0;
  double min_critical_value_modulus = 0.0;
};

DistinctnessReport validate_distinct_roots(const Polynomial& p, const DistinctnessOptions& opt = {});

/// Canonical root labels: sorted by real part, then imaginary part, with
/// real parts closer than 1e-9 (scaled) treated as equal.
std::vector<Complex> canonical_root_order(std::vector<Complex> roots);

}  // namespace brannulus
