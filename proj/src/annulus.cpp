#include "brannulus/annulus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "brannulus/error.hpp"

namespace brannulus {

double normalize_angle(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

double circular_distance(double a, double b) {
  const double d = normalize_angle(a - b);
  return std::min(d, kTwoPi - d);
}

double height_of_radius(double r) {
  const double r2 = r * r;
  if (std::isinf(r2)) return 1.0;
  return (r2 - 1.0) / (r2 + 1.0);
}

double radius_of_height(double t) { return std::sqrt((1.0 + t) / (1.0 - t)); }

AnnulusPoint to_annulus(Complex z) {
  if (z == Complex{0.0, 0.0}) throw Error(ErrorCode::ZeroInput, "the annulus map is undefined at 0");
  return {normalize_angle(std::arg(z)), height_of_radius(std::abs(z))};
}

Complex from_annulus(const AnnulusPoint& a) { return std::polar(radius_of_height(a.height), a.argument); }

Complex to_disk(Complex z) {
  const double r = std::abs(z);
  if (r == 0.0) return {0.0, 0.0};
  return z / std::sqrt(r * r + 1.0);
}

CellCounts annulus_cell_counts(int k, int l) {
  return {static_cast<long>(k) * (l + 2), static_cast<long>(k) * (2L * l + 3), static_cast<long>(k) * (l + 1)};
}

int AnnulusComplex::argument_index(double u) const {
  for (size_t i = 0; i < critical_arguments.size(); ++i) {
    if (circular_distance(u, critical_arguments[i]) <= 1e-9) return static_cast<int>(i);
  }
  return -1;
}

int AnnulusComplex::height_index(double t) const {
  for (size_t i = 0; i < critical_heights.size(); ++i) {
    if (std::abs(t - critical_heights[i]) <= 1e-9) return static_cast<int>(i);
  }
  return -1;
}

double AnnulusComplex::min_height_gap() const {
  double gap = std::numeric_limits<double>::infinity();
  double prev = -1.0;
  for (double h : critical_heights) {
    gap = std::min(gap, h - prev);
    prev = h;
  }
  return std::min(gap, 1.0 - prev);
}

double AnnulusComplex::min_sector_width() const {
  if (critical_arguments.size() == 1) return kTwoPi;
  double w = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < critical_arguments.size(); ++i) {
    const double next = i + 1 < critical_arguments.size() ? critical_arguments[i + 1]
                                                          : critical_arguments[0] + kTwoPi;
    w = std::min(w, next - critical_arguments[i]);
  }
  return w;
}

AnnulusComplex build_cell_structure(const ComplexMultiset& critical_values, const CellOptions& opt) {
  if (critical_values.entries.empty()) {
    throw Error(ErrorCode::EmptyCriticalValues, "no critical values");
  }
  std::vector<double> args, heights;
  for (const auto& e : critical_values.entries) {
    if (e.value == Complex{0.0, 0.0}) {
      throw Error(ErrorCode::ZeroCriticalValue, "0 is a critical value; roots are not distinct");
    }
    const auto a = to_annulus(e.value);
    args.push_back(a.argument);
    heights.push_back(a.height);
  }

  AnnulusComplex out;
  std::sort(args.begin(), args.end());
  for (double a : args) {
    const bool dup = std::any_of(out.critical_arguments.begin(), out.critical_arguments.end(),
                                 [&](double b) { return circular_distance(a, b) <= opt.argument_tolerance; });
    if (!dup) out.critical_arguments.push_back(a);
  }
  std::sort(heights.begin(), heights.end());
  for (double h : heights) {
    if (out.critical_heights.empty() || h - out.critical_heights.back() > opt.height_tolerance) {
      out.critical_heights.push_back(h);
    }
  }

  const int k = out.k();
  if (k == 1) {
    out.regular_arguments.push_back(out.critical_arguments[0] + std::numbers::pi);
  } else {
    for (int i = 0; i < k; ++i) {
      const double lo = out.critical_arguments[i];
      const double hi = i + 1 < k ? out.critical_arguments[i + 1] : out.critical_arguments[0] + kTwoPi;
      out.regular_arguments.push_back(0.5 * (lo + hi));
    }
  }

  double prev = -1.0;
  for (double h : out.critical_heights) {
    out.regular_heights.push_back(0.5 * (prev + h));
    prev = h;
  }
  out.regular_heights.push_back(0.5 * (prev + 1.0));

  out.counts = annulus_cell_counts(k, out.l());
  return out;
}

}  // namespace brannulus
