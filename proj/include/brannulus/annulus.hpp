#pragma once

#include <vector>

#include "brannulus/polynomial.hpp"

namespace brannulus {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Point (u, t) of the vertical annulus: argument in [0, 2pi), height in [-1, 1].
struct AnnulusPoint {
  double argument = 0.0;
  double height = 0.0;
};

/// z = r e^{iu} -> (u, (r^2 - 1)/(r^2 + 1)). Throws ZeroInput at z = 0.
AnnulusPoint to_annulus(Complex z);
/// Inverse of to_annulus on the open annulus.
Complex from_annulus(const AnnulusPoint& a);
/// z = r e^{iu} -> s e^{iu} with s = r / sqrt(r^2 + 1).
Complex to_disk(Complex z);

double height_of_radius(double r);
double radius_of_height(double t);
/// Angle normalized into [0, 2pi).
double normalize_angle(double a);
/// Distance between two angles on the circle, in [0, pi].
double circular_distance(double a, double b);

struct CellCounts {
  long vertices = 0;
  long edges = 0;
  long faces = 0;
};

/// Rectangular cell structure on the annulus induced by a finite set of
/// critical values. Sector i is the open arc from critical_arguments[i] to
/// critical_arguments[i+1] (the last sector wraps through 2pi);
/// regular_arguments[i] is its midpoint, possibly >= 2pi for the wrapping
/// sector so that sector representatives increase with the index.
struct AnnulusComplex {
  std::vector<double> critical_arguments;
  std::vector<double> critical_heights;
  std::vector<double> regular_arguments;
  std::vector<double> regular_heights;
  CellCounts counts;

  int k() const { return static_cast<int>(critical_arguments.size()); }
  int l() const { return static_cast<int>(critical_heights.size()); }
  /// Index into critical_arguments matching angle u (within tolerance), or -1.
  int argument_index(double u) const;
  /// Index into critical_heights matching t (within tolerance), or -1.
  int height_index(double t) const;
  /// Smallest gap between consecutive heights of {-1} U critical_heights U {1}.
  double min_height_gap() const;
  /// Smallest angular width of a sector.
  double min_sector_width() const;
};

struct CellOptions {
  double argument_tolerance = 1e-9;
  double height_tolerance = 1e-9;
};

CellCounts annulus_cell_counts(int k, int l);

/// Throws EmptyCriticalValues or ZeroCriticalValue.
AnnulusComplex build_cell_structure(const ComplexMultiset& critical_values, const CellOptions& opt = {});

}  // namespace brannulus
