#pragma once

#include <functional>
#include <vector>

#include "brannulus/annulus.hpp"
#include "brannulus/permutation.hpp"
#include "brannulus/polynomial.hpp"

namespace brannulus {

/// Parametrized path w(t), t in [0, 1], in the range plane.
struct ImagePath {
  std::function<Complex(double)> value;
  std::function<Complex(double)> derivative;
};

ImagePath constant_path(Complex w);
ImagePath segment_path(Complex from, Complex to);
/// Circle about `center` from angle a0 to a1 (counterclockwise when a1 > a0).
ImagePath arc_path(Complex center, double radius, double a0, double a1);
/// s e^{iu} with s moving geometrically from s0 to s1.
ImagePath geometric_ray_path(double u, double s0, double s1);
/// Pieces traversed in order, each taking an equal share of [0, 1].
ImagePath concatenate(std::vector<ImagePath> pieces);

/// Predictor-corrector control. The defaults follow standard homotopy
/// continuation practice; step_scale < 1 refines every step uniformly.
struct StepPolicy {
  double initial_step = 1.0 / 512.0;
  double max_step = 1.0 / 128.0;
  double min_step = 1e-10;
  int newton_iterations = 5;
  int growth_after = 8;
  double residual_tolerance = 1e-12;
  /// Predicted displacement is capped at this fraction of 1/gamma(z), the
  /// local distance scale to the nearest critical point.
  double gamma_fraction = 0.05;
  double step_scale = 1.0;
  /// Range-plane distance the path must keep from `avoid`; 0 disables the check.
  double safety_margin = 0.0;
  std::vector<Complex> avoid;
};

struct Anchor {
  enum class Kind { Free, Root, Infinity, CriticalPoint };
  Kind kind = Kind::Free;
  int index = -1;
};

struct TracedStrand {
  std::vector<double> params;
  std::vector<Complex> points;
  Anchor start_anchor;
  Anchor end_anchor;

  Complex front() const { return points.front(); }
  Complex back() const { return points.back(); }
};

/// Continues a solution of p(z) = w(t) from z0 along t in [0, 1].
/// Throws PathTooCloseToCriticalValue or StepUnderflow.
TracedStrand lift_path(const Polynomial& p, const ImagePath& w, Complex z0, const StepPolicy& policy);

/// Everything the tracing operations need about one polynomial.
struct LiftContext {
  Polynomial p;
  std::vector<Complex> roots;  ///< canonical labels (see canonical_root_order)
  CriticalData critical;
  AnnulusComplex cells;
  StepPolicy policy;

  double min_root_separation() const;
  /// 0.25 x min distance between distinct critical values, and from them to 0.
  double critical_value_margin() const;
  int nearest_root(Complex z) const;
};

/// Requires distinct roots (throws DistinctRootsRequired otherwise).
LiftContext make_lift_context(const Polynomial& p, const StepPolicy& policy = {},
                              const DistinctnessOptions& distinctness = {});

struct LevelComponent {
  std::vector<int> cycle;      ///< strand indices in traversal order
  std::vector<Complex> curve;  ///< closed sampled curve (first point not repeated)
};

struct LevelTrace {
  double radius = 0.0;
  double height = 0.0;
  std::vector<Complex> starts;  ///< solutions of p(z) = radius
  std::vector<TracedStrand> strands;
  Permutation permutation;  ///< start index -> end index
  std::vector<LevelComponent> components;
  std::vector<std::vector<int>> winding_table;  ///< component x root
};

/// Throws PathTooCloseToCriticalValue when t is within margin_fraction of the
/// smallest height gap of a critical height, and EndpointMatchAmbiguous.
LevelTrace trace_level_set(const LiftContext& ctx, double height, double margin_fraction = 0.25);

struct DirectionTrace {
  double argument = 0.0;
  std::vector<TracedStrand> strands;  ///< strand j starts at root j
  std::vector<int> root_of;
  std::vector<int> infinity_index_of;
};

/// Infinity index of a far-out point on the ray of argument u.
int infinity_index(const Polynomial& p, Complex z, double u);

/// Same margin rule as trace_level_set, against the smallest sector width.
DirectionTrace trace_direction_set(const LiftContext& ctx, double argument, double margin_fraction = 0.25);

/// Strand from root j along p(z) = s e^{iu}, s from the near-root start to s_end.
TracedStrand strand_from_root(const LiftContext& ctx, int root, double u, double s_end);

/// Root ids reached by the m(b)+1 steepest-descent branches from critical
/// point `critical_point` (index into ctx.critical.critical_points).
/// Throws DescentStalled.
std::vector<int> descend_from_critical_point(const LiftContext& ctx, int critical_point);

/// Winding number of a closed polygon around z. Throws PointTooCloseToCurve.
int winding_number(const std::vector<Complex>& closed_curve, Complex z);

/// Matches each endpoint to the unique start within 0.45 x the minimal
/// start separation. Throws EndpointMatchAmbiguous.
Permutation match_endpoints(const std::vector<Complex>& starts, const std::vector<Complex>& ends);

}  // namespace brannulus
