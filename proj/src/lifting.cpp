#include "brannulus/lifting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "brannulus/error.hpp"

namespace brannulus {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kInf = std::numeric_limits<double>::infinity();

// Inverse local distance scale to the nearest critical point (Smale's gamma).
double gamma_estimate(const Polynomial& p, Complex z) {
  const auto t = coeffs::taylor(p.coefficients(), z);
  const double d1 = std::abs(t[1]);
  if (d1 == 0.0) return kInf;
  double g = 0.0;
  for (size_t j = 2; j < t.size(); ++j) {
    const double a = std::abs(t[j]) / d1;
    if (a > 0.0) g = std::max(g, std::pow(a, 1.0 / static_cast<double>(j - 1)));
  }
  return g;
}

double residual_tolerance(const Polynomial& p, const StepPolicy& policy, Complex w, Complex z) {
  return std::max(policy.residual_tolerance * (1.0 + std::abs(w)), 32.0 * kEps * p.magnitude_bound(std::abs(z)));
}

void check_margin(const StepPolicy& policy, Complex w) {
  if (policy.safety_margin <= 0.0) return;
  for (Complex c : policy.avoid) {
    if (std::abs(w - c) < policy.safety_margin) {
      throw Error(ErrorCode::PathTooCloseToCriticalValue, "path passes within the safety margin of a critical value");
    }
  }
}

double point_segment_distance(Complex z, Complex a, Complex b) {
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(z - a);
  const double s = std::clamp(((z - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
  return std::abs(z - (a + s * ab));
}

int positive_mod(long long a, int n) {
  const long long r = a % n;
  return static_cast<int>(r < 0 ? r + n : r);
}

double direction_s_min(const LiftContext& ctx) {
  double min_dp = kInf;
  for (Complex a : ctx.roots) min_dp = std::min(min_dp, std::abs(ctx.p.value_and_derivative(a).second));
  return 1e-3 * min_dp * ctx.min_root_separation();
}

}  // namespace

ImagePath constant_path(Complex w) {
  return {[w](double) { return w; }, [](double) { return Complex{0.0, 0.0}; }};
}

ImagePath segment_path(Complex from, Complex to) {
  return {[=](double t) { return from + t * (to - from); }, [=](double) { return to - from; }};
}

ImagePath arc_path(Complex center, double radius, double a0, double a1) {
  return {[=](double t) { return center + std::polar(radius, a0 + t * (a1 - a0)); },
          [=](double t) { return Complex{0.0, a1 - a0} * std::polar(radius, a0 + t * (a1 - a0)); }};
}

ImagePath geometric_ray_path(double u, double s0, double s1) {
  const double log_ratio = std::log(s1 / s0);
  const Complex dir = std::polar(1.0, u);
  return {[=](double t) { return s0 * std::exp(log_ratio * t) * dir; },
          [=](double t) { return log_ratio * s0 * std::exp(log_ratio * t) * dir; }};
}

ImagePath concatenate(std::vector<ImagePath> pieces) {
  const auto n = static_cast<double>(pieces.size());
  auto locate = [n](double t) {
    const double scaled = std::clamp(t, 0.0, 1.0) * n;
    const int i = std::min(static_cast<int>(scaled), static_cast<int>(n) - 1);
    return std::pair<int, double>{i, scaled - i};
  };
  return {[pieces, locate](double t) {
            const auto [i, s] = locate(t);
            return pieces[i].value(s);
          },
          [pieces, locate, n](double t) {
            const auto [i, s] = locate(t);
            return n * pieces[i].derivative(s);
          }};
}

TracedStrand lift_path(const Polynomial& p, const ImagePath& w, Complex z0, const StepPolicy& policy) {
  if (policy.safety_margin > 0.0) {
    for (int i = 0; i <= 512; ++i) check_margin(policy, w.value(i / 512.0));
  }

  TracedStrand strand;
  Complex z = z0;
  {
    const Complex w0 = w.value(0.0);
    for (int it = 0; it < 8; ++it) {
      const auto [v, dv] = p.value_and_derivative(z);
      if (std::abs(v - w0) <= residual_tolerance(p, policy, w0, z) || dv == Complex{0.0, 0.0}) break;
      z -= (v - w0) / dv;
    }
  }
  strand.params.push_back(0.0);
  strand.points.push_back(z);

  double t = 0.0;
  double h = policy.initial_step * policy.step_scale;
  const double h_max = policy.max_step * policy.step_scale;
  int successes = 0;
  while (t < 1.0) {
    const bool last = 1.0 - t <= h;
    const double t1 = last ? 1.0 : t + h;
    const Complex w1 = w.value(t1);
    const auto [v, dv] = p.value_and_derivative(z);

    bool accepted = false;
    Complex z1 = z;
    if (dv != Complex{0.0, 0.0}) {
      const Complex dz = (w1 - v) / dv;
      if (std::abs(dz) * gamma_estimate(p, z) <= policy.gamma_fraction) {
        z1 = z + dz;
        double previous = kInf;
        for (int it = 0; it <= policy.newton_iterations; ++it) {
          const auto [v1, dv1] = p.value_and_derivative(z1);
          if (std::abs(v1 - w1) <= residual_tolerance(p, policy, w1, z1)) {
            accepted = true;
            break;
          }
          if (it == policy.newton_iterations || dv1 == Complex{0.0, 0.0}) break;
          const Complex delta = (v1 - w1) / dv1;
          if (std::abs(delta) > 0.5 * previous) break;
          previous = std::abs(delta);
          z1 -= delta;
        }
      }
    }

    if (accepted) {
      check_margin(policy, w1);
      z = z1;
      t = t1;
      strand.params.push_back(t);
      strand.points.push_back(z);
      if (++successes >= policy.growth_after) {
        h = std::min(2.0 * h, h_max);
        successes = 0;
      }
    } else {
      h *= 0.5;
      successes = 0;
      if (h < policy.min_step) throw Error(ErrorCode::StepUnderflow, "continuation step fell below the minimum");
    }
  }
  return strand;
}

double LiftContext::min_root_separation() const {
  double s = kInf;
  for (size_t i = 0; i < roots.size(); ++i) {
    for (size_t j = i + 1; j < roots.size(); ++j) s = std::min(s, std::abs(roots[i] - roots[j]));
  }
  return s;
}

double LiftContext::critical_value_margin() const {
  const auto& cv = critical.critical_values.entries;
  double m = kInf;
  for (size_t i = 0; i < cv.size(); ++i) {
    m = std::min(m, std::abs(cv[i].value));
    for (size_t j = i + 1; j < cv.size(); ++j) m = std::min(m, std::abs(cv[i].value - cv[j].value));
  }
  return 0.25 * m;
}

int LiftContext::nearest_root(Complex z) const {
  int best = 0;
  for (size_t j = 1; j < roots.size(); ++j) {
    if (std::abs(z - roots[j]) < std::abs(z - roots[best])) best = static_cast<int>(j);
  }
  return best;
}

LiftContext make_lift_context(const Polynomial& p, const StepPolicy& policy, const DistinctnessOptions& distinctness) {
  const auto report = validate_distinct_roots(p, distinctness);
  if (!report.ok) throw Error(ErrorCode::DistinctRootsRequired, "distinct roots required");
  auto critical = critical_data(p);
  auto cells = build_cell_structure(critical.critical_values);
  return LiftContext{p, canonical_root_order(aberth_roots(p.coefficients())), std::move(critical), std::move(cells),
                     policy};
}

Permutation match_endpoints(const std::vector<Complex>& starts, const std::vector<Complex>& ends) {
  double sep = kInf;
  for (size_t i = 0; i < starts.size(); ++i) {
    for (size_t j = i + 1; j < starts.size(); ++j) sep = std::min(sep, std::abs(starts[i] - starts[j]));
  }
  const double radius = 0.45 * sep;
  Permutation perm(ends.size(), -1);
  std::vector<bool> used(starts.size(), false);
  for (size_t i = 0; i < ends.size(); ++i) {
    int hit = -1;
    for (size_t j = 0; j < starts.size(); ++j) {
      if (std::abs(ends[i] - starts[j]) <= radius) hit = static_cast<int>(j);
    }
    if (hit < 0 || used[hit]) {
      throw Error(ErrorCode::EndpointMatchAmbiguous, "endpoint does not match a unique start point");
    }
    used[hit] = true;
    perm[i] = hit;
  }
  return perm;
}

int winding_number(const std::vector<Complex>& curve, Complex z) {
  const size_t n = curve.size();
  double total = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const Complex a = curve[i], b = curve[(i + 1) % n];
    const double len = std::abs(b - a);
    const double dist = point_segment_distance(z, a, b);
    if (dist == 0.0 || dist < 0.5 * len) {
      throw Error(ErrorCode::PointTooCloseToCurve, "point lies within the sampling resolution of the curve");
    }
    total += std::arg((b - z) / (a - z));
  }
  return static_cast<int>(std::lround(total / kTwoPi));
}

LevelTrace trace_level_set(const LiftContext& ctx, double height, double margin_fraction) {
  const double margin = margin_fraction * ctx.cells.min_height_gap();
  for (double h : ctx.cells.critical_heights) {
    if (std::abs(height - h) < margin) {
      throw Error(ErrorCode::PathTooCloseToCriticalValue, "level height is too close to a critical height");
    }
  }

  LevelTrace trace;
  trace.height = height;
  trace.radius = radius_of_height(height);
  std::vector<Complex> shifted(ctx.p.coefficients().begin(), ctx.p.coefficients().end());
  shifted[0] -= trace.radius;
  trace.starts = canonical_root_order(aberth_roots(shifted));

  const auto circle = arc_path(0.0, trace.radius, 0.0, kTwoPi);
  std::vector<Complex> ends;
  for (size_t i = 0; i < trace.starts.size(); ++i) {
    auto strand = lift_path(ctx.p, circle, trace.starts[i], ctx.policy);
    ends.push_back(strand.back());
    trace.strands.push_back(std::move(strand));
  }
  trace.permutation = match_endpoints(trace.starts, ends);

  for (const auto& cyc : cycles(trace.permutation, true)) {
    LevelComponent comp;
    comp.cycle = cyc;
    for (int s : cyc) {
      const auto& pts = trace.strands[s].points;
      comp.curve.insert(comp.curve.end(), pts.begin(), pts.end() - 1);
    }
    trace.components.push_back(std::move(comp));
  }
  for (const auto& comp : trace.components) {
    std::vector<int> row;
    for (Complex a : ctx.roots) row.push_back(winding_number(comp.curve, a));
    trace.winding_table.push_back(std::move(row));
  }
  return trace;
}

int infinity_index(const Polynomial& p, Complex z, double u) {
  const double turns = (p.degree() * std::arg(z) + std::arg(p.leading()) - u) / kTwoPi;
  return positive_mod(std::llround(turns), p.degree());
}

TracedStrand strand_from_root(const LiftContext& ctx, int root, double u, double s_end) {
  const Complex a = ctx.roots[root];
  const Complex dp = ctx.p.value_and_derivative(a).second;
  const double s_min = direction_s_min(ctx);
  const Complex z0 = a + s_min * std::polar(1.0, u) / dp;
  auto strand = lift_path(ctx.p, geometric_ray_path(u, s_min, s_end), z0, ctx.policy);
  strand.start_anchor = {Anchor::Kind::Root, root};
  return strand;
}

DirectionTrace trace_direction_set(const LiftContext& ctx, double argument, double margin_fraction) {
  const double margin = margin_fraction * ctx.cells.min_sector_width();
  for (double c : ctx.cells.critical_arguments) {
    if (circular_distance(argument, c) < margin) {
      throw Error(ErrorCode::PathTooCloseToCriticalValue, "direction is too close to a critical argument");
    }
  }

  double max_root = 0.0;
  for (Complex a : ctx.roots) max_root = std::max(max_root, std::abs(a));
  const double s_max = 2.0 * ctx.p.magnitude_bound(10.0 * max_root + 10.0);

  DirectionTrace trace;
  trace.argument = argument;
  const int d = ctx.p.degree();
  std::vector<bool> hit(d, false);
  for (int j = 0; j < d; ++j) {
    auto strand = strand_from_root(ctx, j, argument, s_max);
    const auto& pts = strand.points;
    const int idx = infinity_index(ctx.p, pts.back(), argument);
    if (pts.size() < 2 || infinity_index(ctx.p, pts[pts.size() - 2], argument) != idx) {
      throw Error(ErrorCode::InfinityIndexUnstable, "infinity index changed between the final samples");
    }
    if (ctx.nearest_root(pts.front()) != j) {
      throw Error(ErrorCode::EndpointMatchAmbiguous, "direction strand did not start at its root");
    }
    if (hit[idx]) throw Error(ErrorCode::EndpointMatchAmbiguous, "two direction strands share an infinity index");
    hit[idx] = true;
    strand.end_anchor = {Anchor::Kind::Infinity, idx};
    trace.root_of.push_back(j);
    trace.infinity_index_of.push_back(idx);
    trace.strands.push_back(std::move(strand));
  }
  return trace;
}

std::vector<int> descend_from_critical_point(const LiftContext& ctx, int critical_point) {
  const auto& entry = ctx.critical.critical_points.entries.at(critical_point);
  const Complex b = entry.value;
  const int k = entry.multiplicity;
  const int value_id = ctx.critical.value_of.at(critical_point);
  const Complex c = ctx.critical.critical_values.entries[value_id].value;
  const double arg_c = std::arg(c);
  const double abs_c = std::abs(c);

  // Another critical value on the descending ray puts a branch through its critical point.
  const double margin = ctx.critical_value_margin();
  for (size_t j = 0; j < ctx.critical.critical_values.entries.size(); ++j) {
    if (static_cast<int>(j) == value_id) continue;
    const Complex other = ctx.critical.critical_values.entries[j].value;
    if (std::abs(other) < abs_c && point_segment_distance(other, 0.0, c) < margin) {
      throw Error(ErrorCode::DescentStalled, "another critical value lies on the descending ray");
    }
  }

  double scale = kInf;
  for (const auto& other : ctx.critical.critical_points.entries) {
    if (other.value != b) scale = std::min(scale, std::abs(other.value - b));
  }
  for (Complex a : ctx.roots) scale = std::min(scale, std::abs(a - b));

  const auto taylor = coeffs::taylor(ctx.p.coefficients(), b);
  const Complex lead = taylor.at(k + 1);
  // Offset into the local model p ~ c + lead (z-b)^{k+1}: drop 1e-6 |c| in modulus,
  // keeping the start inside [1e-6, 1e-2] x local scale.
  double eps = std::pow(1e-6 * abs_c / std::abs(lead), 1.0 / (k + 1));
  eps = std::clamp(eps, 1e-6 * scale, 1e-2 * scale);
  // High multiplicity: keep the modulus drop resolvable next to |c|.
  eps = std::max(eps, std::min(std::pow(1e-9 * abs_c / std::abs(lead), 1.0 / (k + 1)), 0.2 * scale));
  const double delta = std::abs(lead) * std::pow(eps, k + 1);
  const double s_min = direction_s_min(ctx);
  const double span = abs_c - s_min;
  const Complex dir = std::polar(1.0, arg_c);
  const double log_ratio = std::log(span / delta);
  const ImagePath path{
      [=](double t) { return (abs_c - delta * std::exp(log_ratio * t)) * dir; },
      [=](double t) { return -log_ratio * delta * std::exp(log_ratio * t) * dir; }};

  std::vector<int> out;
  for (int m = 0; m <= k; ++m) {
    const double theta = (arg_c + std::numbers::pi - std::arg(lead) + kTwoPi * m) / (k + 1);
    const Complex z0 = b + std::polar(eps, theta);
    try {
      const auto strand = lift_path(ctx.p, path, z0, ctx.policy);
      out.push_back(ctx.nearest_root(strand.back()));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::StepUnderflow) {
        throw Error(ErrorCode::DescentStalled, "descent branch stalled near another critical point");
      }
      throw;
    }
  }
  return out;
}

}  // namespace brannulus
