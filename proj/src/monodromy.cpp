#include "brannulus/monodromy.hpp"

#include <algorithm>
#include <cmath>

#include "brannulus/combinatorics.hpp"
#include "brannulus/error.hpp"

namespace brannulus {

namespace {

double local_radius(const LiftContext& ctx, int value_id) {
  const auto& cv = ctx.critical.critical_values.entries;
  const Complex c = cv[value_id].value;
  double m = std::abs(c);
  for (size_t j = 0; j < cv.size(); ++j) {
    if (static_cast<int>(j) != value_id) m = std::min(m, std::abs(c - cv[j].value));
  }
  return 0.25 * m;
}

double min_value_modulus(const LiftContext& ctx) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& e : ctx.critical.critical_values.entries) m = std::min(m, std::abs(e.value));
  return m;
}

ImagePath reversed(ImagePath w) {
  return {[v = w.value](double t) { return v(1.0 - t); }, [d = w.derivative](double t) { return -d(1.0 - t); }};
}

StepPolicy loop_policy(const LiftContext& ctx) {
  StepPolicy policy = ctx.policy;
  policy.avoid = ctx.critical.critical_values.values();
  policy.safety_margin = 0.5 * ctx.critical_value_margin();
  return policy;
}

std::vector<Complex> basepoint_fibre(const LiftContext& ctx, double u, double s) {
  std::vector<Complex> out;
  for (int j = 0; j < ctx.p.degree(); ++j) out.push_back(strand_from_root(ctx, j, u, s).back());
  return out;
}

Permutation lift_loop(const LiftContext& ctx, const ImagePath& loop, const std::vector<Complex>& fibre) {
  const StepPolicy policy = loop_policy(ctx);
  std::vector<Complex> ends;
  for (Complex z : fibre) ends.push_back(lift_path(ctx.p, loop, z, policy).back());
  return match_endpoints(fibre, ends);
}

}  // namespace

Complex loop_basepoint(const LiftContext& ctx, int value_id) {
  const Complex c = ctx.critical.critical_values.entries.at(value_id).value;
  return std::polar(0.5 * min_value_modulus(ctx), std::arg(c));
}

ImagePath loop_for_critical_value(const LiftContext& ctx, int value_id) {
  const auto& cv = ctx.critical.critical_values.entries;
  const Complex c = cv.at(value_id).value;
  const double theta = std::arg(c);
  const Complex e = std::polar(1.0, theta);
  const double rho = local_radius(ctx, value_id);
  const double start = std::abs(loop_basepoint(ctx, value_id));
  const double stop = std::abs(c) - rho;

  struct Detour {
    double s_in, s_out;
    Complex center;
    double radius, a_in, a_out;
  };
  std::vector<Detour> detours;
  for (size_t j = 0; j < cv.size(); ++j) {
    if (static_cast<int>(j) == value_id) continue;
    const Complex rel = cv[j].value * std::conj(e);
    const double r = local_radius(ctx, static_cast<int>(j));
    const double h = rel.imag();
    if (std::abs(h) >= r || rel.real() + r <= start || rel.real() - r >= stop) continue;
    const double q = std::sqrt(r * r - h * h);
    if (rel.real() - q <= start || rel.real() + q >= stop) {
      throw Error(ErrorCode::UnroutablePath, "critical value too close to the loop endpoints");
    }
    double a_in = std::atan2(-h, -q);
    if (a_in < 0.0) a_in += kTwoPi;
    detours.push_back({rel.real() - q, rel.real() + q, cv[j].value, r, theta + a_in, theta + std::atan2(-h, q)});
  }
  std::sort(detours.begin(), detours.end(), [](const Detour& a, const Detour& b) { return a.s_in < b.s_in; });
  for (size_t i = 1; i < detours.size(); ++i) {
    if (detours[i].s_in <= detours[i - 1].s_out) {
      throw Error(ErrorCode::UnroutablePath, "detours around critical values overlap");
    }
  }

  std::vector<ImagePath> out;
  double s = start;
  for (const auto& d : detours) {
    out.push_back(segment_path(s * e, d.s_in * e));
    out.push_back(arc_path(d.center, d.radius, d.a_in, d.a_out));
    s = d.s_out;
  }
  out.push_back(segment_path(s * e, stop * e));
  ImagePath outward = concatenate(out);
  return concatenate({outward, arc_path(c, rho, theta + M_PI, theta + 3.0 * M_PI), reversed(outward)});
}

Permutation monodromy_generator(const LiftContext& ctx, int value_id) {
  const Complex w0 = loop_basepoint(ctx, value_id);
  const auto fibre = basepoint_fibre(ctx, std::arg(w0), std::abs(w0));
  return lift_loop(ctx, loop_for_critical_value(ctx, value_id), fibre);
}

bool is_transitive(int n, const std::vector<Permutation>& generators) {
  DisjointSets sets(n);
  for (const auto& g : generators) {
    for (int i = 0; i < n; ++i) sets.unite(i, g[i]);
  }
  return sets.partition().is_trivial();
}

MonodromyRep monodromy_representation(const LiftContext& ctx) {
  const int d = ctx.p.degree();
  const auto& cv = ctx.critical.critical_values.entries;
  MonodromyRep rep;
  rep.orbit_sizes_ok = true;
  for (size_t v = 0; v < cv.size(); ++v) {
    rep.generators.push_back(monodromy_generator(ctx, static_cast<int>(v)));
    std::vector<int> expected;
    for (size_t b = 0; b < ctx.critical.value_of.size(); ++b) {
      if (ctx.critical.value_of[b] == static_cast<int>(v)) {
        expected.push_back(ctx.critical.critical_points.entries[b].multiplicity + 1);
      }
    }
    std::vector<int> got;
    for (const auto& orbit : cycles(rep.generators.back())) got.push_back(static_cast<int>(orbit.size()));
    std::sort(expected.begin(), expected.end());
    std::sort(got.begin(), got.end());
    if (expected != got) rep.orbit_sizes_ok = false;
  }

  rep.generator_order.resize(cv.size());
  for (size_t v = 0; v < cv.size(); ++v) rep.generator_order[v] = static_cast<int>(v);
  std::stable_sort(rep.generator_order.begin(), rep.generator_order.end(), [&](int a, int b) {
    const auto pa = to_annulus(cv[a].value), pb = to_annulus(cv[b].value);
    if (std::abs(pa.argument - pb.argument) > 1e-9) return pa.argument < pb.argument;
    return std::abs(cv[a].value) < std::abs(cv[b].value);
  });
  rep.product = identity_permutation(d);
  for (int v : rep.generator_order) rep.product = compose(rep.generators[v], rep.product);
  rep.product_cycle_type = cycle_type(rep.product);

  rep.transitive = is_transitive(d, rep.generators);
  if (!rep.transitive) throw Error(ErrorCode::TransitivityFailure, "monodromy group is not transitive");
  return rep;
}

Permutation infinity_loop_permutation(const LiftContext& ctx) {
  double max_mod = 0.0;
  for (const auto& e : ctx.critical.critical_values.entries) max_mod = std::max(max_mod, std::abs(e.value));
  const double radius = 2.0 * max_mod;
  const double u = ctx.cells.regular_arguments.front();
  const auto fibre = basepoint_fibre(ctx, u, radius);
  return lift_loop(ctx, arc_path(0.0, radius, u, u + kTwoPi), fibre);
}

}  // namespace brannulus
