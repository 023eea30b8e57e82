#include "brannulus/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "brannulus/error.hpp"

namespace brannulus {

namespace {

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

class Svg {
 public:
  explicit Svg(int size) : size_(size) {
    out_ = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out_ += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + std::to_string(size) +
            "\" height=\"" + std::to_string(size) + "\" viewBox=\"0 0 " + std::to_string(size) + " " +
            std::to_string(size) + "\">\n";
    out_ += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  }

  double x(Complex d) const { return 0.5 * size_ * (1.0 + kScale * d.real()); }
  double y(Complex d) const { return 0.5 * size_ * (1.0 - kScale * d.imag()); }
  double len(double r) const { return 0.5 * size_ * kScale * r; }

  void open_group(const std::string& cls, const std::string& extra = "") {
    out_ += "<g class=\"" + cls + "\"" + extra + ">\n";
  }
  void close_group() { out_ += "</g>\n"; }

  // Two half-circle arcs, so every drawn element is a path.
  void circle(const std::string& cls, Complex center, double r, const std::string& style) {
    const std::string rr = fmt("%.3f", len(r));
    const std::string right = fmt("%.3f", x(center) + len(r)) + "," + fmt("%.3f", y(center));
    const std::string left = fmt("%.3f", x(center) - len(r)) + "," + fmt("%.3f", y(center));
    const std::string arc = " A" + rr + "," + rr + " 0 1,0 ";
    out_ += "<path class=\"" + cls + "\" d=\"M" + right + arc + left + arc + right + " Z\" " + style + "/>\n";
  }

  void polyline(const std::string& cls, const std::vector<Complex>& pts, bool closed, const std::string& style) {
    std::string d;
    for (size_t i = 0; i < pts.size(); ++i) {
      d += (i == 0 ? "M" : " L") + fmt("%.3f", x(pts[i])) + "," + fmt("%.3f", y(pts[i]));
    }
    if (closed) d += " Z";
    out_ += "<path class=\"" + cls + "\" d=\"" + d + "\" " + style + "/>\n";
  }

  std::string finish() { return out_ + "</svg>\n"; }

 private:
  static constexpr double kScale = 0.95;
  int size_;
  std::string out_;
};

// Uniform arc-length resampling of a polyline to n points.
std::vector<Complex> resample(const std::vector<Complex>& pts, int n, bool closed) {
  std::vector<Complex> src = pts;
  if (closed && !src.empty()) src.push_back(src.front());
  if (src.size() < 2 || n < 2) return pts;
  std::vector<double> acc(src.size(), 0.0);
  for (size_t i = 1; i < src.size(); ++i) acc[i] = acc[i - 1] + std::abs(src[i] - src[i - 1]);
  const double total = acc.back();
  if (total == 0.0) return {src.front()};
  const double denom = closed ? n : n - 1;
  std::vector<Complex> out;
  size_t seg = 1;
  for (int i = 0; i < n; ++i) {
    const double target = total * i / denom;
    while (seg + 1 < src.size() && acc[seg] < target) ++seg;
    const double span = acc[seg] - acc[seg - 1];
    const double s = span > 0.0 ? (target - acc[seg - 1]) / span : 0.0;
    out.push_back(src[seg - 1] + s * (src[seg] - src[seg - 1]));
  }
  return out;
}

std::vector<Complex> to_disk_all(const std::vector<Complex>& pts) {
  std::vector<Complex> out;
  out.reserve(pts.size());
  for (Complex z : pts) out.push_back(to_disk(z));
  return out;
}

// Saturation 0.75, lightness 0.45, as hex RGB (SVG 1.1 has no hsl()).
std::string hue_style(double hue) {
  const double c = (1.0 - std::abs(2.0 * 0.45 - 1.0)) * 0.75;
  const double h = std::fmod(hue, 360.0) / 60.0;
  const double x = c * (1.0 - std::abs(std::fmod(h, 2.0) - 1.0));
  double r = 0, g = 0, b = 0;
  switch (static_cast<int>(h)) {
    case 0: r = c; g = x; break;
    case 1: r = x; g = c; break;
    case 2: g = c; b = x; break;
    case 3: g = x; b = c; break;
    case 4: r = x; b = c; break;
    default: r = c; b = x; break;
  }
  const double m = 0.45 - c / 2.0;
  char buf[80];
  std::snprintf(buf, sizeof buf, "fill=\"none\" stroke=\"#%02x%02x%02x\" stroke-width=\"1.2\"",
                static_cast<int>(std::lround(255 * (r + m))), static_cast<int>(std::lround(255 * (g + m))),
                static_cast<int>(std::lround(255 * (b + m))));
  return buf;
}

std::string grey_style(int index, int count) {
  const int g = count <= 1 ? 90 : 40 + (140 * index) / (count - 1);
  char buf[80];
  std::snprintf(buf, sizeof buf, "fill=\"none\" stroke=\"rgb(%d,%d,%d)\" stroke-width=\"1.2\"", g, g, g);
  return buf;
}

double min_modulus(const ComplexMultiset& cv) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& e : cv.entries) m = std::min(m, std::abs(e.value));
  return m;
}

void draw_roots(Svg& svg, const LiftContext& ctx, const BranchedTraces& traces) {
  svg.open_group("roots");
  for (size_t j = 0; j < ctx.roots.size(); ++j) {
    const Complex center = to_disk(ctx.roots[j]);
    double r = 0.0;
    for (const auto& comp : traces.root_level.components) {
      if (traces.root_level.winding_table.at(&comp - traces.root_level.components.data()).at(j) != 1) continue;
      for (Complex z : comp.curve) r = std::max(r, std::abs(to_disk(z) - center));
    }
    svg.circle("root-circle", center, r, "fill=\"white\" stroke=\"black\" stroke-width=\"1\"");
  }
  svg.close_group();
}

void draw_levels(Svg& svg, const BranchedTraces& traces, const RenderConfig& cfg) {
  const int count = static_cast<int>(traces.levels.size());
  for (int i = 0; i < count; ++i) {
    const auto& fam = traces.levels[i];
    svg.open_group("level-family", " data-height=\"" + fmt("%.6f", fam.height) + "\"");
    for (const auto& trace : fam.offsets) {
      for (const auto& comp : trace.components) {
        svg.polyline("level-curve", to_disk_all(resample(comp.curve, cfg.samples_per_curve, true)), true,
                     grey_style(i, count));
      }
    }
    svg.close_group();
  }
}

void draw_critical_points(Svg& svg, const LiftContext& ctx) {
  svg.open_group("critical-points");
  for (const auto& e : ctx.critical.critical_points.entries) {
    svg.circle("critical-point", to_disk(e.value), 0.006, "fill=\"black\"");
  }
  svg.close_group();
}

}  // namespace

RenderConfig resolve_config(const ComplexMultiset& critical_values, RenderConfig cfg) {
  const double m = min_modulus(critical_values);
  if (cfg.alpha <= 0.0) cfg.alpha = 0.4 * m;
  if (cfg.beta <= 0.0) cfg.beta = 0.5 * cfg.alpha;
  if (!(cfg.beta < cfg.alpha && cfg.alpha < 0.5 * m) || cfg.samples_per_curve < 2 || cfg.canvas_size <= 0 ||
      cfg.palette.empty()) {
    throw Error(ErrorCode::ZeroInput, "invalid render configuration");
  }
  return cfg;
}

std::string render_annulus_complex(const AnnulusComplex& cells, const ComplexMultiset& critical_values,
                                   const RenderConfig& config) {
  const RenderConfig cfg = resolve_config(critical_values, config);
  Svg svg(cfg.canvas_size);
  const double inner = std::abs(to_disk(cfg.beta));
  svg.circle("outer-boundary", 0.0, 1.0, "fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"");
  svg.circle("inner-boundary", 0.0, inner, "fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"");
  svg.open_group("critical-circles");
  for (int i = 0; i < cells.l(); ++i) {
    svg.circle("critical-circle", 0.0, std::sqrt((1.0 + cells.critical_heights[i]) / 2.0), grey_style(i, cells.l()));
  }
  svg.close_group();
  svg.open_group("radial-segments");
  for (int i = 0; i < cells.k(); ++i) {
    const double u = cells.critical_arguments[i];
    svg.polyline("radial-segment", {std::polar(inner, u), std::polar(1.0, u)}, false,
                 hue_style(cfg.palette[i % cfg.palette.size()]));
  }
  svg.close_group();
  svg.open_group("critical-values");
  for (const auto& e : critical_values.entries) svg.circle("critical-value", to_disk(e.value), 0.008, "fill=\"black\"");
  svg.close_group();
  return svg.finish();
}

BranchedTraces sample_branched_traces(const LiftContext& ctx, const RenderConfig& config) {
  const RenderConfig cfg = resolve_config(ctx.critical.critical_values, config);
  BranchedTraces out;
  out.root_level = trace_level_set(ctx, height_of_radius(cfg.beta), 0.0);
  const double du = 1e-3 * ctx.cells.min_sector_width();
  for (double u : ctx.cells.critical_arguments) {
    out.directions.push_back(
        {u, {trace_direction_set(ctx, u - du, 0.0), trace_direction_set(ctx, u + du, 0.0)}});
  }
  const double dt = 1e-3 * ctx.cells.min_height_gap();
  for (double t : ctx.cells.critical_heights) {
    out.levels.push_back({t, {trace_level_set(ctx, t - dt, 0.0), trace_level_set(ctx, t + dt, 0.0)}});
  }
  return out;
}

std::string render_branched_annulus(const LiftContext& ctx, const BranchedTraces& traces, const RenderConfig& config) {
  const RenderConfig cfg = resolve_config(ctx.critical.critical_values, config);
  if (static_cast<int>(traces.directions.size()) != ctx.cells.k() ||
      static_cast<int>(traces.levels.size()) != ctx.cells.l() || traces.root_level.components.empty()) {
    throw Error(ErrorCode::MissingTraces, "traces do not cover every critical argument and height");
  }
  Svg svg(cfg.canvas_size);
  svg.circle("outer-boundary", 0.0, 1.0, "fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"");
  for (size_t i = 0; i < traces.directions.size(); ++i) {
    const auto& fam = traces.directions[i];
    svg.open_group("direction-family", " data-argument=\"" + fmt("%.6f", fam.argument) + "\"");
    for (const auto& trace : fam.offsets) {
      for (const auto& strand : trace.strands) {
        std::vector<Complex> pts;
        for (Complex z : strand.points) {
          if (std::abs(ctx.p(z)) >= cfg.beta) pts.push_back(z);
        }
        if (pts.size() < 2) continue;
        svg.polyline("direction-curve", to_disk_all(resample(pts, cfg.samples_per_curve, false)), false,
                     hue_style(cfg.palette[i % cfg.palette.size()]));
      }
    }
    svg.close_group();
  }
  draw_levels(svg, traces, cfg);
  draw_roots(svg, ctx, traces);
  draw_critical_points(svg, ctx);
  return svg.finish();
}

std::string render_cacti(const LiftContext& ctx, const BranchedTraces& traces, const RenderConfig& config) {
  const RenderConfig cfg = resolve_config(ctx.critical.critical_values, config);
  if (static_cast<int>(traces.levels.size()) != ctx.cells.l() || traces.root_level.components.empty()) {
    throw Error(ErrorCode::MissingTraces, "traces do not cover every critical height");
  }
  Svg svg(cfg.canvas_size);
  draw_levels(svg, traces, cfg);
  draw_roots(svg, ctx, traces);
  draw_critical_points(svg, ctx);
  return svg.finish();
}

}  // namespace brannulus
