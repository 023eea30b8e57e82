#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <regex>
#include <string>

#include "brannulus/error.hpp"
#include "brannulus/render.hpp"
#include "support.hpp"

using namespace brannulus;
using support::Complex;

namespace {

int count(const std::string& s, const std::string& needle) {
  int n = 0;
  for (size_t pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
  return n;
}

int count_class(const std::string& svg, const std::string& cls) { return count(svg, "class=\"" + cls + "\""); }

struct Circle {
  double cx, cy, r;
};

std::vector<Circle> circles(const std::string& svg, const std::string& cls) {
  std::vector<Circle> out;
  const std::regex re("<path class=\"" + cls + "\" d=\"M([-0-9.]+),([-0-9.]+) A([-0-9.]+),");
  for (std::sregex_iterator it(svg.begin(), svg.end(), re), end; it != end; ++it) {
    const double r = std::stod((*it)[3]);
    out.push_back({std::stod((*it)[1]) - r, std::stod((*it)[2]), r});
  }
  return out;
}

std::vector<std::pair<double, double>> path_points(const std::string& svg) {
  std::vector<std::pair<double, double>> out;
  const std::regex re("[ML]([-0-9.]+),([-0-9.]+)");
  for (std::sregex_iterator it(svg.begin(), svg.end(), re), end; it != end; ++it) {
    out.emplace_back(std::stod((*it)[1]), std::stod((*it)[2]));
  }
  return out;
}

}  // namespace

TEST_CASE("annulus complex of the running example") {
  const auto ctx = make_lift_context(support::running_example());
  const std::string svg = render_annulus_complex(ctx.cells, ctx.critical.critical_values, {});
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(count_class(svg, "outer-boundary") == 1);
  CHECK(count_class(svg, "inner-boundary") == 1);
  CHECK(count_class(svg, "critical-circle") == 3);
  CHECK(count_class(svg, "radial-segment") == 4);
  CHECK(count_class(svg, "critical-value") == 4);
  CHECK(count(svg, "hsl(") == 0);
  CHECK(count(svg, "<circle") == 0);

  // Critical circles sit at disk radius sqrt((1 + t)/2) on a 1000 px canvas scaled by 0.95.
  const auto cc = circles(svg, "critical-circle");
  for (size_t i = 0; i < cc.size(); ++i) {
    const double expected = 475.0 * std::sqrt((1.0 + ctx.cells.critical_heights[i]) / 2.0);
    CHECK(cc[i].cx == doctest::Approx(500.0));
    CHECK(cc[i].r == doctest::Approx(expected).epsilon(1e-5));
  }
}

TEST_CASE("single critical value and canvas size") {
  const auto ctx = make_lift_context(Polynomial::from_coefficients({-1.0, 0.0, 1.0}));
  RenderConfig cfg;
  cfg.canvas_size = 400;
  const std::string svg = render_annulus_complex(ctx.cells, ctx.critical.critical_values, cfg);
  CHECK(count_class(svg, "critical-circle") == 1);
  CHECK(count_class(svg, "radial-segment") == 1);
  CHECK(count(svg, "width=\"400\" height=\"400\"") == 1);
}

TEST_CASE("render configuration") {
  const auto ctx = make_lift_context(support::running_example());
  const auto& cv = ctx.critical.critical_values;
  const auto cfg = resolve_config(cv, {});
  CHECK(cfg.alpha == doctest::Approx(0.4 * 0.46).epsilon(1e-3));
  CHECK(cfg.beta == doctest::Approx(cfg.alpha / 2.0));

  RenderConfig bad;
  bad.alpha = 0.3;  // above half the smallest critical-value modulus
  CHECK_THROWS_AS(resolve_config(cv, bad), Error);
  bad.alpha = 0.1;
  bad.beta = 0.2;
  CHECK_THROWS_AS(resolve_config(cv, bad), Error);
}

TEST_CASE("branched annulus of the running example") {
  const auto ctx = make_lift_context(support::running_example());
  const auto traces = sample_branched_traces(ctx, {});
  const std::string svg = render_branched_annulus(ctx, traces, {});
  CHECK(count_class(svg, "root-circle") == 5);
  CHECK(count_class(svg, "direction-family") == 4);
  CHECK(count_class(svg, "level-family") == 3);
  CHECK(count_class(svg, "critical-point") == 4);
  // Two offset traces per direction family, one strand per root.
  CHECK(count_class(svg, "direction-curve") == 4 * 2 * 5);

  // Root circles are centred on the disk images of the roots.
  const auto rc = circles(svg, "root-circle");
  REQUIRE(rc.size() == ctx.roots.size());
  for (size_t j = 0; j < rc.size(); ++j) {
    const Complex d = to_disk(ctx.roots[j]);
    CHECK(rc[j].cx == doctest::Approx(500.0 * (1.0 + 0.95 * d.real())).epsilon(1e-5));
    CHECK(rc[j].cy == doctest::Approx(500.0 * (1.0 - 0.95 * d.imag())).epsilon(1e-5));
    CHECK(rc[j].r > 0.0);
  }

  for (auto [x, y] : path_points(svg)) CHECK(std::hypot(x - 500.0, y - 500.0) <= 475.0 + 1e-3);

  // The same traces render to the same bytes.
  CHECK(render_branched_annulus(ctx, traces, {}) == svg);
  CHECK(render_branched_annulus(ctx, sample_branched_traces(ctx, {}), {}) == svg);
}

TEST_CASE("sample count changes curve resolution only") {
  const auto ctx = make_lift_context(support::running_example());
  const auto traces = sample_branched_traces(ctx, {});
  RenderConfig coarse, fine;
  coarse.samples_per_curve = 8;
  fine.samples_per_curve = 1024;
  const std::string a = render_branched_annulus(ctx, traces, coarse);
  const std::string b = render_branched_annulus(ctx, traces, fine);
  CHECK(count(a, "<path") == count(b, "<path"));
  CHECK(path_points(a).size() < path_points(b).size());
}

TEST_CASE("cacti render and missing traces") {
  const auto ctx = make_lift_context(Polynomial::from_coefficients({-1.0, 0.0, 1.0}));
  auto traces = sample_branched_traces(ctx, {});
  const std::string svg = render_cacti(ctx, traces, {});
  CHECK(count_class(svg, "root-circle") == 2);
  CHECK(count_class(svg, "level-family") == 1);
  CHECK(count_class(svg, "direction-family") == 0);

  traces.directions.clear();
  try {
    render_branched_annulus(ctx, traces, {});
    FAIL("expected MissingTraces");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MissingTraces);
  }
}
