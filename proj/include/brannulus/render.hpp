#pragma once

#include <string>
#include <vector>

#include "brannulus/lifting.hpp"

namespace brannulus {

struct RenderConfig {
  /// Range-plane puncture radii; 0 selects the defaults 0.4 min|cv| and alpha/2.
  double alpha = 0.0;
  double beta = 0.0;
  int samples_per_curve = 512;
  /// Hues in degrees, assigned to critical arguments in increasing order.
  std::vector<double> palette = {0.0, 210.0, 120.0, 35.0, 280.0, 180.0, 330.0, 75.0};
  int canvas_size = 1000;
};

/// Fills in default radii and checks 0 < beta < alpha < 0.5 min|cv|.
/// Throws ZeroInput on an invalid configuration.
RenderConfig resolve_config(const ComplexMultiset& critical_values, RenderConfig cfg);

std::string render_annulus_complex(const AnnulusComplex& cells, const ComplexMultiset& critical_values,
                                   const RenderConfig& cfg);

struct BranchedTraces {
  struct DirectionFamily {
    double argument = 0.0;
    std::vector<DirectionTrace> offsets;  ///< traces at u - delta and u + delta
  };
  struct LevelFamily {
    double height = 0.0;
    std::vector<LevelTrace> offsets;  ///< traces at t - delta and t + delta
  };
  LevelTrace root_level;  ///< |p| = beta, one small loop per root
  std::vector<DirectionFamily> directions;
  std::vector<LevelFamily> levels;
};

/// Traces every critical family at offsets 1e-3 of the smallest sector width
/// and height gap.
BranchedTraces sample_branched_traces(const LiftContext& ctx, const RenderConfig& cfg);

/// Throws MissingTraces when the families do not cover the cell structure.
std::string render_branched_annulus(const LiftContext& ctx, const BranchedTraces& traces, const RenderConfig& cfg);

/// Critical level families and critical points only.
std::string render_cacti(const LiftContext& ctx, const BranchedTraces& traces, const RenderConfig& cfg);

}  // namespace brannulus
