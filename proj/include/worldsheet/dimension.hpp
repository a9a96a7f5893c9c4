#pragma once

#include "worldsheet/constructions.hpp"

#include <string>
#include <vector>

namespace worldsheet {

struct PointCloud {
  std::vector<Vec> points;
  std::string provenance;
};

/// Removes points within 1e-12 (sup norm) of an earlier point.
PointCloud dedupe(PointCloud cloud);

struct SlopeEstimate {
  std::vector<double> scales;
  std::vector<long long> counts;
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  double stderr_ = 0.0;  // standard error of the slope
  bool reliable = false;  // r2 >= 0.98
};

struct BoxOptions {
  /// Rescale every coordinate affinely to [0, 1] before counting (bi-Lipschitz, so the box
  /// dimension is unchanged); axes of zero extent are left alone.
  bool normalize_axes = false;
  /// Grids shifted by k / grid_offsets of a box along every axis; the smallest count is kept.
  int grid_offsets = 4;
};

/// 2^{-lo}, ..., 2^{-hi}.
std::vector<double> dyadic_ladder(int lo = 3, int hi = 9);

/// Occupied axis-aligned boxes per scale and the least-squares slope of log N vs log(1/eps).
SlopeEstimate box_count(const PointCloud& cloud, const std::vector<double>& scales,
                        const BoxOptions& opt = {});

/// Predicted Sing* points of the Cantor example (Sigma_L times the t-segment).
PointCloud singstar_cloud(const SharpExample& example);

/// Detected pairs classified as Sing* (generic gauges).
PointCloud singstar_cloud(const OrthogonalGauge& g, int grid_n = 512);

/// All detected singular points.
PointCloud sing_cloud(const OrthogonalGauge& g, int grid_n = 512);

}  // namespace worldsheet
