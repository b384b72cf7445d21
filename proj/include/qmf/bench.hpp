#pragma once

#include "qmf/codec.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace qmf {

// one encode of one image at one quality setting
struct RdPoint {
  std::string image;
  std::string codec;
  double quality = 0.0;
  double bpp = 0.0;
  double psnr_db = 0.0;
  double ssim = 0.0;
  double encode_ms = 0.0;
  double decode_ms = 0.0;
};

// aggregated curve sample on the shared bpp grid
struct RdCurvePoint {
  double bpp = 0.0;
  double psnr_mean = 0.0;
  double psnr_se = 0.0;
  double ssim_mean = 0.0;
  double ssim_se = 0.0;
  int n_images = 0;
};

struct RdCurve {
  std::string codec;
  std::vector<RdCurvePoint> points;
};

struct SweepOptions {
  std::vector<std::string> codecs = {"qmf", "svd"};
  std::vector<double> qualities = {0.05, 0.1, 0.15, 0.2, 0.3};
  std::vector<double> grid;  // empty: 0.05 to 0.5 in steps of 0.05
  // bounds, iterations and patch for every encode; the quality knob is
  // overridden per sweep point
  QmfConfig config{};
  // encode / decode timing repetitions per point, median reported; 0 disables
  // timing so csv output is bit-reproducible
  int timing_reps = 3;
  int threads = 0;  // 0: hardware concurrency; QMF_THREADS caps either way
};

struct SweepResult {
  std::vector<RdPoint> points;        // image major, then codec, then quality
  std::vector<RdCurve> curves;        // one per codec, in option order
  std::vector<std::string> warnings;  // skipped files and why
};

// encodes every readable image in the dataset directory at every quality for
// every codec, scores bpp / psnr / ssim, and interpolates per-image curves
// onto the shared bpp grid
SweepResult rd_sweep(const std::filesystem::path& dataset,
                     const SweepOptions& options);

// piecewise-linear interpolation of each image's (bpp, metric) samples onto
// the grid; grid points outside an image's sampled bpp range are dropped,
// never extrapolated, and grid points no image covers are omitted
RdCurve build_curve(const std::string& codec,
                    const std::vector<RdPoint>& points,
                    const std::vector<double>& grid);

void write_points_csv(std::ostream& out, const std::vector<RdPoint>& points);
void write_curves_csv(std::ostream& out, const std::vector<RdCurve>& curves);

// self-contained gnuplot script with inline data blocks that renders psnr and
// ssim rate-distortion plots
void write_gnuplot_script(std::ostream& out, const std::vector<RdCurve>& curves);

}  // namespace qmf
