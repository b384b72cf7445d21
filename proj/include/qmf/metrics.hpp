#pragma once

#include "qmf/image.hpp"

namespace qmf {

// mean squared error over all rgb samples
double mse(const RgbImage& a, const RgbImage& b);

// peak signal-to-noise ratio in db against peak 255; identical images return
// positive infinity
double psnr(const RgbImage& a, const RgbImage& b);

// mean structural similarity over the luma plane: 11x11 gaussian window with
// sigma 1.5, k1 = 0.01, k2 = 0.03, dynamic range 255, valid-region filtering
double ssim(const RgbImage& a, const RgbImage& b);

// bt.601 luma plane of an image
Matrix luma_plane(const RgbImage& image);

}  // namespace qmf
