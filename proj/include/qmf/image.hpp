#pragma once

#include "qmf/types.hpp"

#include <vector>

namespace qmf {

// interleaved 8-bit rgb, row major
struct RgbImage {
  int height = 0;
  int width = 0;
  std::vector<std::uint8_t> pixels;

  RgbImage() = default;
  RgbImage(int height_, int width_)
      : height(height_),
        width(width_),
        pixels(static_cast<std::size_t>(height_) * width_ * 3, 0) {
    if (height_ < 1 || width_ < 1)
      throw std::invalid_argument("image: empty dimensions");
  }

  std::uint8_t& at(int y, int x, int c) {
    return pixels[(static_cast<std::size_t>(y) * width + x) * 3 + c];
  }
  std::uint8_t at(int y, int x, int c) const {
    return pixels[(static_cast<std::size_t>(y) * width + x) * 3 + c];
  }
};

// one luma and two chroma planes, values in [0, 255]. Chroma starts full
// resolution and drops to ceil(h/2) x ceil(w/2) once downsampled.
struct PlaneSet {
  Matrix y;
  Matrix cb;
  Matrix cr;
  int original_height = 0;
  int original_width = 0;
};

// patchified plane: one patch per row, patch * patch columns, patches scanned
// row major over a reflect-padded grid
struct PatchMatrix {
  Matrix matrix;
  Index plane_height = 0;
  Index plane_width = 0;
  Index padded_height = 0;
  Index padded_width = 0;
  int patch = 0;
};

// full-range color transform (ITU-R BT.601 with JFIF scaling); output planes
// are real valued and clamped to [0, 255]
PlaneSet rgb_to_ycbcr(const RgbImage& image);

// inverse transform; expects full-resolution chroma, rounds halves away from
// zero and clamps to the 8-bit range
RgbImage ycbcr_to_rgb(const PlaneSet& planes);

// 2x2 mean pool; odd extents are reflect padded before pooling
Matrix chroma_downsample(const Matrix& plane);

// nearest-neighbor upsample back to the requested extents; errors when the
// source does not pool down from them
Matrix chroma_upsample(const Matrix& plane, Index target_height,
                       Index target_width);

// cut a plane into patch x patch tiles over a reflect-padded grid
PatchMatrix patchify(const Matrix& plane, int patch);

// reassemble the plane and drop the padding
Matrix depatchify(const PatchMatrix& patches);

}  // namespace qmf
