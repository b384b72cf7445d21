#include "qmf/image.hpp"

#include <cmath>

namespace qmf {
namespace {

double clamp255(double x) { return x < 0.0 ? 0.0 : (x > 255.0 ? 255.0 : x); }

std::uint8_t to_byte(double x) {
  return static_cast<std::uint8_t>(clamp255(std::round(x)));
}

// index into a plane of n samples extended past its end: mirrored without
// repeating the edge sample, edge replicated once the mirror range runs out
Index padded_index(Index q, Index n) {
  if (q < n) return q;
  const Index mirrored = 2 * (n - 1) - q;
  return mirrored >= 0 ? mirrored : n - 1;
}

}  // namespace

PlaneSet rgb_to_ycbcr(const RgbImage& image) {
  if (image.height < 1 || image.width < 1 ||
      image.pixels.size() !=
          static_cast<std::size_t>(image.height) * image.width * 3)
    throw std::invalid_argument("rgb_to_ycbcr: malformed image");
  PlaneSet out;
  out.original_height = image.height;
  out.original_width = image.width;
  out.y.resize(image.height, image.width);
  out.cb.resize(image.height, image.width);
  out.cr.resize(image.height, image.width);
  for (int i = 0; i < image.height; ++i) {
    for (int j = 0; j < image.width; ++j) {
      const double r = image.at(i, j, 0);
      const double g = image.at(i, j, 1);
      const double b = image.at(i, j, 2);
      out.y(i, j) = clamp255(0.299 * r + 0.587 * g + 0.114 * b);
      out.cb(i, j) = clamp255(128.0 - 0.168736 * r - 0.331264 * g + 0.5 * b);
      out.cr(i, j) = clamp255(128.0 + 0.5 * r - 0.418688 * g - 0.081312 * b);
    }
  }
  return out;
}

RgbImage ycbcr_to_rgb(const PlaneSet& planes) {
  const Index h = planes.y.rows();
  const Index w = planes.y.cols();
  if (h < 1 || w < 1 || planes.cb.rows() != h || planes.cb.cols() != w ||
      planes.cr.rows() != h || planes.cr.cols() != w)
    throw std::invalid_argument("ycbcr_to_rgb: plane sizes do not conform");
  RgbImage out(static_cast<int>(h), static_cast<int>(w));
  for (Index i = 0; i < h; ++i) {
    for (Index j = 0; j < w; ++j) {
      const double y = planes.y(i, j);
      const double cb = planes.cb(i, j) - 128.0;
      const double cr = planes.cr(i, j) - 128.0;
      out.at(static_cast<int>(i), static_cast<int>(j), 0) =
          to_byte(y + 1.402 * cr);
      out.at(static_cast<int>(i), static_cast<int>(j), 1) =
          to_byte(y - 0.344136 * cb - 0.714136 * cr);
      out.at(static_cast<int>(i), static_cast<int>(j), 2) =
          to_byte(y + 1.772 * cb);
    }
  }
  return out;
}

Matrix chroma_downsample(const Matrix& plane) {
  const Index h = plane.rows();
  const Index w = plane.cols();
  if (h < 1 || w < 1) throw std::invalid_argument("chroma_downsample: empty plane");
  Matrix out((h + 1) / 2, (w + 1) / 2);
  for (Index i = 0; i < out.rows(); ++i) {
    for (Index j = 0; j < out.cols(); ++j) {
      double sum = 0.0;
      for (Index di = 0; di < 2; ++di)
        for (Index dj = 0; dj < 2; ++dj)
          sum += plane(padded_index(2 * i + di, h), padded_index(2 * j + dj, w));
      out(i, j) = sum / 4.0;
    }
  }
  return out;
}

Matrix chroma_upsample(const Matrix& plane, Index target_height,
                       Index target_width) {
  if (target_height < 1 || target_width < 1 ||
      plane.rows() != (target_height + 1) / 2 ||
      plane.cols() != (target_width + 1) / 2)
    throw std::invalid_argument("chroma_upsample: size mismatch");
  Matrix out(target_height, target_width);
  for (Index i = 0; i < target_height; ++i)
    for (Index j = 0; j < target_width; ++j) out(i, j) = plane(i / 2, j / 2);
  return out;
}

PatchMatrix patchify(const Matrix& plane, int patch) {
  const Index h = plane.rows();
  const Index w = plane.cols();
  if (h < 1 || w < 1) throw std::invalid_argument("patchify: empty plane");
  if (patch < 1 || patch > 255)
    throw std::invalid_argument("patchify: patch outside [1, 255]");
  PatchMatrix out;
  out.patch = patch;
  out.plane_height = h;
  out.plane_width = w;
  out.padded_height = (h + patch - 1) / patch * patch;
  out.padded_width = (w + patch - 1) / patch * patch;
  const Index rows = out.padded_height / patch;
  const Index cols = out.padded_width / patch;
  out.matrix.resize(rows * cols, static_cast<Index>(patch) * patch);
  for (Index pr = 0; pr < rows; ++pr) {
    for (Index pc = 0; pc < cols; ++pc) {
      const Index row = pr * cols + pc;
      for (Index a = 0; a < patch; ++a)
        for (Index b = 0; b < patch; ++b)
          out.matrix(row, a * patch + b) =
              plane(padded_index(pr * patch + a, h),
                    padded_index(pc * patch + b, w));
    }
  }
  return out;
}

Matrix depatchify(const PatchMatrix& patches) {
  const int p = patches.patch;
  if (p < 1 || patches.plane_height < 1 || patches.plane_width < 1 ||
      patches.padded_height % p != 0 || patches.padded_width % p != 0 ||
      patches.padded_height < patches.plane_height ||
      patches.padded_width < patches.plane_width ||
      patches.padded_height - patches.plane_height >= p ||
      patches.padded_width - patches.plane_width >= p)
    throw std::invalid_argument("depatchify: inconsistent metadata");
  const Index rows = patches.padded_height / p;
  const Index cols = patches.padded_width / p;
  if (patches.matrix.rows() != rows * cols ||
      patches.matrix.cols() != static_cast<Index>(p) * p)
    throw std::invalid_argument("depatchify: inconsistent metadata");
  Matrix out(patches.plane_height, patches.plane_width);
  for (Index pr = 0; pr < rows; ++pr) {
    for (Index pc = 0; pc < cols; ++pc) {
      const Index row = pr * cols + pc;
      for (Index a = 0; a < p; ++a) {
        const Index y = pr * p + a;
        if (y >= patches.plane_height) break;
        for (Index b = 0; b < p; ++b) {
          const Index x = pc * p + b;
          if (x < patches.plane_width) out(y, x) = patches.matrix(row, a * p + b);
        }
      }
    }
  }
  return out;
}

}  // namespace qmf
