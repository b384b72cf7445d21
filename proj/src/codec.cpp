#include "qmf/codec.hpp"

#include "qmf/solver.hpp"

#include <cmath>

namespace qmf {
namespace {

// forward pipeline shared by both codecs: color transform, 2x2 chroma
// pooling, patchify each component
std::array<PatchMatrix, 3> analyze(const RgbImage& image, int patch) {
  const PlaneSet planes = rgb_to_ycbcr(image);
  return {patchify(planes.y, patch),
          patchify(chroma_downsample(planes.cb), patch),
          patchify(chroma_downsample(planes.cr), patch)};
}

PatchMatrix with_geometry(Matrix m, Index plane_h, Index plane_w, int patch) {
  PatchMatrix pm;
  pm.matrix = std::move(m);
  pm.plane_height = plane_h;
  pm.plane_width = plane_w;
  pm.padded_height = (plane_h + patch - 1) / patch * patch;
  pm.padded_width = (plane_w + patch - 1) / patch * patch;
  pm.patch = patch;
  return pm;
}

// inverse pipeline from real-valued patch matrices: depatchify, clamp to the
// plane range, upsample chroma, invert the color transform
RgbImage synthesize(std::array<Matrix, 3> approx, const ContainerMeta& meta) {
  const Index h = meta.height;
  const Index w = meta.width;
  const Index ch = (h + 1) / 2;
  const Index cw = (w + 1) / 2;
  const auto plane = [&](Matrix& m, Index ph, Index pw) {
    return Matrix(depatchify(with_geometry(std::move(m), ph, pw, meta.patch))
                      .cwiseMax(0.0)
                      .cwiseMin(255.0));
  };
  PlaneSet planes;
  planes.y = plane(approx[0], h, w);
  planes.cb = chroma_upsample(plane(approx[1], ch, cw), h, w);
  planes.cr = chroma_upsample(plane(approx[2], ch, cw), h, w);
  planes.original_height = meta.height;
  planes.original_width = meta.width;
  return ycbcr_to_rgb(planes);
}

Index pick_rank(const QmfConfig& config, const PatchMatrix& patches) {
  const Index m = patches.matrix.rows();
  const Index n = patches.matrix.cols();
  if (config.rank) {
    if (*config.rank > std::min(m, n))
      throw std::invalid_argument("encode: rank exceeds min factor dimension");
    return *config.rank;
  }
  return rank_from_quality(*config.quality, m, n);
}

void fill_info(EncodeInfo* info, const std::array<Index, 3>& ranks,
               const std::vector<std::uint8_t>& bytes,
               const ContainerMeta& meta) {
  if (!info) return;
  for (int c = 0; c < 3; ++c) info->ranks[c] = static_cast<int>(ranks[c]);
  info->container_bytes = bytes.size();
  info->bpp = compressed_bpp(bytes, meta.height, meta.width);
}

}  // namespace

std::vector<std::uint8_t> qmf_encode(const RgbImage& image,
                                     const QmfConfig& config,
                                     EncodeInfo* info) {
  config.validate();
  const auto patches = analyze(image, config.patch);
  const ContainerMeta meta{image.height, image.width, config.patch,
                           config.bounds};
  std::array<IntFactorPair, 3> factors;
  std::array<Index, 3> ranks{};
  for (int c = 0; c < 3; ++c) {
    ranks[c] = pick_rank(config, patches[c]);
    factors[c] = bcd_solve(patches[c].matrix, ranks[c], config.bounds,
                           config.iterations);
  }
  auto bytes = serialize(factors, meta);
  fill_info(info, ranks, bytes, meta);
  return bytes;
}

RgbImage qmf_decode(std::span<const std::uint8_t> bytes) {
  DecodedQmfContainer dec = deserialize(bytes);
  std::array<Matrix, 3> approx;
  for (int c = 0; c < 3; ++c)
    approx[c] = dec.factors[c].u.cast<double>() *
                dec.factors[c].v.cast<double>().transpose();
  return synthesize(std::move(approx), dec.meta);
}

std::vector<std::uint8_t> svd_encode(const RgbImage& image,
                                     const QmfConfig& config,
                                     EncodeInfo* info) {
  config.validate();
  const auto patches = analyze(image, config.patch);
  const ContainerMeta meta{image.height, image.width, config.patch,
                           Bounds(0, 0)};
  std::array<QuantizedComponent, 3> components;
  std::array<Index, 3> ranks{};
  for (int c = 0; c < 3; ++c) {
    ranks[c] = pick_rank(config, patches[c]);
    const SvdTriplet svd = truncated_svd(patches[c].matrix, ranks[c]);
    const Vector split = svd.sigma.cwiseSqrt();
    components[c].u = quantize_uniform(svd.u * split.asDiagonal());
    components[c].v = quantize_uniform(svd.v * split.asDiagonal());
  }
  auto bytes = serialize_svd(components, meta);
  fill_info(info, ranks, bytes, meta);
  return bytes;
}

RgbImage svd_decode(std::span<const std::uint8_t> bytes) {
  DecodedSvdContainer dec = deserialize_svd(bytes);
  std::array<Matrix, 3> approx;
  for (int c = 0; c < 3; ++c)
    approx[c] = dequantize(dec.components[c].u) *
                dequantize(dec.components[c].v).transpose();
  return synthesize(std::move(approx), dec.meta);
}

RgbImage decode_container(std::span<const std::uint8_t> bytes) {
  if (bytes.size() >= 4 && bytes[0] == 'Q' && bytes[1] == 'S' &&
      bytes[2] == 'V' && bytes[3] == '1')
    return svd_decode(bytes);
  return qmf_decode(bytes);
}

}  // namespace qmf
