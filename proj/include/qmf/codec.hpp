#pragma once

#include "qmf/container.hpp"
#include "qmf/image.hpp"

namespace qmf {

// encode facts surfaced to callers that want a summary line
struct EncodeInfo {
  std::array<int, 3> ranks = {0, 0, 0};
  std::size_t container_bytes = 0;
  double bpp = 0.0;
};

// full integer-factorization codec: color transform, chroma pooling,
// patchify, bounded integer factors, entropy-coded container
std::vector<std::uint8_t> qmf_encode(const RgbImage& image,
                                     const QmfConfig& config,
                                     EncodeInfo* info = nullptr);
RgbImage qmf_decode(std::span<const std::uint8_t> bytes);

// baseline codec: identical pipeline with quantized truncated-svd factors
std::vector<std::uint8_t> svd_encode(const RgbImage& image,
                                     const QmfConfig& config,
                                     EncodeInfo* info = nullptr);
RgbImage svd_decode(std::span<const std::uint8_t> bytes);

// decodes either container format, dispatching on the magic
RgbImage decode_container(std::span<const std::uint8_t> bytes);

}  // namespace qmf
