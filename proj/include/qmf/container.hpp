#pragma once

#include "qmf/quantize.hpp"
#include "qmf/types.hpp"

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace qmf {

// raised for any structural defect found while parsing a container
struct ContainerError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// geometry shared by every component block; components are stored in the fixed
// order y, cb, cr
struct ContainerMeta {
  int height = 0;
  int width = 0;
  int patch = 8;
  Bounds bounds{};
};

// integer-factor container ("QMF1"): fixed header, three component blocks of
// rank / shape / per-column stream lengths, then the zlib streams themselves,
// u columns before v columns within each component
std::vector<std::uint8_t> serialize(const std::array<IntFactorPair, 3>& factors,
                                    const ContainerMeta& meta);

struct DecodedQmfContainer {
  std::array<IntFactorPair, 3> factors;
  ContainerMeta meta;
};

DecodedQmfContainer deserialize(std::span<const std::uint8_t> bytes);

// baseline container ("QSV1"): same layout with per-factor scale / zero_point
// ahead of each stream-length table and unsigned byte codes in the streams
struct QuantizedComponent {
  QuantizedFactor u;
  QuantizedFactor v;
};

std::vector<std::uint8_t> serialize_svd(
    const std::array<QuantizedComponent, 3>& components,
    const ContainerMeta& meta);

struct DecodedSvdContainer {
  std::array<QuantizedComponent, 3> components;
  ContainerMeta meta;
};

DecodedSvdContainer deserialize_svd(std::span<const std::uint8_t> bytes);

// bits per pixel of an encoded container at the given image geometry
double compressed_bpp(std::span<const std::uint8_t> bytes, int height,
                      int width);

// header-only view of either format, without inflating any payload
enum class ContainerFormat { qmf, svd };

struct ComponentInfo {
  int rank = 0;
  std::int64_t m = 0;
  std::int64_t n = 0;
  std::vector<std::uint32_t> u_stream_bytes;
  std::vector<std::uint32_t> v_stream_bytes;
  double u_scale = 0.0, u_zero_point = 0.0;
  double v_scale = 0.0, v_zero_point = 0.0;
};

struct ContainerInfo {
  ContainerFormat format = ContainerFormat::qmf;
  ContainerMeta meta;
  std::array<ComponentInfo, 3> components;
  std::size_t total_bytes = 0;
};

ContainerInfo inspect(std::span<const std::uint8_t> bytes);

}  // namespace qmf
