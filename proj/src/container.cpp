#include "qmf/container.hpp"

#include <zlib.h>

#include <bit>
#include <cmath>
#include <limits>

namespace qmf {
namespace {

constexpr std::array<std::uint8_t, 4> kQmfMagic = {'Q', 'M', 'F', '1'};
constexpr std::array<std::uint8_t, 4> kSvdMagic = {'Q', 'S', 'V', '1'};
constexpr std::uint8_t kVersion = 1;

std::vector<std::uint8_t> zlib_compress(std::span<const std::uint8_t> data) {
  uLongf cap = compressBound(static_cast<uLong>(data.size()));
  std::vector<std::uint8_t> out(cap);
  const int rc = compress2(out.data(), &cap, data.data(),
                           static_cast<uLong>(data.size()), Z_BEST_COMPRESSION);
  if (rc != Z_OK) throw std::runtime_error("container: deflate failed");
  out.resize(cap);
  return out;
}

std::vector<std::uint8_t> zlib_decompress(std::span<const std::uint8_t> data,
                                          std::size_t expected) {
  std::vector<std::uint8_t> out(expected);
  uLongf got = static_cast<uLongf>(expected);
  const int rc = uncompress(out.data(), &got, data.data(),
                            static_cast<uLong>(data.size()));
  if (rc != Z_OK || got != expected)
    throw ContainerError("container: decompression failure");
  return out;
}

class ByteWriter {
 public:
  void u8(std::uint8_t v) { buf_.push_back(v); }
  void i8(std::int8_t v) { buf_.push_back(static_cast<std::uint8_t>(v)); }
  void u16le(std::uint16_t v) {
    u8(static_cast<std::uint8_t>(v & 0xff));
    u8(static_cast<std::uint8_t>(v >> 8));
  }
  void u32le(std::uint32_t v) {
    for (int k = 0; k < 4; ++k) u8(static_cast<std::uint8_t>(v >> (8 * k)));
  }
  void f64le(double v) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    for (int k = 0; k < 8; ++k) u8(static_cast<std::uint8_t>(bits >> (8 * k)));
  }
  void bytes(std::span<const std::uint8_t> b) {
    buf_.insert(buf_.end(), b.begin(), b.end());
  }
  std::vector<std::uint8_t> take() { return std::move(buf_); }

 private:
  std::vector<std::uint8_t> buf_;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> data) : data_(data) {}

  std::uint8_t u8() {
    need(1);
    return data_[pos_++];
  }
  std::int8_t i8() { return static_cast<std::int8_t>(u8()); }
  std::uint16_t u16le() {
    need(2);
    const std::uint16_t v = static_cast<std::uint16_t>(
        data_[pos_] | (static_cast<std::uint16_t>(data_[pos_ + 1]) << 8));
    pos_ += 2;
    return v;
  }
  std::uint32_t u32le() {
    need(4);
    std::uint32_t v = 0;
    for (int k = 3; k >= 0; --k) v = (v << 8) | data_[pos_ + k];
    pos_ += 4;
    return v;
  }
  double f64le() {
    need(8);
    std::uint64_t bits = 0;
    for (int k = 7; k >= 0; --k) bits = (bits << 8) | data_[pos_ + k];
    pos_ += 8;
    return std::bit_cast<double>(bits);
  }
  std::span<const std::uint8_t> bytes(std::size_t n) {
    need(n);
    auto s = data_.subspan(pos_, n);
    pos_ += n;
    return s;
  }
  std::size_t remaining() const { return data_.size() - pos_; }

 private:
  void need(std::size_t n) const {
    if (data_.size() - pos_ < n)
      throw ContainerError("container: truncated stream");
  }

  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

struct PlaneDims {
  std::int64_t h = 0;
  std::int64_t w = 0;
};

// plane extents per component in container order (y, cb, cr)
std::array<PlaneDims, 3> component_planes(std::int64_t h, std::int64_t w) {
  return {{{h, w}, {(h + 1) / 2, (w + 1) / 2}, {(h + 1) / 2, (w + 1) / 2}}};
}

std::int64_t pad_to(std::int64_t n, std::int64_t p) {
  return (n + p - 1) / p * p;
}

// number of patches a plane yields, which is the row count of its factor u
std::int64_t grid_rows(PlaneDims d, std::int64_t p) {
  return (pad_to(d.h, p) / p) * (pad_to(d.w, p) / p);
}

void check_meta(const ContainerMeta& meta) {
  if (meta.height < 1 || meta.width < 1)
    throw std::invalid_argument("container: empty dimensions");
  if (meta.patch < 1 || meta.patch > 255)
    throw std::invalid_argument("container: patch outside [1, 255]");
}

// everything from the byte layout except inflated payloads
struct ParsedComponent {
  int rank = 0;
  std::int64_t m = 0;
  std::int64_t n = 0;
  double u_scale = 0.0, u_zero = 0.0, v_scale = 0.0, v_zero = 0.0;
  std::vector<std::uint32_t> u_lens, v_lens;
  std::vector<std::span<const std::uint8_t>> u_streams, v_streams;
};

struct Parsed {
  ContainerFormat format = ContainerFormat::qmf;
  ContainerMeta meta;
  std::array<ParsedComponent, 3> components;
};

double finite_f64(ByteReader& r) {
  const double v = r.f64le();
  if (!std::isfinite(v))
    throw ContainerError("container: header field out of range");
  return v;
}

Parsed parse(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  std::array<std::uint8_t, 4> magic{};
  for (auto& b : magic) b = r.u8();
  Parsed out;
  if (magic == kQmfMagic) {
    out.format = ContainerFormat::qmf;
  } else if (magic == kSvdMagic) {
    out.format = ContainerFormat::svd;
  } else {
    throw ContainerError("container: bad magic");
  }
  if (r.u8() != kVersion)
    throw ContainerError("container: unsupported version");
  if (r.u8() != 0) throw ContainerError("container: unsupported flags");
  const std::uint32_t height = r.u32le();
  const std::uint32_t width = r.u32le();
  const int patch = r.u8();
  const int alpha = r.i8();
  const int beta = r.i8();
  if (height < 1 || width < 1 ||
      height > static_cast<std::uint32_t>(std::numeric_limits<int>::max()) ||
      width > static_cast<std::uint32_t>(std::numeric_limits<int>::max()) ||
      patch < 1 || alpha > beta)
    throw ContainerError("container: header field out of range");
  out.meta.height = static_cast<int>(height);
  out.meta.width = static_cast<int>(width);
  out.meta.patch = patch;
  out.meta.bounds = Bounds(alpha, beta);

  const auto planes = component_planes(height, width);
  std::uint64_t payload = 0;
  for (int c = 0; c < 3; ++c) {
    ParsedComponent& comp = out.components[c];
    comp.rank = r.u16le();
    comp.m = r.u32le();
    comp.n = r.u32le();
    if (comp.rank < 1)
      throw ContainerError("container: header field out of range");
    if (comp.m != grid_rows(planes[c], patch) ||
        comp.n != static_cast<std::int64_t>(patch) * patch ||
        comp.rank > std::min(comp.m, comp.n))
      throw ContainerError("container: header dimensions inconsistent");
    if (out.format == ContainerFormat::svd) {
      comp.u_scale = finite_f64(r);
      comp.u_zero = finite_f64(r);
      comp.v_scale = finite_f64(r);
      comp.v_zero = finite_f64(r);
      if (comp.u_scale < 0.0 || comp.v_scale < 0.0)
        throw ContainerError("container: header field out of range");
    }
    comp.u_lens.resize(comp.rank);
    comp.v_lens.resize(comp.rank);
    for (auto& len : comp.u_lens) payload += (len = r.u32le());
    for (auto& len : comp.v_lens) payload += (len = r.u32le());
  }
  if (r.remaining() < payload)
    throw ContainerError("container: truncated stream");
  if (r.remaining() > payload)
    throw ContainerError("container: length mismatch");
  for (auto& comp : out.components) {
    comp.u_streams.reserve(comp.u_lens.size());
    comp.v_streams.reserve(comp.v_lens.size());
    for (const auto len : comp.u_lens) comp.u_streams.push_back(r.bytes(len));
    for (const auto len : comp.v_lens) comp.v_streams.push_back(r.bytes(len));
  }
  return out;
}

}  // namespace

std::vector<std::uint8_t> serialize(const std::array<IntFactorPair, 3>& factors,
                                    const ContainerMeta& meta) {
  check_meta(meta);
  const auto planes = component_planes(meta.height, meta.width);

  // compress everything first so the length tables can be written inline
  std::array<std::vector<std::vector<std::uint8_t>>, 3> streams;
  for (int c = 0; c < 3; ++c) {
    const IntFactorPair& f = factors[c];
    const Index rank = f.u.cols();
    if (rank < 1 || rank > 65535 || f.v.cols() != rank)
      throw std::invalid_argument("container: bad factor rank");
    if (f.u.rows() != grid_rows(planes[c], meta.patch) ||
        f.v.rows() != static_cast<std::int64_t>(meta.patch) * meta.patch ||
        rank > std::min(f.u.rows(), f.v.rows()))
      throw std::invalid_argument("container: factor shape does not match geometry");
    if (!(f.bounds == meta.bounds) || !f.within_bounds())
      throw std::invalid_argument("container: factor entries outside bounds");
    std::vector<std::uint8_t> column;
    for (const IntMatrix* part : {&f.u, &f.v}) {
      for (Index j = 0; j < rank; ++j) {
        column.resize(static_cast<std::size_t>(part->rows()));
        for (Index i = 0; i < part->rows(); ++i)
          column[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(
              static_cast<std::int8_t>((*part)(i, j)));
        streams[c].push_back(zlib_compress(column));
      }
    }
  }

  ByteWriter w;
  w.bytes(kQmfMagic);
  w.u8(kVersion);
  w.u8(0);  // flags
  w.u32le(static_cast<std::uint32_t>(meta.height));
  w.u32le(static_cast<std::uint32_t>(meta.width));
  w.u8(static_cast<std::uint8_t>(meta.patch));
  w.i8(static_cast<std::int8_t>(meta.bounds.alpha));
  w.i8(static_cast<std::int8_t>(meta.bounds.beta));
  for (int c = 0; c < 3; ++c) {
    w.u16le(static_cast<std::uint16_t>(factors[c].u.cols()));
    w.u32le(static_cast<std::uint32_t>(factors[c].u.rows()));
    w.u32le(static_cast<std::uint32_t>(factors[c].v.rows()));
    for (const auto& s : streams[c])
      w.u32le(static_cast<std::uint32_t>(s.size()));
  }
  for (int c = 0; c < 3; ++c)
    for (const auto& s : streams[c]) w.bytes(s);
  return w.take();
}

DecodedQmfContainer deserialize(std::span<const std::uint8_t> bytes) {
  const Parsed parsed = parse(bytes);
  if (parsed.format != ContainerFormat::qmf)
    throw ContainerError("container: bad magic");
  DecodedQmfContainer out;
  out.meta = parsed.meta;
  for (int c = 0; c < 3; ++c) {
    const ParsedComponent& comp = parsed.components[c];
    IntFactorPair& f = out.factors[c];
    f.bounds = out.meta.bounds;
    f.u.resize(comp.m, comp.rank);
    f.v.resize(comp.n, comp.rank);
    for (IntMatrix* part : {&f.u, &f.v}) {
      const auto& streams = part == &f.u ? comp.u_streams : comp.v_streams;
      for (Index j = 0; j < comp.rank; ++j) {
        const auto raw = zlib_decompress(
            streams[static_cast<std::size_t>(j)],
            static_cast<std::size_t>(part->rows()));
        for (Index i = 0; i < part->rows(); ++i) {
          const int value =
              static_cast<std::int8_t>(raw[static_cast<std::size_t>(i)]);
          if (!out.meta.bounds.contains(value))
            throw ContainerError("container: factor entry outside bounds");
          (*part)(i, j) = value;
        }
      }
    }
  }
  return out;
}

std::vector<std::uint8_t> serialize_svd(
    const std::array<QuantizedComponent, 3>& components,
    const ContainerMeta& meta) {
  check_meta(meta);
  const auto planes = component_planes(meta.height, meta.width);

  std::array<std::vector<std::vector<std::uint8_t>>, 3> streams;
  for (int c = 0; c < 3; ++c) {
    const QuantizedComponent& q = components[c];
    const Index rank = q.u.codes.cols();
    if (rank < 1 || rank > 65535 || q.v.codes.cols() != rank)
      throw std::invalid_argument("container: bad factor rank");
    if (q.u.codes.rows() != grid_rows(planes[c], meta.patch) ||
        q.v.codes.rows() != static_cast<std::int64_t>(meta.patch) * meta.patch ||
        rank > std::min(q.u.codes.rows(), q.v.codes.rows()))
      throw std::invalid_argument("container: factor shape does not match geometry");
    if (!std::isfinite(q.u.scale) || !std::isfinite(q.u.zero_point) ||
        !std::isfinite(q.v.scale) || !std::isfinite(q.v.zero_point) ||
        q.u.scale < 0.0 || q.v.scale < 0.0)
      throw std::invalid_argument("container: bad quantization parameters");
    std::vector<std::uint8_t> column;
    for (const ByteMatrix* part : {&q.u.codes, &q.v.codes}) {
      for (Index j = 0; j < rank; ++j) {
        column.assign(part->col(j).data(), part->col(j).data() + part->rows());
        streams[c].push_back(zlib_compress(column));
      }
    }
  }

  ByteWriter w;
  w.bytes(kSvdMagic);
  w.u8(kVersion);
  w.u8(0);  // flags
  w.u32le(static_cast<std::uint32_t>(meta.height));
  w.u32le(static_cast<std::uint32_t>(meta.width));
  w.u8(static_cast<std::uint8_t>(meta.patch));
  w.i8(static_cast<std::int8_t>(meta.bounds.alpha));
  w.i8(static_cast<std::int8_t>(meta.bounds.beta));
  for (int c = 0; c < 3; ++c) {
    const QuantizedComponent& q = components[c];
    w.u16le(static_cast<std::uint16_t>(q.u.codes.cols()));
    w.u32le(static_cast<std::uint32_t>(q.u.codes.rows()));
    w.u32le(static_cast<std::uint32_t>(q.v.codes.rows()));
    w.f64le(q.u.scale);
    w.f64le(q.u.zero_point);
    w.f64le(q.v.scale);
    w.f64le(q.v.zero_point);
    for (const auto& s : streams[c])
      w.u32le(static_cast<std::uint32_t>(s.size()));
  }
  for (int c = 0; c < 3; ++c)
    for (const auto& s : streams[c]) w.bytes(s);
  return w.take();
}

DecodedSvdContainer deserialize_svd(std::span<const std::uint8_t> bytes) {
  const Parsed parsed = parse(bytes);
  if (parsed.format != ContainerFormat::svd)
    throw ContainerError("container: bad magic");
  DecodedSvdContainer out;
  out.meta = parsed.meta;
  for (int c = 0; c < 3; ++c) {
    const ParsedComponent& comp = parsed.components[c];
    QuantizedComponent& q = out.components[c];
    q.u.scale = comp.u_scale;
    q.u.zero_point = comp.u_zero;
    q.v.scale = comp.v_scale;
    q.v.zero_point = comp.v_zero;
    q.u.codes.resize(comp.m, comp.rank);
    q.v.codes.resize(comp.n, comp.rank);
    for (ByteMatrix* part : {&q.u.codes, &q.v.codes}) {
      const auto& streams = part == &q.u.codes ? comp.u_streams : comp.v_streams;
      for (Index j = 0; j < comp.rank; ++j) {
        const auto raw = zlib_decompress(
            streams[static_cast<std::size_t>(j)],
            static_cast<std::size_t>(part->rows()));
        for (Index i = 0; i < part->rows(); ++i)
          (*part)(i, j) = raw[static_cast<std::size_t>(i)];
      }
    }
  }
  return out;
}

double compressed_bpp(std::span<const std::uint8_t> bytes, int height,
                      int width) {
  if (height < 1 || width < 1)
    throw std::invalid_argument("compressed_bpp: empty dimensions");
  return 8.0 * static_cast<double>(bytes.size()) /
         (static_cast<double>(height) * static_cast<double>(width));
}

ContainerInfo inspect(std::span<const std::uint8_t> bytes) {
  const Parsed parsed = parse(bytes);
  ContainerInfo out;
  out.format = parsed.format;
  out.meta = parsed.meta;
  out.total_bytes = bytes.size();
  for (int c = 0; c < 3; ++c) {
    const ParsedComponent& comp = parsed.components[c];
    ComponentInfo& info = out.components[c];
    info.rank = comp.rank;
    info.m = comp.m;
    info.n = comp.n;
    info.u_stream_bytes = comp.u_lens;
    info.v_stream_bytes = comp.v_lens;
    info.u_scale = comp.u_scale;
    info.u_zero_point = comp.u_zero;
    info.v_scale = comp.v_scale;
    info.v_zero_point = comp.v_zero;
  }
  return out;
}

}  // namespace qmf
