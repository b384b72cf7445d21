#include "qmf/codec.hpp"

#include "doctest.h"
#include "qmf/metrics.hpp"
#include "support/test_images.hpp"

#include <random>

using namespace qmf;

namespace {

QmfConfig quality_config(double q) {
  QmfConfig config;
  config.quality = q;
  return config;
}

QmfConfig rank_config(int r) {
  QmfConfig config;
  config.quality.reset();
  config.rank = r;
  return config;
}

}  // namespace

TEST_CASE("qmf codec round trips through the container at awkward sizes") {
  const std::pair<int, int> sizes[] = {{1, 1}, {7, 5}, {8, 8}, {33, 47}};
  for (const auto [h, w] : sizes) {
    const RgbImage img = testing::make_small_image(0, h, w);
    EncodeInfo info;
    const auto bytes = qmf_encode(img, quality_config(0.5), &info);
    CHECK(info.container_bytes == bytes.size());
    CHECK(info.bpp == doctest::Approx(8.0 * bytes.size() / (h * w))
                          .epsilon(1e-12));
    const RgbImage out = qmf_decode(bytes);
    CHECK(out.height == h);
    CHECK(out.width == w);
  }
}

TEST_CASE("qmf encode and decode are deterministic") {
  const RgbImage img = testing::make_small_image(1);
  const auto a = qmf_encode(img, quality_config(0.2));
  const auto b = qmf_encode(img, quality_config(0.2));
  CHECK(a == b);
  const RgbImage da = qmf_decode(a);
  const RgbImage db = qmf_decode(a);
  CHECK(da.pixels == db.pixels);
}

TEST_CASE("explicit rank overrides quality and lands in the header") {
  const RgbImage img = testing::make_small_image(2);
  EncodeInfo info;
  const auto bytes = qmf_encode(img, rank_config(3), &info);
  CHECK(info.ranks[0] == 3);
  CHECK(info.ranks[1] == 3);
  CHECK(info.ranks[2] == 3);
  const ContainerInfo parsed = inspect(bytes);
  CHECK(parsed.components[0].rank == 3);
  CHECK(parsed.components[1].rank == 3);
  CHECK(parsed.components[2].rank == 3);
}

TEST_CASE("per-component ranks follow the quality knob") {
  // 64x64 image: luma grid 8x8 = 64 rows, chroma grid 4x4 = 16 rows; the
  // patch area 64 is the other factor dimension
  const RgbImage img = testing::make_small_image(3);
  EncodeInfo info;
  (void)qmf_encode(img, quality_config(0.1), &info);
  CHECK(info.ranks[0] == 6);  // round(0.1 * 64)
  CHECK(info.ranks[1] == 2);  // round(0.1 * 16)
  CHECK(info.ranks[2] == 2);
}

TEST_CASE("qmf codec reproduces a rank-one image nearly exactly") {
  // constant color is exactly rank one in every component plane; accuracy is
  // capped by the nearest reachable product of two bounded integers per
  // plane, a couple of code values at worst
  RgbImage img(32, 48);
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x) {
      img.at(y, x, 0) = 180;
      img.at(y, x, 1) = 90;
      img.at(y, x, 2) = 45;
    }
  const auto bytes = qmf_encode(img, rank_config(1));
  const RgbImage out = qmf_decode(bytes);
  CHECK(psnr(img, out) > 35.0);
}

TEST_CASE("zero image stays nearly black through the codec") {
  // luma is exactly zero; the neutral chroma value 128 is off the reachable
  // product grid by two codes, which tints channels by a few values at most
  const RgbImage img(16, 16);
  const RgbImage out = qmf_decode(qmf_encode(img, rank_config(1)));
  int worst = 0;
  for (const auto p : out.pixels) worst = std::max(worst, static_cast<int>(p));
  CHECK(worst <= 5);
  CHECK(psnr(img, out) > 35.0);
}

TEST_CASE("qmf quality tracks rank: more rank, better psnr, more bytes") {
  const RgbImage img = testing::make_small_image(4);
  double last_psnr = 0.0;
  std::size_t last_bytes = 0;
  for (const int r : {1, 4, 12}) {
    EncodeInfo info;
    const auto bytes = qmf_encode(img, rank_config(r), &info);
    const double p = psnr(img, qmf_decode(bytes));
    CHECK(p > last_psnr);
    CHECK(bytes.size() > last_bytes);
    last_psnr = p;
    last_bytes = bytes.size();
  }
  // the synthetic scene carries heavy fine texture, so even rank 12 of 64
  // leaves a sizeable residual floor; this is a garbage guard, not a target
  CHECK(last_psnr > 21.0);
}

TEST_CASE("encode rejects a rank larger than the factor dimensions allow") {
  const RgbImage img = testing::make_small_image(5, 16, 16);
  // the 8x8 chroma planes patchify into a single row, capping the rank at 1
  CHECK_THROWS_AS((void)qmf_encode(img, rank_config(2)), std::invalid_argument);
  CHECK_NOTHROW((void)qmf_encode(img, rank_config(1)));
}

TEST_CASE("config validation is enforced on entry") {
  const RgbImage img = testing::make_small_image(0, 16, 16);
  QmfConfig both = quality_config(0.5);
  both.rank = 2;
  CHECK_THROWS_AS((void)qmf_encode(img, both), std::invalid_argument);
  QmfConfig neither;
  neither.quality.reset();
  CHECK_THROWS_AS((void)qmf_encode(img, neither), std::invalid_argument);
  QmfConfig bad = quality_config(1.5);
  CHECK_THROWS_AS((void)qmf_encode(img, bad), std::invalid_argument);
  QmfConfig sweeps = quality_config(0.2);
  sweeps.iterations = -1;
  CHECK_THROWS_AS((void)qmf_encode(img, sweeps), std::invalid_argument);
}

TEST_CASE("svd codec round trips and dispatch picks the right decoder") {
  const RgbImage img = testing::make_small_image(1, 40, 56);
  EncodeInfo qi, si;
  const auto qmf_bytes = qmf_encode(img, quality_config(0.3), &qi);
  const auto svd_bytes = svd_encode(img, quality_config(0.3), &si);
  CHECK(si.ranks == qi.ranks);  // same rank rule on both codecs

  const RgbImage via_dispatch_q = decode_container(qmf_bytes);
  const RgbImage via_dispatch_s = decode_container(svd_bytes);
  CHECK(via_dispatch_q.pixels == qmf_decode(qmf_bytes).pixels);
  CHECK(via_dispatch_s.pixels == svd_decode(svd_bytes).pixels);

  CHECK_THROWS_AS((void)svd_decode(qmf_bytes), ContainerError);
  CHECK_THROWS_AS((void)qmf_decode(svd_bytes), ContainerError);

  std::vector<std::uint8_t> garbage = {'J', 'P', 'E', 'G', 0, 0};
  CHECK_THROWS_AS((void)decode_container(garbage), ContainerError);
}

TEST_CASE("svd codec at generous rank reconstructs a small image closely") {
  const RgbImage img = testing::make_small_image(2, 8, 8);
  // patch area 64 against a single 8x8 patch: rank 1 is full rank for the
  // 1x64 patch matrix, so only quantization error remains
  const auto bytes = svd_encode(img, rank_config(1));
  const RgbImage out = svd_decode(bytes);
  int worst = 0;
  for (std::size_t i = 0; i < img.pixels.size(); ++i)
    worst = std::max(worst, std::abs(static_cast<int>(img.pixels[i]) -
                                     static_cast<int>(out.pixels[i])));
  CHECK(worst <= 20);  // color transform + chroma pooling + 8-bit quantization
  CHECK(psnr(img, out) > 30.0);
}

TEST_CASE("qmf outperforms svd baseline on a natural image at equal rank") {
  const RgbImage img = testing::make_small_image(3, 64, 64);
  EncodeInfo qi, si;
  const auto qb = qmf_encode(img, quality_config(0.1), &qi);
  const auto sb = svd_encode(img, quality_config(0.1), &si);
  const double qp = psnr(img, qmf_decode(qb));
  const double sp = psnr(img, svd_decode(sb));
  // the bounded integer factors compress far smaller at similar fidelity
  CHECK(qb.size() < sb.size());
  CHECK(qp > sp - 3.0);  // near parity in psnr despite the smaller payload
}
