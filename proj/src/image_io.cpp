#include "qmf/image_io.hpp"

#include <png.h>

#include <cctype>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

namespace qmf {
namespace {

struct FileHandle {
  std::FILE* fp = nullptr;
  ~FileHandle() {
    if (fp) std::fclose(fp);
  }
};

struct PngReader {
  png_structp png = nullptr;
  png_infop info = nullptr;
  ~PngReader() {
    if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
  }
};

struct PngWriter {
  png_structp png = nullptr;
  png_infop info = nullptr;
  ~PngWriter() {
    if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
  }
};

RgbImage load_png(std::FILE* fp, const std::string& name) {
  PngReader ctx;
  ctx.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr,
                                   nullptr);
  if (!ctx.png) throw std::runtime_error("load_image: png allocation failed");
  ctx.info = png_create_info_struct(ctx.png);
  if (!ctx.info) throw std::runtime_error("load_image: png allocation failed");
  if (setjmp(png_jmpbuf(ctx.png)))
    throw std::runtime_error("load_image: failed to decode png '" + name + "'");

  png_init_io(ctx.png, fp);
  png_read_info(ctx.png, ctx.info);
  const png_uint_32 w = png_get_image_width(ctx.png, ctx.info);
  const png_uint_32 h = png_get_image_height(ctx.png, ctx.info);
  const int depth = png_get_bit_depth(ctx.png, ctx.info);
  const int color = png_get_color_type(ctx.png, ctx.info);
  if (w < 1 || h < 1)
    throw std::runtime_error("load_image: empty png '" + name + "'");

  // normalize every supported layout to 8-bit rgb
  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(ctx.png);
  if (color == PNG_COLOR_TYPE_GRAY && depth < 8)
    png_set_expand_gray_1_2_4_to_8(ctx.png);
  if (png_get_valid(ctx.png, ctx.info, PNG_INFO_tRNS))
    png_set_tRNS_to_alpha(ctx.png);
  if (depth == 16) png_set_strip_16(ctx.png);
  if (color == PNG_COLOR_TYPE_GRAY || color == PNG_COLOR_TYPE_GRAY_ALPHA)
    png_set_gray_to_rgb(ctx.png);
  png_set_strip_alpha(ctx.png);
  png_read_update_info(ctx.png, ctx.info);
  if (png_get_rowbytes(ctx.png, ctx.info) != static_cast<std::size_t>(w) * 3)
    throw std::runtime_error("load_image: unsupported png layout '" + name +
                             "'");

  RgbImage image(static_cast<int>(h), static_cast<int>(w));
  std::vector<png_bytep> rows(h);
  for (png_uint_32 i = 0; i < h; ++i)
    rows[i] = image.pixels.data() + static_cast<std::size_t>(i) * w * 3;
  png_read_image(ctx.png, rows.data());
  png_read_end(ctx.png, nullptr);
  return image;
}

// reads the next ppm header field, skipping whitespace and '#' comments
long ppm_field(std::istream& in) {
  int c = in.get();
  while (c == '#' || std::isspace(c)) {
    if (c == '#')
      while (c != '\n' && c != EOF) c = in.get();
    c = in.get();
  }
  long value = -1;
  while (c >= '0' && c <= '9') {
    if (value < 0) value = 0;
    value = value * 10 + (c - '0');
    if (value > 1000000000) return -1;
    c = in.get();
  }
  if (c != EOF) in.unget();
  return value;
}

RgbImage load_ppm(std::istream& in, const std::string& name) {
  char magic[2] = {0, 0};
  in.read(magic, 2);
  if (magic[0] != 'P' || magic[1] != '6')
    throw std::runtime_error("load_image: not a p6 ppm '" + name + "'");
  const long w = ppm_field(in);
  const long h = ppm_field(in);
  const long maxval = ppm_field(in);
  if (w < 1 || h < 1)
    throw std::runtime_error("load_image: malformed ppm header '" + name + "'");
  if (maxval != 255)
    throw std::runtime_error("load_image: unsupported ppm maxval '" + name +
                             "'");
  in.get();  // single whitespace byte before the raster
  RgbImage image(static_cast<int>(h), static_cast<int>(w));
  in.read(reinterpret_cast<char*>(image.pixels.data()),
          static_cast<std::streamsize>(image.pixels.size()));
  if (in.gcount() != static_cast<std::streamsize>(image.pixels.size()))
    throw std::runtime_error("load_image: truncated ppm '" + name + "'");
  return image;
}

void save_png(const RgbImage& image, const std::filesystem::path& path) {
  FileHandle file;
  file.fp = std::fopen(path.string().c_str(), "wb");
  if (!file.fp)
    throw std::runtime_error("save_image: cannot open '" + path.string() + "'");
  PngWriter ctx;
  ctx.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr,
                                    nullptr);
  if (!ctx.png) throw std::runtime_error("save_image: png allocation failed");
  ctx.info = png_create_info_struct(ctx.png);
  if (!ctx.info) throw std::runtime_error("save_image: png allocation failed");
  if (setjmp(png_jmpbuf(ctx.png)))
    throw std::runtime_error("save_image: failed to encode png '" +
                             path.string() + "'");
  png_init_io(ctx.png, file.fp);
  png_set_IHDR(ctx.png, ctx.info, static_cast<png_uint_32>(image.width),
               static_cast<png_uint_32>(image.height), 8, PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(ctx.png, ctx.info);
  std::vector<png_bytep> rows(image.height);
  for (int i = 0; i < image.height; ++i)
    rows[i] = const_cast<png_bytep>(image.pixels.data()) +
              static_cast<std::size_t>(i) * image.width * 3;
  png_write_image(ctx.png, rows.data());
  png_write_end(ctx.png, ctx.info);
}

void save_ppm(const RgbImage& image, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("save_image: cannot open '" + path.string() + "'");
  out << "P6\n" << image.width << ' ' << image.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.pixels.data()),
            static_cast<std::streamsize>(image.pixels.size()));
  if (!out)
    throw std::runtime_error("save_image: write failed '" + path.string() +
                             "'");
}

}  // namespace

RgbImage load_image(const std::filesystem::path& path) {
  FileHandle file;
  file.fp = std::fopen(path.string().c_str(), "rb");
  if (!file.fp)
    throw std::runtime_error("load_image: cannot open '" + path.string() + "'");
  unsigned char sig[8] = {};
  const std::size_t got = std::fread(sig, 1, 8, file.fp);
  std::rewind(file.fp);
  if (got >= 8 && png_sig_cmp(sig, 0, 8) == 0)
    return load_png(file.fp, path.string());
  if (got >= 2 && sig[0] == 'P' && sig[1] == '6') {
    std::ifstream in(path, std::ios::binary);
    return load_ppm(in, path.string());
  }
  throw std::runtime_error("load_image: unrecognized format '" + path.string() +
                           "'");
}

void save_image(const RgbImage& image, const std::filesystem::path& path) {
  if (image.height < 1 || image.width < 1 ||
      image.pixels.size() !=
          static_cast<std::size_t>(image.height) * image.width * 3)
    throw std::invalid_argument("save_image: malformed image");
  const std::string ext = path.extension().string();
  if (ext == ".png") {
    save_png(image, path);
  } else if (ext == ".ppm") {
    save_ppm(image, path);
  } else {
    throw std::invalid_argument("save_image: unsupported extension '" + ext +
                                "'");
  }
}

}  // namespace qmf
