#pragma once

#include "qmf/image.hpp"

#include <filesystem>

namespace qmf {

// reads a png or binary ppm image, sniffing the signature; non-rgb8 png
// layouts are expanded to rgb8
RgbImage load_image(const std::filesystem::path& path);

// writes png or binary ppm depending on the file extension
void save_image(const RgbImage& image, const std::filesystem::path& path);

}  // namespace qmf
