#pragma once

#include "qmf/image.hpp"

#include <filesystem>

namespace qmf::testing {

// deterministic synthetic photograph stand-in: smooth correlated-channel
// fields, soft structures, and band-limited texture. kind selects one of six
// frozen recipes; the same arguments always produce the same pixels.
RgbImage make_natural_image(int kind, int height = 512, int width = 768);

// small deterministic test image, cheap enough for tight loops
RgbImage make_small_image(int kind, int height = 64, int width = 64);

// fresh unique directory under the system temp root
std::filesystem::path make_temp_dir(const std::string& tag);

}  // namespace qmf::testing
