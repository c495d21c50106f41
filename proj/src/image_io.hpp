// Copyright 2026 The Trailforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TRAILFORGE_IMAGE_IO_HPP_
#define TRAILFORGE_IMAGE_IO_HPP_

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "image.hpp"

namespace tf {

class io_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// PNG: any 8-bit colour type is accepted and expanded to RGB.
// PPM: binary P6, maxval 255.
RasterImage read_image(const std::filesystem::path& path);
void write_png(const std::filesystem::path& path, const RasterImage& img);
void write_png_gray(const std::filesystem::path& path, const std::vector<uint8_t>& values,
                    int width, int height);
void write_ppm(const std::filesystem::path& path, const RasterImage& img);

// Dispatches on extension (.png or .ppm).
void write_image(const std::filesystem::path& path, const RasterImage& img);

// Frame files in a directory, lexicographic order = temporal order.
std::vector<std::filesystem::path> list_frames(const std::filesystem::path& dir);

std::string frame_filename(int index);  // frame_%06d.png

}  // namespace tf

#endif  // TRAILFORGE_IMAGE_IO_HPP_
