//
// Copyright 2026 The mmrobust Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef MMROBUST_IMAGE_IO_H_
#define MMROBUST_IMAGE_IO_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "mmrobust/image.h"

namespace mmrobust {

// All codec failures surface as Error(kCodecError).
std::vector<std::uint8_t> encode_png(const Rgb8Image& image);
Rgb8Image decode_png(std::span<const std::uint8_t> data);

// Baseline JPEG with libjpeg defaults (4:2:0 chroma subsampling).
std::vector<std::uint8_t> encode_jpeg(const Rgb8Image& image, int quality);
Rgb8Image decode_jpeg(std::span<const std::uint8_t> data);

// Sniffs the PNG/JPEG signature, so extensions are not trusted.
Rgb8Image decode_image(std::span<const std::uint8_t> data);

Rgb8Image read_image(const std::filesystem::path& path);
// Format follows the extension: .jpg/.jpeg writes JPEG at quality 95,
// everything else PNG.
void write_image(const std::filesystem::path& path, const Rgb8Image& image);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path,
                std::span<const std::uint8_t> data);

}  // namespace mmrobust

#endif  // MMROBUST_IMAGE_IO_H_
