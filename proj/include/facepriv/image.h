// Copyright 2026 The Facepriv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FACEPRIV_IMAGE_H_
#define FACEPRIV_IMAGE_H_

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>

namespace facepriv {

// m x n x c matrix of 8-bit intensities, stored row-major and interleaved.
// Channels are 1 (gray) or 3 (RGB).
class Image {
 public:
  Image() = default;
  Image(int width, int height, int channels, std::uint8_t fill = 0);
  Image(int width, int height, int channels, std::vector<std::uint8_t> pixels);

  int width() const { return width_; }
  int height() const { return height_; }
  int channels() const { return channels_; }
  const std::vector<std::uint8_t>& pixels() const { return pixels_; }

  std::uint8_t at(int x, int y, int c) const { return pixels_[Offset(x, y, c)]; }
  void set(int x, int y, int c, std::uint8_t v) { pixels_[Offset(x, y, c)] = v; }

  // Channel c as a height x width array.
  Eigen::ArrayXXd Plane(int c) const;
  bool SameShape(const Image& other) const {
    return width_ == other.width_ && height_ == other.height_ &&
           channels_ == other.channels_;
  }

  bool operator==(const Image&) const = default;

 private:
  std::size_t Offset(int x, int y, int c) const {
    return (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
            static_cast<std::size_t>(x)) *
               static_cast<std::size_t>(channels_) +
           static_cast<std::size_t>(c);
  }

  int width_ = 0;
  int height_ = 0;
  int channels_ = 1;
  std::vector<std::uint8_t> pixels_;
};

// Binary PGM (P5, 1 channel) / PPM (P6, 3 channels), maxval 255.
Image ReadPnm(std::istream& in);
void WritePnm(const Image& image, std::ostream& out);
Image ReadPnmFile(const std::string& path);
void WritePnmFile(const Image& image, const std::string& path);

struct Blur {
  double sigma = 1.0;
  int kernel_size = 3;  // odd
};
struct Pixelate {
  int block = 8;
};
struct Rect {
  int x = 0;
  int y = 0;
  int width = 0;
  int height = 0;
};
struct Mask {
  Rect rect;
  // One value per channel, or a single value used for every channel.
  std::vector<std::uint8_t> color{0};
};
using Obfuscation = std::variant<Blur, Pixelate, Mask>;

// Normalized size x size Gaussian kernel, exp(-(dx^2 + dy^2) / (2 sigma^2)).
Eigen::MatrixXd GaussianKernel(double sigma, int size);

// Per-channel convolution with clamp-to-edge borders; results are rounded
// half away from zero.
Image GaussianBlur(const Image& image, double sigma, int kernel_size);
// Each block x block tile (partial at the right/bottom edges) becomes its
// rounded mean.
Image PixelateImage(const Image& image, int block);
Image MaskImage(const Image& image, const Rect& rect,
                const std::vector<std::uint8_t>& color);
Image Obfuscate(const Image& image, const Obfuscation& method);

}  // namespace facepriv

#endif  // FACEPRIV_IMAGE_H_
