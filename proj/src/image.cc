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

#include "facepriv/image.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>

#include "facepriv/status.h"

namespace facepriv {
namespace {

std::uint8_t RoundToByte(double value) {
  return static_cast<std::uint8_t>(std::clamp(std::round(value), 0.0, 255.0));
}

// Reads one whitespace-delimited header token, skipping '#' comments.
std::string HeaderToken(std::istream& in) {
  std::string token;
  int c = in.get();
  while (c != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = in.get();
    } else if (std::isspace(c)) {
      if (!token.empty()) return token;
    } else {
      token.push_back(static_cast<char>(c));
    }
    if (c != EOF) c = in.get();
  }
  return token;
}

int HeaderInt(std::istream& in, const char* what) {
  std::string token = HeaderToken(in);
  if (token.empty() ||
      !std::all_of(token.begin(), token.end(),
                   [](unsigned char c) { return std::isdigit(c); }) ||
      token.size() > 9) {
    throw Error(ErrorCode::kFormat, std::string("bad PNM ") + what);
  }
  return std::stoi(token);
}

}  // namespace

Image::Image(int width, int height, int channels, std::uint8_t fill)
    : Image(width, height, channels,
            std::vector<std::uint8_t>(static_cast<std::size_t>(
                                          std::max(width, 0)) *
                                          static_cast<std::size_t>(std::max(height, 0)) *
                                          static_cast<std::size_t>(std::max(channels, 0)),
                                      fill)) {}

Image::Image(int width, int height, int channels,
             std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), channels_(channels),
      pixels_(std::move(pixels)) {
  if (width <= 0 || height <= 0) {
    throw Error(ErrorCode::kDimension, "image dimensions must be positive");
  }
  if (channels != 1 && channels != 3) {
    throw Error(ErrorCode::kDimension, "images have 1 or 3 channels");
  }
  if (pixels_.size() != static_cast<std::size_t>(width) *
                            static_cast<std::size_t>(height) *
                            static_cast<std::size_t>(channels)) {
    throw Error(ErrorCode::kDimension, "pixel buffer size mismatch");
  }
}

Eigen::ArrayXXd Image::Plane(int c) const {
  Eigen::ArrayXXd plane(height_, width_);
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) plane(y, x) = at(x, y, c);
  }
  return plane;
}

Image ReadPnm(std::istream& in) {
  std::string magic = HeaderToken(in);
  int channels = 0;
  if (magic == "P5") {
    channels = 1;
  } else if (magic == "P6") {
    channels = 3;
  } else {
    throw Error(ErrorCode::kFormat, "expected binary PGM (P5) or PPM (P6)");
  }
  // HeaderToken consumes exactly one whitespace byte after maxval.
  const int width = HeaderInt(in, "width");
  const int height = HeaderInt(in, "height");
  const int maxval = HeaderInt(in, "maxval");
  if (maxval != 255) {
    throw Error(ErrorCode::kFormat, "only maxval 255 is supported");
  }
  if (width <= 0 || height <= 0) {
    throw Error(ErrorCode::kFormat, "PNM dimensions must be positive");
  }
  std::vector<std::uint8_t> pixels(static_cast<std::size_t>(width) *
                                   static_cast<std::size_t>(height) *
                                   static_cast<std::size_t>(channels));
  in.read(reinterpret_cast<char*>(pixels.data()),
          static_cast<std::streamsize>(pixels.size()));
  if (in.gcount() != static_cast<std::streamsize>(pixels.size())) {
    throw Error(ErrorCode::kFormat, "truncated PNM pixel data");
  }
  return Image(width, height, channels, std::move(pixels));
}

void WritePnm(const Image& image, std::ostream& out) {
  out << (image.channels() == 1 ? "P5" : "P6") << '\n'
      << image.width() << ' ' << image.height() << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.pixels().data()),
            static_cast<std::streamsize>(image.pixels().size()));
}

Image ReadPnmFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open image '" + path + "'");
  return ReadPnm(in);
}

void WritePnmFile(const Image& image, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write image '" + path + "'");
  WritePnm(image, out);
  if (!out) throw Error(ErrorCode::kIo, "failed writing image '" + path + "'");
}

Eigen::MatrixXd GaussianKernel(double sigma, int size) {
  if (!(sigma > 0.0)) throw Error(ErrorCode::kParameter, "sigma must be > 0");
  if (size <= 0 || size % 2 == 0) {
    throw Error(ErrorCode::kParameter, "kernel size must be odd and positive");
  }
  const int half = size / 2;
  Eigen::MatrixXd kernel(size, size);
  for (int dy = -half; dy <= half; ++dy) {
    for (int dx = -half; dx <= half; ++dx) {
      kernel(dy + half, dx + half) =
          std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
    }
  }
  return kernel / kernel.sum();
}

Image GaussianBlur(const Image& image, double sigma, int kernel_size) {
  const Eigen::MatrixXd kernel = GaussianKernel(sigma, kernel_size);
  const int half = kernel_size / 2;
  Image out(image.width(), image.height(), image.channels());
  for (int c = 0; c < image.channels(); ++c) {
    for (int y = 0; y < image.height(); ++y) {
      for (int x = 0; x < image.width(); ++x) {
        double acc = 0.0;
        for (int dy = -half; dy <= half; ++dy) {
          const int sy = std::clamp(y + dy, 0, image.height() - 1);
          for (int dx = -half; dx <= half; ++dx) {
            const int sx = std::clamp(x + dx, 0, image.width() - 1);
            acc += kernel(dy + half, dx + half) * image.at(sx, sy, c);
          }
        }
        out.set(x, y, c, RoundToByte(acc));
      }
    }
  }
  return out;
}

Image PixelateImage(const Image& image, int block) {
  if (block <= 0) throw Error(ErrorCode::kParameter, "block must be > 0");
  Image out(image.width(), image.height(), image.channels());
  for (int by = 0; by < image.height(); by += block) {
    const int ey = std::min(by + block, image.height());
    for (int bx = 0; bx < image.width(); bx += block) {
      const int ex = std::min(bx + block, image.width());
      const double count = static_cast<double>((ey - by) * (ex - bx));
      for (int c = 0; c < image.channels(); ++c) {
        long sum = 0;
        for (int y = by; y < ey; ++y) {
          for (int x = bx; x < ex; ++x) sum += image.at(x, y, c);
        }
        const std::uint8_t mean = RoundToByte(static_cast<double>(sum) / count);
        for (int y = by; y < ey; ++y) {
          for (int x = bx; x < ex; ++x) out.set(x, y, c, mean);
        }
      }
    }
  }
  return out;
}

Image MaskImage(const Image& image, const Rect& rect,
                const std::vector<std::uint8_t>& color) {
  if (rect.width <= 0 || rect.height <= 0 || rect.x < 0 || rect.y < 0 ||
      rect.x + rect.width > image.width() ||
      rect.y + rect.height > image.height()) {
    throw Error(ErrorCode::kParameter, "mask rectangle is out of bounds");
  }
  if (color.size() != 1 &&
      color.size() != static_cast<std::size_t>(image.channels())) {
    throw Error(ErrorCode::kParameter,
                "mask color needs 1 or one-per-channel values");
  }
  Image out = image;
  for (int y = rect.y; y < rect.y + rect.height; ++y) {
    for (int x = rect.x; x < rect.x + rect.width; ++x) {
      for (int c = 0; c < image.channels(); ++c) {
        out.set(x, y, c, color.size() == 1 ? color[0] : color[c]);
      }
    }
  }
  return out;
}

Image Obfuscate(const Image& image, const Obfuscation& method) {
  return std::visit(
      [&](const auto& m) -> Image {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Blur>) {
          return GaussianBlur(image, m.sigma, m.kernel_size);
        } else if constexpr (std::is_same_v<T, Pixelate>) {
          return PixelateImage(image, m.block);
        } else {
          return MaskImage(image, m.rect, m.color);
        }
      },
      method);
}

}  // namespace facepriv
