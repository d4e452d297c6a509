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

#ifndef FACEPRIV_IMAGE_QUALITY_H_
#define FACEPRIV_IMAGE_QUALITY_H_

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Core>

#include "facepriv/image.h"
#include "facepriv/status.h"

namespace facepriv {

struct PsnrValue {
  bool identical = false;  // MSE was zero; db is meaningless
  double db = 0.0;
};

double MeanSquaredError(const Image& reference, const Image& test);
// 10 log10(255^2 / MSE) over all cells and channels.
PsnrValue Psnr(const Image& reference, const Image& test);

struct SsimParams {
  int window = 8;  // uniform window side
  double k1 = 0.01;
  double k2 = 0.03;
};

// Mean SSIM and mean contrast-structure term over every valid window
// position of one plane pair.
template <typename Scalar>
struct SsimStats {
  Scalar ssim;
  Scalar cs;
};

namespace internal {

template <typename Scalar>
Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic> IntegralImage(
    const Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic>& a) {
  Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic> sum =
      Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(a.rows() + 1,
                                                                a.cols() + 1);
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      sum(r + 1, c + 1) = a(r, c) + sum(r, c + 1) + sum(r + 1, c) - sum(r, c);
    }
  }
  return sum;
}

template <typename Scalar>
Scalar WindowSum(const Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic>& s,
                 Eigen::Index r, Eigen::Index c, Eigen::Index w) {
  return s(r + w, c + w) - s(r, c + w) - s(r + w, c) + s(r, c);
}

}  // namespace internal

template <typename DerivedX, typename DerivedY>
SsimStats<typename DerivedX::Scalar> SsimPlane(
    const Eigen::ArrayBase<DerivedX>& x, const Eigen::ArrayBase<DerivedY>& y,
    const SsimParams& params) {
  using Scalar = typename DerivedX::Scalar;
  using Array = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Eigen::Index w = params.window;
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    throw Error(ErrorCode::kDimension, "SSIM planes differ in size");
  }
  if (w <= 0 || w > x.rows() || w > x.cols()) {
    throw Error(ErrorCode::kDimension, "SSIM window does not fit the image");
  }
  const Array xa = x;
  const Array ya = y;
  const Array sx = internal::IntegralImage<Scalar>(xa);
  const Array sy = internal::IntegralImage<Scalar>(ya);
  const Array sxx = internal::IntegralImage<Scalar>(xa * xa);
  const Array syy = internal::IntegralImage<Scalar>(ya * ya);
  const Array sxy = internal::IntegralImage<Scalar>(xa * ya);

  const Scalar n = static_cast<Scalar>(w * w);
  const Scalar c1 = std::pow(Scalar(params.k1 * 255.0), 2);
  const Scalar c2 = std::pow(Scalar(params.k2 * 255.0), 2);
  Scalar ssim_total(0);
  Scalar cs_total(0);
  const Eigen::Index rows = x.rows() - w + 1;
  const Eigen::Index cols = x.cols() - w + 1;
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      const Scalar bx = internal::WindowSum(sx, r, c, w);
      const Scalar by = internal::WindowSum(sy, r, c, w);
      // n * sum(x^2) - sum(x)^2 is exact for integer inputs, so constant
      // windows get exactly zero variance.
      const Scalar var_x = (n * internal::WindowSum(sxx, r, c, w) - bx * bx) / (n * n);
      const Scalar var_y = (n * internal::WindowSum(syy, r, c, w) - by * by) / (n * n);
      const Scalar cov = (n * internal::WindowSum(sxy, r, c, w) - bx * by) / (n * n);
      const Scalar mx = bx / n;
      const Scalar my = by / n;
      const Scalar cs = (Scalar(2) * cov + c2) / (var_x + var_y + c2);
      const Scalar luminance =
          (Scalar(2) * mx * my + c1) / (mx * mx + my * my + c1);
      ssim_total += luminance * cs;
      cs_total += cs;
    }
  }
  const Scalar count = static_cast<Scalar>(rows * cols);
  return {ssim_total / count, cs_total / count};
}

// 2x2 mean followed by decimation; an odd trailing row/column is dropped.
template <typename Derived>
Eigen::Array<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>
Downsample2x(const Eigen::ArrayBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() / 2,
                                                           a.cols() / 2);
  for (Eigen::Index r = 0; r < out.rows(); ++r) {
    for (Eigen::Index c = 0; c < out.cols(); ++c) {
      out(r, c) = (a(2 * r, 2 * c) + a(2 * r + 1, 2 * c) +
                   a(2 * r, 2 * c + 1) + a(2 * r + 1, 2 * c + 1)) /
                  Scalar(4);
    }
  }
  return out;
}

// Mean over channels of the per-channel mean SSIM.
double Ssim(const Image& reference, const Image& test,
            const SsimParams& params = {});

// Conventional five-scale weights; fewer levels use a renormalized prefix.
std::vector<double> DefaultMsSsimWeights(int levels);

// Per channel: prod_{j < L} cs_j^{w_j} * ssim_L^{w_L}, with the full SSIM at
// the coarsest scale (so one level reduces to SSIM) and negative terms
// clamped to zero; then averaged over channels. Throws kLevel when the
// coarsest scale is smaller than the window.
double MsSsim(const Image& reference, const Image& test, int levels = 5,
              std::vector<double> weights = {}, const SsimParams& params = {});

}  // namespace facepriv

#endif  // FACEPRIV_IMAGE_QUALITY_H_
