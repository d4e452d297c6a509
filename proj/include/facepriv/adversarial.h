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

#ifndef FACEPRIV_ADVERSARIAL_H_
#define FACEPRIV_ADVERSARIAL_H_

#include <cmath>
#include <istream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "facepriv/random.h"
#include "facepriv/status.h"
#include "json.hpp"

namespace facepriv {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

// Multiclass affine scorer: score_k(x) = w_k . x + b_k, label = argmax with
// ties resolved to the lowest class index.
//
// DeepFool below only needs Scores(), Jacobian() and Classify(); any type
// offering those can be attacked.
template <typename Scalar>
class AffineClassifier {
 public:
  AffineClassifier(MatrixX<Scalar> weights, VectorX<Scalar> biases,
                   std::vector<std::string> labels = {})
      : weights_(std::move(weights)),
        biases_(std::move(biases)),
        labels_(std::move(labels)) {
    if (weights_.rows() < 2) {
      throw Error(ErrorCode::kDimension, "classifier needs at least 2 classes");
    }
    if (biases_.size() != weights_.rows()) {
      throw Error(ErrorCode::kDimension, "bias count differs from class count");
    }
    if (labels_.empty()) {
      for (Eigen::Index k = 0; k < weights_.rows(); ++k) {
        labels_.push_back(std::to_string(k));
      }
    }
    if (static_cast<Eigen::Index>(labels_.size()) != weights_.rows()) {
      throw Error(ErrorCode::kDimension, "label count differs from class count");
    }
  }

  Eigen::Index num_classes() const { return weights_.rows(); }
  Eigen::Index dim() const { return weights_.cols(); }
  const MatrixX<Scalar>& weights() const { return weights_; }
  const VectorX<Scalar>& biases() const { return biases_; }
  const std::vector<std::string>& labels() const { return labels_; }

  template <typename Derived>
  VectorX<Scalar> Scores(const Eigen::MatrixBase<Derived>& x) const {
    CheckDim(x.size());
    return weights_ * x + biases_;
  }

  // Gradient of every score w.r.t. x, one row per class.
  template <typename Derived>
  const MatrixX<Scalar>& Jacobian(const Eigen::MatrixBase<Derived>& x) const {
    CheckDim(x.size());
    return weights_;
  }

  template <typename Derived>
  Eigen::Index Classify(const Eigen::MatrixBase<Derived>& x) const {
    VectorX<Scalar> scores = Scores(x);
    Eigen::Index best = 0;
    for (Eigen::Index k = 1; k < scores.size(); ++k) {
      if (scores(k) > scores(best)) best = k;
    }
    return best;
  }

 private:
  void CheckDim(Eigen::Index n) const {
    if (n != weights_.cols()) {
      throw Error(ErrorCode::kDimension,
                  "input has dimension " + std::to_string(n) +
                      ", classifier expects " + std::to_string(weights_.cols()));
    }
  }

  MatrixX<Scalar> weights_;
  VectorX<Scalar> biases_;
  std::vector<std::string> labels_;
};

template <typename Scalar>
struct DeepFoolResult {
  VectorX<Scalar> perturbation;  // r, before overshoot
  Eigen::Index original_label = 0;
  Eigen::Index nearest_label = 0;  // competitor whose boundary was crossed
  int iterations = 0;
  // x sat exactly on a decision boundary; r is zero and cannot flip the
  // label because the tie already resolves to the original class.
  bool on_boundary = false;
};

// DeepFool: repeatedly linearize the scores, step to the nearest linearized
// boundary, and stop once x + (1 + overshoot) r changes label. For affine
// classifiers the linearization is exact and one step suffices; |r| is then
// the distance from x to the nearest decision boundary.
template <typename Classifier, typename Derived>
DeepFoolResult<typename Derived::Scalar> DeepFool(
    const Classifier& clf, const Eigen::MatrixBase<Derived>& x, int max_iters,
    typename Derived::Scalar overshoot) {
  using Scalar = typename Derived::Scalar;
  const VectorX<Scalar> x0 = x;
  DeepFoolResult<Scalar> result;
  result.original_label = clf.Classify(x0);
  result.perturbation = VectorX<Scalar>::Zero(x0.size());
  const Eigen::Index k0 = result.original_label;

  VectorX<Scalar> current = x0;
  for (int it = 0; it < max_iters; ++it) {
    if (it > 0 && clf.Classify(current) != k0) break;
    const VectorX<Scalar> scores = clf.Scores(current);
    const MatrixX<Scalar>& jacobian = clf.Jacobian(current);

    Scalar best_distance = std::numeric_limits<Scalar>::infinity();
    Eigen::Index best = -1;
    VectorX<Scalar> best_direction;
    Scalar best_gap(0);
    for (Eigen::Index l = 0; l < clf.num_classes(); ++l) {
      if (l == k0) continue;
      VectorX<Scalar> direction = (jacobian.row(l) - jacobian.row(k0)).transpose();
      const Scalar norm = direction.norm();
      if (norm == Scalar(0)) continue;
      const Scalar gap = std::abs(scores(l) - scores(k0));
      const Scalar distance = gap / norm;
      if (distance < best_distance) {
        best_distance = distance;
        best = l;
        best_direction = std::move(direction);
        best_gap = gap;
      }
    }
    if (best < 0) {
      throw Error(ErrorCode::kNoBoundary,
                  "classifier has no decision boundary next to class " +
                      std::to_string(k0));
    }
    result.nearest_label = best;
    result.iterations = it + 1;
    if (best_gap == Scalar(0)) {
      result.on_boundary = it == 0;
      break;
    }
    result.perturbation +=
        (best_gap / best_direction.squaredNorm()) * best_direction;
    current = x0 + (Scalar(1) + overshoot) * result.perturbation;
  }
  return result;
}

template <typename Scalar, typename Derived>
DeepFoolResult<Scalar> DeepFoolAffine(const AffineClassifier<Scalar>& clf,
                                      const Eigen::MatrixBase<Derived>& x,
                                      int max_iters = 50,
                                      Scalar overshoot = Scalar(0.02)) {
  return DeepFool(clf, x, max_iters, overshoot);
}

enum class PNorm { kL2, kLInf };

template <typename Derived>
typename Derived::Scalar LpNorm(const Eigen::MatrixBase<Derived>& v, PNorm p) {
  return p == PNorm::kL2 ? v.norm() : v.template lpNorm<Eigen::Infinity>();
}

// Euclidean projection onto {v : |v|_p <= radius}: rescaling for p = 2,
// coordinate clamping for p = inf.
template <typename Derived>
VectorX<typename Derived::Scalar> ProjectLpBall(
    const Eigen::MatrixBase<Derived>& v, typename Derived::Scalar radius,
    PNorm p) {
  using Scalar = typename Derived::Scalar;
  if (!(radius > Scalar(0))) {
    throw Error(ErrorCode::kParameter, "projection radius must be > 0");
  }
  VectorX<Scalar> out = v;
  if (p == PNorm::kL2) {
    const Scalar norm = out.norm();
    if (norm > radius) out *= radius / norm;
  } else {
    out = out.cwiseMax(-radius).cwiseMin(radius);
  }
  return out;
}

// Fraction of rows x of `points` with Classify(x + v) != Classify(x).
template <typename Classifier, typename DerivedP, typename DerivedV>
typename DerivedP::Scalar FoolingRate(const Eigen::MatrixBase<DerivedP>& points,
                                      const Classifier& clf,
                                      const Eigen::MatrixBase<DerivedV>& v) {
  using Scalar = typename DerivedP::Scalar;
  if (points.rows() == 0) {
    throw Error(ErrorCode::kUndefined, "fooling rate of an empty sample");
  }
  if (points.cols() != v.size()) {
    throw Error(ErrorCode::kDimension, "perturbation and points differ in dimension");
  }
  Eigen::Index fooled = 0;
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    const VectorX<Scalar> x = points.row(i).transpose();
    if (clf.Classify(x + v) != clf.Classify(x)) ++fooled;
  }
  return static_cast<Scalar>(fooled) / static_cast<Scalar>(points.rows());
}

template <typename Scalar>
struct PerturbationConfig {
  Scalar xi = Scalar(1);     // radius of the p-norm ball holding v
  Scalar delta = Scalar(0.2);  // tolerated fraction of unfooled points
  PNorm p_norm = PNorm::kL2;
  int max_outer_iters = 10;
  Scalar overshoot = Scalar(0.02);
  // Optional cap on the l2 norm of each DeepFool update.
  std::optional<Scalar> per_step_cap;
  int deepfool_max_iters = 50;

  void Validate() const {
    if (!(xi > Scalar(0))) throw Error(ErrorCode::kParameter, "xi must be > 0");
    if (!(delta >= Scalar(0) && delta <= Scalar(1))) {
      throw Error(ErrorCode::kParameter, "delta must lie in [0, 1]");
    }
    if (max_outer_iters < 1 || deepfool_max_iters < 1) {
      throw Error(ErrorCode::kParameter, "iteration limits must be >= 1");
    }
    if (!(overshoot > Scalar(0))) {
      throw Error(ErrorCode::kParameter, "overshoot must be > 0");
    }
    if (per_step_cap && !(*per_step_cap > Scalar(0))) {
      throw Error(ErrorCode::kParameter, "per-step cap must be > 0");
    }
  }
};

template <typename Scalar>
struct UniversalPerturbation {
  VectorX<Scalar> v;
  // Empirical rate on the points the perturbation was fitted to.
  Scalar achieved_fooling_rate = Scalar(0);
  int iterations_used = 0;
};

// Universal perturbation: passes over the points in a fresh shuffled order;
// every point not yet fooled by v contributes its DeepFool step at x + v,
// after which v is projected back into the p-ball of radius xi. Stops once the
// fooling rate measured after a pass reaches 1 - delta, or after
// max_outer_iters passes. |v|_p <= xi holds on every return path.
template <typename Classifier, typename Derived>
UniversalPerturbation<typename Derived::Scalar> ComputeUniversalPerturbation(
    const Eigen::MatrixBase<Derived>& points, const Classifier& clf,
    const PerturbationConfig<typename Derived::Scalar>& config,
    RandomSource& rng) {
  using Scalar = typename Derived::Scalar;
  config.Validate();
  if (points.rows() == 0) {
    throw Error(ErrorCode::kUndefined, "universal perturbation needs points");
  }
  if (points.cols() != clf.dim()) {
    throw Error(ErrorCode::kDimension, "points and classifier differ in dimension");
  }
  UniversalPerturbation<Scalar> result;
  result.v = VectorX<Scalar>::Zero(points.cols());
  const Scalar target = Scalar(1) - config.delta;
  if (target <= Scalar(0)) return result;

  std::vector<Eigen::Index> order(static_cast<std::size_t>(points.rows()));
  for (std::size_t i = 0; i < order.size(); ++i) {
    order[i] = static_cast<Eigen::Index>(i);
  }
  for (int pass = 0; pass < config.max_outer_iters; ++pass) {
    rng.Shuffle(order);
    for (Eigen::Index i : order) {
      const VectorX<Scalar> x = points.row(i).transpose();
      const VectorX<Scalar> shifted = x + result.v;
      if (clf.Classify(shifted) != clf.Classify(x)) continue;
      VectorX<Scalar> step =
          DeepFool(clf, shifted, config.deepfool_max_iters, config.overshoot)
              .perturbation;
      if (config.per_step_cap) {
        const Scalar norm = step.norm();
        if (norm > *config.per_step_cap) step *= *config.per_step_cap / norm;
      }
      result.v = ProjectLpBall(result.v + (Scalar(1) + config.overshoot) * step,
                               config.xi, config.p_norm);
    }
    result.iterations_used = pass + 1;
    result.achieved_fooling_rate = FoolingRate(points, clf, result.v);
    if (result.achieved_fooling_rate >= target) break;
  }
  return result;
}

// {"labels": [...], "weights": [[...], ...] (K x d), "biases": [...]}
AffineClassifier<double> ClassifierFromJson(const nlohmann::json& json);
nlohmann::ordered_json ClassifierToJson(const AffineClassifier<double>& clf);

// One point per row, comma-separated; blank lines and '#' comments skipped.
MatrixX<double> ReadPointsCsv(std::istream& in);

}  // namespace facepriv

#endif  // FACEPRIV_ADVERSARIAL_H_
