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

// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Cholesky>

#include "facepriv/adversarial.h"
#include "facepriv/attribute_table.h"
#include "facepriv/cli.h"
#include "facepriv/distribution.h"
#include "facepriv/image.h"
#include "facepriv/image_quality.h"
#include "facepriv/linkage_attack.h"
#include "facepriv/ppas.h"
#include "facepriv/privacy_metrics.h"
#include "facepriv/randomization.h"
#include "oracles.h"

namespace facepriv {
namespace {

namespace fs = std::filesystem;
using testing::CostMatrix;
using testing::MinCostFlowEmd;
using testing::OracleGround;
using testing::RandomBinaryTable;
using testing::RandomPmf;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Records the first failing observation.
class Checker {
 public:
  void Expect(bool condition, const std::string& what) {
    if (!condition && pass_) {
      pass_ = false;
      first_failure_ = what;
    }
  }
  bool pass() const { return pass_; }
  const std::string& first_failure() const { return first_failure_; }

 private:
  bool pass_ = true;
  std::string first_failure_;
};

std::string Format(const char* fmt, double a, double b = 0, double c = 0) {
  char buffer[256];
  std::snprintf(buffer, sizeof(buffer), fmt, a, b, c);
  return buffer;
}

Outcome Finish(const Checker& check, std::string detail) {
  if (!check.pass()) detail += "; first failure: " + check.first_failure();
  return {check.pass(), std::move(detail)};
}

// 1. Metric oracle equivalence.
Outcome MetricOracleEquivalence() {
  std::mt19937_64 gen(1001);
  Checker check;
  int tables = 0;
  int comparisons = 0;
  for (; tables < 600; ++tables) {
    AttributeTable table = RandomBinaryTable(gen, 1 + gen() % 12, 4);
    const auto& names = table.schema().names();
    for (unsigned mask = 1; mask < 16; ++mask) {
      std::vector<std::string> quasi;
      std::vector<std::size_t> idx;
      for (std::size_t a = 0; a < 4; ++a) {
        if (mask & (1u << a)) {
          quasi.push_back(names[a]);
          idx.push_back(a);
        }
      }
      check.Expect(KAnonymity(table, quasi) == testing::NaiveK(table, idx), "k");
      for (std::size_t s = 0; s < 4; ++s) {
        if (mask & (1u << s)) continue;
        const double l = EntropyLDiversity(table, quasi, names[s]);
        const double t =
            TClosenessMaxDistance(table, quasi, names[s], GroundDistance::kBinary).value;
        check.Expect(std::abs(l - testing::NaiveL(table, idx, s)) <= 1e-9, "l");
        check.Expect(
            std::abs(t - testing::NaiveT(table, idx, s, OracleGround::kBinary)) <= 1e-9,
            "t");
        ++comparisons;
      }
      ++comparisons;
    }
  }
  return Finish(check, std::to_string(tables) + " tables, " +
                           std::to_string(comparisons) + " metric comparisons");
}

// 2. EMD correctness against min-cost flow, plus metric axioms.
Outcome EmdCorrectness() {
  std::mt19937_64 gen(1002);
  Checker check;
  double worst = 0.0;
  const int pairs = 1500;
  for (int i = 0; i < pairs; ++i) {
    const std::size_t n = 2 + gen() % 5;
    std::vector<int> support(n);
    for (std::size_t j = 0; j < n; ++j) support[j] = static_cast<int>(j);
    auto make = [&](std::vector<double>& m) {
      return DiscreteDistribution(support, Eigen::Map<Eigen::VectorXd>(
                                               m.data(), static_cast<Eigen::Index>(n)));
    };
    std::vector<double> a = RandomPmf(gen, n);
    std::vector<double> b = RandomPmf(gen, n);
    std::vector<double> c = RandomPmf(gen, n);
    DiscreteDistribution p = make(a);
    DiscreteDistribution q = make(b);
    DiscreteDistribution r = make(c);
    std::vector<std::pair<GroundDistance, OracleGround>> kinds{
        {GroundDistance::kUniform, OracleGround::kUniform},
        {GroundDistance::kOrdinal, OracleGround::kOrdinal}};
    if (n == 2) kinds.push_back({GroundDistance::kBinary, OracleGround::kBinary});
    for (auto [kind, oracle] : kinds) {
      const double pq = Emd(p, q, kind);
      const double error = std::abs(pq - MinCostFlowEmd(a, b, CostMatrix(oracle, support)));
      worst = std::max(worst, error);
      check.Expect(error <= 1e-9, "flow oracle");
      check.Expect(pq >= 0.0, "nonnegativity");
      check.Expect(pq == Emd(q, p, kind), "symmetry");
      check.Expect(Emd(p, p, kind) == 0.0 && (a == b || pq > 0.0), "identity");
      check.Expect(Emd(p, r, kind) <= pq + Emd(q, r, kind) + 1e-12, "triangle");
    }
  }
  return Finish(check, std::to_string(pairs) + " pairs, max |emd - flow| = " +
                           Format("%.2e", worst));
}

// 3. Two-record toy before and after attribute selection.
Outcome ToyReproduction() {
  Checker check;
  const AttributeTable toy = testing::ToyTable();
  const std::vector<std::string> hair{"Black_Hair"};
  const std::size_t k_before = KAnonymity(toy, hair);
  PpasConfig config;
  config.t = 0.2;
  config.epsilon = kNoPerturbation;
  config.quasi_policy = QuasiPolicy::kFixedQuasiSet;
  config.quasi_ids = hair;
  const AttributeTable after = PpasApplyTable(toy, config, RandomSource(0)).table;
  const std::size_t k_after = KAnonymity(after, hair);
  const double success_before =
      LinkageAttack(toy, {{{"Black_Hair", toy.value(0, 2)}}, toy.record(0).identity_id})
          .success_probability;
  const double success_after =
      LinkageAttack(after,
                    {{{"Black_Hair", after.value(0, 2)}}, after.record(0).identity_id})
          .success_probability;
  check.Expect(k_before == 1, "k before");
  check.Expect(k_after == 2, "k after");
  check.Expect(success_before == 1.0, "success before");
  check.Expect(success_after == 0.5, "success after");
  return Finish(check, "k " + std::to_string(k_before) + " -> " +
                           std::to_string(k_after) + ", linkage success " +
                           Format("%.2f -> %.2f", success_before, success_after));
}

// 4. Uniform guessing among quasi-identifier matches never beats 1/k.
Outcome InverseKBound() {
  std::mt19937_64 gen(1004);
  Checker check;
  int violations = 0;
  const int cases = 400;
  for (int i = 0; i < cases; ++i) {
    AttributeTable table = RandomBinaryTable(gen, 1 + gen() % 30, 2 + gen() % 5);
    std::vector<std::string> quasi;
    for (const auto& name : table.schema().names()) {
      if (gen() % 2) quasi.push_back(name);
    }
    if (quasi.empty()) quasi.push_back(table.schema().name(0));
    const std::size_t k = KAnonymity(table, quasi);
    const std::size_t target = gen() % table.size();
    AdversaryKnowledge knowledge;
    knowledge.target_identity = table.record(target).identity_id;
    for (const auto& name : quasi) {
      knowledge.known.emplace_back(name, table.value(target, table.schema().IndexOf(name)));
    }
    AttackOutcome out = LinkageAttack(table, knowledge);
    if (out.success_probability > 1.0 / static_cast<double>(k) ||
        out.candidates.size() < k) {
      ++violations;
    }
  }
  check.Expect(violations == 0, std::to_string(violations) + " violations");
  return Finish(check, std::to_string(cases) + " cases, " + std::to_string(violations) +
                           " violations");
}

// 5. Randomized-response flip rates.
Outcome RandomizedResponseRates() {
  Checker check;
  const std::size_t n = 100000;
  std::string detail;
  std::uint64_t stream = 0;
  for (double eps : {0.1, 1.0, std::log(3.0), 5.0}) {
    RandomSource rng = RandomSource(1005).Derive(stream++);
    ValueVector bits(n, 1);
    ValueVector out = RandomizedResponse(bits, eps, rng);
    std::size_t flips = 0;
    for (AttributeValue b : out) flips += b == 0;
    const double rate = static_cast<double>(flips) / n;
    const double p = 1.0 / (1.0 + std::exp(eps));
    const double band = 4.0 * std::sqrt(p * (1.0 - p) / n);
    check.Expect(std::abs(rate - p) <= band, "eps " + std::to_string(eps));
    detail += Format("eps=%.4g: %.4f (expect %.4f) ", eps, rate, p);
  }
  check.Expect(std::abs(1.0 / (1.0 + std::exp(std::log(3.0))) - 0.25) < 1e-15,
               "ln 3 centre");
  return Finish(check, detail);
}

// 6. DeepFool on affine classifiers is exact.
Outcome DeepFoolExactness() {
  std::mt19937_64 gen(1006);
  std::normal_distribution<double> normal(0.0, 1.0);
  Checker check;
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  const int cases = 2000;
  for (int i = 0; i < cases; ++i) {
    const int k = 2 + static_cast<int>(gen() % 7);
    const int d = 1 + static_cast<int>(gen() % 32);
    Eigen::MatrixXd w(k, d);
    Eigen::VectorXd b(k);
    Eigen::VectorXd x(d);
    for (int r = 0; r < k; ++r) {
      for (int c = 0; c < d; ++c) w(r, c) = normal(gen);
      b(r) = normal(gen);
    }
    for (int c = 0; c < d; ++c) x(c) = 2.0 * normal(gen);
    AffineClassifier<double> clf(w, b);
    const Eigen::Index label = clf.Classify(x);
    double analytic = std::numeric_limits<double>::infinity();
    for (int l = 0; l < k; ++l) {
      if (l == label) continue;
      const Eigen::VectorXd diff = (w.row(l) - w.row(label)).transpose();
      analytic = std::min(analytic,
                          std::abs(diff.dot(x) + b(l) - b(label)) / diff.norm());
    }
    DeepFoolResult<double> r = DeepFoolAffine(clf, x, 50, 0.02);
    const double error = std::abs(r.perturbation.norm() - analytic);
    worst = std::max(worst, error);
    check.Expect(error <= 1e-9, "distance");
    check.Expect(clf.Classify(x + 1.02 * r.perturbation) != label, "label flip");
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  check.Expect(seconds < 10.0, "runtime");
  return Finish(check, std::to_string(cases) + " cases, max distance error " +
                           Format("%.2e, %.2f s", worst, seconds));
}

// 7. Universal perturbation on a separable two-Gaussian problem.
Outcome UniversalPerturbationRate() {
  Checker check;
  const auto start = std::chrono::steady_clock::now();
  const int d = 10;
  const int n = 500;
  std::mt19937_64 gen(1007);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd direction = Eigen::VectorXd::Zero(d);
  for (int j = 0; j < d; ++j) direction(j) = normal(gen);
  direction.normalize();
  const double separation = 4.0;
  Eigen::MatrixXd points(n, d);
  Eigen::VectorXi labels(n);
  for (int i = 0; i < n; ++i) {
    labels(i) = i < n / 2 ? 0 : 1;
    const double sign = labels(i) == 0 ? 1.0 : -1.0;
    for (int j = 0; j < d; ++j) points(i, j) = normal(gen);
    points.row(i) += sign * separation * direction.transpose();
  }
  // Closed-form linear discriminant with pooled covariance.
  const Eigen::VectorXd mean0 = points.topRows(n / 2).colwise().mean().transpose();
  const Eigen::VectorXd mean1 = points.bottomRows(n / 2).colwise().mean().transpose();
  Eigen::MatrixXd centered(n, d);
  centered.topRows(n / 2) = points.topRows(n / 2).rowwise() - mean0.transpose();
  centered.bottomRows(n / 2) = points.bottomRows(n / 2).rowwise() - mean1.transpose();
  const Eigen::MatrixXd pooled = centered.transpose() * centered / (n - 2);
  const Eigen::VectorXd w = pooled.ldlt().solve(mean0 - mean1);
  const double bias = -w.dot(mean0 + mean1) / 2.0;
  Eigen::MatrixXd weights = Eigen::MatrixXd::Zero(2, d);
  weights.row(0) = w.transpose();
  AffineClassifier<double> clf(weights, Eigen::Vector2d(bias, 0.0));

  int correct = 0;
  double margin_sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXd x = points.row(i).transpose();
    correct += clf.Classify(x) == labels(i);
    margin_sum += std::abs(w.dot(x) + bias) / w.norm();
  }
  check.Expect(correct == n, "training sample is not separated");
  const double mean_margin = margin_sum / n;

  PerturbationConfig<double> config;
  config.xi = 2.0 * mean_margin;
  config.delta = 0.2;
  config.p_norm = PNorm::kL2;
  RandomSource rng(1007);
  UniversalPerturbation<double> u = ComputeUniversalPerturbation(points, clf, config, rng);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  check.Expect(u.v.norm() <= config.xi + 1e-9, "norm bound");
  check.Expect(u.achieved_fooling_rate >= 0.8, "fooling rate below 0.8");
  check.Expect(seconds < 10.0, "runtime");
  // A shared shift moves both classes' score gap the same way, so at most the
  // larger class can be fooled.
  int class0 = 0;
  for (int i = 0; i < n; ++i) {
    class0 += clf.Classify(Eigen::VectorXd(points.row(i).transpose())) == 0;
  }
  const double largest_share = std::max(class0, n - class0) / static_cast<double>(n);
  return Finish(check, Format("fooling rate %.3f, |v| = %.3f <= xi = %.3f",
                              u.achieved_fooling_rate, u.v.norm(), config.xi) +
                           ", " + std::to_string(u.iterations_used) + " passes" +
                           Format(", two-class ceiling %.3f", largest_share));
}

// 8. Image metric fixtures.
Outcome ImageMetricFixtures() {
  Checker check;
  Image x(64, 64, 3);
  for (int yy = 0; yy < 64; ++yy) {
    for (int xx = 0; xx < 64; ++xx) {
      for (int c = 0; c < 3; ++c) {
        x.set(xx, yy, c, static_cast<std::uint8_t>((xx * 5 + yy * 3 + c * 40) % 256));
      }
    }
  }
  check.Expect(Psnr(x, x).identical, "psnr identical");
  check.Expect(std::abs(Ssim(x, x) - 1.0) <= 1e-6, "ssim identical");
  check.Expect(std::abs(MsSsim(x, x, 4) - 1.0) <= 1e-6, "ms-ssim identical");
  const Image black(64, 64, 1, 0);
  const Image white(64, 64, 1, 255);
  const PsnrValue zero = Psnr(black, white);
  check.Expect(!zero.identical && std::abs(zero.db) <= 1e-6, "psnr 0 dB");
  const double ssim = Ssim(black, white);
  check.Expect(std::abs(ssim - 9.9988e-5) <= 1e-6, "ssim constant pair");
  check.Expect(std::abs(Psnr(Image(1, 1, 1, 100), Image(1, 1, 1, 116)).db -
                        10.0 * std::log10(65025.0 / 256.0)) <= 1e-6,
               "psnr 100 vs 116");
  double previous = std::numeric_limits<double>::infinity();
  std::string trend;
  for (double sigma : {1.0, 5.0, 20.0}) {
    RandomSource rng(1008);
    std::vector<std::uint8_t> pixels = x.pixels();
    for (auto& p : pixels) {
      p = static_cast<std::uint8_t>(
          std::clamp(std::round(p + rng.Gaussian(0.0, sigma)), 0.0, 255.0));
    }
    const double db = Psnr(x, Image(64, 64, 3, std::move(pixels))).db;
    check.Expect(db < previous, "psnr not decreasing");
    previous = db;
    trend += Format("%.2f ", db);
  }
  return Finish(check, Format("ssim(0,255) = %.6e, ", ssim) + "psnr over sigma {1,5,20}: " +
                           trend + "dB");
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

// 9. Seeded CLI runs are reproducible.
Outcome CliDeterminism() {
  Checker check;
  const fs::path dir = fs::temp_directory_path() / "facepriv_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::mt19937_64 gen(1009);
  std::ofstream(dir / "table.json") << SerializeTable(RandomBinaryTable(gen, 80, 8));
  std::ofstream(dir / "config.json") << R"({"t": 0.1, "epsilon": 1.0})";
  std::ofstream(dir / "clf.json")
      << R"({"labels":["a","b","c"],"weights":[[1,0,0],[0,1,0],[0,0,1]],"biases":[0,0,0]})";
  {
    std::ofstream points(dir / "points.csv");
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
      points << normal(gen) << "," << normal(gen) << "," << normal(gen) << "\n";
    }
  }
  auto run = [&](std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    args.insert(args.begin(), "facepriv");
    const int code = RunCli(args, out, err);
    check.Expect(code == 0, "exit code " + std::to_string(code) + ": " + err.str());
    return out.str();
  };
  auto anonymize = [&](const std::string& seed, const std::string& name) {
    const std::string out = (dir / name).string();
    run({"anonymize", "--table", (dir / "table.json").string(), "--config",
         (dir / "config.json").string(), "--seed", seed, "--out", out});
    return ReadFile(out) + ReadFile(out + ".trace.jsonl") + ReadFile(out + ".report.json");
  };
  auto perturb = [&](const std::string& seed) {
    return run({"perturb", "--classifier", (dir / "clf.json").string(), "--points",
                (dir / "points.csv").string(), "--xi", "0.3", "--delta", "0", "--seed",
                seed});
  };
  const std::string a1 = anonymize("7", "a1.json");
  const std::string a2 = anonymize("7", "a2.json");
  const std::string a3 = anonymize("8", "a3.json");
  const std::string p1 = perturb("7");
  const std::string p2 = perturb("7");
  const std::string p3 = perturb("8");
  check.Expect(a1 == a2, "anonymize differs for the same seed");
  check.Expect(a1 != a3, "anonymize ignores the seed");
  check.Expect(p1 == p2, "perturb differs for the same seed");
  check.Expect(p1 != p3, "perturb ignores the seed");
  fs::remove_all(dir);
  return Finish(check, "anonymize and perturb, seeds 7/7/8");
}

// 10. CelebA-format ingestion round trip.
Outcome IngestionRoundTrip() {
  Checker check;
  const int rows = 1000;
  const int attributes = 40;
  std::mt19937_64 gen(1010);
  std::ostringstream attrs;
  std::ostringstream ids;
  std::vector<long> ones(attributes, 0);
  attrs << rows << "\n";
  for (int a = 0; a < attributes; ++a) attrs << (a ? " " : "") << "Attr_" << a;
  attrs << "\n";
  for (int r = 0; r < rows; ++r) {
    char image[16];
    std::snprintf(image, sizeof(image), "%06d.jpg", r + 1);
    attrs << image;
    for (int a = 0; a < attributes; ++a) {
      const bool on = gen() % 3 == 0;
      ones[a] += on;
      attrs << (on ? "  1" : " -1");
    }
    attrs << "\n";
    ids << image << " " << gen() % 300 << "\n";
  }
  std::istringstream attrs_in(attrs.str());
  std::istringstream ids_in(ids.str());
  ParsedAttributes parsed = ParseCelebaAttributes(attrs_in);
  AttributeTable table = BuildTable(parsed.schema, parsed.rows, ParseIdentityMap(ids_in));
  AttributeTable reloaded = DeserializeTable(SerializeTable(table));
  check.Expect(table.size() == static_cast<std::size_t>(rows), "row count");
  check.Expect(reloaded == table, "round trip");
  for (int a = 0; a < attributes; ++a) {
    const DiscreteDistribution p = MarginalDistribution(reloaded, a);
    check.Expect(p.Mass(1) == static_cast<double>(ones[a]) / rows &&
                     p.Mass(0) == static_cast<double>(rows - ones[a]) / rows,
                 "marginal of attribute " + std::to_string(a));
  }
  return Finish(check, std::to_string(rows) + " rows x " + std::to_string(attributes) +
                           " attributes");
}

struct Criterion {
  const char* name;
  double time_limit_seconds;  // 0 = none stated
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace facepriv

int main() {
  using facepriv::Criterion;
  const std::vector<Criterion> criteria{
      {"metric oracle equivalence", 30, facepriv::MetricOracleEquivalence},
      {"EMD correctness", 30, facepriv::EmdCorrectness},
      {"two-record toy", 0, facepriv::ToyReproduction},
      {"1/k bound", 0, facepriv::InverseKBound},
      {"randomized response", 0, facepriv::RandomizedResponseRates},
      {"DeepFool exactness", 10, facepriv::DeepFoolExactness},
      {"universal perturbation", 10, facepriv::UniversalPerturbationRate},
      {"image metric fixtures", 0, facepriv::ImageMetricFixtures},
      {"CLI determinism", 0, facepriv::CliDeterminism},
      {"ingestion round trip", 0, facepriv::IngestionRoundTrip},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    facepriv::Outcome outcome;
    try {
      outcome = criteria[i].run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (criteria[i].time_limit_seconds > 0 && seconds >= criteria[i].time_limit_seconds) {
      outcome.pass = false;
      outcome.detail += "; over time limit";
    }
    failures += outcome.pass ? 0 : 1;
    std::printf("[%s] %2zu. %s (%.2f s): %s\n", outcome.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].name, seconds, outcome.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
