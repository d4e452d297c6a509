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

#include "facepriv/cli.h"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "facepriv/adversarial.h"
#include "facepriv/attribute_table.h"
#include "facepriv/image.h"
#include "facepriv/image_quality.h"
#include "facepriv/linkage_attack.h"
#include "facepriv/ppas.h"
#include "facepriv/privacy_metrics.h"
#include "facepriv/randomization.h"
#include "facepriv/status.h"
#include "json.hpp"

namespace facepriv {
namespace {

using Json = nlohmann::ordered_json;

std::string ReadFile(const std::string& path, const std::string& what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, what + " not found: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteFile(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  out << content;
  if (!out) throw Error(ErrorCode::kIo, "failed writing " + path);
}

nlohmann::json ParseJsonFile(const std::string& path, const std::string& what) {
  std::string text = ReadFile(path, what);
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kFormat, what + " is not valid JSON: " + e.what());
  }
}

AttributeTable LoadTable(const std::string& path) {
  return DeserializeTable(ReadFile(path, "table"));
}

std::uint64_t ResolveSeed(const std::optional<std::uint64_t>& seed) {
  if (seed) return *seed;
  std::random_device device;
  return (static_cast<std::uint64_t>(device()) << 32) | device();
}

Json Provenance(std::optional<std::uint64_t> seed, Json parameters) {
  Json json;
  json["tool"] = "facepriv";
  json["version"] = kToolVersion;
  if (seed) {
    json["seed"] = *seed;
    json["rng"] = RandomSource::kAlgorithm;
  } else {
    json["seed"] = nullptr;
  }
  json["parameters"] = std::move(parameters);
  return json;
}

std::string Dump(const Json& json) { return json.dump(2) + "\n"; }

// --- ingest ------------------------------------------------------------------

struct IngestArgs {
  std::string attrs_path;
  std::string identities_path;
  std::string out_path;
  std::string format = "json";
};

int CmdIngest(const IngestArgs& a, std::ostream& out) {
  std::ifstream attrs(a.attrs_path);
  if (!attrs) throw Error(ErrorCode::kIo, "attribute file not found: " + a.attrs_path);
  std::ifstream ids(a.identities_path);
  if (!ids) {
    throw Error(ErrorCode::kIo, "identity map not found: " + a.identities_path);
  }
  ParsedAttributes parsed;
  try {
    parsed = ParseCelebaAttributes(attrs);
  } catch (const Error& e) {
    throw Error(e.code(), a.attrs_path + ": " + e.what(), e.line());
  }
  IdentityMap identities;
  try {
    identities = ParseIdentityMap(ids);
  } catch (const Error& e) {
    throw Error(e.code(), a.identities_path + ": " + e.what(), e.line());
  }
  AttributeTable table = BuildTable(parsed.schema, parsed.rows, identities);
  WriteFile(a.out_path, SerializeTable(table));

  std::set<std::string> distinct;
  for (const Record& r : table.records()) distinct.insert(r.identity_id);
  Json marginals;
  for (std::size_t i = 0; i < table.schema().size(); ++i) {
    marginals[table.schema().name(i)] =
        table.empty() ? 0.0 : MarginalDistribution(table, i).Mass(1);
  }
  if (a.format == "text") {
    out << "records:    " << table.size() << "\n"
        << "identities: " << distinct.size() << "\n"
        << "attributes: " << table.schema().size() << "\n";
    for (const auto& [name, p] : marginals.items()) {
      out << "  " << std::left << std::setw(24) << name << ' '
          << std::fixed << std::setprecision(4) << p.get<double>() << "\n";
    }
    out.unsetf(std::ios::floatfield);
    return kExitOk;
  }
  Json json;
  json["provenance"] = Provenance(std::nullopt, {{"attrs", a.attrs_path},
                                                 {"identities", a.identities_path},
                                                 {"out", a.out_path}});
  json["records"] = table.size();
  json["identities"] = distinct.size();
  json["attributes"] = table.schema().size();
  json["marginals"] = std::move(marginals);
  out << Dump(json);
  return kExitOk;
}

// --- report ------------------------------------------------------------------

struct ReportArgs {
  std::string table_path;
  std::vector<std::string> quasi;
  std::vector<std::string> sensitive;
  std::string ground = "binary";
  std::string out_path;
  std::string format = "json";
};

void WriteTextReport(const PrivacyReport& report, std::ostream& out) {
  out << "records: " << report.table_size << ", classes: " << report.class_count
      << ", k: " << report.k << "\n";
  for (const SensitiveMeasures& m : report.sensitive) {
    out << "  " << m.attribute << ": l = " << m.l_value << ", t = " << m.t_value
        << "\n";
  }
}

int CmdReport(const ReportArgs& a, std::ostream& out) {
  AttributeTable table = LoadTable(a.table_path);
  const GroundDistance ground = ParseGroundDistance(a.ground);
  PrivacyReport report = MakePrivacyReport(table, a.quasi, a.sensitive, ground);
  if (a.format == "text") {
    WriteTextReport(report, out);
    return kExitOk;
  }
  Json json;
  json["provenance"] = Provenance(
      std::nullopt, {{"table", a.table_path}, {"quasi_ids", a.quasi},
                     {"sensitive", a.sensitive}, {"ground_distance", a.ground}});
  json["report"] = ReportToJson(report);
  if (a.out_path.empty()) {
    out << Dump(json);
  } else {
    WriteFile(a.out_path, Dump(json));
  }
  return kExitOk;
}

// --- anonymize ---------------------------------------------------------------

struct AnonymizeArgs {
  std::string table_path;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_path;
  std::string trace_path;
  std::string report_path;
};

int CmdAnonymize(const AnonymizeArgs& a, std::ostream& out) {
  AttributeTable table = LoadTable(a.table_path);
  nlohmann::json config_json = ParseJsonFile(a.config_path, "config");
  PpasConfig config = PpasConfigFromJson(config_json);
  config.Validate(table.schema());

  std::optional<std::uint64_t> seed = a.seed;
  if (!seed && config_json.contains("seed")) {
    seed = config_json["seed"].get<std::uint64_t>();
  }
  const std::uint64_t resolved = ResolveSeed(seed);

  std::vector<std::string> report_quasi = table.schema().names();
  std::vector<std::string> report_sensitive;
  if (config_json.contains("report")) {
    const auto& r = config_json["report"];
    if (r.contains("quasi_ids")) {
      report_quasi = r["quasi_ids"].get<std::vector<std::string>>();
    }
    if (r.contains("sensitive")) {
      report_sensitive = r["sensitive"].get<std::vector<std::string>>();
    }
  } else if (config.quasi_policy == QuasiPolicy::kFixedQuasiSet) {
    report_quasi = config.quasi_ids;
  }

  PpasResult result = PpasApplyTable(table, config, RandomSource(resolved));

  Json parameters = PpasConfigToJson(config);
  parameters["table"] = a.table_path;
  Json provenance = Provenance(resolved, parameters);

  Json table_json = TableToJson(result.table);
  table_json["provenance"] = provenance;
  WriteFile(a.out_path, Dump(table_json));

  const std::string trace_path =
      a.trace_path.empty() ? a.out_path + ".trace.jsonl" : a.trace_path;
  std::string trace;
  for (const RecordTrace& t : result.traces) trace += TraceToJson(t).dump() + "\n";
  WriteFile(trace_path, trace);

  const std::string report_path =
      a.report_path.empty() ? a.out_path + ".report.json" : a.report_path;
  const GroundDistance ground = config.ground_distance;
  Json reports;
  reports["provenance"] = provenance;
  reports["before"] = ReportToJson(
      MakePrivacyReport(table, report_quasi, report_sensitive, ground));
  reports["after"] = ReportToJson(
      MakePrivacyReport(result.table, report_quasi, report_sensitive, ground));
  WriteFile(report_path, Dump(reports));

  std::size_t flipped = 0;
  std::size_t perturbed = 0;
  for (const RecordTrace& t : result.traces) {
    for (const AttributeDecision& d : t.attributes) {
      flipped += d.kept ? 0 : 1;
      perturbed += d.perturbed ? 1 : 0;
    }
  }
  Json summary;
  summary["provenance"] = provenance;
  summary["table"] = a.out_path;
  summary["trace"] = trace_path;
  summary["report"] = report_path;
  summary["records"] = result.table.size();
  summary["flipped_by_branch"] = flipped;
  summary["flipped_by_perturbation"] = perturbed;
  summary["k_before"] = reports["before"]["k"];
  summary["k_after"] = reports["after"]["k"];
  out << Dump(summary);
  return kExitOk;
}

// --- attack ------------------------------------------------------------------

struct AttackArgs {
  std::string before_path;
  std::string after_path;
  std::string adversary_path;
  std::optional<std::uint64_t> seed;
  std::string out_path;
  std::string format = "json";
};

int CmdAttack(const AttackArgs& a, std::ostream& out) {
  AttributeTable before = LoadTable(a.before_path);
  AttributeTable after = LoadTable(a.after_path);
  nlohmann::json spec_json = ParseJsonFile(a.adversary_path, "adversary spec");
  AdversarySpec spec = AdversarySpecFromJson(spec_json);
  const std::uint64_t seed = ResolveSeed(a.seed);
  AttackSummary summary =
      ReidentificationRate(before, after, spec, RandomSource(seed));
  if (a.format == "text") {
    out << "adversaries: " << summary.n_adversaries << "\n"
        << "mean success before: " << summary.mean_success_before << "\n"
        << "mean success after:  " << summary.mean_success_after << "\n";
    return kExitOk;
  }
  Json json;
  json["provenance"] = Provenance(
      seed, {{"before", a.before_path}, {"after", a.after_path},
             {"adversary", Json::parse(spec_json.dump())}});
  const Json summary_json = AttackSummaryToJson(summary);
  for (const auto& [key, value] : summary_json.items()) {
    json[key] = value;
  }
  if (a.out_path.empty()) {
    out << Dump(json);
  } else {
    WriteFile(a.out_path, Dump(json));
  }
  return kExitOk;
}

// --- perturb -----------------------------------------------------------------

struct PerturbArgs {
  std::string classifier_path;
  std::string points_path;
  double xi = 0.0;
  double delta = 0.2;
  std::string norm = "2";
  std::optional<std::uint64_t> seed;
  int max_iters = 10;
  double overshoot = 0.02;
  std::optional<double> step_cap;
  std::string out_path;
};

int CmdPerturb(const PerturbArgs& a, std::ostream& out) {
  AffineClassifier<double> clf =
      ClassifierFromJson(ParseJsonFile(a.classifier_path, "classifier"));
  std::istringstream points_text(ReadFile(a.points_path, "points file"));
  MatrixX<double> points = ReadPointsCsv(points_text);

  PerturbationConfig<double> config;
  config.xi = a.xi;
  config.delta = a.delta;
  if (a.norm == "2") {
    config.p_norm = PNorm::kL2;
  } else if (a.norm == "inf") {
    config.p_norm = PNorm::kLInf;
  } else {
    throw Error(ErrorCode::kParameter, "norm must be 2 or inf");
  }
  config.max_outer_iters = a.max_iters;
  config.overshoot = a.overshoot;
  config.per_step_cap = a.step_cap;

  const std::uint64_t seed = ResolveSeed(a.seed);
  RandomSource rng(seed);
  UniversalPerturbation<double> result =
      ComputeUniversalPerturbation(points, clf, config, rng);
  const double norm = LpNorm(result.v, config.p_norm);
  if (!(norm <= config.xi + 1e-9)) {
    throw Error(ErrorCode::kDomain, "perturbation norm exceeds xi");
  }

  Json parameters;
  parameters["classifier"] = a.classifier_path;
  parameters["points"] = a.points_path;
  parameters["xi"] = a.xi;
  parameters["delta"] = a.delta;
  parameters["norm"] = a.norm;
  parameters["max_iters"] = a.max_iters;
  parameters["overshoot"] = a.overshoot;
  parameters["step_cap"] = a.step_cap ? Json(*a.step_cap) : Json(nullptr);
  Json json;
  json["provenance"] = Provenance(seed, parameters);
  json["v"] = std::vector<double>(result.v.begin(), result.v.end());
  json["norm"] = norm;
  json["achieved_fooling_rate"] = result.achieved_fooling_rate;
  json["iterations_used"] = result.iterations_used;
  if (a.out_path.empty()) {
    out << Dump(json);
  } else {
    WriteFile(a.out_path, Dump(json));
  }
  return kExitOk;
}

// --- randomize ---------------------------------------------------------------

struct RandomizeArgs {
  std::string features_path;
  double gamma = 0.0;
  double sigma = 0.0;
  std::optional<std::uint64_t> seed;
  std::string out_path;
};

int CmdRandomize(const RandomizeArgs& a, std::ostream& out) {
  std::istringstream text(ReadFile(a.features_path, "features file"));
  MatrixX<double> features = ReadPointsCsv(text);
  const std::uint64_t seed = ResolveSeed(a.seed);
  RandomSource rng(seed);
  std::ostringstream csv;
  csv << std::setprecision(17);
  for (Eigen::Index i = 0; i < features.rows(); ++i) {
    RandomSource row_rng = rng.Derive(static_cast<std::uint64_t>(i));
    Eigen::VectorXd row = GaussianFeatureRandomize(
        features.row(i).transpose(), a.gamma, a.sigma, row_rng);
    for (Eigen::Index j = 0; j < row.size(); ++j) {
      csv << (j ? "," : "") << row(j);
    }
    csv << "\n";
  }
  WriteFile(a.out_path, csv.str());
  Json json;
  json["provenance"] = Provenance(
      seed, {{"features", a.features_path}, {"gamma", a.gamma}, {"sigma", a.sigma}});
  json["rows"] = features.rows();
  json["out"] = a.out_path;
  out << Dump(json);
  return kExitOk;
}

// --- img ---------------------------------------------------------------------

struct ImgArgs {
  std::string in_path;
  std::string out_path;
  std::string method;
  double sigma = 1.0;
  int kernel = 3;
  int block = 8;
  std::vector<int> rect;
  std::vector<int> color{0};
  std::string ref_path;
  std::string test_path;
  SsimParams ssim;
  int levels = 5;
  std::optional<std::uint64_t> seed;
};

int CmdImgObfuscate(const ImgArgs& a, std::ostream& out) {
  Image image = ReadPnmFile(a.in_path);
  Obfuscation method;
  Json parameters{{"in", a.in_path}, {"out", a.out_path}, {"method", a.method}};
  if (a.method == "blur") {
    method = Blur{a.sigma, a.kernel};
    parameters["sigma"] = a.sigma;
    parameters["kernel"] = a.kernel;
  } else if (a.method == "pixelate") {
    method = Pixelate{a.block};
    parameters["block"] = a.block;
  } else if (a.method == "mask") {
    if (a.rect.size() != 4) {
      throw Error(ErrorCode::kParameter, "--rect needs x,y,width,height");
    }
    Mask mask;
    mask.rect = Rect{a.rect[0], a.rect[1], a.rect[2], a.rect[3]};
    mask.color.clear();
    for (int c : a.color) {
      if (c < 0 || c > 255) throw Error(ErrorCode::kParameter, "color outside [0, 255]");
      mask.color.push_back(static_cast<std::uint8_t>(c));
    }
    method = mask;
    parameters["rect"] = a.rect;
    parameters["color"] = a.color;
  } else {
    throw Error(ErrorCode::kParameter,
                "method must be blur, pixelate or mask");
  }
  WritePnmFile(Obfuscate(image, method), a.out_path);
  Json json;
  json["provenance"] = Provenance(std::nullopt, parameters);
  json["out"] = a.out_path;
  out << Dump(json);
  return kExitOk;
}

int CmdImgQuality(const ImgArgs& a, std::ostream& out, std::ostream& err) {
  Image reference = ReadPnmFile(a.ref_path);
  Image test = ReadPnmFile(a.test_path);
  PsnrValue psnr = Psnr(reference, test);
  Json json;
  json["psnr"] = psnr.identical ? Json("identical") : Json(psnr.db);
  json["ssim"] = Ssim(reference, test, a.ssim);
  try {
    json["ms_ssim"] = MsSsim(reference, test, a.levels, {}, a.ssim);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kLevel) throw;
    err << "warning: " << e.what() << "\n";
    json["ms_ssim"] = nullptr;
  }
  out << json.dump() << "\n";
  return kExitOk;
}

int CmdImgSynth(const ImgArgs& a, std::ostream& out) {
  Image image = ReadPnmFile(a.in_path);
  const std::uint64_t seed = ResolveSeed(a.seed);
  RandomSource rng(seed);
  Image synthesized(image.width(), image.height(), image.channels(),
                    SynthesizeNoisySample(image.pixels(), a.sigma, rng));
  WritePnmFile(synthesized, a.out_path);
  Json json;
  json["provenance"] = Provenance(
      seed, {{"in", a.in_path}, {"out", a.out_path}, {"sigma", a.sigma}});
  json["out"] = a.out_path;
  out << Dump(json);
  return kExitOk;
}

constexpr const char* kAnonymizeFooter = R"(Config file keys:
  t                closeness threshold: an attribute is kept while the EMD
                   between its class distribution and the reference
                   distribution is <= t, and negated otherwise
  epsilon          randomized-response budget per attribute bit (> 0, or
                   "inf" for no perturbation); keep probability is
                   e^eps / (1 + e^eps)
  quasi_policy     all-other-attributes | fixed-quasi | global-vs-reference
  quasi_ids        quasi-identifiers for fixed-quasi
  reference_dists  {"Attr": [p0, p1]} external reference distributions
  update_order     sequential (default) | simultaneous
  seed             used when --seed is absent
  report           {"quasi_ids": [...], "sensitive": [...]} for the
                   before/after privacy reports)";

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Privacy metrics, attribute anonymization, linkage attacks, "
               "universal perturbations and image obfuscation."};
  app.name("facepriv");
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  IngestArgs ingest_args;
  auto* ingest = app.add_subcommand(
      "ingest", "Parse a CelebA-format attribute list plus identity map into "
                "a canonical table JSON");
  ingest->add_option("--attrs", ingest_args.attrs_path, "Attribute list file")
      ->required();
  ingest->add_option("--identities", ingest_args.identities_path,
                     "Identity file: 'image_id identity_id' per line")
      ->required();
  ingest->add_option("--out", ingest_args.out_path, "Output table JSON")
      ->required();
  ingest->add_option("--format", ingest_args.format, "json or text")
      ->check(CLI::IsMember({"json", "text"}));

  ReportArgs report_args;
  auto* report = app.add_subcommand(
      "report", "k-anonymity, entropy l-diversity and t-closeness report");
  report->add_option("--table", report_args.table_path, "Table JSON")->required();
  report->add_option("--quasi", report_args.quasi,
                     "Quasi-identifier attributes (comma-separated)")
      ->required()
      ->delimiter(',');
  report->add_option("--sensitive", report_args.sensitive,
                     "Sensitive attributes (comma-separated)")
      ->delimiter(',');
  report->add_option("--ground", report_args.ground,
                     "EMD ground distance: binary, uniform or ordinal")
      ->check(CLI::IsMember({"binary", "uniform", "ordinal"}));
  report->add_option("--out", report_args.out_path, "Write JSON here instead of stdout");
  report->add_option("--format", report_args.format, "json or text")
      ->check(CLI::IsMember({"json", "text"}));

  AnonymizeArgs anonymize_args;
  auto* anonymize = app.add_subcommand(
      "anonymize", "Privacy-preserving attribute selection over a table");
  anonymize->add_option("--table", anonymize_args.table_path, "Table JSON")->required();
  anonymize->add_option("--config", anonymize_args.config_path, "Config JSON")->required();
  anonymize->add_option("--seed", anonymize_args.seed, "Seed for randomized response");
  anonymize->add_option("--out", anonymize_args.out_path, "Output table JSON")->required();
  anonymize->add_option("--trace", anonymize_args.trace_path,
                        "Per-record decision trace (JSON lines); default <out>.trace.jsonl");
  anonymize->add_option("--report", anonymize_args.report_path,
                        "Before/after privacy reports; default <out>.report.json");
  anonymize->footer(kAnonymizeFooter);

  AttackArgs attack_args;
  auto* attack = app.add_subcommand(
      "attack", "Simulated linkage attacks on a table before and after obfuscation");
  attack->add_option("--before", attack_args.before_path, "Original table JSON")->required();
  attack->add_option("--after", attack_args.after_path, "Obfuscated table JSON")->required();
  attack->add_option("--adversary", attack_args.adversary_path,
                     "Adversary spec JSON: subsets | subset_size, n_adversaries, "
                     "exhaustive, knowledge (original|observed)")
      ->required();
  attack->add_option("--seed", attack_args.seed, "Seed for adversary sampling");
  attack->add_option("--out", attack_args.out_path, "Write JSON here instead of stdout");
  attack->add_option("--format", attack_args.format, "json or text")
      ->check(CLI::IsMember({"json", "text"}));

  PerturbArgs perturb_args;
  auto* perturb = app.add_subcommand(
      "perturb", "Universal adversarial perturbation for an affine classifier");
  perturb->add_option("--classifier", perturb_args.classifier_path,
                      "Classifier JSON {labels, weights (K x d), biases (K)}")
      ->required();
  perturb->add_option("--points", perturb_args.points_path,
                      "CSV sample, one d-dimensional point per row")
      ->required();
  perturb->add_option("--xi", perturb_args.xi,
                      "xi: radius of the p-norm ball the perturbation must stay in")
      ->required();
  perturb->add_option("--delta", perturb_args.delta,
                      "delta: tolerated fraction of points left unfooled; the "
                      "target fooling rate is 1 - delta");
  perturb->add_option("--norm", perturb_args.norm, "p-norm: 2 or inf")
      ->check(CLI::IsMember({"2", "inf"}));
  perturb->add_option("--seed", perturb_args.seed, "Seed for the point order");
  perturb->add_option("--max-iters", perturb_args.max_iters, "Maximum passes over the points");
  perturb->add_option("--overshoot", perturb_args.overshoot,
                      "DeepFool overshoot eta used to cross the boundary");
  perturb->add_option("--step-cap", perturb_args.step_cap,
                      "Optional l2 cap on each per-point update");
  perturb->add_option("--out", perturb_args.out_path, "Write JSON here instead of stdout");

  RandomizeArgs randomize_args;
  auto* randomize = app.add_subcommand(
      "randomize", "Add Gaussian noise to a random fraction of each feature row");
  randomize->add_option("--features", randomize_args.features_path, "Feature CSV")->required();
  randomize->add_option("--gamma", randomize_args.gamma,
                        "gamma: fraction of features per row that receive noise")
      ->required();
  randomize->add_option("--sigma", randomize_args.sigma,
                        "sigma: standard deviation of the N(0, sigma) noise")
      ->required();
  randomize->add_option("--seed", randomize_args.seed, "Seed");
  randomize->add_option("--out", randomize_args.out_path, "Output CSV")->required();

  ImgArgs img_args;
  auto* img = app.add_subcommand("img", "Image obfuscation and quality metrics");
  img->require_subcommand(1);
  auto* obfuscate = img->add_subcommand("obfuscate", "Blur, pixelate or mask an image");
  obfuscate->add_option("--in", img_args.in_path, "Input PPM/PGM")->required();
  obfuscate->add_option("--out", img_args.out_path, "Output PPM/PGM")->required();
  obfuscate->add_option("--method", img_args.method, "blur, pixelate or mask")->required();
  obfuscate->add_option("--sigma", img_args.sigma, "Gaussian blur sigma");
  obfuscate->add_option("--kernel", img_args.kernel, "Odd blur kernel size");
  obfuscate->add_option("--block", img_args.block, "Pixelation block size");
  obfuscate->add_option("--rect", img_args.rect, "Mask rectangle x,y,width,height")
      ->delimiter(',');
  obfuscate->add_option("--color", img_args.color, "Mask color (1 or 3 values)")
      ->delimiter(',');
  auto* quality = img->add_subcommand("quality", "PSNR, SSIM and MS-SSIM");
  quality->add_option("--ref", img_args.ref_path, "Reference PPM/PGM")->required();
  quality->add_option("--test", img_args.test_path, "Test PPM/PGM")->required();
  quality->add_option("--window", img_args.ssim.window, "SSIM window side");
  quality->add_option("--k1", img_args.ssim.k1, "SSIM k1");
  quality->add_option("--k2", img_args.ssim.k2, "SSIM k2");
  quality->add_option("--levels", img_args.levels, "MS-SSIM scales");
  auto* synth = img->add_subcommand(
      "synth", "Synthesize a new sample: 255 - x plus N(0, sigma) noise");
  synth->add_option("--in", img_args.in_path, "Input PPM/PGM")->required();
  synth->add_option("--out", img_args.out_path, "Output PPM/PGM")->required();
  synth->add_option("--sigma", img_args.sigma, "sigma: noise standard deviation");
  synth->add_option("--seed", img_args.seed, "Seed");

  std::vector<const char*> argv;
  for (const std::string& arg : args) argv.push_back(arg.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << "facepriv " << kToolVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }

  try {
    if (*ingest) return CmdIngest(ingest_args, out);
    if (*report) return CmdReport(report_args, out);
    if (*anonymize) return CmdAnonymize(anonymize_args, out);
    if (*attack) return CmdAttack(attack_args, out);
    if (*perturb) return CmdPerturb(perturb_args, out);
    if (*randomize) return CmdRandomize(randomize_args, out);
    if (*obfuscate) return CmdImgObfuscate(img_args, out);
    if (*quality) return CmdImgQuality(img_args, out, err);
    if (*synth) return CmdImgSynth(img_args, out);
  } catch (const Error& e) {
    err << "error: " << ErrorCodeName(e.code()) << ": " << e.what() << "\n";
    return e.code() == ErrorCode::kIo ? kExitIo : kExitInvalid;
  } catch (const nlohmann::json::exception& e) {
    err << "error: malformed JSON input: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}

}  // namespace facepriv
