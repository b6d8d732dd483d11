// Copyright 2026 The comfort_avoid Authors
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

#include "comfort_avoid/comfort_model.hpp"

#include "comfort_avoid/error.hpp"

#include <Eigen/Cholesky>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

namespace comfort_avoid
{

namespace
{

constexpr std::array<double, kNumClasses> kUtilities{1.0, 0.5, 0.0};
constexpr std::array<const char *, FeatureVector::kDim> kFeatureNames{
  "v_long", "a_lat", "yaw_rate", "a_lat_rate", "yaw_accel"};

Vector5d to_eigen(const FeatureVector & x)
{
  const auto a = x.to_array();
  return Vector5d(a.data());
}

template <std::size_t N>
int argmin(const std::array<double, N> & v)
{
  int best = 0;
  for (int k = 1; k < static_cast<int>(N); ++k) {
    if (v[k] < v[best]) {
      best = k;
    }
  }
  return best;
}

std::array<double, kNumClasses> softmax(const std::array<double, kNumClasses> & logits)
{
  const double top = *std::max_element(logits.begin(), logits.end());
  std::array<double, kNumClasses> p{};
  double sum = 0.0;
  for (int k = 0; k < kNumClasses; ++k) {
    p[k] = std::exp(logits[k] - top);
    sum += p[k];
  }
  for (auto & v : p) {
    v /= sum;
  }
  return p;
}

bool uses_covariance(ClassifierKind kind)
{
  return kind == ClassifierKind::kMahalanobis || kind == ClassifierKind::kBayesMinRisk;
}

// Squared Mahalanobis distance and log-determinant of a covariance.
struct GaussianTerms
{
  double d2;
  double log_det;
};

GaussianTerms gaussian_terms(const Matrix5d & cov, const Vector5d & diff)
{
  const Eigen::LLT<Matrix5d> llt(cov);
  if (llt.info() != Eigen::Success) {
    throw RuntimeError("class covariance is not positive definite");
  }
  const Vector5d w = llt.matrixL().solve(diff);
  const double log_det = 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
  return {w.squaredNorm(), log_det};
}

// Log of prior times Gaussian likelihood, up to a class-independent constant.
std::array<double, kNumClasses> log_joint(const ClassifierModel & model, const Vector5d & z)
{
  std::array<double, kNumClasses> lj{};
  for (int k = 0; k < kNumClasses; ++k) {
    const auto g = gaussian_terms(model.covariances[k], z - model.means[k]);
    const double log_prior =
      model.priors[k] > 0.0 ? std::log(model.priors[k]) : -std::numeric_limits<double>::infinity();
    lj[k] = log_prior - 0.5 * g.d2 - 0.5 * g.log_det;
  }
  return lj;
}

std::array<double, kNumClasses> squared_distances(const ClassifierModel & model, const Vector5d & z)
{
  std::array<double, kNumClasses> d{};
  for (int k = 0; k < kNumClasses; ++k) {
    switch (model.kind) {
      case ClassifierKind::kTemplateMatching: {
        double best = std::numeric_limits<double>::infinity();
        for (const auto & t : model.templates[k]) {
          best = std::min(best, (z - t).squaredNorm());
        }
        d[k] = best;
        break;
      }
      case ClassifierKind::kClassCenterEuclidean:
        d[k] = (z - model.means[k]).squaredNorm();
        break;
      case ClassifierKind::kMahalanobis:
        d[k] = gaussian_terms(model.covariances[k], z - model.means[k]).d2;
        break;
      case ClassifierKind::kBayesMinRisk:
        throw RuntimeError("squared_distances is undefined for bayes_min_risk");
    }
  }
  return d;
}

std::array<double, kNumClasses> bayes_posteriors(const ClassifierModel & model, const Vector5d & z, double tau)
{
  auto lj = log_joint(model, z);
  for (auto & v : lj) {
    v /= tau;
  }
  return softmax(lj);
}

}  // namespace

// ---------------------------------------------------------------------------

std::string_view to_string(ComfortClass c)
{
  switch (c) {
    case ComfortClass::kGood: return "good";
    case ComfortClass::kNormal: return "normal";
    case ComfortClass::kPoor: return "poor";
  }
  return "?";
}

ComfortClass comfort_class_from_string(std::string_view s)
{
  for (auto c : kAllClasses) {
    if (to_string(c) == s) {
      return c;
    }
  }
  throw ValidationError("unknown comfort class '" + std::string(s) + "'", "label");
}

std::string_view to_string(ClassifierKind kind)
{
  switch (kind) {
    case ClassifierKind::kTemplateMatching: return "template_matching";
    case ClassifierKind::kClassCenterEuclidean: return "class_center_euclidean";
    case ClassifierKind::kMahalanobis: return "mahalanobis";
    case ClassifierKind::kBayesMinRisk: return "bayes_min_risk";
  }
  return "?";
}

ClassifierKind classifier_kind_from_string(std::string_view s)
{
  for (auto k : kAllClassifierKinds) {
    if (to_string(k) == s) {
      return k;
    }
  }
  throw ValidationError("unknown classifier kind '" + std::string(s) + "'", "classifier.kind");
}

void QuestionnaireResponse::validate() const
{
  for (double v : item_scores) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw ValidationError("item scores must lie in [0, 1]", "response.item_scores");
    }
  }
}

void AhpWeights::validate() const
{
  double sum = 0.0;
  for (double v : w) {
    if (!(v >= 0.0)) {
      throw ValidationError("weights must be non-negative", "weights");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw ValidationError("weights must sum to 1", "weights");
  }
}

double random_index(int n)
{
  static constexpr std::array<double, 9> kRandomIndex{0.0, 0.0, 0.58, 0.90, 1.12, 1.24, 1.32, 1.41, 1.45};
  if (n < 1 || n > 9) {
    throw ValidationError("random index is tabulated for n in [1, 9]", "n");
  }
  return kRandomIndex[static_cast<std::size_t>(n - 1)];
}

AhpResult ahp_weights(const Eigen::MatrixXd & m)
{
  const auto n = m.rows();
  if (m.cols() != n || n < 2 || n > 9) {
    throw ValidationError("comparison matrix must be square with 2 <= n <= 9", "comparison");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double a = m(i, j);
      if (!(a > 0.0) || !std::isfinite(a)) {
        throw ValidationError("entries must be finite and positive", "comparison");
      }
      if (std::abs(m(j, i) - 1.0 / a) > 1e-9 * std::max(1.0, 1.0 / a)) {
        throw ValidationError("matrix is not reciprocal", "comparison");
      }
    }
  }

  constexpr int kMaxIter = 10000;
  constexpr double kTol = 1e-10;
  Eigen::VectorXd w = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
  AhpResult result;
  for (int it = 1; it <= kMaxIter; ++it) {
    Eigen::VectorXd next = m * w;
    next /= next.sum();
    const double change = (next - w).cwiseAbs().maxCoeff();
    w = next;
    if (change <= kTol * w.cwiseAbs().maxCoeff()) {
      result.iterations = it;
      break;
    }
  }
  if (result.iterations == 0) {
    throw RuntimeError("AHP power iteration did not converge in 10000 steps");
  }

  const double nd = static_cast<double>(n);
  result.weights = w;
  result.lambda_max = (m * w).sum();  // w sums to 1
  result.ci = (result.lambda_max - nd) / (nd - 1.0);
  const double ri = random_index(static_cast<int>(n));
  result.cr = ri > 0.0 ? result.ci / ri : 0.0;
  return result;
}

double questionnaire_score(const QuestionnaireResponse & response, const AhpWeights & weights)
{
  response.validate();
  weights.validate();
  double s = 0.0;
  for (int i = 0; i < kQuestionnaireItems; ++i) {
    s += weights.w[i] * response.item_scores[i];
  }
  return s;
}

void ClassThresholds::validate(const std::string & path) const
{
  if (!(t_poor >= 0.0 && t_poor < t_good && t_good <= 1.0)) {
    throw ValidationError("thresholds must satisfy 0 <= t_poor < t_good <= 1", path);
  }
}

ComfortClass score_to_class(double score, const ClassThresholds & thresholds)
{
  thresholds.validate();
  if (score < thresholds.t_poor) {
    return ComfortClass::kPoor;
  }
  if (score >= thresholds.t_good) {
    return ComfortClass::kGood;
  }
  return ComfortClass::kNormal;
}

// ---------------------------------------------------------------------------

void validate_training_set(const TrainingSet & data)
{
  std::array<int, kNumClasses> counts{};
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (!data[i].x.is_finite()) {
      throw ValidationError("non-finite feature in sample " + std::to_string(i), "data");
    }
    ++counts[static_cast<std::size_t>(index_of(data[i].label))];
  }
  for (auto c : kAllClasses) {
    if (counts[static_cast<std::size_t>(index_of(c))] < 2) {
      throw ValidationError(
        "class '" + std::string(to_string(c)) + "' needs at least 2 samples", "data");
    }
  }
}

Vector5d Standardization::apply(const FeatureVector & x) const
{
  return ((to_eigen(x) - mean).array() / scale.array()).matrix();
}

ClassifierModel train(const TrainingSet & data, ClassifierKind kind, const TrainOptions & options)
{
  validate_training_set(data);
  if (options.regularization && !(*options.regularization >= 0.0)) {
    throw ValidationError("must be non-negative", "options.regularization");
  }
  if (!(options.temperature > 0.0)) {
    throw ValidationError("must be positive", "options.temperature");
  }

  ClassifierModel model;
  model.kind = kind;
  model.temperature = options.temperature;

  const double n = static_cast<double>(data.size());
  Vector5d mean = Vector5d::Zero();
  for (const auto & s : data) {
    mean += to_eigen(s.x);
  }
  mean /= n;
  Vector5d var = Vector5d::Zero();
  for (const auto & s : data) {
    var += (to_eigen(s.x) - mean).cwiseAbs2();
  }
  var /= n;
  model.standardization.mean = mean;
  for (int i = 0; i < 5; ++i) {
    const double sd = std::sqrt(var(i));
    model.standardization.scale(i) = sd > 0.0 ? sd : 1.0;
  }

  std::array<std::vector<Vector5d>, kNumClasses> members;
  for (const auto & s : data) {
    members[static_cast<std::size_t>(index_of(s.label))].push_back(model.standardization.apply(s.x));
  }

  for (int k = 0; k < kNumClasses; ++k) {
    const auto & pts = members[k];
    Vector5d mu = Vector5d::Zero();
    for (const auto & p : pts) {
      mu += p;
    }
    mu /= static_cast<double>(pts.size());
    model.means[k] = mu;
    model.covariances[k] = Matrix5d::Identity();

    if (uses_covariance(kind)) {
      Matrix5d cov = Matrix5d::Zero();
      for (const auto & p : pts) {
        cov += (p - mu) * (p - mu).transpose();
      }
      cov /= static_cast<double>(pts.size() - 1);
      const double lambda = options.regularization.value_or(1e-6 * cov.trace() / 5.0);
      cov.diagonal().array() += lambda;
      const Eigen::LLT<Matrix5d> llt(cov);
      if (llt.info() != Eigen::Success) {
        throw RuntimeError(
          "covariance of class '" + std::string(to_string(kAllClasses[k])) +
          "' is not positive definite; increase the regularization");
      }
      model.covariances[k] = cov;
    }
    if (kind == ClassifierKind::kTemplateMatching) {
      model.templates[k] = pts;
    }
  }

  if (kind == ClassifierKind::kBayesMinRisk) {
    if (options.priors) {
      double sum = 0.0;
      for (double p : *options.priors) {
        if (!(p >= 0.0)) {
          throw ValidationError("priors must be non-negative", "options.priors");
        }
        sum += p;
      }
      if (std::abs(sum - 1.0) > 1e-9) {
        throw ValidationError("priors must sum to 1", "options.priors");
      }
      model.priors = *options.priors;
    } else {
      for (int k = 0; k < kNumClasses; ++k) {
        model.priors[k] = static_cast<double>(members[k].size()) / n;
      }
    }
    if (options.risk) {
      const Matrix3d & r = *options.risk;
      if ((r.array() < 0.0).any() || r.diagonal().cwiseAbs().maxCoeff() != 0.0) {
        throw ValidationError("risk must be non-negative with a zero diagonal", "options.risk");
      }
      model.risk = r;
    }
  }
  return model;
}

std::array<double, kNumClasses> discriminants(const ClassifierModel & model, const FeatureVector & x)
{
  const Vector5d z = model.standardization.apply(x);
  if (model.kind != ClassifierKind::kBayesMinRisk) {
    return squared_distances(model, z);
  }
  const auto post = bayes_posteriors(model, z, 1.0);
  std::array<double, kNumClasses> risk{};
  for (int decided = 0; decided < kNumClasses; ++decided) {
    for (int truth = 0; truth < kNumClasses; ++truth) {
      risk[decided] += model.risk(decided, truth) * post[truth];
    }
  }
  return risk;
}

std::array<double, kNumClasses> class_probabilities(const ClassifierModel & model, const FeatureVector & x)
{
  const Vector5d z = model.standardization.apply(x);
  const double tau = model.temperature;
  if (model.kind == ClassifierKind::kBayesMinRisk) {
    return bayes_posteriors(model, z, tau);
  }
  auto d = squared_distances(model, z);
  for (auto & v : d) {
    v = -v / tau;
  }
  return softmax(d);
}

ComfortClass classify(const ClassifierModel & model, const FeatureVector & x)
{
  return kAllClasses[static_cast<std::size_t>(argmin(discriminants(model, x)))];
}

double confidence_score(const ClassifierModel & model, const FeatureVector & x)
{
  const auto p = class_probabilities(model, x);
  double e = 0.0;
  for (int k = 0; k < kNumClasses; ++k) {
    e += kUtilities[k] * p[k];
  }
  return std::clamp(e, 0.0, 1.0);
}

AccuracyReport evaluate_accuracy(const ClassifierModel & model, const TrainingSet & test)
{
  if (test.empty()) {
    throw ValidationError("test set is empty", "test");
  }
  AccuracyReport report;
  int correct = 0;
  for (const auto & s : test) {
    const auto predicted = classify(model, s.x);
    ++report.confusion[static_cast<std::size_t>(index_of(s.label))][static_cast<std::size_t>(index_of(predicted))];
    correct += predicted == s.label ? 1 : 0;
  }
  report.total = static_cast<int>(test.size());
  report.accuracy = static_cast<double>(correct) / report.total;
  return report;
}

FeatureVector comfort_input(const FeatureVector & x)
{
  return {x.v_long, std::abs(x.a_lat), std::abs(x.yaw_rate), std::abs(x.a_lat_rate), std::abs(x.yaw_accel)};
}

// ---------------------------------------------------------------------------

SynthConfig SynthConfig::with_separation(double separation, std::uint64_t seed, int n_per_class)
{
  if (!(separation > 0.0)) {
    throw ValidationError("must be positive", "synth.separation");
  }
  SynthConfig cfg;
  cfg.seed = seed;
  cfg.n_per_class = n_per_class;
  Vector5d sd;
  for (int i = 0; i < 5; ++i) {
    double gap = std::numeric_limits<double>::infinity();
    for (int k = 0; k + 1 < kNumClasses; ++k) {
      const double g = std::abs(to_eigen(cfg.means[k + 1])(i) - to_eigen(cfg.means[k])(i));
      if (g > 0.0) {
        gap = std::min(gap, g);
      }
    }
    sd(i) = std::isfinite(gap) ? gap / separation : 1.0;
  }
  for (auto & c : cfg.covariances) {
    c = sd.cwiseAbs2().asDiagonal();
  }
  return cfg;
}

void SynthConfig::validate(const std::string & path) const
{
  if (n_per_class < 2) {
    throw ValidationError("at least 2 samples per class are required", path + ".n_per_class");
  }
  if (!(label_noise >= 0.0 && label_noise < 0.5)) {
    throw ValidationError("must lie in [0, 0.5)", path + ".label_noise");
  }
  for (int k = 0; k < kNumClasses; ++k) {
    const std::string cpath = path + ".covariances[" + std::to_string(k) + "]";
    const Matrix5d & c = covariances[k];
    if (!c.allFinite() || (c - c.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
      throw ValidationError("covariance must be finite and symmetric", cpath);
    }
    const Eigen::LLT<Matrix5d> llt(c);
    if (llt.info() != Eigen::Success) {
      throw ValidationError("covariance must be positive definite", cpath);
    }
    if (!means[k].is_finite()) {
      throw ValidationError("means must be finite", path + ".means[" + std::to_string(k) + "]");
    }
  }
}

TrainingSet synth_dataset(const SynthConfig & config)
{
  config.validate();
  std::mt19937_64 rng(config.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);

  TrainingSet out;
  out.reserve(static_cast<std::size_t>(config.n_per_class) * kNumClasses);
  for (int k = 0; k < kNumClasses; ++k) {
    const Matrix5d l = config.covariances[k].llt().matrixL();
    const Vector5d mu = to_eigen(config.means[k]);
    for (int i = 0; i < config.n_per_class; ++i) {
      Vector5d e;
      for (int j = 0; j < 5; ++j) {
        e(j) = normal(rng);
      }
      const Vector5d v = mu + l * e;
      Sample s;
      s.x = FeatureVector{v(0), v(1), v(2), v(3), v(4)};
      s.label = kAllClasses[static_cast<std::size_t>(k)];
      if (config.label_noise > 0.0 && uniform(rng) < config.label_noise) {
        const int shift = uniform(rng) < 0.5 ? 1 : 2;
        s.label = kAllClasses[static_cast<std::size_t>((k + shift) % kNumClasses)];
      }
      out.push_back(s);
    }
  }
  return out;
}

TrainingSet read_dataset_csv(const std::string & path, const ClassThresholds & thresholds)
{
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("cannot open dataset '" + path + "'", "data");
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw ValidationError("dataset is empty", path);
  }
  if (!line.empty() && line.back() == '\r') {
    line.pop_back();
  }
  const std::string prefix = "v_long,a_lat,yaw_rate,a_lat_rate,yaw_accel,";
  bool scored = false;
  if (line == prefix + "label") {
    scored = false;
  } else if (line == prefix + "score") {
    scored = true;
  } else {
    throw ValidationError("unexpected header '" + line + "'", path);
  }

  TrainingSet data;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty()) {
      continue;
    }
    std::stringstream ss(line);
    std::array<double, 5> v{};
    std::string cell;
    const std::string where = path + ":" + std::to_string(line_no);
    for (int i = 0; i < 5; ++i) {
      if (!std::getline(ss, cell, ',')) {
        throw ValidationError("missing column " + std::string(kFeatureNames[i]), where);
      }
      try {
        std::size_t used = 0;
        v[i] = std::stod(cell, &used);
        if (used != cell.size()) {
          throw std::invalid_argument(cell);
        }
      } catch (const std::exception &) {
        throw ValidationError("bad number '" + cell + "'", where);
      }
    }
    if (!std::getline(ss, cell, ',')) {
      throw ValidationError("missing label", where);
    }
    Sample s;
    s.x = FeatureVector::from_array(v);
    if (scored) {
      s.label = score_to_class(std::stod(cell), thresholds);
    } else {
      try {
        s.label = comfort_class_from_string(cell);
      } catch (const ValidationError & e) {
        throw ValidationError(e.what(), where);
      }
    }
    data.push_back(s);
  }
  return data;
}

void write_dataset_csv(const std::string & path, const TrainingSet & data)
{
  std::ofstream out(path);
  if (!out) {
    throw RuntimeError("cannot write dataset '" + path + "'");
  }
  out << "v_long,a_lat,yaw_rate,a_lat_rate,yaw_accel,label\n";
  out.precision(17);
  for (const auto & s : data) {
    const auto a = s.x.to_array();
    for (double v : a) {
      out << v << ',';
    }
    out << to_string(s.label) << '\n';
  }
}

// ---------------------------------------------------------------------------
// Persistence: a JSON document. nlohmann/json prints doubles in shortest
// round-trip form, so reloaded parameters are bit-identical.

namespace
{

using nlohmann::json;

json vec_to_json(const Vector5d & v)
{
  return json(std::vector<double>(v.data(), v.data() + v.size()));
}

Vector5d vec_from_json(const json & j)
{
  const auto v = j.get<std::vector<double>>();
  if (v.size() != 5) {
    throw ValidationError("expected 5 components", "model");
  }
  return Vector5d(v.data());
}

template <typename Matrix>
json mat_to_json(const Matrix & m)
{
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    std::vector<double> row(static_cast<std::size_t>(m.cols()));
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row[static_cast<std::size_t>(j)] = m(i, j);
    }
    rows.push_back(row);
  }
  return rows;
}

template <typename Matrix>
Matrix mat_from_json(const json & j)
{
  Matrix m;
  if (j.size() != static_cast<std::size_t>(m.rows())) {
    throw ValidationError("matrix has wrong row count", "model");
  }
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const auto row = j.at(static_cast<std::size_t>(i)).get<std::vector<double>>();
    if (row.size() != static_cast<std::size_t>(m.cols())) {
      throw ValidationError("matrix has wrong column count", "model");
    }
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      m(i, k) = row[static_cast<std::size_t>(k)];
    }
  }
  return m;
}

}  // namespace

std::string model_to_text(const ClassifierModel & model)
{
  json j;
  j["format"] = "comfort_avoid.classifier/1";
  j["kind"] = std::string(to_string(model.kind));
  j["temperature"] = model.temperature;
  j["standardization"] = {
    {"mean", vec_to_json(model.standardization.mean)},
    {"scale", vec_to_json(model.standardization.scale)}};
  json classes = json::object();
  for (int k = 0; k < kNumClasses; ++k) {
    json c;
    c["mean"] = vec_to_json(model.means[k]);
    c["covariance"] = mat_to_json(model.covariances[k]);
    c["prior"] = model.priors[k];
    json templ = json::array();
    for (const auto & t : model.templates[k]) {
      templ.push_back(vec_to_json(t));
    }
    c["templates"] = templ;
    classes[std::string(to_string(kAllClasses[k]))] = c;
  }
  j["classes"] = classes;
  j["risk"] = mat_to_json(model.risk);
  return j.dump(2) + "\n";
}

ClassifierModel model_from_text(const std::string & text)
{
  try {
    const json j = json::parse(text);
    if (j.at("format") != "comfort_avoid.classifier/1") {
      throw ValidationError("unsupported model format", "model.format");
    }
    ClassifierModel m;
    m.kind = classifier_kind_from_string(j.at("kind").get<std::string>());
    m.temperature = j.at("temperature").get<double>();
    m.standardization.mean = vec_from_json(j.at("standardization").at("mean"));
    m.standardization.scale = vec_from_json(j.at("standardization").at("scale"));
    for (int k = 0; k < kNumClasses; ++k) {
      const json & c = j.at("classes").at(std::string(to_string(kAllClasses[k])));
      m.means[k] = vec_from_json(c.at("mean"));
      m.covariances[k] = mat_from_json<Matrix5d>(c.at("covariance"));
      m.priors[k] = c.at("prior").get<double>();
      m.templates[k].clear();
      for (const auto & t : c.at("templates")) {
        m.templates[k].push_back(vec_from_json(t));
      }
    }
    m.risk = mat_from_json<Matrix3d>(j.at("risk"));
    return m;
  } catch (const json::exception & e) {
    throw ValidationError(std::string("malformed model file: ") + e.what(), "model");
  }
}

void save_model(const std::string & path, const ClassifierModel & model)
{
  std::ofstream out(path);
  if (!out) {
    throw RuntimeError("cannot write model '" + path + "'");
  }
  out << model_to_text(model);
}

ClassifierModel load_model(const std::string & path)
{
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("cannot open model '" + path + "'", "model");
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return model_from_text(ss.str());
}

}  // namespace comfort_avoid
