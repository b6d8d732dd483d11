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

#ifndef COMFORT_AVOID__COMFORT_MODEL_HPP_
#define COMFORT_AVOID__COMFORT_MODEL_HPP_

#include "comfort_avoid/vehicle_model.hpp"

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace comfort_avoid
{

// ---------------------------------------------------------------------------
// Labels and questionnaire scoring
// ---------------------------------------------------------------------------

/// Subjective rating class. The enumerator order is the tie-break order.
enum class ComfortClass { kGood = 0, kNormal = 1, kPoor = 2 };

inline constexpr int kNumClasses = 3;
inline constexpr std::array<ComfortClass, kNumClasses> kAllClasses{
  ComfortClass::kGood, ComfortClass::kNormal, ComfortClass::kPoor};

std::string_view to_string(ComfortClass c);
ComfortClass comfort_class_from_string(std::string_view s);
inline int index_of(ComfortClass c) { return static_cast<int>(c); }

inline constexpr int kQuestionnaireItems = 5;

struct QuestionnaireResponse
{
  std::array<double, kQuestionnaireItems> item_scores{};

  void validate() const;
};

struct AhpWeights
{
  std::array<double, kQuestionnaireItems> w{};

  /// Weights of the five questionnaire items as published for the field study.
  static AhpWeights questionnaire_default() { return {{0.09, 0.18, 0.18, 0.18, 0.37}}; }

  void validate() const;
};

struct AhpResult
{
  Eigen::VectorXd weights;  // principal eigenvector, sums to 1
  double lambda_max{0.0};
  double ci{0.0};  // consistency index
  double cr{0.0};  // consistency ratio
  int iterations{0};
};

/// Saaty random consistency index for an n x n matrix, n in [1, 9].
double random_index(int n);

/// Priority weights of a positive reciprocal pairwise-comparison matrix by
/// power iteration, with the consistency index and ratio.
AhpResult ahp_weights(const Eigen::MatrixXd & comparison);

/// Weighted sum of the item scores, in [0, 1].
double questionnaire_score(const QuestionnaireResponse & response, const AhpWeights & weights);

struct ClassThresholds
{
  double t_poor{0.4};
  double t_good{0.7};

  void validate(const std::string & path = "thresholds") const;
};

/// poor below t_poor, good at or above t_good, normal in between.
ComfortClass score_to_class(double score, const ClassThresholds & thresholds);

// ---------------------------------------------------------------------------
// Classifiers
// ---------------------------------------------------------------------------

using Vector5d = Eigen::Matrix<double, 5, 1>;
using Matrix5d = Eigen::Matrix<double, 5, 5>;
using Matrix3d = Eigen::Matrix3d;

struct Sample
{
  FeatureVector x;
  ComfortClass label{ComfortClass::kGood};
};

using TrainingSet = std::vector<Sample>;

/// Throws ValidationError unless every class has at least two finite samples.
void validate_training_set(const TrainingSet & data);

enum class ClassifierKind { kTemplateMatching, kClassCenterEuclidean, kMahalanobis, kBayesMinRisk };

inline constexpr std::array<ClassifierKind, 4> kAllClassifierKinds{
  ClassifierKind::kTemplateMatching, ClassifierKind::kClassCenterEuclidean,
  ClassifierKind::kMahalanobis, ClassifierKind::kBayesMinRisk};

std::string_view to_string(ClassifierKind kind);
ClassifierKind classifier_kind_from_string(std::string_view s);

/// Per-feature z-score fitted on training data.
struct Standardization
{
  Vector5d mean{Vector5d::Zero()};
  Vector5d scale{Vector5d::Ones()};

  Vector5d apply(const FeatureVector & x) const;
};

struct ClassifierModel
{
  ClassifierKind kind{ClassifierKind::kClassCenterEuclidean};
  Standardization standardization;

  // All parameters below live in standardized feature space.
  std::array<Vector5d, kNumClasses> means{};
  std::array<Matrix5d, kNumClasses> covariances{};  // regularized; mahalanobis / bayes only
  std::array<double, kNumClasses> priors{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  Matrix3d risk{Matrix3d::Ones() - Matrix3d::Identity()};  // risk(decided, true)
  std::array<std::vector<Vector5d>, kNumClasses> templates{};  // template matching only

  double temperature{1.0};  // softness of confidence_score
};

struct TrainOptions
{
  std::optional<double> regularization;  // lambda added to every covariance diagonal
  std::optional<std::array<double, kNumClasses>> priors;
  std::optional<Matrix3d> risk;
  double temperature{1.0};
};

ClassifierModel train(const TrainingSet & data, ClassifierKind kind, const TrainOptions & options = {});

/// Discriminant per class: squared distances for the distance-based kinds,
/// expected risk for bayes_min_risk. The decision is the argmin.
std::array<double, kNumClasses> discriminants(const ClassifierModel & model, const FeatureVector & x);

/// Soft class membership used by confidence_score. Sums to 1.
std::array<double, kNumClasses> class_probabilities(const ClassifierModel & model, const FeatureVector & x);

ComfortClass classify(const ClassifierModel & model, const FeatureVector & x);

/// Expected utility over class_probabilities with utilities good 1, normal 0.5, poor 0.
double confidence_score(const ClassifierModel & model, const FeatureVector & x);

struct AccuracyReport
{
  double accuracy{0.0};
  std::array<std::array<int, kNumClasses>, kNumClasses> confusion{};  // [true][predicted]
  int total{0};
};

AccuracyReport evaluate_accuracy(const ClassifierModel & model, const TrainingSet & test);

/// Comfort indices are rated by magnitude; the classifier input drops the sign of
/// the lateral components of a measured feature vector.
FeatureVector comfort_input(const FeatureVector & x);

// ---------------------------------------------------------------------------
// Synthetic data and persistence
// ---------------------------------------------------------------------------

struct SynthConfig
{
  std::uint64_t seed{42};
  int n_per_class{60};
  std::array<FeatureVector, kNumClasses> means{
    FeatureVector{8.3, 1.0, 0.05, 0.5, 0.05},
    FeatureVector{8.3, 2.5, 0.12, 1.5, 0.15},
    FeatureVector{8.3, 4.5, 0.25, 3.5, 0.35},
  };
  std::array<Matrix5d, kNumClasses> covariances{};
  double label_noise{0.0};

  /// Default means with diagonal covariances chosen so that, in every feature
  /// whose means differ, the smallest gap between adjacent class means spans
  /// `separation` standard deviations. Constant features get unit deviation.
  static SynthConfig with_separation(double separation, std::uint64_t seed = 42, int n_per_class = 60);

  void validate(const std::string & path = "synth") const;
};

TrainingSet synth_dataset(const SynthConfig & config);

/// CSV with header v_long,a_lat,yaw_rate,a_lat_rate,yaw_accel,label. A `score`
/// column in place of `label` is mapped through score_to_class.
TrainingSet read_dataset_csv(const std::string & path, const ClassThresholds & thresholds = {});
void write_dataset_csv(const std::string & path, const TrainingSet & data);

std::string model_to_text(const ClassifierModel & model);
ClassifierModel model_from_text(const std::string & text);
void save_model(const std::string & path, const ClassifierModel & model);
ClassifierModel load_model(const std::string & path);

}  // namespace comfort_avoid

#endif  // COMFORT_AVOID__COMFORT_MODEL_HPP_
