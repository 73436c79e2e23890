#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "oiekit/record.hpp"
#include "oiekit/sentence.hpp"

namespace oiekit {

// Lemmatized-relation corpus frequencies, as produced by the relfreq report.
class RelationFrequencyTable {
 public:
  void add(const std::string& relation, long long count) { totals_[relation] += count; }
  long long total(const std::string& relation) const {
    auto it = totals_.find(relation);
    return it == totals_.end() ? 0 : it->second;
  }
  bool empty() const { return totals_.empty(); }

 private:
  std::map<std::string, long long> totals_;
};

inline constexpr long long kDefaultFrequentRelationSupport = 100000;

// Extraction-correctness features. The vector layout is fixed; feature_names()
// is the normative order used in model files.
struct FeatureVector {
  int sentence_length = 0;
  int extraction_length = 0;
  std::string clause_type;  // one of SV..SVOC or "implicit"
  bool dropped_all_optional_adverbials = false;
  bool dropped_all_optional_prepositions = false;
  bool relation_contiguous_in_sentence = false;
  bool subject_conjunction_pos_match = false;
  bool has_possessive_relation = false;
  bool has_gerund = false;
  bool infinitive_in_subject = false;
  bool infinitive_in_relation = false;
  bool words_in_sentence_order = false;
  bool contains_dep_edge = false;
  bool processed_conjunction_subject = false;
  bool processed_conjunction_relation = false;
  bool processed_conjunction_object = false;
  bool object_before_subject = false;
  bool in_minie_d = false;
  bool in_minie_a = false;
  bool relation_frequent = false;
  bool extracts_quantity = false;
  bool extracts_time = false;
  bool extracts_space = false;

  bool operator==(const FeatureVector&) const = default;

  std::vector<double> to_dense() const;
};

const std::vector<std::string>& feature_names();
std::size_t feature_dimension();

FeatureVector extract_features(const ExtractionRecord& record, const AnnotatedSentence& sentence,
                               const RelationFrequencyTable& frequencies,
                               long long frequent_support = kDefaultFrequentRelationSupport);

// L2-regularized logistic regression over standardized features.
struct ConfidenceModel {
  std::vector<double> weights;
  double bias = 0.0;
  double regularization = 0.0;
  std::vector<double> means;
  std::vector<double> scales;

  std::string to_json() const;
  static ConfidenceModel from_json(const std::string& text);
  static ConfidenceModel load_file(const std::string& path);
  void save_file(const std::string& path) const;
};

struct LabeledExample {
  FeatureVector features;
  bool correct = false;
};

// Full-batch gradient descent with backtracking line search from zero
// weights, run to gradient-norm tolerance 1e-6. Throws std::invalid_argument
//("degenerate labels") when only one class is present.
ConfidenceModel train(const std::vector<LabeledExample>& examples, double regularization);

double score(const ConfidenceModel& model, const FeatureVector& features);
double score_dense(const ConfidenceModel& model, const std::vector<double>& dense);

struct Bucket {
  long long count = 0;
  long long correct = 0;
  double lo = 0.0;
  double hi = 0.0;
  std::optional<double> precision;  // absent for empty buckets
};

struct BucketReport {
  std::vector<Bucket> buckets;
  std::optional<double> pearson_r;  // over non-empty buckets, midpoint vs precision
};

// Equi-width score buckets [i/k, (i+1)/k), last bucket closed at 1.
BucketReport bucket_precision(const std::vector<std::pair<double, bool>>& scored, int k);

}  // namespace oiekit
