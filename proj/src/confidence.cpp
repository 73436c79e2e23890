#include "oiekit/confidence.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace oiekit {

using nlohmann::json;

namespace {

const std::vector<std::string> kClauseTypes = {"SV",   "SVA",  "SVC",  "SVO",
                                               "SVOO", "SVOA", "SVOC", "implicit"};

std::string normalize_clause_type(const std::string& extraction_type) {
  for (const auto& t : kClauseTypes) {
    if (extraction_type == t) return t;
  }
  return "implicit";
}

// Obligatory ClausIE arguments per clause type; later arguments are the
// optional adverbials.
std::size_t required_argument_count(const std::string& clause_type) {
  if (clause_type == "SV") return 0;
  if (clause_type == "SVA" || clause_type == "SVC" || clause_type == "SVO") return 1;
  return 2;  // SVOO, SVOA, SVOC
}

bool constituent_has_pos(const Constituent& c, const AnnotatedSentence& s,
                         const std::set<std::string>& tags) {
  for (int t : c.token_indices()) {
    if (tags.count(s.token(t).pos)) return true;
  }
  return false;
}

// A bare-form verb directly preceded by "to".
bool has_infinitive(const Constituent& c, const AnnotatedSentence& s) {
  for (int t : c.token_indices()) {
    if (s.token(t).pos == "VB" && t > 1 && s.token(t - 1).pos == "TO") return true;
  }
  return false;
}

bool surfaces_contiguous_in_sentence(const Constituent& c, const AnnotatedSentence& s) {
  std::vector<std::string> needle;
  for (const auto& e : c.entries) {
    if (e.is_marker()) return false;  // markers never match sentence text
    needle.push_back(s.token(e.index).surface);
  }
  if (needle.empty()) return false;
  const int n = s.size();
  for (int start = 1; start + static_cast<int>(needle.size()) - 1 <= n; ++start) {
    bool match = true;
    for (std::size_t j = 0; j < needle.size(); ++j) {
      if (s.token(start + static_cast<int>(j)).surface != needle[j]) {
        match = false;
        break;
      }
    }
    if (match) return true;
  }
  return false;
}

bool touches_conjunction(const Constituent& c, const AnnotatedSentence& s) {
  auto tokens = c.token_set();
  for (const auto& e : s.depgraph.edges) {
    if (e.label == "conj" && (tokens.count(e.governor) || tokens.count(e.dependent))) return true;
  }
  return false;
}

bool conjunct_pos_tags_match(const ExtractionRecord& record, const AnnotatedSentence& s) {
  int head = constituent_head(record.subject, s.depgraph);
  if (head == 0) return true;
  std::string prefix = s.token(head).pos.substr(0, 2);
  for (const auto& [child, label] : s.depgraph.children_with_labels(head)) {
    if (label != "conj") continue;
    if (s.token(child).pos.substr(0, 2) != prefix) return false;
  }
  return true;
}

// True when every optional argument satisfying `eligible` contributes no
// token to the final triple (vacuously true without eligible arguments).
bool dropped_all_optional(const ExtractionRecord& record, const AnnotatedSentence& s,
                          bool prepositions_only) {
  auto triple = record.triple_token_set();
  std::size_t required = required_argument_count(normalize_clause_type(record.nary.clause_type));
  for (std::size_t i = required; i < record.nary.arguments.size(); ++i) {
    const auto& arg = record.nary.arguments[i];
    auto indices = arg.token_indices();
    if (indices.empty()) continue;
    if (prepositions_only && s.token(indices.front()).pos != "IN") continue;
    for (int t : indices) {
      if (triple.count(t)) return false;
    }
  }
  return true;
}

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

std::vector<double> standardize(const std::vector<double>& x, const ConfidenceModel& m) {
  if (x.size() != m.weights.size()) throw std::invalid_argument("feature dimension mismatch");
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = (x[i] - m.means[i]) / m.scales[i];
  return out;
}

}  // namespace

const std::vector<std::string>& feature_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v = {"sentence_length", "extraction_length"};
    for (const auto& t : kClauseTypes) v.push_back("clause_type_" + t);
    const char* booleans[] = {"dropped_all_optional_adverbials",
                              "dropped_all_optional_prepositions",
                              "relation_contiguous_in_sentence",
                              "subject_conjunction_pos_match",
                              "has_possessive_relation",
                              "has_gerund",
                              "infinitive_in_subject",
                              "infinitive_in_relation",
                              "words_in_sentence_order",
                              "contains_dep_edge",
                              "processed_conjunction_subject",
                              "processed_conjunction_relation",
                              "processed_conjunction_object",
                              "object_before_subject",
                              "in_minie_d",
                              "in_minie_a",
                              "relation_frequent",
                              "extracts_quantity",
                              "extracts_time",
                              "extracts_space"};
    v.insert(v.end(), std::begin(booleans), std::end(booleans));
    return v;
  }();
  return names;
}

std::size_t feature_dimension() { return feature_names().size(); }

std::vector<double> FeatureVector::to_dense() const {
  std::vector<double> v;
  v.reserve(feature_dimension());
  v.push_back(sentence_length);
  v.push_back(extraction_length);
  for (const auto& t : kClauseTypes) v.push_back(clause_type == t ? 1.0 : 0.0);
  for (bool b : {dropped_all_optional_adverbials, dropped_all_optional_prepositions,
                 relation_contiguous_in_sentence, subject_conjunction_pos_match,
                 has_possessive_relation, has_gerund, infinitive_in_subject,
                 infinitive_in_relation, words_in_sentence_order, contains_dep_edge,
                 processed_conjunction_subject, processed_conjunction_relation,
                 processed_conjunction_object, object_before_subject, in_minie_d, in_minie_a,
                 relation_frequent, extracts_quantity, extracts_time, extracts_space}) {
    v.push_back(b ? 1.0 : 0.0);
  }
  return v;
}

FeatureVector extract_features(const ExtractionRecord& record, const AnnotatedSentence& sentence,
                               const RelationFrequencyTable& frequencies,
                               long long frequent_support) {
  FeatureVector f;
  f.sentence_length = sentence.size();
  f.extraction_length = static_cast<int>(record.subject.entries.size() +
                                         record.relation.entries.size() +
                                         record.object.entries.size());
  f.clause_type = normalize_clause_type(record.extraction_type);
  f.dropped_all_optional_adverbials = dropped_all_optional(record, sentence, false);
  f.dropped_all_optional_prepositions = dropped_all_optional(record, sentence, true);
  f.relation_contiguous_in_sentence = surfaces_contiguous_in_sentence(record.relation, sentence);
  f.subject_conjunction_pos_match = conjunct_pos_tags_match(record, sentence);
  f.has_possessive_relation = constituent_has_pos(record.relation, sentence, {"POS", "PRP$"});

  auto triple = record.triple_token_set();
  for (int t : triple) {
    if (sentence.token(t).pos == "VBG") f.has_gerund = true;
    const std::string* label = sentence.depgraph.incoming_label(t);
    if (label && *label == "dep") f.contains_dep_edge = true;
  }

  f.infinitive_in_subject = has_infinitive(record.subject, sentence);
  f.infinitive_in_relation = has_infinitive(record.relation, sentence);

  std::vector<int> order = record.subject.token_indices();
  for (int t : record.relation.token_indices()) order.push_back(t);
  for (int t : record.object.token_indices()) order.push_back(t);
  f.words_in_sentence_order = std::is_sorted(order.begin(), order.end());

  f.processed_conjunction_subject = touches_conjunction(record.subject, sentence);
  f.processed_conjunction_relation = touches_conjunction(record.relation, sentence);
  f.processed_conjunction_object = touches_conjunction(record.object, sentence);

  auto object_indices = record.object.token_indices();
  auto subject_indices = record.subject.token_indices();
  f.object_before_subject = !object_indices.empty() && !subject_indices.empty() &&
                            object_indices.front() < subject_indices.back();

  f.in_minie_d = record.in_minie_d;
  f.in_minie_a = record.in_minie_a;
  f.relation_frequent =
      frequencies.total(lemmatized_relation(record, sentence)) >= frequent_support;
  f.extracts_quantity = !record.quantities.empty();
  for (const auto& a : record.spate) {
    if (is_temporal(a.kind)) f.extracts_time = true;
    if (is_spatial(a.kind)) f.extracts_space = true;
  }
  return f;
}

std::string ConfidenceModel::to_json() const {
  json j{{"weights", weights}, {"bias", bias},   {"reg", regularization},
         {"means", means},     {"scales", scales}, {"feature_names", feature_names()}};
  return j.dump(2);
}

ConfidenceModel ConfidenceModel::from_json(const std::string& text) {
  json j = json::parse(text);
  ConfidenceModel m;
  m.weights = j.at("weights").get<std::vector<double>>();
  m.bias = j.at("bias").get<double>();
  m.regularization = j.at("reg").get<double>();
  m.means = j.at("means").get<std::vector<double>>();
  m.scales = j.at("scales").get<std::vector<double>>();
  auto names = j.at("feature_names").get<std::vector<std::string>>();
  if (names != feature_names()) throw std::invalid_argument("model feature names do not match");
  if (m.weights.size() != feature_dimension() || m.means.size() != m.weights.size() ||
      m.scales.size() != m.weights.size()) {
    throw std::invalid_argument("model dimension mismatch");
  }
  for (double s : m.scales) {
    if (!(s > 0)) throw std::invalid_argument("model scales must be positive");
  }
  return m;
}

ConfidenceModel ConfidenceModel::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return from_json(text);
}

void ConfidenceModel::save_file(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write model file: " + path);
  out << to_json() << '\n';
}

ConfidenceModel train(const std::vector<LabeledExample>& examples, double regularization) {
  if (regularization < 0) throw std::invalid_argument("regularization must be nonnegative");
  bool have_positive = false;
  bool have_negative = false;
  for (const auto& e : examples) (e.correct ? have_positive : have_negative) = true;
  if (!have_positive || !have_negative) throw std::invalid_argument("degenerate labels");

  const std::size_t dim = feature_dimension();
  const std::size_t n = examples.size();
  std::vector<std::vector<double>> x(n);
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = examples[i].features.to_dense();
    y[i] = examples[i].correct ? 1.0 : 0.0;
  }

  ConfidenceModel model;
  model.regularization = regularization;
  model.means.assign(dim, 0.0);
  model.scales.assign(dim, 1.0);
  for (std::size_t j = 0; j < dim; ++j) {
    double sum = 0;
    for (std::size_t i = 0; i < n; ++i) sum += x[i][j];
    model.means[j] = sum / static_cast<double>(n);
    double var = 0;
    for (std::size_t i = 0; i < n; ++i) {
      double d = x[i][j] - model.means[j];
      var += d * d;
    }
    var /= static_cast<double>(n);
    model.scales[j] = var > 1e-12 ? std::sqrt(var) : 1.0;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < dim; ++j) x[i][j] = (x[i][j] - model.means[j]) / model.scales[j];
  }

  // Objective: mean cross-entropy + (reg/2) * (||w||^2 + b^2).
  std::vector<double> w(dim, 0.0);
  double b = 0.0;
  auto objective = [&](const std::vector<double>& wv, double bv, std::vector<double>* grad_w,
                       double* grad_b) {
    double loss = 0.0;
    if (grad_w) std::fill(grad_w->begin(), grad_w->end(), 0.0);
    if (grad_b) *grad_b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double z = bv;
      for (std::size_t j = 0; j < dim; ++j) z += wv[j] * x[i][j];
      // log(1 + exp(-m)) with the stable branch for large |m|.
      double m = (2.0 * y[i] - 1.0) * z;
      loss += m > 0 ? std::log1p(std::exp(-m)) : -m + std::log1p(std::exp(m));
      double p = sigmoid(z);
      double err = (p - y[i]) / static_cast<double>(n);
      if (grad_w) {
        for (std::size_t j = 0; j < dim; ++j) (*grad_w)[j] += err * x[i][j];
      }
      if (grad_b) *grad_b += err;
    }
    loss /= static_cast<double>(n);
    double sq = bv * bv;
    for (double v : wv) sq += v * v;
    loss += 0.5 * regularization * sq;
    if (grad_w) {
      for (std::size_t j = 0; j < dim; ++j) (*grad_w)[j] += regularization * wv[j];
    }
    if (grad_b) *grad_b += regularization * bv;
    return loss;
  };

  std::vector<double> grad(dim, 0.0);
  double grad_b = 0.0;
  const int max_iterations = 50000;
  const double tolerance = 1e-6;
  for (int iter = 0; iter < max_iterations; ++iter) {
    double loss = objective(w, b, &grad, &grad_b);
    double grad_norm = grad_b * grad_b;
    for (double g : grad) grad_norm += g * g;
    grad_norm = std::sqrt(grad_norm);
    if (grad_norm < tolerance) break;

    // Backtracking line search on the Armijo condition.
    double step = 1.0;
    std::vector<double> next(dim);
    double next_b = 0.0;
    for (int halvings = 0; halvings < 60; ++halvings) {
      for (std::size_t j = 0; j < dim; ++j) next[j] = w[j] - step * grad[j];
      next_b = b - step * grad_b;
      double next_loss = objective(next, next_b, nullptr, nullptr);
      if (next_loss <= loss - 0.5 * step * grad_norm * grad_norm) break;
      step *= 0.5;
    }
    w = next;
    b = next_b;
  }

  model.weights = std::move(w);
  model.bias = b;
  return model;
}

double score_dense(const ConfidenceModel& model, const std::vector<double>& dense) {
  std::vector<double> z = standardize(dense, model);
  double acc = model.bias;
  for (std::size_t j = 0; j < z.size(); ++j) acc += model.weights[j] * z[j];
  return sigmoid(acc);
}

double score(const ConfidenceModel& model, const FeatureVector& features) {
  return score_dense(model, features.to_dense());
}

BucketReport bucket_precision(const std::vector<std::pair<double, bool>>& scored, int k) {
  if (k < 2) throw std::invalid_argument("bucket count must be at least 2");
  BucketReport report;
  report.buckets.resize(k);
  for (int i = 0; i < k; ++i) {
    report.buckets[i].lo = static_cast<double>(i) / k;
    report.buckets[i].hi = static_cast<double>(i + 1) / k;
  }
  for (const auto& [s, correct] : scored) {
    int i = static_cast<int>(s * k);
    if (i >= k) i = k - 1;  // score 1.0 falls into the closed last bucket
    if (i < 0) i = 0;
    ++report.buckets[i].count;
    if (correct) ++report.buckets[i].correct;
  }
  // Pearson correlation of bucket midpoint vs precision over non-empty buckets.
  std::vector<double> mids;
  std::vector<double> precisions;
  for (int i = 0; i < k; ++i) {
    auto& bucket = report.buckets[i];
    if (bucket.count == 0) continue;
    bucket.precision = static_cast<double>(bucket.correct) / static_cast<double>(bucket.count);
    mids.push_back((bucket.lo + bucket.hi) / 2.0);
    precisions.push_back(*bucket.precision);
  }
  if (mids.size() >= 2) {
    double n = static_cast<double>(mids.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < mids.size(); ++i) {
      mx += mids[i];
      my += precisions[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < mids.size(); ++i) {
      sxy += (mids[i] - mx) * (precisions[i] - my);
      sxx += (mids[i] - mx) * (mids[i] - mx);
      syy += (precisions[i] - my) * (precisions[i] - my);
    }
    if (sxx > 0 && syy > 0) report.pearson_r = sxy / std::sqrt(sxx * syy);
  }
  return report;
}

}  // namespace oiekit
