#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "oiekit/confidence.hpp"
#include "oiekit/record.hpp"
#include "oiekit/sentence.hpp"

namespace oiekit {

// Exact sum/sum-of-squares accumulator for integer samples. Merging shards
// is plain integer addition, so sharded and sequential runs agree bitwise.
struct LengthStat {
  long long n = 0;
  long long sum = 0;
  unsigned long long sum_sq = 0;

  void add(long long v) {
    ++n;
    sum += v;
    sum_sq += static_cast<unsigned long long>(v) * static_cast<unsigned long long>(v);
  }
  void merge(const LengthStat& o) {
    n += o.n;
    sum += o.sum;
    sum_sq += o.sum_sq;
  }
  double mean() const;
  double stddev() const;  // population

  bool operator==(const LengthStat&) const = default;
};

// Same idea for confidence scores, held in nano-unit fixed point.
struct FixedStat {
  long long n = 0;
  long long sum_nano = 0;
  unsigned __int128 sum_sq_nano = 0;

  void add(double v);
  void merge(const FixedStat& o) {
    n += o.n;
    sum_nano += o.sum_nano;
    sum_sq_nano += o.sum_sq_nano;
  }
  double mean() const;
  double stddev() const;

  bool operator==(const FixedStat&) const = default;
};

struct CorpusReport {
  long long total = 0;
  long long any_semantic = 0;
  long long negative_polarity = 0;
  long long possibility_modality = 0;
  long long quantities = 0;
  long long attribution = 0;
  long long time = 0;
  long long space = 0;
  long long space_or_time = 0;
  long long space_and_time = 0;

  LengthStat triple_length;
  LengthStat subject_length;
  LengthStat relation_length;
  LengthStat object_length;
  FixedStat confidence;

  std::map<std::string, long long> ner_histogram;  // per argument occurrence
  long long pairs_both_typed = 0;  // over records with a non-empty object
  long long pairs_one_typed = 0;
  long long pairs_none_typed = 0;

  // (subject type, object type) -> lemmatized relation -> count
  std::map<std::pair<std::string, std::string>, std::map<std::string, long long>>
      relations_by_type_pair;

  void add(const ExtractionRecord& record, const AnnotatedSentence& sentence);
  void merge(const CorpusReport& other);

  bool operator==(const CorpusReport&) const = default;

  std::string to_json(int top_k) const;
  std::string to_text(int top_k) const;
};

// Per (relation, subject type, object type) counts plus per-relation totals.
struct RelationFrequencies {
  std::map<std::tuple<std::string, std::string, std::string>, long long> counts;

  void add(const ExtractionRecord& record, const AnnotatedSentence& sentence);
  void merge(const RelationFrequencies& other);
  RelationFrequencyTable totals() const;
  std::string to_tsv() const;  // relation<TAB>subject_type<TAB>object_type<TAB>count
  static RelationFrequencies from_tsv(std::istream& in);

  bool operator==(const RelationFrequencies&) const = default;
};

}  // namespace oiekit
