#pragma once

#include <istream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "oiekit/json_io.hpp"
#include "oiekit/record.hpp"
#include "oiekit/sentence.hpp"

namespace oiekit {

struct KbTriple {
  std::string subject;
  std::string relation;
  std::string object;

  auto operator<=>(const KbTriple&) const = default;
};

enum class HitDirection { Forward, Reverse };

struct KbHit {
  std::string relation;
  HitDirection direction = HitDirection::Forward;

  auto operator<=>(const KbHit&) const = default;
};

// Immutable after load; shared read-only between threads.
class KbIndex {
 public:
  // Duplicate triples are ignored; returns false for a duplicate.
  bool add(KbTriple triple);
  std::size_t size() const { return all_.size(); }

  // Union of forward (s,*,o) and reverse (o,*,s) relations.
  std::set<KbHit> hits(const std::string& s, const std::string& o) const;

  // Any (subject, relation, date-literal) fact for this subject?
  bool has_date_fact(const std::string& subject) const;

  // All facts, deduplicated, for oracle-style iteration.
  const std::set<KbTriple>& triples() const { return all_; }

 private:
  std::map<std::pair<std::string, std::string>, std::set<std::string>> by_pair_;
  std::set<std::string> date_fact_subjects_;
  std::set<KbTriple> all_;
};

// YAGO-style date literal: YYYY, YYYY-MM, or YYYY-MM-DD, '#' wildcards allowed.
bool is_date_literal(const std::string& value);

ParseStats load_kb_stream(std::istream& in, Strictness strictness, KbIndex& index);
KbIndex load_kb(const std::vector<std::string>& paths, Strictness strictness = Strictness::Strict);

std::set<KbHit> kb_hit(const KbIndex& index, const std::string& s, const std::string& o);

// KB triples that carry spatio-temporal meta-facts, keyed by the triple.
class MetaFactIndex {
 public:
  void add(const KbTriple& triple) { keys_.insert(triple); }
  bool has(const KbTriple& triple) const { return keys_.count(triple) > 0; }
  std::size_t size() const { return keys_.size(); }

  static MetaFactIndex load_file(const std::string& path);

 private:
  std::set<KbTriple> keys_;
};

// A linked record reduced to what alignment needs.
struct LinkedTriple {
  std::string subject;            // canonical entity id (underscored title)
  std::string object;
  std::string open_relation;      // lemmatized relation
  bool date_object = false;       // object is a temporal reference of type DATE
  bool has_temporal = false;
  bool has_spatial = false;
};

// Extracts the alignment view of a record; throws std::invalid_argument when
// an argument is unlinked (contract violation for the linked stream).
LinkedTriple linked_view(const ExtractionRecord& record, const AnnotatedSentence& sentence);

std::string entity_id(const ExtractionRecord& record, const Constituent& argument,
                      const AnnotatedSentence& sentence);

struct RelationAlignment {
  long long frequency = 0;
  long long hits = 0;
  std::map<std::string, long long> kb_relation_counts;

  bool operator==(const RelationAlignment&) const = default;
};

struct KbSectionReport {
  std::string kb;
  long long records = 0;
  long long hit_records = 0;
  std::map<std::string, RelationAlignment> per_relation;
  long long date_candidates = 0;
  long long date_hits = 0;
  long long meta_hit_records = 0;
  long long meta_hit_temporal = 0;
  long long meta_hit_spatial = 0;

  bool operator==(const KbSectionReport&) const = default;
};

struct AlignmentReport {
  std::vector<KbSectionReport> sections;  // one per KB, then "union"

  bool operator==(const AlignmentReport&) const = default;

  std::string to_json(int top_k) const;
  std::string to_text(int top_k) const;
};

AlignmentReport align(const std::vector<LinkedTriple>& records,
                      const std::vector<std::pair<std::string, const KbIndex*>>& kbs,
                      const MetaFactIndex* meta_facts = nullptr);

// KB date hits for records whose subject is linked and whose object is a
// DATE temporal reference.
std::pair<long long, double> date_hits(const std::vector<LinkedTriple>& records,
                                       const KbIndex& index);

}  // namespace oiekit
