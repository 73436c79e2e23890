#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "oiekit/sentence.hpp"

namespace oiekit {

// One slot of a constituent: either a sentence token (by 1-based index) or a
// quantity placeholder such as "Q_1" whose original tokens live in the
// record's quantity table.
struct ConstituentToken {
  int index = 0;        // 0 when this entry is a marker
  std::string marker;   // empty when this entry is a token index

  bool is_marker() const { return index == 0; }
  bool operator==(const ConstituentToken&) const = default;
};

inline ConstituentToken token_entry(int index) { return ConstituentToken{index, {}}; }
inline ConstituentToken marker_entry(std::string marker) { return ConstituentToken{0, std::move(marker)}; }

// A subject/relation/object/argument phrase. Token indices are strictly
// increasing but need not be contiguous in the sentence.
struct Constituent {
  std::vector<ConstituentToken> entries;

  bool operator==(const Constituent&) const = default;

  bool empty() const { return entries.empty(); }
  std::vector<int> token_indices() const;
  std::set<int> token_set() const;
  std::set<std::string> marker_set() const;
  bool contains_token(int index) const;

  static Constituent of_tokens(std::initializer_list<int> indices);
  static Constituent of_tokens(const std::vector<int>& indices);
};

// ClausIE-style n-ary extraction: subject, relation, then adverbials/objects
// in clause order.
struct NaryExtraction {
  Constituent subject;
  Constituent relation;
  std::vector<Constituent> arguments;
  std::string clause_type;  // SV, SVA, SVC, SVO, SVOO, SVOA, SVOC or an implicit tag

  bool operator==(const NaryExtraction&) const = default;
};

enum class Polarity { Positive, Negative };
enum class Modality { Certainty, Possibility };

enum class SpateKind {
  TemporalTriple,
  TemporalArgument,
  SpatialTriple,
  SpatialArgument,
  TemporalReference,
  SpatialReference,
};

enum class SpateTarget { Triple, Subject, Object };

inline bool is_temporal(SpateKind k) {
  return k == SpateKind::TemporalTriple || k == SpateKind::TemporalArgument ||
         k == SpateKind::TemporalReference;
}
inline bool is_spatial(SpateKind k) { return !is_temporal(k); }
inline bool is_argument_kind(SpateKind k) {
  return k == SpateKind::TemporalArgument || k == SpateKind::SpatialArgument;
}

struct TimexPayload {
  std::string type;
  std::string value;
  std::string xml;

  bool operator==(const TimexPayload&) const = default;
};

// A spatial or temporal qualifier: on the whole triple, on one argument
// phrase, or marking an argument as a spatial/temporal reference.
// Temporal kinds carry a TIMEX3 payload; argument kinds carry the index of
// the head word being modified. core_words is the full annotated phrase;
// pre_mods/post_mods are the dependents collected around its anchor token.
struct SpateAnnotation {
  SpateKind kind = SpateKind::TemporalTriple;
  std::string predicate;  // lexicalized predicate, e.g. "in"; may be empty
  std::vector<int> core_words;
  std::vector<int> pre_mods;
  std::vector<int> post_mods;
  std::optional<TimexPayload> timex;
  SpateTarget target = SpateTarget::Triple;
  std::optional<int> head;  // modified head word, argument kinds only

  bool operator==(const SpateAnnotation&) const = default;

  std::set<int> token_set() const;
};

// The stated in-sentence source of a triple, with its own factuality.
struct Attribution {
  Constituent phrase;
  std::string predicate;
  Polarity polarity = Polarity::Positive;
  Modality modality = Modality::Certainty;
  std::vector<SpateAnnotation> spate;

  bool operator==(const Attribution&) const = default;
};

struct Quantity {
  std::string marker;       // e.g. "Q_1"
  std::vector<int> tokens;  // original sentence tokens

  bool operator==(const Quantity&) const = default;
};

// One OIE extraction with full metadata: provenance keys, the n-ary
// extraction it came from, the minimized triple, semantic annotations,
// and downstream scores.
struct ExtractionRecord {
  long article_id = 0;
  int sentence_number = 0;
  int extraction_index = 0;

  NaryExtraction nary;
  Constituent subject;
  Constituent relation;
  Constituent object;

  Polarity polarity = Polarity::Positive;
  std::vector<int> negative_words;
  Modality modality = Modality::Certainty;
  std::vector<int> modality_words;
  std::optional<Attribution> attribution;

  std::vector<Quantity> quantities;
  std::vector<int> dropped_words;
  std::string extraction_type;  // clause type or implicit-pattern tag
  std::vector<SpateAnnotation> spate;
  std::optional<double> confidence;  // in [0,1] when present
  std::map<std::string, std::string> canonical_links;
  bool in_minie_d = false;
  bool in_minie_a = false;

  bool operator==(const ExtractionRecord&) const = default;

  // Union of subject/relation/object token indices.
  std::set<int> triple_token_set() const;
  const Quantity* find_quantity(const std::string& marker) const;
};

// Space-joined lemmas of the relation tokens, quantity markers excluded.
std::string lemmatized_relation(const ExtractionRecord& record, const AnnotatedSentence& sentence);

// Head of a constituent under the dependency graph restricted to its tokens:
// the token not governed by another constituent token, smallest index on
// ties, last token when the restriction yields no candidate.
int constituent_head(const Constituent& c, const DependencyGraph& graph);

std::string to_string(Polarity p);
std::string to_string(Modality m);
std::string to_string(SpateKind k);
std::string to_string(SpateTarget t);
Polarity polarity_from_string(const std::string& s);
Modality modality_from_string(const std::string& s);
SpateKind spate_kind_from_string(const std::string& s);
SpateTarget spate_target_from_string(const std::string& s);

}  // namespace oiekit
