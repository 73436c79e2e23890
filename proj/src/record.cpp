#include "oiekit/record.hpp"

#include <algorithm>
#include <stdexcept>

namespace oiekit {

std::vector<int> Constituent::token_indices() const {
  std::vector<int> out;
  for (const auto& e : entries) {
    if (!e.is_marker()) out.push_back(e.index);
  }
  return out;
}

std::set<int> Constituent::token_set() const {
  std::set<int> out;
  for (const auto& e : entries) {
    if (!e.is_marker()) out.insert(e.index);
  }
  return out;
}

std::set<std::string> Constituent::marker_set() const {
  std::set<std::string> out;
  for (const auto& e : entries) {
    if (e.is_marker()) out.insert(e.marker);
  }
  return out;
}

bool Constituent::contains_token(int index) const {
  for (const auto& e : entries) {
    if (!e.is_marker() && e.index == index) return true;
  }
  return false;
}

Constituent Constituent::of_tokens(std::initializer_list<int> indices) {
  Constituent c;
  for (int i : indices) c.entries.push_back(token_entry(i));
  return c;
}

Constituent Constituent::of_tokens(const std::vector<int>& indices) {
  Constituent c;
  for (int i : indices) c.entries.push_back(token_entry(i));
  return c;
}

std::set<int> SpateAnnotation::token_set() const {
  std::set<int> out(core_words.begin(), core_words.end());
  out.insert(pre_mods.begin(), pre_mods.end());
  out.insert(post_mods.begin(), post_mods.end());
  return out;
}

std::set<int> ExtractionRecord::triple_token_set() const {
  std::set<int> out = subject.token_set();
  auto r = relation.token_set();
  auto o = object.token_set();
  out.insert(r.begin(), r.end());
  out.insert(o.begin(), o.end());
  return out;
}

const Quantity* ExtractionRecord::find_quantity(const std::string& marker) const {
  for (const auto& q : quantities) {
    if (q.marker == marker) return &q;
  }
  return nullptr;
}

std::string lemmatized_relation(const ExtractionRecord& record, const AnnotatedSentence& sentence) {
  return sentence.lemma_join(record.relation.token_indices());
}

int constituent_head(const Constituent& c, const DependencyGraph& graph) {
  auto indices = c.token_indices();
  if (indices.empty()) return 0;
  std::set<int> members(indices.begin(), indices.end());
  std::vector<int> candidates;
  for (int t : indices) {
    if (!members.count(graph.governor_of(t))) candidates.push_back(t);
  }
  if (candidates.empty()) return indices.back();
  return *std::min_element(candidates.begin(), candidates.end());
}

std::string to_string(Polarity p) { return p == Polarity::Positive ? "positive" : "negative"; }
std::string to_string(Modality m) { return m == Modality::Certainty ? "certainty" : "possibility"; }

std::string to_string(SpateKind k) {
  switch (k) {
    case SpateKind::TemporalTriple: return "temporal-triple";
    case SpateKind::TemporalArgument: return "temporal-argument";
    case SpateKind::SpatialTriple: return "spatial-triple";
    case SpateKind::SpatialArgument: return "spatial-argument";
    case SpateKind::TemporalReference: return "temporal-reference";
    case SpateKind::SpatialReference: return "spatial-reference";
  }
  return "temporal-triple";
}

std::string to_string(SpateTarget t) {
  switch (t) {
    case SpateTarget::Triple: return "triple";
    case SpateTarget::Subject: return "subject";
    case SpateTarget::Object: return "object";
  }
  return "triple";
}

Polarity polarity_from_string(const std::string& s) {
  if (s == "positive") return Polarity::Positive;
  if (s == "negative") return Polarity::Negative;
  throw std::invalid_argument("unknown polarity: " + s);
}

Modality modality_from_string(const std::string& s) {
  if (s == "certainty") return Modality::Certainty;
  if (s == "possibility") return Modality::Possibility;
  throw std::invalid_argument("unknown modality: " + s);
}

SpateKind spate_kind_from_string(const std::string& s) {
  if (s == "temporal-triple") return SpateKind::TemporalTriple;
  if (s == "temporal-argument") return SpateKind::TemporalArgument;
  if (s == "spatial-triple") return SpateKind::SpatialTriple;
  if (s == "spatial-argument") return SpateKind::SpatialArgument;
  if (s == "temporal-reference") return SpateKind::TemporalReference;
  if (s == "spatial-reference") return SpateKind::SpatialReference;
  throw std::invalid_argument("unknown annotation kind: " + s);
}

SpateTarget spate_target_from_string(const std::string& s) {
  if (s == "triple") return SpateTarget::Triple;
  if (s == "subject") return SpateTarget::Subject;
  if (s == "object") return SpateTarget::Object;
  throw std::invalid_argument("unknown annotation target: " + s);
}

}  // namespace oiekit
