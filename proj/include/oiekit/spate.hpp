#pragma once

#include <map>
#include <set>
#include <vector>

#include "oiekit/record.hpp"
#include "oiekit/sentence.hpp"

namespace oiekit {

// Sentence-derived lookup state shared by all annotation rules.
struct RuleContext {
  const AnnotatedSentence* sentence = nullptr;
  std::map<int, const TemporalExpression*> temporal_index;  // token -> covering timex
  std::set<int> location_index;                             // tokens with NER LOCATION

  static RuleContext build(const AnnotatedSentence& sentence);
};

struct SpateResult {
  ExtractionRecord record;
  std::vector<SpateAnnotation> annotations;
};

// Head word of the triple's relation: the relation token not governed by
// another relation token, smallest index on ties, last token as fallback.
int relation_head(const RuleContext& ctx, const ExtractionRecord& record);

// Triple-level temporal rules (tmod/advmod, prep+pobj, xcomp recursion) with
// n-ary compaction. Annotated tokens leave the relation/object; the
// lexicalized predicate token goes to dropped words.
SpateResult annotate_temporal_triple(const RuleContext& ctx, const ExtractionRecord& record);

// Argument-level temporal rule: temporal dependents of a noun/adjective
// inside subject or object move into an annotation on that argument.
SpateResult annotate_temporal_arguments(const RuleContext& ctx, const ExtractionRecord& record);

// Spatial analogue: the prep rule at triple level and the argument rule,
// keyed on NER LOCATION instead of temporal expressions. Contiguous
// LOCATION runs count as one phrase.
SpateResult annotate_spatial(const RuleContext& ctx, const ExtractionRecord& record);

// Arguments that are themselves a temporal expression or a location.
// Detection only; the triple is not modified.
std::vector<SpateAnnotation> detect_references(const RuleContext& ctx, const ExtractionRecord& record);

// Full rule pipeline in fixed order: temporal-triple, temporal-argument,
// spatial, references. Annotations accumulate on record.spate; re-running is
// a no-op.
ExtractionRecord apply_spate(const RuleContext& ctx, ExtractionRecord record);

}  // namespace oiekit
