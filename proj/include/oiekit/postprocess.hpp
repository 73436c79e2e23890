#pragma once

#include <optional>
#include <string>

#include "oiekit/record.hpp"
#include "oiekit/sentence.hpp"

namespace oiekit {

// Policy for the be-relation filter when exactly one argument is untyped.
enum class BeFilterPolicy { KeepWhenUntyped, DropWhenUntyped };

// NER label covering the constituent's head token; "O" for empty constituents.
std::string dominant_ner(const Constituent& c, const AnnotatedSentence& sentence);

// Reason string when the record should be dropped: lemmatized relation "be"
// with mismatched subject/object NER types (both typed under the default
// policy). Empty optional means keep.
std::optional<std::string> filter_be_mismatch(const ExtractionRecord& record,
                                              const AnnotatedSentence& sentence,
                                              BeFilterPolicy policy = BeFilterPolicy::KeepWhenUntyped);

struct RearrangeResult {
  ExtractionRecord record;
  bool warned = false;  // a link spans subject and object; left unchanged
};

// Moves link-anchor tokens so no WikiLink is split across constituents:
// relation tokens of an anchor straddling relation/object move into the
// object, and relation tokens of an anchor straddling subject/relation move
// into the subject. Anchors spanning subject and object are left alone with
// a warning.
RearrangeResult rearrange_links(const ExtractionRecord& record, const AnnotatedSentence& sentence);

}  // namespace oiekit
