#pragma once

#include <string>
#include <unordered_set>
#include <vector>

#include "oiekit/record.hpp"
#include "oiekit/sentence.hpp"

namespace oiekit {

enum class TierReason {
  PronounArgument,
  DeterminerArgument,
  WhArgument,
  SplitLink,
  SplitEntity,
  EmptyObject,
  NonConceptArgument,
};

std::string to_string(TierReason r);

// Clean/linked tier classification. linked implies clean.
struct TierVerdict {
  bool clean = false;
  bool linked = false;
  std::vector<TierReason> reasons;  // failure reasons, fixed check order

  bool operator==(const TierVerdict&) const = default;
};

// A record is clean when each argument (quantity markers ignored) is one
// linked phrase, one maximal NER entity span, or a page-title match; no link
// anchor or entity span is split across constituents; and the object is
// non-empty. It is linked when additionally both arguments carry links.
TierVerdict classify(const ExtractionRecord& record, const AnnotatedSentence& sentence,
                     const std::unordered_set<std::string>& page_titles);

}  // namespace oiekit
