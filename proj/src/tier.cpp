#include "oiekit/tier.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

namespace oiekit {

std::string to_string(TierReason r) {
  switch (r) {
    case TierReason::PronounArgument: return "pronoun-argument";
    case TierReason::DeterminerArgument: return "determiner-argument";
    case TierReason::WhArgument: return "wh-argument";
    case TierReason::SplitLink: return "split-link";
    case TierReason::SplitEntity: return "split-entity";
    case TierReason::EmptyObject: return "empty-object";
    case TierReason::NonConceptArgument: return "non-concept-argument";
  }
  return "non-concept-argument";
}

namespace {

bool all_pos_in(const std::vector<int>& indices, const AnnotatedSentence& s,
                const std::set<std::string>& tags) {
  return !indices.empty() && std::all_of(indices.begin(), indices.end(), [&](int t) {
    return tags.count(s.token(t).pos) > 0;
  });
}

// All tokens carry one and the same WikiLink.
bool is_linked_phrase(const std::vector<int>& indices, const AnnotatedSentence& s) {
  if (indices.empty()) return false;
  const auto& first = s.token(indices.front()).link;
  if (!first) return false;
  return std::all_of(indices.begin(), indices.end(), [&](int t) {
    const auto& link = s.token(t).link;
    return link && link->begin == first->begin && link->end == first->end &&
           link->target == first->target;
  });
}

// The argument equals one maximal run of identical non-O NER labels.
bool is_entity_span(const std::vector<int>& indices, const AnnotatedSentence& s) {
  if (indices.empty()) return false;
  auto run = s.entity_run(indices.front());
  return !run.empty() && run == indices;
}

bool matches_page_title(const std::vector<int>& indices, const AnnotatedSentence& s,
                        const std::unordered_set<std::string>& titles) {
  if (indices.empty()) return false;
  return titles.count(s.surface_join(indices)) > 0;
}

}  // namespace

TierVerdict classify(const ExtractionRecord& record, const AnnotatedSentence& sentence,
                     const std::unordered_set<std::string>& page_titles) {
  TierVerdict verdict;
  auto add_reason = [&](TierReason r) {
    if (std::find(verdict.reasons.begin(), verdict.reasons.end(), r) == verdict.reasons.end()) {
      verdict.reasons.push_back(r);
    }
  };

  const std::vector<int> subject = record.subject.token_indices();
  const std::vector<int> object = record.object.token_indices();

  if (object.empty()) add_reason(TierReason::EmptyObject);

  bool subject_linked = is_linked_phrase(subject, sentence);
  bool object_linked = is_linked_phrase(object, sentence);

  static const std::set<std::string> kPronoun = {"PRP", "PRP$"};
  static const std::set<std::string> kDeterminer = {"DT"};
  static const std::set<std::string> kWh = {"WP", "WDT", "WP$"};

  auto check_argument = [&](const std::vector<int>& indices, bool linked) {
    if (indices.empty()) return;  // reported as empty-object above
    if (linked || is_entity_span(indices, sentence) ||
        matches_page_title(indices, sentence, page_titles)) {
      return;
    }
    if (all_pos_in(indices, sentence, kPronoun)) {
      add_reason(TierReason::PronounArgument);
    } else if (all_pos_in(indices, sentence, kDeterminer)) {
      add_reason(TierReason::DeterminerArgument);
    } else if (all_pos_in(indices, sentence, kWh)) {
      add_reason(TierReason::WhArgument);
    } else {
      add_reason(TierReason::NonConceptArgument);
    }
  };
  check_argument(subject, subject_linked);
  check_argument(object, object_linked);

  // Links and recognized entities must not be split across constituents.
  struct Spread {
    std::set<int> parts;
  };
  std::map<std::tuple<long, long, std::string>, Spread> link_spread;
  std::map<int, Spread> entity_spread;  // keyed by run start token
  const Constituent* parts[3] = {&record.subject, &record.relation, &record.object};
  for (int part = 0; part < 3; ++part) {
    for (int t : parts[part]->token_indices()) {
      const auto& link = sentence.token(t).link;
      if (link) link_spread[{link->begin, link->end, link->target}].parts.insert(part);
      auto run = sentence.entity_run(t);
      if (!run.empty()) entity_spread[run.front()].parts.insert(part);
    }
  }
  for (const auto& [key, spread] : link_spread) {
    if (spread.parts.size() > 1) {
      add_reason(TierReason::SplitLink);
      break;
    }
  }
  for (const auto& [key, spread] : entity_spread) {
    if (spread.parts.size() > 1) {
      add_reason(TierReason::SplitEntity);
      break;
    }
  }

  verdict.clean = verdict.reasons.empty();
  verdict.linked = verdict.clean && subject_linked && object_linked;
  return verdict;
}

}  // namespace oiekit
