#include "oiekit/postprocess.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <vector>

namespace oiekit {

std::string dominant_ner(const Constituent& c, const AnnotatedSentence& sentence) {
  int head = constituent_head(c, sentence.depgraph);
  if (head == 0) return "O";
  return sentence.token(head).ner;
}

std::optional<std::string> filter_be_mismatch(const ExtractionRecord& record,
                                              const AnnotatedSentence& sentence,
                                              BeFilterPolicy policy) {
  if (lemmatized_relation(record, sentence) != "be") return std::nullopt;
  std::string subject_type = dominant_ner(record.subject, sentence);
  std::string object_type = dominant_ner(record.object, sentence);
  if (subject_type == object_type) return std::nullopt;
  bool both_typed = subject_type != "O" && object_type != "O";
  if (!both_typed && policy == BeFilterPolicy::KeepWhenUntyped) return std::nullopt;
  return "be-ner-mismatch: " + subject_type + " vs " + object_type;
}

namespace {

struct LinkKey {
  long begin;
  long end;
  std::string target;
  auto operator<=>(const LinkKey&) const = default;
};

enum Part { kSubject = 0, kRelation = 1, kObject = 2 };

Constituent insert_tokens(const Constituent& c, const std::vector<int>& added) {
  Constituent out = c;
  for (int t : added) out.entries.push_back(token_entry(t));
  // Re-establish ascending token order; markers stay ahead of the token entry
  // they preceded.
  std::vector<std::pair<long, ConstituentToken>> keyed;
  long pending = 0;
  std::vector<ConstituentToken> markers;
  for (const auto& e : out.entries) {
    if (e.is_marker()) {
      markers.push_back(e);
      continue;
    }
    for (auto& m : markers) keyed.emplace_back(e.index, m);
    markers.clear();
    keyed.emplace_back(e.index, e);
    pending = e.index;
  }
  for (auto& m : markers) keyed.emplace_back(pending + 1, m);
  std::stable_sort(keyed.begin(), keyed.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  Constituent sorted;
  for (auto& [key, entry] : keyed) sorted.entries.push_back(std::move(entry));
  return sorted;
}

Constituent erase_tokens(const Constituent& c, const std::vector<int>& gone) {
  std::set<int> dead(gone.begin(), gone.end());
  Constituent out;
  for (const auto& e : c.entries) {
    if (e.is_marker() || !dead.count(e.index)) out.entries.push_back(e);
  }
  return out;
}

}  // namespace

RearrangeResult rearrange_links(const ExtractionRecord& record, const AnnotatedSentence& sentence) {
  RearrangeResult result{record, false};

  // Group triple tokens by the link they carry.
  std::map<LinkKey, std::array<std::vector<int>, 3>> groups;
  const Constituent* parts[3] = {&record.subject, &record.relation, &record.object};
  for (int part = 0; part < 3; ++part) {
    for (int t : parts[part]->token_indices()) {
      const auto& link = sentence.token(t).link;
      if (!link) continue;
      groups[LinkKey{link->begin, link->end, link->target}][part].push_back(t);
    }
  }

  for (auto& [key, members] : groups) {
    bool in_subject = !members[kSubject].empty();
    bool in_relation = !members[kRelation].empty();
    bool in_object = !members[kObject].empty();
    int spread = int(in_subject) + int(in_relation) + int(in_object);
    if (spread <= 1) continue;

    if (in_subject && in_object) {
      result.warned = true;  // no safe rearrangement exists
      continue;
    }
    if (in_relation && in_object) {
      // Grow the object: the anchor's relation tokens move right.
      result.record.relation = erase_tokens(result.record.relation, members[kRelation]);
      result.record.object = insert_tokens(result.record.object, members[kRelation]);
    } else if (in_subject && in_relation) {
      // Symmetric subject-side rule: the anchor's relation tokens move left.
      result.record.relation = erase_tokens(result.record.relation, members[kRelation]);
      result.record.subject = insert_tokens(result.record.subject, members[kRelation]);
    }
  }
  return result;
}

}  // namespace oiekit
