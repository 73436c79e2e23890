#include "oiekit/spate.hpp"

#include <algorithm>
#include <array>
#include <functional>

namespace oiekit {

namespace {

const std::set<std::string> kTripleExclusions = {"rcmod", "punct", "appos", "dep",
                                                 "cc",    "conj",  "vmod"};
const std::set<std::string> kArgumentExclusions = {"rcmod", "punct", "appos", "cc", "conj"};

// c plus its descendants, not descending through excluded labels.
std::vector<int> collect_phrase(const DependencyGraph& graph, int c,
                                const std::set<std::string>& exclusions) {
  std::vector<int> out;
  std::function<void(int)> walk = [&](int node) {
    out.push_back(node);
    for (const auto& [child, label] : graph.children_with_labels(node)) {
      if (!exclusions.count(label)) walk(child);
    }
  };
  walk(c);
  std::sort(out.begin(), out.end());
  return out;
}

bool has_noun_or_adjective_tag(const Token& t) {
  return t.pos.rfind("NN", 0) == 0 || t.pos.rfind("JJ", 0) == 0;
}

std::vector<int> below(const std::vector<int>& phrase, int anchor) {
  std::vector<int> out;
  for (int t : phrase) {
    if (t < anchor) out.push_back(t);
  }
  return out;
}

std::vector<int> above(const std::vector<int>& phrase, int anchor) {
  std::vector<int> out;
  for (int t : phrase) {
    if (t > anchor) out.push_back(t);
  }
  return out;
}

Constituent remove_tokens(const Constituent& c, const std::set<int>& gone) {
  Constituent out;
  for (const auto& e : c.entries) {
    if (e.is_marker() || !gone.count(e.index)) out.entries.push_back(e);
  }
  return out;
}

// Entries of source whose tokens/markers survive in the allowed sets, in
// ascending token order (markers keep their place before the next token).
Constituent restrict_constituent(const Constituent& source, const std::set<int>& allowed_tokens,
                                 const std::set<std::string>& allowed_markers) {
  Constituent out;
  for (const auto& e : source.entries) {
    if (e.is_marker() ? allowed_markers.count(e.marker) > 0 : allowed_tokens.count(e.index) > 0) {
      out.entries.push_back(e);
    }
  }
  return out;
}

Constituent merge_sorted(const std::vector<Constituent>& parts) {
  // Sort by token index; a marker rides with the next token entry of its part.
  std::vector<std::pair<long, ConstituentToken>> keyed;
  for (const auto& part : parts) {
    long pending_key = 0;
    std::vector<ConstituentToken> pending;
    for (const auto& e : part.entries) {
      if (e.is_marker()) {
        pending.push_back(e);
        continue;
      }
      for (auto& m : pending) keyed.emplace_back(e.index, m);
      pending.clear();
      keyed.emplace_back(e.index, e);
      pending_key = e.index;
    }
    for (auto& m : pending) keyed.emplace_back(pending_key + 1, m);
  }
  std::stable_sort(keyed.begin(), keyed.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  Constituent out;
  for (auto& [key, entry] : keyed) out.entries.push_back(std::move(entry));
  return out;
}

void append_dropped(ExtractionRecord& record, const std::set<int>& tokens) {
  for (int t : tokens) {
    if (std::find(record.dropped_words.begin(), record.dropped_words.end(), t) ==
        record.dropped_words.end()) {
      record.dropped_words.push_back(t);
    }
  }
}

struct RuleMatch {
  SpateAnnotation annotation;
  int predicate_token = 0;  // 0 when the rule has no lexicalized predicate
};

// All tokens the match would take out of the triple.
std::set<int> match_token_set(const RuleMatch& m) {
  std::set<int> out = m.annotation.token_set();
  if (m.predicate_token != 0) out.insert(m.predicate_token);
  return out;
}

// Applies one triple-level match to the record: either n-ary compaction
// (the annotated phrase equals a whole argument constituent of a >3-ary
// extraction) or plain removal from relation and object. Tokens that leave
// the triple without entering the annotation are recorded as dropped words.
void apply_triple_match(ExtractionRecord& record, const RuleMatch& match) {
  const std::set<int> taken = match_token_set(match);
  const std::set<int> annotated = match.annotation.token_set();

  std::set<int> before = record.relation.token_set();
  {
    auto o = record.object.token_set();
    before.insert(o.begin(), o.end());
  }

  bool compacted = false;
  if (record.nary.arguments.size() >= 2) {
    for (std::size_t i = 0; i < record.nary.arguments.size(); ++i) {
      if (record.nary.arguments[i].token_set() == taken &&
          record.nary.arguments[i].marker_set().empty()) {
        std::set<std::string> markers = record.relation.marker_set();
        auto om = record.object.marker_set();
        markers.insert(om.begin(), om.end());

        record.relation = restrict_constituent(record.nary.relation, before, markers);
        std::vector<Constituent> kept;
        for (std::size_t k = 0; k < record.nary.arguments.size(); ++k) {
          if (k != i) kept.push_back(restrict_constituent(record.nary.arguments[k], before, markers));
        }
        record.object = merge_sorted(kept);
        compacted = true;
        break;
      }
    }
  }
  if (!compacted) {
    record.relation = remove_tokens(record.relation, taken);
    record.object = remove_tokens(record.object, taken);
  }

  std::set<int> after = record.relation.token_set();
  {
    auto o = record.object.token_set();
    after.insert(o.begin(), o.end());
  }
  std::set<int> dropped;
  for (int t : before) {
    if (!after.count(t) && !annotated.count(t)) dropped.insert(t);
  }
  append_dropped(record, dropped);
}

enum class Flavor { Temporal, Spatial };

// Temporal membership for the triple rules; for the spatial flavor a
// contiguous LOCATION run plays the role of the expression.
bool in_expression(const RuleContext& ctx, Flavor flavor, int token) {
  if (flavor == Flavor::Temporal) return ctx.temporal_index.count(token) > 0;
  return ctx.location_index.count(token) > 0;
}

std::optional<TimexPayload> payload_for(const RuleContext& ctx, Flavor flavor, int token) {
  if (flavor == Flavor::Spatial) return std::nullopt;
  const TemporalExpression* t = ctx.temporal_index.at(token);
  return TimexPayload{t->type, t->value, t->xml};
}

RuleMatch make_triple_match(const RuleContext& ctx, Flavor flavor, int anchor, int predicate_token) {
  RuleMatch m;
  m.predicate_token = predicate_token;
  auto& a = m.annotation;
  a.kind = flavor == Flavor::Temporal ? SpateKind::TemporalTriple : SpateKind::SpatialTriple;
  a.target = SpateTarget::Triple;
  a.core_words = collect_phrase(ctx.sentence->depgraph, anchor, kTripleExclusions);
  a.pre_mods = below(a.core_words, anchor);
  a.post_mods = above(a.core_words, anchor);
  a.timex = payload_for(ctx, flavor, anchor);
  if (predicate_token != 0) a.predicate = ctx.sentence->token(predicate_token).surface;
  return m;
}

// Collects triple-level matches under head h in token order. The temporal
// flavor checks tmod/advmod children, prep+pobj, and recurses through xcomp;
// the spatial flavor checks prep+pobj only.
void collect_triple_matches(const RuleContext& ctx, Flavor flavor, int head,
                            std::set<int>& visited_heads, std::vector<RuleMatch>& out) {
  if (!visited_heads.insert(head).second) return;
  for (const auto& [child, label] : ctx.sentence->depgraph.children_with_labels(head)) {
    if (flavor == Flavor::Temporal && (label == "tmod" || label == "advmod")) {
      if (in_expression(ctx, flavor, child)) {
        out.push_back(make_triple_match(ctx, flavor, child, 0));
      }
    } else if (label == "prep") {
      for (const auto& [grandchild, glabel] : ctx.sentence->depgraph.children_with_labels(child)) {
        if (glabel == "pobj" && in_expression(ctx, flavor, grandchild)) {
          out.push_back(make_triple_match(ctx, flavor, grandchild, child));
        }
      }
    } else if (flavor == Flavor::Temporal && label == "xcomp") {
      collect_triple_matches(ctx, flavor, child, visited_heads, out);
    }
  }
}

SpateResult run_triple_rules(const RuleContext& ctx, const ExtractionRecord& record, Flavor flavor) {
  SpateResult result{record, {}};
  if (record.relation.token_indices().empty()) return result;

  std::vector<RuleMatch> matches;
  std::set<int> visited;
  collect_triple_matches(ctx, flavor, relation_head(ctx, record), visited, matches);

  for (const auto& match : matches) {
    const std::set<int> taken = match_token_set(match);
    std::set<int> present = result.record.relation.token_set();
    {
      auto o = result.record.object.token_set();
      present.insert(o.begin(), o.end());
    }
    bool in_triple = std::all_of(taken.begin(), taken.end(),
                                 [&](int t) { return present.count(t) > 0; });
    if (!in_triple) continue;
    apply_triple_match(result.record, match);
    result.annotations.push_back(match.annotation);
  }
  return result;
}

const std::set<std::string> kArgumentTriggerLabels = {"amod", "acomp",  "advmod", "nn",
                                                      "num",  "number", "tmod"};

// True when the head word already belongs to the same expression as the
// candidate child, so the pair forms one phrase rather than a modifier.
bool same_expression(const RuleContext& ctx, Flavor flavor, int head, int child) {
  if (flavor == Flavor::Temporal) {
    auto it = ctx.temporal_index.find(child);
    return it != ctx.temporal_index.end() && it->second->covers(head);
  }
  if (!ctx.location_index.count(head)) return false;
  auto run = ctx.sentence->entity_run(child);
  return std::binary_search(run.begin(), run.end(), head);
}

SpateResult run_argument_rules(const RuleContext& ctx, const ExtractionRecord& record, Flavor flavor) {
  SpateResult result{record, {}};
  const auto& graph = ctx.sentence->depgraph;

  for (SpateTarget target : {SpateTarget::Subject, SpateTarget::Object}) {
    Constituent& constituent =
        target == SpateTarget::Subject ? result.record.subject : result.record.object;
    for (int w : constituent.token_indices()) {
      if (!constituent.contains_token(w)) continue;  // removed by an earlier match
      if (!has_noun_or_adjective_tag(ctx.sentence->token(w))) continue;
      for (const auto& [child, label] : graph.children_with_labels(w)) {
        if (!kArgumentTriggerLabels.count(label)) continue;
        if (!in_expression(ctx, flavor, child)) continue;
        if (same_expression(ctx, flavor, w, child)) continue;
        auto phrase = collect_phrase(graph, child, kArgumentExclusions);
        bool in_constituent = std::all_of(phrase.begin(), phrase.end(),
                                          [&](int t) { return constituent.contains_token(t); });
        if (!in_constituent) continue;

        SpateAnnotation a;
        a.kind = flavor == Flavor::Temporal ? SpateKind::TemporalArgument : SpateKind::SpatialArgument;
        a.target = target;
        a.head = w;
        a.core_words = phrase;
        a.pre_mods = below(phrase, child);
        a.post_mods = above(phrase, child);
        a.timex = payload_for(ctx, flavor, child);
        constituent = remove_tokens(constituent, std::set<int>(phrase.begin(), phrase.end()));
        result.annotations.push_back(std::move(a));
      }
    }
  }
  return result;
}

}  // namespace

RuleContext RuleContext::build(const AnnotatedSentence& sentence) {
  RuleContext ctx;
  ctx.sentence = &sentence;
  for (const auto& t : sentence.timexes) {
    for (int i = t.first_token; i <= t.last_token; ++i) ctx.temporal_index[i] = &t;
  }
  for (const auto& tok : sentence.tokens) {
    if (tok.ner == "LOCATION") ctx.location_index.insert(tok.index);
  }
  return ctx;
}

int relation_head(const RuleContext& ctx, const ExtractionRecord& record) {
  return constituent_head(record.relation, ctx.sentence->depgraph);
}

SpateResult annotate_temporal_triple(const RuleContext& ctx, const ExtractionRecord& record) {
  return run_triple_rules(ctx, record, Flavor::Temporal);
}

SpateResult annotate_temporal_arguments(const RuleContext& ctx, const ExtractionRecord& record) {
  return run_argument_rules(ctx, record, Flavor::Temporal);
}

SpateResult annotate_spatial(const RuleContext& ctx, const ExtractionRecord& record) {
  SpateResult triple_pass = run_triple_rules(ctx, record, Flavor::Spatial);
  SpateResult argument_pass = run_argument_rules(ctx, triple_pass.record, Flavor::Spatial);
  argument_pass.annotations.insert(argument_pass.annotations.begin(),
                                   triple_pass.annotations.begin(), triple_pass.annotations.end());
  return argument_pass;
}

std::vector<SpateAnnotation> detect_references(const RuleContext& ctx,
                                               const ExtractionRecord& record) {
  std::vector<SpateAnnotation> out;
  for (SpateTarget target : {SpateTarget::Subject, SpateTarget::Object}) {
    const Constituent& constituent =
        target == SpateTarget::Subject ? record.subject : record.object;
    auto indices = constituent.token_indices();
    if (indices.empty()) continue;

    const TemporalExpression* covering = ctx.sentence->timex_covering(indices.front());
    bool exact_timex = covering != nullptr &&
                       covering->last_token - covering->first_token + 1 ==
                           static_cast<int>(indices.size()) &&
                       std::all_of(indices.begin(), indices.end(),
                                   [&](int t) { return covering->covers(t); });
    if (exact_timex) {
      SpateAnnotation a;
      a.kind = SpateKind::TemporalReference;
      a.target = target;
      a.core_words = indices;
      a.timex = TimexPayload{covering->type, covering->value, covering->xml};
      out.push_back(std::move(a));
      continue;
    }
    bool all_location = std::all_of(indices.begin(), indices.end(),
                                    [&](int t) { return ctx.location_index.count(t) > 0; });
    if (all_location) {
      SpateAnnotation a;
      a.kind = SpateKind::SpatialReference;
      a.target = target;
      a.core_words = indices;
      out.push_back(std::move(a));
    }
  }
  return out;
}

ExtractionRecord apply_spate(const RuleContext& ctx, ExtractionRecord record) {
  auto absorb = [&record](SpateResult&& result) {
    record = std::move(result.record);
    for (auto& a : result.annotations) {
      if (std::find(record.spate.begin(), record.spate.end(), a) == record.spate.end()) {
        record.spate.push_back(std::move(a));
      }
    }
  };
  absorb(annotate_temporal_triple(ctx, record));
  absorb(annotate_temporal_arguments(ctx, record));
  absorb(annotate_spatial(ctx, record));
  for (auto& a : detect_references(ctx, record)) {
    if (std::find(record.spate.begin(), record.spate.end(), a) == record.spate.end()) {
      record.spate.push_back(std::move(a));
    }
  }
  return record;
}

}  // namespace oiekit
