#include "oiekit/json_io.hpp"

#include <algorithm>
#include <unordered_set>

#include "json.hpp"

namespace oiekit {

using nlohmann::json;

namespace {

void require(bool cond, const std::string& reason) {
  if (!cond) throw std::invalid_argument(reason);
}

json links_to_json(const WikiLink& l) {
  return json{{"begin", l.begin}, {"end", l.end}, {"anchor", l.anchor}, {"target", l.target}};
}

json sentence_to_json(const AnnotatedSentence& s) {
  json tokens = json::array();
  for (const auto& t : s.tokens) {
    json jt{{"index", t.index}, {"surface", t.surface}, {"lemma", t.lemma},
            {"pos", t.pos},     {"ner", t.ner},         {"begin", t.begin},
            {"end", t.end}};
    if (t.link) jt["link"] = links_to_json(*t.link);
    tokens.push_back(std::move(jt));
  }
  json deps = json::array();
  for (const auto& e : s.depgraph.edges) {
    deps.push_back(json{{"gov", e.governor}, {"dep", e.dependent}, {"label", e.label}});
  }
  json timex = json::array();
  for (const auto& t : s.timexes) {
    timex.push_back(json{{"first_token", t.first_token},
                         {"last_token", t.last_token},
                         {"type", t.type},
                         {"value", t.value},
                         {"xml", t.xml}});
  }
  return json{{"kind", "sentence"},
              {"article_id", s.article_id},
              {"sentence_number", s.sentence_number},
              {"tokens", std::move(tokens)},
              {"deps", std::move(deps)},
              {"timex", std::move(timex)}};
}

json constituent_to_json(const Constituent& c) {
  json out = json::array();
  for (const auto& e : c.entries) {
    if (e.is_marker()) {
      out.push_back(e.marker);
    } else {
      out.push_back(e.index);
    }
  }
  return out;
}

json spate_to_json(const SpateAnnotation& a) {
  json out{{"kind", to_string(a.kind)},
           {"core", a.core_words},
           {"pre_mods", a.pre_mods},
           {"post_mods", a.post_mods},
           {"target", to_string(a.target)}};
  if (!a.predicate.empty()) out["predicate"] = a.predicate;
  if (a.timex) out["timex"] = json{{"type", a.timex->type}, {"value", a.timex->value}, {"xml", a.timex->xml}};
  if (a.head) out["head"] = *a.head;
  return out;
}

json record_to_json(const ExtractionRecord& r, const std::string& kind) {
  json nary_args = json::array();
  for (const auto& a : r.nary.arguments) nary_args.push_back(constituent_to_json(a));
  json quantities = json::array();
  for (const auto& q : r.quantities) {
    quantities.push_back(json{{"marker", q.marker}, {"tokens", q.tokens}});
  }
  json spate = json::array();
  for (const auto& a : r.spate) spate.push_back(spate_to_json(a));

  json out{{"kind", kind},
           {"article_id", r.article_id},
           {"sentence_number", r.sentence_number},
           {"extraction_index", r.extraction_index},
           {"nary",
            json{{"subject", constituent_to_json(r.nary.subject)},
                 {"relation", constituent_to_json(r.nary.relation)},
                 {"arguments", std::move(nary_args)},
                 {"clause_type", r.nary.clause_type}}},
           {"subject", constituent_to_json(r.subject)},
           {"relation", constituent_to_json(r.relation)},
           {"object", constituent_to_json(r.object)},
           {"polarity", to_string(r.polarity)},
           {"negative_words", r.negative_words},
           {"modality", to_string(r.modality)},
           {"modality_words", r.modality_words},
           {"quantities", std::move(quantities)},
           {"dropped_words", r.dropped_words},
           {"extraction_type", r.extraction_type},
           {"spate", std::move(spate)},
           {"canonical_links", r.canonical_links},
           {"in_minie_d", r.in_minie_d},
           {"in_minie_a", r.in_minie_a}};
  if (r.attribution) {
    const auto& at = *r.attribution;
    json jspate = json::array();
    for (const auto& a : at.spate) jspate.push_back(spate_to_json(a));
    out["attribution"] = json{{"phrase", constituent_to_json(at.phrase)},
                              {"predicate", at.predicate},
                              {"polarity", to_string(at.polarity)},
                              {"modality", to_string(at.modality)},
                              {"spate", std::move(jspate)}};
  }
  if (r.confidence) out["confidence"] = *r.confidence;
  return out;
}

WikiLink link_from_json(const json& j) {
  WikiLink l;
  l.begin = j.at("begin").get<long>();
  l.end = j.at("end").get<long>();
  l.anchor = j.at("anchor").get<std::string>();
  l.target = j.at("target").get<std::string>();
  return l;
}

AnnotatedSentence sentence_from_json(const json& j) {
  AnnotatedSentence s;
  s.article_id = j.at("article_id").get<long>();
  s.sentence_number = j.at("sentence_number").get<int>();
  for (const auto& jt : j.at("tokens")) {
    Token t;
    t.index = jt.at("index").get<int>();
    t.surface = jt.at("surface").get<std::string>();
    t.lemma = jt.at("lemma").get<std::string>();
    t.pos = jt.at("pos").get<std::string>();
    t.ner = jt.at("ner").get<std::string>();
    t.begin = jt.at("begin").get<long>();
    t.end = jt.at("end").get<long>();
    if (jt.contains("link")) t.link = link_from_json(jt.at("link"));
    s.tokens.push_back(std::move(t));
  }
  for (const auto& je : j.at("deps")) {
    s.depgraph.edges.push_back(DependencyEdge{je.at("gov").get<int>(), je.at("dep").get<int>(),
                                              je.at("label").get<std::string>()});
  }
  for (const auto& jt : j.at("timex")) {
    s.timexes.push_back(TemporalExpression{jt.at("first_token").get<int>(),
                                           jt.at("last_token").get<int>(),
                                           jt.at("type").get<std::string>(),
                                           jt.at("value").get<std::string>(),
                                           jt.at("xml").get<std::string>()});
  }
  validate_sentence(s);
  return s;
}

Constituent constituent_from_json(const json& j) {
  Constituent c;
  for (const auto& e : j) {
    if (e.is_string()) {
      c.entries.push_back(marker_entry(e.get<std::string>()));
    } else if (e.is_number_integer()) {
      c.entries.push_back(token_entry(e.get<int>()));
    } else {
      throw std::invalid_argument("constituent entries must be token indices or markers");
    }
  }
  return c;
}

SpateAnnotation spate_from_json(const json& j) {
  SpateAnnotation a;
  a.kind = spate_kind_from_string(j.at("kind").get<std::string>());
  a.core_words = j.at("core").get<std::vector<int>>();
  a.pre_mods = j.at("pre_mods").get<std::vector<int>>();
  a.post_mods = j.at("post_mods").get<std::vector<int>>();
  a.target = spate_target_from_string(j.at("target").get<std::string>());
  if (j.contains("predicate")) a.predicate = j.at("predicate").get<std::string>();
  if (j.contains("timex")) {
    const auto& jt = j.at("timex");
    a.timex = TimexPayload{jt.at("type").get<std::string>(), jt.at("value").get<std::string>(),
                           jt.at("xml").get<std::string>()};
  }
  if (j.contains("head")) a.head = j.at("head").get<int>();
  return a;
}

ExtractionRecord record_from_json(const json& j) {
  ExtractionRecord r;
  r.article_id = j.at("article_id").get<long>();
  r.sentence_number = j.at("sentence_number").get<int>();
  r.extraction_index = j.at("extraction_index").get<int>();
  const auto& jn = j.at("nary");
  r.nary.subject = constituent_from_json(jn.at("subject"));
  r.nary.relation = constituent_from_json(jn.at("relation"));
  for (const auto& ja : jn.at("arguments")) r.nary.arguments.push_back(constituent_from_json(ja));
  r.nary.clause_type = jn.at("clause_type").get<std::string>();
  r.subject = constituent_from_json(j.at("subject"));
  r.relation = constituent_from_json(j.at("relation"));
  r.object = constituent_from_json(j.at("object"));
  r.polarity = polarity_from_string(j.at("polarity").get<std::string>());
  r.negative_words = j.at("negative_words").get<std::vector<int>>();
  r.modality = modality_from_string(j.at("modality").get<std::string>());
  r.modality_words = j.at("modality_words").get<std::vector<int>>();
  if (j.contains("attribution")) {
    const auto& ja = j.at("attribution");
    Attribution at;
    at.phrase = constituent_from_json(ja.at("phrase"));
    at.predicate = ja.at("predicate").get<std::string>();
    at.polarity = polarity_from_string(ja.at("polarity").get<std::string>());
    at.modality = modality_from_string(ja.at("modality").get<std::string>());
    for (const auto& js : ja.at("spate")) at.spate.push_back(spate_from_json(js));
    r.attribution = std::move(at);
  }
  for (const auto& jq : j.at("quantities")) {
    r.quantities.push_back(Quantity{jq.at("marker").get<std::string>(), jq.at("tokens").get<std::vector<int>>()});
  }
  r.dropped_words = j.at("dropped_words").get<std::vector<int>>();
  r.extraction_type = j.at("extraction_type").get<std::string>();
  for (const auto& js : j.at("spate")) r.spate.push_back(spate_from_json(js));
  if (j.contains("confidence")) r.confidence = j.at("confidence").get<double>();
  r.canonical_links = j.at("canonical_links").get<std::map<std::string, std::string>>();
  if (j.contains("in_minie_d")) r.in_minie_d = j.at("in_minie_d").get<bool>();
  if (j.contains("in_minie_a")) r.in_minie_a = j.at("in_minie_a").get<bool>();
  validate_record(r);
  return r;
}

void validate_constituent(const Constituent& c, const std::string& what) {
  int prev = 0;
  for (const auto& e : c.entries) {
    if (e.is_marker()) {
      require(!e.marker.empty(), what + ": empty quantity marker");
      continue;
    }
    require(e.index >= 1, what + ": token index out of range");
    require(e.index > prev, what + ": token indices not strictly increasing");
    prev = e.index;
  }
}

}  // namespace

void validate_sentence(const AnnotatedSentence& s) {
  require(s.sentence_number >= 0, "negative sentence number");
  int expected = 1;
  long prev_end = -1;
  for (const auto& t : s.tokens) {
    require(t.index == expected, "token indices must be 1..n in order");
    require(t.begin < t.end, "token span empty or inverted");
    require(t.begin >= prev_end, "token spans overlap");
    if (t.link) require(t.link->begin < t.link->end, "link span empty or inverted");
    prev_end = t.end;
    ++expected;
  }
  int roots = 0;
  std::unordered_set<int> dependents;
  for (const auto& e : s.depgraph.edges) {
    require(e.dependent >= 1 && e.dependent <= s.size(), "dangling dependency endpoint");
    require(e.governor == 0 || (e.governor >= 1 && e.governor <= s.size()),
            "dangling dependency endpoint");
    if (e.governor == 0) ++roots;
    require(dependents.insert(e.dependent).second, "token has two governors");
  }
  if (!s.depgraph.edges.empty()) require(roots == 1, "dependency graph must have exactly one root");
  // Cycle check: walking dependent -> governor must reach 0 within n steps.
  for (const auto& e : s.depgraph.edges) {
    int cur = e.dependent;
    int steps = 0;
    while (cur != 0) {
      cur = s.depgraph.governor_of(cur);
      require(++steps <= s.size() + 1, "dependency graph has a cycle");
    }
  }
  for (const auto& t : s.timexes) {
    require(t.first_token >= 1 && t.last_token <= s.size() && t.first_token <= t.last_token,
            "temporal expression span out of range");
  }
}

void validate_record(const ExtractionRecord& r) {
  validate_constituent(r.subject, "subject");
  validate_constituent(r.relation, "relation");
  validate_constituent(r.object, "object");
  validate_constituent(r.nary.subject, "nary subject");
  validate_constituent(r.nary.relation, "nary relation");
  for (const auto& a : r.nary.arguments) validate_constituent(a, "nary argument");
  require(!r.subject.empty(), "empty subject");
  require(!r.relation.empty(), "empty relation");
  require(!r.object.empty() || r.extraction_type == "SV", "empty object in non-SV extraction");
  require(r.nary.clause_type != "SV" || r.nary.arguments.empty(), "SV clause with arguments");
  if (r.confidence) {
    require(*r.confidence >= 0.0 && *r.confidence <= 1.0, "confidence out of range");
  }
  for (const auto* c : {&r.subject, &r.relation, &r.object}) {
    for (const auto& m : c->marker_set()) {
      require(r.find_quantity(m) != nullptr, "quantity marker without table entry: " + m);
    }
  }
  for (const auto& a : r.spate) {
    require(is_temporal(a.kind) == a.timex.has_value(),
            "temporal annotations carry a timex payload, spatial ones none");
    require(is_argument_kind(a.kind) == a.head.has_value(),
            "argument annotations carry a head word, others none");
  }
  if (r.attribution) require(!r.attribution->phrase.empty(), "attribution with empty phrase");
}

std::string serialize(const AnnotatedSentence& s) { return sentence_to_json(s).dump(); }

std::string serialize(const ExtractionRecord& r, const std::string& kind) {
  return record_to_json(r, kind).dump();
}

AnnotatedSentence deserialize_sentence(const std::string& line) {
  json j = json::parse(line);
  if (j.value("kind", "") != "sentence") throw std::invalid_argument("unknown kind");
  return sentence_from_json(j);
}

ExtractionRecord deserialize_record(const std::string& line) {
  json j = json::parse(line);
  std::string kind = j.value("kind", "");
  if (kind != "extraction" && kind != "triple") throw std::invalid_argument("unknown kind");
  return record_from_json(j);
}

namespace {

// Checks that every token reference in the record resolves into the sentence.
void check_cross_references(const ExtractionRecord& r, const AnnotatedSentence& s) {
  auto check_indices = [&](const std::vector<int>& v, const char* what) {
    for (int i : v) {
      if (!s.has_token(i)) throw std::invalid_argument(std::string("dangling token index in ") + what);
    }
  };
  for (const auto* c : {&r.subject, &r.relation, &r.object, &r.nary.subject, &r.nary.relation}) {
    check_indices(c->token_indices(), "constituent");
  }
  for (const auto& a : r.nary.arguments) check_indices(a.token_indices(), "nary argument");
  check_indices(r.negative_words, "negative words");
  check_indices(r.modality_words, "modality words");
  check_indices(r.dropped_words, "dropped words");
  for (const auto& q : r.quantities) check_indices(q.tokens, "quantity");
  for (const auto& a : r.spate) {
    check_indices(a.core_words, "annotation core");
    check_indices(a.pre_mods, "annotation pre-modifiers");
    check_indices(a.post_mods, "annotation post-modifiers");
    if (a.head) check_indices({*a.head}, "annotation head");
  }
  if (r.attribution) check_indices(r.attribution->phrase.token_indices(), "attribution");
}

}  // namespace

ParseStats parse_document(std::istream& in, Strictness strictness,
                          const std::function<void(DocumentEntry&&)>& sink) {
  ParseStats stats;
  std::string line;
  bool have_current = false;
  DocumentEntry current;
  auto flush = [&] {
    if (have_current) {
      sink(std::move(current));
      current = DocumentEntry{};
      have_current = false;
    }
  };
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    ++stats.lines;
    try {
      json j = json::parse(line);
      std::string kind = j.value("kind", "");
      if (kind == "sentence") {
        flush();
        current.sentence = sentence_from_json(j);
        have_current = true;
        ++stats.sentences;
      } else if (kind == "extraction" || kind == "triple") {
        ExtractionRecord r = record_from_json(j);
        if (!have_current) throw std::invalid_argument("orphan extraction");
        if (r.article_id != current.sentence.article_id ||
            r.sentence_number != current.sentence.sentence_number) {
          throw std::invalid_argument("orphan extraction");
        }
        check_cross_references(r, current.sentence);
        current.records.push_back(std::move(r));
        ++stats.records;
      } else {
        throw std::invalid_argument("unknown kind");
      }
    } catch (const json::exception& e) {
      if (strictness == Strictness::Strict) throw ParseError(lineno, e.what());
      ++stats.skipped;
    } catch (const std::invalid_argument& e) {
      if (strictness == Strictness::Strict) throw ParseError(lineno, e.what());
      ++stats.skipped;
    }
  }
  flush();
  return stats;
}

std::vector<DocumentEntry> parse_document(std::istream& in, Strictness strictness) {
  std::vector<DocumentEntry> out;
  parse_document(in, strictness, [&](DocumentEntry&& e) { out.push_back(std::move(e)); });
  return out;
}

}  // namespace oiekit
