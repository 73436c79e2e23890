#include "oiekit/profile.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <sstream>

#include "json.hpp"
#include "oiekit/postprocess.hpp"

namespace oiekit {

using nlohmann::json;

namespace {

constexpr double kNano = 1e9;

// Top-k entries by count descending, key ascending on ties.
std::vector<std::pair<std::string, long long>> top_k_of(
    const std::map<std::string, long long>& counts, int k) {
  std::vector<std::pair<std::string, long long>> items(counts.begin(), counts.end());
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (static_cast<int>(items.size()) > k) items.resize(k);
  return items;
}

double ratio(long long part, long long whole) {
  return whole == 0 ? 0.0 : static_cast<double>(part) / static_cast<double>(whole);
}

}  // namespace

double LengthStat::mean() const {
  return n == 0 ? 0.0 : static_cast<double>(sum) / static_cast<double>(n);
}

double LengthStat::stddev() const {
  if (n == 0) return 0.0;
  double m = mean();
  double ex2 = static_cast<double>(sum_sq) / static_cast<double>(n);
  double var = ex2 - m * m;
  return var > 0 ? std::sqrt(var) : 0.0;
}

void FixedStat::add(double v) {
  long long units = std::llround(v * kNano);
  ++n;
  sum_nano += units;
  sum_sq_nano += static_cast<unsigned __int128>(units) * static_cast<unsigned __int128>(units);
}

double FixedStat::mean() const {
  return n == 0 ? 0.0 : static_cast<double>(sum_nano) / (kNano * static_cast<double>(n));
}

double FixedStat::stddev() const {
  if (n == 0) return 0.0;
  double m = mean();
  double ex2 = static_cast<double>(sum_sq_nano) / (kNano * kNano * static_cast<double>(n));
  double var = ex2 - m * m;
  return var > 0 ? std::sqrt(var) : 0.0;
}

void CorpusReport::add(const ExtractionRecord& record, const AnnotatedSentence& sentence) {
  ++total;
  bool has_negative = record.polarity == Polarity::Negative;
  bool has_possibility = record.modality == Modality::Possibility;
  bool has_quantity = !record.quantities.empty();
  bool has_attribution = record.attribution.has_value();
  bool has_time = false;
  bool has_space = false;
  for (const auto& a : record.spate) {
    if (is_temporal(a.kind)) has_time = true;
    if (is_spatial(a.kind)) has_space = true;
  }
  any_semantic += has_negative || has_possibility || has_quantity || has_attribution ||
                  has_time || has_space;
  negative_polarity += has_negative;
  possibility_modality += has_possibility;
  quantities += has_quantity;
  attribution += has_attribution;
  time += has_time;
  space += has_space;
  space_or_time += has_space || has_time;
  space_and_time += has_space && has_time;

  long long subject_n = static_cast<long long>(record.subject.entries.size());
  long long relation_n = static_cast<long long>(record.relation.entries.size());
  long long object_n = static_cast<long long>(record.object.entries.size());
  subject_length.add(subject_n);
  relation_length.add(relation_n);
  object_length.add(object_n);
  triple_length.add(subject_n + relation_n + object_n);
  if (record.confidence) confidence.add(*record.confidence);

  std::string subject_type = dominant_ner(record.subject, sentence);
  ++ner_histogram[subject_type];
  if (!record.object.empty()) {
    std::string object_type = dominant_ner(record.object, sentence);
    ++ner_histogram[object_type];
    bool subject_typed = subject_type != "O";
    bool object_typed = object_type != "O";
    if (subject_typed && object_typed) {
      ++pairs_both_typed;
    } else if (subject_typed || object_typed) {
      ++pairs_one_typed;
    } else {
      ++pairs_none_typed;
    }
    ++relations_by_type_pair[{subject_type, object_type}]
                            [lemmatized_relation(record, sentence)];
  }
}

void CorpusReport::merge(const CorpusReport& other) {
  total += other.total;
  any_semantic += other.any_semantic;
  negative_polarity += other.negative_polarity;
  possibility_modality += other.possibility_modality;
  quantities += other.quantities;
  attribution += other.attribution;
  time += other.time;
  space += other.space;
  space_or_time += other.space_or_time;
  space_and_time += other.space_and_time;
  triple_length.merge(other.triple_length);
  subject_length.merge(other.subject_length);
  relation_length.merge(other.relation_length);
  object_length.merge(other.object_length);
  confidence.merge(other.confidence);
  for (const auto& [k, v] : other.ner_histogram) ner_histogram[k] += v;
  pairs_both_typed += other.pairs_both_typed;
  pairs_one_typed += other.pairs_one_typed;
  pairs_none_typed += other.pairs_none_typed;
  for (const auto& [pair, rels] : other.relations_by_type_pair) {
    auto& mine = relations_by_type_pair[pair];
    for (const auto& [rel, count] : rels) mine[rel] += count;
  }
}

namespace {

json stat_json(const LengthStat& s) {
  return json{{"n", s.n}, {"mean", s.mean()}, {"stddev", s.stddev()}};
}

json count_json(long long count, long long total) {
  return json{{"count", count}, {"fraction", ratio(count, total)}};
}

}  // namespace

std::string CorpusReport::to_json(int top_k) const {
  json pairs = json::array();
  for (const auto& [pair, rels] : relations_by_type_pair) {
    json top = json::array();
    for (const auto& [rel, count] : top_k_of(rels, top_k)) {
      top.push_back(json{{"relation", rel}, {"count", count}});
    }
    pairs.push_back(json{{"subject_type", pair.first},
                         {"object_type", pair.second},
                         {"top_relations", std::move(top)}});
  }
  json j{{"total_triples", total},
         {"semantic_annotations",
          json{{"any", count_json(any_semantic, total)},
               {"negative_polarity", count_json(negative_polarity, total)},
               {"possibility_modality", count_json(possibility_modality, total)},
               {"quantities", count_json(quantities, total)},
               {"attribution", count_json(attribution, total)},
               {"time", count_json(time, total)},
               {"space", count_json(space, total)},
               {"space_or_time", count_json(space_or_time, total)},
               {"space_and_time", count_json(space_and_time, total)}}},
         {"lengths",
          json{{"triple", stat_json(triple_length)},
               {"subject", stat_json(subject_length)},
               {"relation", stat_json(relation_length)},
               {"object", stat_json(object_length)}}},
         {"confidence",
          json{{"n", confidence.n}, {"mean", confidence.mean()}, {"stddev", confidence.stddev()}}},
         {"ner_histogram", ner_histogram},
         {"argument_pairs",
          json{{"both_typed", pairs_both_typed},
               {"one_typed", pairs_one_typed},
               {"none_typed", pairs_none_typed}}},
         {"relations_by_type_pair", std::move(pairs)}};
  return j.dump(2);
}

std::string CorpusReport::to_text(int top_k) const {
  std::ostringstream out;
  char line[160];
  auto row = [&](const char* label, long long count) {
    std::snprintf(line, sizeof line, "  %-28s %12lld (%5.1f%%)\n", label, count,
                  100.0 * ratio(count, total));
    out << line;
  };
  out << "Total triples: " << total << "\n";
  out << "Triples with semantic annotations:\n";
  row("any", any_semantic);
  row("negative polarity", negative_polarity);
  row("possibility modality", possibility_modality);
  row("quantities", quantities);
  row("attribution", attribution);
  row("time", time);
  row("space", space);
  row("space OR time", space_or_time);
  row("space AND time", space_and_time);
  auto stat_row = [&](const char* label, double mean, double sd) {
    std::snprintf(line, sizeof line, "  %-28s %8.2f +/- %.2f\n", label, mean, sd);
    out << line;
  };
  out << "Length in tokens:\n";
  stat_row("triple", triple_length.mean(), triple_length.stddev());
  stat_row("subject", subject_length.mean(), subject_length.stddev());
  stat_row("relation", relation_length.mean(), relation_length.stddev());
  stat_row("object", object_length.mean(), object_length.stddev());
  out << "Confidence score:\n";
  stat_row("scored triples", confidence.mean(), confidence.stddev());
  out << "NER types of arguments:\n";
  for (const auto& [k, v] : ner_histogram) row(k.c_str(), v);
  out << "Argument pairs (non-empty object): both " << pairs_both_typed << ", one "
      << pairs_one_typed << ", none " << pairs_none_typed << "\n";
  for (const auto& [pair, rels] : relations_by_type_pair) {
    out << "Top relations " << pair.first << "-" << pair.second << ":\n";
    for (const auto& [rel, count] : top_k_of(rels, top_k)) {
      std::snprintf(line, sizeof line, "  %-40s %12lld\n", rel.c_str(), count);
      out << line;
    }
  }
  return out.str();
}

void RelationFrequencies::add(const ExtractionRecord& record, const AnnotatedSentence& sentence) {
  ++counts[{lemmatized_relation(record, sentence), dominant_ner(record.subject, sentence),
            dominant_ner(record.object, sentence)}];
}

void RelationFrequencies::merge(const RelationFrequencies& other) {
  for (const auto& [k, v] : other.counts) counts[k] += v;
}

RelationFrequencyTable RelationFrequencies::totals() const {
  RelationFrequencyTable table;
  for (const auto& [k, v] : counts) table.add(std::get<0>(k), v);
  return table;
}

std::string RelationFrequencies::to_tsv() const {
  // Count descending, then relation/subject/object ascending.
  std::vector<std::pair<std::tuple<std::string, std::string, std::string>, long long>> items(
      counts.begin(), counts.end());
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  std::ostringstream out;
  for (const auto& [k, v] : items) {
    out << std::get<0>(k) << '\t' << std::get<1>(k) << '\t' << std::get<2>(k) << '\t' << v << '\n';
  }
  return out.str();
}

RelationFrequencies RelationFrequencies::from_tsv(std::istream& in) {
  RelationFrequencies out;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == '\t') {
        fields.push_back(line.substr(start, i - start));
        start = i + 1;
      }
    }
    if (fields.size() != 4) {
      throw std::runtime_error("relation frequency line " + std::to_string(lineno) +
                               ": expected 4 tab-separated fields");
    }
    out.counts[{fields[0], fields[1], fields[2]}] += std::stoll(fields[3]);
  }
  return out;
}

}  // namespace oiekit
