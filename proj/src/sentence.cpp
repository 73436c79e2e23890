#include "oiekit/sentence.hpp"

#include <algorithm>

namespace oiekit {

int DependencyGraph::governor_of(int token) const {
  for (const auto& e : edges) {
    if (e.dependent == token) return e.governor;
  }
  return 0;
}

const std::string* DependencyGraph::incoming_label(int token) const {
  for (const auto& e : edges) {
    if (e.dependent == token) return &e.label;
  }
  return nullptr;
}

std::vector<int> DependencyGraph::children(int token) const {
  std::vector<int> out;
  for (const auto& e : edges) {
    if (e.governor == token) out.push_back(e.dependent);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<int, std::string>> DependencyGraph::children_with_labels(int token) const {
  std::vector<std::pair<int, std::string>> out;
  for (const auto& e : edges) {
    if (e.governor == token) out.emplace_back(e.dependent, e.label);
  }
  std::sort(out.begin(), out.end());
  return out;
}

const TemporalExpression* AnnotatedSentence::timex_covering(int token) const {
  for (const auto& t : timexes) {
    if (t.covers(token)) return &t;
  }
  return nullptr;
}

std::vector<int> AnnotatedSentence::entity_run(int index) const {
  std::vector<int> run;
  if (!has_token(index)) return run;
  const std::string& label = token(index).ner;
  if (label == "O" || label.empty()) return run;
  int first = index;
  while (first > 1 && token(first - 1).ner == label) --first;
  int last = index;
  while (last < size() && token(last + 1).ner == label) ++last;
  for (int i = first; i <= last; ++i) run.push_back(i);
  return run;
}

std::string AnnotatedSentence::surface_join(const std::vector<int>& indices) const {
  std::string out;
  for (int i : indices) {
    if (!out.empty()) out += ' ';
    out += token(i).surface;
  }
  return out;
}

std::string AnnotatedSentence::lemma_join(const std::vector<int>& indices) const {
  std::string out;
  for (int i : indices) {
    if (!out.empty()) out += ' ';
    out += token(i).lemma;
  }
  return out;
}

}  // namespace oiekit
