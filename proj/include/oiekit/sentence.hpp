#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace oiekit {

// A human-authored Wikipedia hyperlink attached to one or more tokens.
// begin/end are character offsets of the anchor within the source article.
struct WikiLink {
  long begin = 0;
  long end = 0;
  std::string anchor;
  std::string target;

  bool operator==(const WikiLink&) const = default;
};

struct Token {
  int index = 0;  // 1-based position within the sentence
  std::string surface;
  std::string lemma;
  std::string pos;  // Penn Treebank tag
  std::string ner;  // PERSON, LOCATION, ORGANIZATION, DATE, ..., O
  long begin = 0;   // character offsets within the article, [begin, end)
  long end = 0;
  std::optional<WikiLink> link;

  bool operator==(const Token&) const = default;
};

struct DependencyEdge {
  int governor = 0;  // token index, 0 for the root edge
  int dependent = 0;
  std::string label;

  bool operator==(const DependencyEdge&) const = default;
  auto operator<=>(const DependencyEdge&) const = default;
};

// A rooted tree over token indices. Exactly one edge has governor 0; every
// token is the dependent of at most one edge.
struct DependencyGraph {
  std::vector<DependencyEdge> edges;

  bool operator==(const DependencyGraph&) const = default;

  // 0 when the token is the root or unattached.
  int governor_of(int token) const;
  const std::string* incoming_label(int token) const;
  std::vector<int> children(int token) const;  // sorted by dependent index
  std::vector<std::pair<int, std::string>> children_with_labels(int token) const;
};

// A SUTime-style temporal expression over a contiguous token span.
struct TemporalExpression {
  int first_token = 0;
  int last_token = 0;
  std::string type;  // DATE, TIME, DURATION, SET
  std::string value; // normalized TIMEX3 value
  std::string xml;   // raw TIMEX3 element

  bool operator==(const TemporalExpression&) const = default;
  bool covers(int token) const { return token >= first_token && token <= last_token; }
};

struct AnnotatedSentence {
  long article_id = 0;
  int sentence_number = 0;
  std::vector<Token> tokens;  // sorted by index, indices 1..n
  DependencyGraph depgraph;
  std::vector<TemporalExpression> timexes;

  bool operator==(const AnnotatedSentence&) const = default;

  int size() const { return static_cast<int>(tokens.size()); }
  bool has_token(int index) const { return index >= 1 && index <= size(); }
  const Token& token(int index) const { return tokens.at(index - 1); }

  const TemporalExpression* timex_covering(int token) const;

  // Maximal run of identical non-O NER labels containing the token, as a
  // sorted index list. Empty when the token's label is O.
  std::vector<int> entity_run(int token) const;

  std::string surface_join(const std::vector<int>& indices) const;
  std::string lemma_join(const std::vector<int>& indices) const;
};

}  // namespace oiekit
