#pragma once

#include <istream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "oiekit/sentence.hpp"

namespace oiekit {

// Wikipedia page titles use underscores where the article text has spaces.
std::string normalize_title(const std::string& title);

// A source -> target redirect table. Canonicalization follows redirects to
// their fixed point; identity for titles absent from the map.
class RedirectMap {
 public:
  RedirectMap() = default;

  static RedirectMap load(std::istream& in);          // TSV: source<TAB>target
  static RedirectMap load_file(const std::string& path);

  void add(std::string source, std::string target);
  std::size_t size() const { return redirects_.size(); }

  // Throws std::runtime_error("redirect cycle") on a cycle or after 16 hops.
  std::string canonical(const std::string& title) const;

 private:
  std::unordered_map<std::string, std::string> redirects_;
};

std::unordered_set<std::string> load_title_set(std::istream& in);  // one title per line
std::unordered_set<std::string> load_title_set_file(const std::string& path);

// Links the earliest link-free token run whose space-joined surface equals
// the page title (case-sensitive, underscores normalized to spaces). At most
// one link is added per article; no-op when the title never occurs unlinked.
std::vector<AnnotatedSentence> self_link_first_phrase(std::vector<AnnotatedSentence> sentences,
                                                      const std::string& page_title);

}  // namespace oiekit
