#include "oiekit/ingest.hpp"

#include <fstream>
#include <stdexcept>

namespace oiekit {

std::string normalize_title(const std::string& title) {
  std::string out = title;
  for (char& c : out) {
    if (c == '_') c = ' ';
  }
  return out;
}

RedirectMap RedirectMap::load(std::istream& in) {
  RedirectMap map;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 >= line.size()) {
      throw std::runtime_error("redirect map line " + std::to_string(lineno) +
                               ": expected source<TAB>target");
    }
    map.add(line.substr(0, tab), line.substr(tab + 1));
  }
  return map;
}

RedirectMap RedirectMap::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open redirect map: " + path);
  return load(in);
}

void RedirectMap::add(std::string source, std::string target) {
  redirects_[std::move(source)] = std::move(target);
}

std::string RedirectMap::canonical(const std::string& title) const {
  std::string current = title;
  for (int hops = 0; hops <= 16; ++hops) {
    auto it = redirects_.find(current);
    if (it == redirects_.end()) return current;
    current = it->second;
  }
  throw std::runtime_error("redirect cycle");
}

std::unordered_set<std::string> load_title_set(std::istream& in) {
  std::unordered_set<std::string> titles;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) titles.insert(normalize_title(line));
  }
  return titles;
}

std::unordered_set<std::string> load_title_set_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open page-title set: " + path);
  return load_title_set(in);
}

std::vector<AnnotatedSentence> self_link_first_phrase(std::vector<AnnotatedSentence> sentences,
                                                      const std::string& page_title) {
  const std::string phrase = normalize_title(page_title);
  if (phrase.empty()) return sentences;

  for (auto& sentence : sentences) {
    const int n = sentence.size();
    for (int start = 1; start <= n; ++start) {
      std::string joined;
      for (int end = start; end <= n; ++end) {
        const Token& t = sentence.token(end);
        if (t.link) break;  // candidate runs must be link-free
        if (!joined.empty()) joined += ' ';
        joined += t.surface;
        if (joined.size() > phrase.size()) break;
        if (joined == phrase) {
          WikiLink link;
          link.begin = sentence.token(start).begin;
          link.end = sentence.token(end).end;
          link.anchor = joined;
          link.target = page_title;
          for (int i = start; i <= end; ++i) sentence.tokens[i - 1].link = link;
          return sentences;
        }
      }
    }
  }
  return sentences;
}

}  // namespace oiekit
