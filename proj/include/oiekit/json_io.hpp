#pragma once

#include <functional>
#include <istream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "oiekit/record.hpp"
#include "oiekit/sentence.hpp"

namespace oiekit {

enum class Strictness { Strict, Lenient };

// Parse failure with the 1-based input line and a short reason code, e.g.
// "dangling dependency endpoint" or "orphan extraction".
class ParseError : public std::runtime_error {
 public:
  ParseError(long line, std::string reason)
      : std::runtime_error("line " + std::to_string(line) + ": " + reason),
        line_(line),
        reason_(std::move(reason)) {}

  long line() const { return line_; }
  const std::string& reason() const { return reason_; }

 private:
  long line_;
  std::string reason_;
};

void validate_sentence(const AnnotatedSentence& s);
void validate_record(const ExtractionRecord& r);

// Canonical JSON Lines serialization. Key order is fixed (lexicographic), so
// serializing the same logical value twice yields identical bytes.
std::string serialize(const AnnotatedSentence& s);
std::string serialize(const ExtractionRecord& r, const std::string& kind = "triple");

AnnotatedSentence deserialize_sentence(const std::string& line);
ExtractionRecord deserialize_record(const std::string& line);

// One sentence with the extraction records that reference its tokens.
struct DocumentEntry {
  AnnotatedSentence sentence;
  std::vector<ExtractionRecord> records;
};

struct ParseStats {
  long lines = 0;
  long sentences = 0;
  long records = 0;
  long skipped = 0;  // malformed lines skipped in lenient mode
};

// Streams the interchange format: "sentence" lines each followed by the
// "extraction"/"triple" lines that belong to it. Cross-references are
// validated against the owning sentence. In strict mode the first malformed
// line throws ParseError; in lenient mode it is counted and skipped.
ParseStats parse_document(std::istream& in, Strictness strictness,
                          const std::function<void(DocumentEntry&&)>& sink);

std::vector<DocumentEntry> parse_document(std::istream& in, Strictness strictness = Strictness::Strict);

}  // namespace oiekit
