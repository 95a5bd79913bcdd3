#pragma once

// Word-level resources: frequency dictionary, bilingual word maps,
// wordlists and descriptor lexicons. Loaders reject any row the matching
// writer would not produce; errors carry the 1-based line number.

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace polfair {

class FrequencyDictionary {
 public:
  // Keys are case-folded on insertion. Throws on duplicate word or rank.
  void add(std::string_view word, long rank);
  std::optional<long> rank(std::string_view normalized) const;
  std::size_t size() const noexcept { return ranks_.size(); }
  // Entries ordered by rank.
  std::vector<std::pair<std::string, long>> entries() const;

 private:
  std::unordered_map<std::string, long> ranks_;
  std::unordered_set<long> used_;
};

struct WordMap {
  std::pair<std::string, std::string> direction{"de", "en"};
  std::map<std::string, std::set<std::string>> entries;

  const std::set<std::string>* find(std::string_view normalized) const;
};

struct Wordlist {
  std::set<std::string> words;
  bool contains(std::string_view normalized) const {
    return words.find(std::string(normalized)) != words.end();
  }
};

enum class MatchMode { Exact, Prefix };

struct DescriptorTerm {
  std::string term;
  MatchMode match = MatchMode::Exact;

  bool matches(std::string_view normalized) const;
  friend bool operator==(const DescriptorTerm&, const DescriptorTerm&) = default;
};

// axis -> group -> terms, in file order within each group.
struct LexiconSet {
  std::map<std::string, std::map<std::string, std::vector<DescriptorTerm>>> axes;

  // Throws Error(ResourceFormat) on an empty or duplicate term.
  void add(std::string_view axis, std::string_view group, DescriptorTerm term);
  // Copy restricted to one axis; empty when absent.
  LexiconSet axis(std::string_view name) const;
  std::size_t term_count() const;
};

std::string_view to_string(MatchMode mode);

FrequencyDictionary read_frequency_dictionary(std::istream& in);
WordMap read_word_map(std::istream& in,
                      std::pair<std::string, std::string> direction);
Wordlist read_wordlist(std::istream& in);
LexiconSet read_lexicon(std::istream& in);

FrequencyDictionary load_frequency_dictionary(const std::filesystem::path& path);
WordMap load_word_map(const std::filesystem::path& path,
                      std::pair<std::string, std::string> direction);
Wordlist load_wordlist(const std::filesystem::path& path);
LexiconSet load_lexicon(const std::filesystem::path& path);

void write_frequency_dictionary(std::ostream& out, const FrequencyDictionary& dict);
void write_word_map(std::ostream& out, const WordMap& map);
void write_wordlist(std::ostream& out, const Wordlist& list);
void write_lexicon(std::ostream& out, const LexiconSet& lexicon);

// Lowercase hex SHA-256 of the file bytes.
std::string file_sha256(const std::filesystem::path& path);
std::string sha256_hex(std::string_view bytes);

// Reads a whole file; throws Error(ResourceMissing) when it cannot be opened.
std::string read_file(const std::filesystem::path& path);

}  // namespace polfair
