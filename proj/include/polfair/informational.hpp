#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polfair/document.hpp"
#include "polfair/embedding.hpp"
#include "polfair/lexical.hpp"
#include "polfair/resources.hpp"

namespace polfair {

enum class ReadabilityFormula { FleschEnglish, AmstadGerman };

std::string_view to_string(ReadabilityFormula f);

struct ReadabilityResult {
  ReadabilityFormula formula = ReadabilityFormula::AmstadGerman;
  std::size_t sentences = 0;
  std::size_t words = 0;
  std::size_t syllables = 0;
  double asl = 0;  // words per sentence
  double asw = 0;  // syllables per word
  double score = 0;

  friend bool operator==(const ReadabilityResult&, const ReadabilityResult&) = default;
};

// Unclamped formula values.
double flesch_english(double asl, double asw);
double amstad_german(double asl, double asw);
double readability_score(ReadabilityFormula f, double asl, double asw);

// Sentences and words are counted over the block texts joined by spaces.
// Syllables follow `lang`; by default the formula's own language.
// Throws Error(EmptyDocument) when there is no word token.
ReadabilityResult readability(const PolicyDocument& doc, ReadabilityFormula formula,
                              std::optional<Language> lang = std::nullopt);

struct ReadabilityThresholds {
  double academic_max = 30.0;  // score <= this: academic reading competence
  double fair_min = 60.0;      // score >= this: plain-language target met
};

struct ReadabilityClass {
  bool academic_only = false;
  bool fair_target_met = false;
  friend bool operator==(const ReadabilityClass&, const ReadabilityClass&) = default;
};

ReadabilityClass classify(double score, const ReadabilityThresholds& t = {});

struct SurfaceStats {
  std::size_t words = 0;
  std::size_t paragraphs = 0;
  double words_per_paragraph = 0;  // words inside paragraphs / paragraphs
  std::size_t headings = 0;
  std::size_t heading_levels_used = 0;
  double words_per_heading = 0;    // words inside headings / headings
  std::size_t list_items = 0;
  bool has_lists = false;
  bool has_strong = false;
  bool has_italic = false;
  bool has_headings = false;

  friend bool operator==(const SurfaceStats&, const SurfaceStats&) = default;
};

SurfaceStats surface_stats(const PolicyDocument& doc);

// (normalized token, occurrences)
using TermCount = std::pair<std::string, std::size_t>;

struct AnglicismStages {
  std::vector<std::string> english_hits;     // distinct, sorted
  std::vector<std::string> after_stopwords;  // subset of english_hits
  std::vector<TermCount> anglicisms;         // count desc, then lexicographic
};

// english_words, german_stopwords and word_map_en_de must all be supplied;
// a null pointer raises Error(ResourceMissing).
AnglicismStages anglicism_stages(const PolicyDocument& doc, const Wordlist* english_words,
                                 const Wordlist* german_stopwords,
                                 const WordMap* word_map_en_de);

std::vector<TermCount> detect_anglicisms(const PolicyDocument& doc,
                                         const Wordlist* english_words,
                                         const Wordlist* german_stopwords,
                                         const WordMap* word_map_en_de);

// Share of word tokens ranked above `threshold_rank` or not ranked at all;
// 0 for a document without words. Throws Error(InvalidArgument) for a
// threshold below 1.
double rare_word_proportion(const PolicyDocument& doc, const FrequencyDictionary& freq,
                            long threshold_rank);

// A word is unchanged when it has no forward entry, or when every backward
// translation of every forward translation equals it. 1.0 without words.
double roundtrip_unchanged(const PolicyDocument& doc, const WordMap& forward,
                           const WordMap& backward);

struct ReadingRates {
  double average_wpm = 250.0;
  double dyslexic_wpm = 125.0;
};

struct ReadingTime {
  std::size_t words = 0;
  double minutes_average_reader = 0;
  double minutes_dyslexic_reader = 0;

  friend bool operator==(const ReadingTime&, const ReadingTime&) = default;
};

// Throws Error(InvalidRate) for a non-positive rate or a dyslexic rate
// above the average rate.
ReadingTime reading_time(std::size_t words, const ReadingRates& rates = {});

struct HeadingFit {
  std::vector<std::pair<std::size_t, double>> scores;  // (block index, cosine)
  std::vector<std::size_t> undefined;  // headings without usable vectors

  friend bool operator==(const HeadingFit&, const HeadingFit&) = default;
};

// A heading's section runs until the next heading of the same or a higher
// level. Throws Error(NoHeadings).
HeadingFit heading_fit(const PolicyDocument& doc, const EmbeddingStore& embeddings);

struct AnglicismSummary {
  std::vector<TermCount> terms;
  std::size_t distinct = 0;
  std::size_t total = 0;  // occurrences

  friend bool operator==(const AnglicismSummary&, const AnglicismSummary&) = default;
};

// Each measure is present only when its resources were supplied.
struct WordLevelStats {
  std::optional<AnglicismSummary> anglicisms;
  std::optional<double> rare_word_proportion;
  std::optional<long> rare_word_threshold;
  std::optional<double> roundtrip_unchanged_proportion;

  friend bool operator==(const WordLevelStats&, const WordLevelStats&) = default;
};

// Non-fatal problem inside a report section.
struct Issue {
  std::string measure;
  std::string kind;
  std::string message;

  friend bool operator==(const Issue&, const Issue&) = default;
};

struct InformationalReport {
  ReadabilityResult readability;
  ReadabilityClass classification;
  SurfaceStats surface;
  WordLevelStats words;
  ReadingTime reading;
  std::optional<HeadingFit> heading_fit;

  friend bool operator==(const InformationalReport&, const InformationalReport&) = default;
};

struct InformationalOptions {
  ReadabilityFormula formula = ReadabilityFormula::AmstadGerman;
  Language language = Language::German;
  ReadabilityThresholds thresholds;
  ReadingRates rates;
  long rare_word_rank = 10000;
};

// Optional inputs; absent ones turn into ResourceMissing issues.
struct InformationalResources {
  const Wordlist* english_words = nullptr;
  const Wordlist* german_stopwords = nullptr;
  const WordMap* word_map_en_de = nullptr;
  const WordMap* word_map_de_en = nullptr;
  const FrequencyDictionary* frequency = nullptr;
  const EmbeddingStore* embeddings = nullptr;
};

// Throws Error(EmptyDocument) when the document has no words; sub-measure
// failures are appended to `issues`.
InformationalReport analyze_informational(const PolicyDocument& doc,
                                          const InformationalOptions& options,
                                          const InformationalResources& resources,
                                          std::vector<Issue>& issues);

}  // namespace polfair
