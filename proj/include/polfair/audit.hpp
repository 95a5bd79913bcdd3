#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "polfair/document.hpp"
#include "polfair/embedding.hpp"
#include "polfair/ethics.hpp"
#include "polfair/informational.hpp"
#include "polfair/lexical.hpp"
#include "polfair/representational.hpp"
#include "polfair/resources.hpp"

namespace polfair {

inline constexpr int kSchemaVersion = 1;
std::string_view tool_version();

enum class OutputFormat { Json, Markdown };

struct ResourcePaths {
  std::optional<std::filesystem::path> frequency_dictionary;
  std::optional<std::filesystem::path> english_words;
  std::optional<std::filesystem::path> german_stopwords;
  std::optional<std::filesystem::path> word_map_en_de;
  std::optional<std::filesystem::path> word_map_de_en;
  std::optional<std::filesystem::path> lexicon;
  std::optional<std::filesystem::path> watchlist;
  std::optional<std::filesystem::path> embeddings;
};

struct LlmSettings {
  std::string endpoint;
  std::string model;
  int runs = 5;
  bool offline = false;
  std::optional<std::filesystem::path> offline_dir;
  std::string api_key_env = "POLFAIR_LLM_API_KEY";
  std::optional<double> temperature;
  int max_in_flight = 1;
  std::size_t max_policy_chars = 0;
  PromptLanguage prompt_language = PromptLanguage::English;
  int attempts = 3;
  int backoff_ms = 500;
};

struct AnalyzerSet {
  bool informational = true;
  bool representational = true;
  bool ethics = true;
};

struct AuditConfig {
  Language language = Language::German;
  std::optional<ReadabilityFormula> formula;  // default follows language
  ResourcePaths resources;
  long rare_word_rank = 10000;
  ReadabilityThresholds thresholds;
  ReadingRates rates;
  LlmSettings llm;
  OutputFormat format = OutputFormat::Json;
  AnalyzerSet analyzers;
  std::vector<AssociationTest> association_tests;
  int workers = 1;

  ReadabilityFormula effective_formula() const;
};

// Relative resource paths are resolved against the config file's directory.
AuditConfig load_config(const std::filesystem::path& path);
AuditConfig parse_config(std::string_view json_text,
                         const std::filesystem::path& base_dir = {});
// Throws Error(Config) when a threshold or rate is not positive or an
// enabled analyzer lacks a required input.
void validate(const AuditConfig& config);

// Shipped German descriptor lexicon and generic-masculine watchlist.
std::filesystem::path default_data_dir();

struct LoadedResources {
  std::optional<FrequencyDictionary> frequency;
  std::optional<Wordlist> english_words;
  std::optional<Wordlist> german_stopwords;
  std::optional<WordMap> word_map_en_de;
  std::optional<WordMap> word_map_de_en;
  std::optional<LexiconSet> lexicon;
  std::optional<std::vector<std::string>> watchlist;
  std::optional<EmbeddingStore> embeddings;
  std::map<std::string, std::string> checksums;  // resource name -> sha256
};

LoadedResources load_resources(const AuditConfig& config);

struct InformationalSection {
  std::optional<InformationalReport> report;
  std::optional<Issue> error;
  std::vector<Issue> issues;
  friend bool operator==(const InformationalSection&, const InformationalSection&) = default;
};

struct RepresentationalSection {
  std::optional<RepresentationReport> report;
  std::optional<Issue> error;
  std::vector<Issue> issues;
  friend bool operator==(const RepresentationalSection&, const RepresentationalSection&) = default;
};

struct EthicsSection {
  std::optional<EthicsAssessment> assessment;
  std::optional<Issue> error;
  friend bool operator==(const EthicsSection&, const EthicsSection&) = default;
};

struct AuditReport {
  int schema_version = kSchemaVersion;
  std::string tool_version;
  std::string doc_id;
  std::string source_name;
  std::optional<int> year;
  std::string source_file;
  std::optional<InformationalSection> informational;
  std::optional<RepresentationalSection> representational;
  std::optional<EthicsSection> ethics;
  std::map<std::string, std::string> resource_checksums;

  // True when an enabled section failed as a whole.
  bool has_errors() const;
  friend bool operator==(const AuditReport&, const AuditReport&) = default;
};

// Sections run independently; a failing section records its error and the
// others still run. `backend` may be null when ethics is disabled.
AuditReport audit_document(const PolicyDocument& doc, const AuditConfig& config,
                           const LoadedResources& resources, LlmBackend* backend);

std::unique_ptr<LlmBackend> make_backend(const AuditConfig& config);

struct SurfaceTable {
  std::size_t policies = 0;
  double words_per_policy = 0;
  double paragraphs_per_policy = 0;
  double words_per_paragraph = 0;
  double headings_per_policy = 0;
  double pct_without_headings = 0;
  double heading_types = 0;
  double words_per_heading = 0;
  double pct_with_lists = 0;
  double pct_with_strong = 0;
  double pct_with_italic = 0;
  friend bool operator==(const SurfaceTable&, const SurfaceTable&) = default;
};

struct ReadabilitySummary {
  std::string formula;
  std::size_t policies = 0;
  double mean = 0;
  double min = 0;
  double max = 0;
  double pct_academic_only = 0;
  double pct_fair_target_met = 0;
  friend bool operator==(const ReadabilitySummary&, const ReadabilitySummary&) = default;
};

struct GenderingTotals {
  std::size_t male = 0, female = 0, neutral = 0;
  std::size_t male_prefix = 0, female_prefix = 0, neutral_prefix = 0;
  std::map<std::string, std::size_t> ungendered_flagged;
  friend bool operator==(const GenderingTotals&, const GenderingTotals&) = default;
};

struct AnglicismTotals {
  std::size_t policies = 0;
  double mean_distinct = 0;
  double mean_occurrences = 0;
  friend bool operator==(const AnglicismTotals&, const AnglicismTotals&) = default;
};

// Means and percentages are rounded to two decimals.
struct CorpusAggregates {
  std::size_t policies = 0;
  SurfaceTable surface;
  std::optional<ReadabilitySummary> readability;
  std::optional<AnglicismTotals> anglicisms;
  RepresentationCounts representation;
  std::optional<GenderingTotals> gendering;
  std::vector<CorpusEthicsRow> ethics;
  friend bool operator==(const CorpusAggregates&, const CorpusAggregates&) = default;
};

CorpusAggregates aggregate_reports(const std::vector<AuditReport>& reports);

struct InputFailure {
  std::string file;
  std::string kind;
  std::string message;
  friend bool operator==(const InputFailure&, const InputFailure&) = default;
};

struct CorpusReport {
  int schema_version = kSchemaVersion;
  std::string tool_version;
  std::vector<AuditReport> documents;  // ordered by input path
  std::vector<InputFailure> failures;
  CorpusAggregates corpus;
  std::map<int, CorpusAggregates> by_year;
  std::map<std::string, std::string> resource_checksums;

  bool partial() const;
  friend bool operator==(const CorpusReport&, const CorpusReport&) = default;
};

// Files named directly are audited as-is; directories contribute their
// .html/.htm/.txt files (recursively). "<name>_<YYYY>.<ext>" yields
// source name and year.
std::vector<std::filesystem::path> collect_inputs(const std::vector<std::filesystem::path>& paths);
PolicyDocument load_policy(const std::filesystem::path& file);

// Throws Error(EmptyCorpus) when no input could be parsed.
CorpusReport audit_corpus(const std::vector<std::filesystem::path>& paths,
                          const AuditConfig& config, const LoadedResources& resources,
                          LlmBackend* backend);
CorpusReport audit_corpus(const std::filesystem::path& dir, const AuditConfig& config);

}  // namespace polfair
