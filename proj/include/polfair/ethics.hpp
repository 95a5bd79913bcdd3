#pragma once

#include <chrono>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polfair/document.hpp"

namespace polfair {

struct EthicsCriterion {
  std::string id;
  std::string title;  // row label in the ethics table
  std::vector<std::string> aliases;
};

// The twelve criteria in table order.
const std::vector<EthicsCriterion>& ethics_taxonomy();

// Best alias hit (longest alias wins, table order breaks ties).
std::optional<std::string> map_criterion(std::string_view label,
                                         const std::vector<EthicsCriterion>& taxonomy);

enum class PromptLanguage { German, English };

struct ChatPrompt {
  std::string system;
  std::string user;
};

// System prompt of the ethics council persona plus a one-line-per-criterion
// output instruction; user message "The privacy policy: <text>" (German:
// "Die Datenschutzerklärung: <text>"). Throws Error(EmptyPolicy).
ChatPrompt build_prompt(std::string_view policy_text,
                        PromptLanguage lang = PromptLanguage::English);

struct ExtractedScore {
  std::string criterion;  // canonical id or "unmapped:<label>"
  int score = 0;          // 1..5
  std::string rationale;

  friend bool operator==(const ExtractedScore&, const ExtractedScore&) = default;
};

// Scored lines: "<label> — Score: <n>/5" (also ':', '-', '–'), "<label>: <n>
// von 5", and fallback "<label> ... Likert ... <n>". Repeated criteria in
// one response are averaged and rounded half up. Output is ordered by
// table position, unmapped labels last. Throws Error(ParseFailure).
std::vector<ExtractedScore> parse_response(std::string_view raw,
                                           const std::vector<EthicsCriterion>& taxonomy);

struct RunResult {
  int run_index = 0;  // 1-based
  std::string raw_text;
  std::vector<ExtractedScore> extracted;
  std::optional<std::string> parse_error;

  friend bool operator==(const RunResult&, const RunResult&) = default;
};

struct CriterionAggregate {
  std::size_t runs_mentioning = 0;
  double mean_score = 0;

  friend bool operator==(const CriterionAggregate&, const CriterionAggregate&) = default;
};

struct EthicsAssessment {
  std::string doc_id;
  std::vector<RunResult> runs;
  std::map<std::string, CriterionAggregate> aggregate;  // canonical ids only
  std::vector<std::string> unmapped_labels;             // distinct, sorted
  std::vector<std::string> warnings;

  friend bool operator==(const EthicsAssessment&, const EthicsAssessment&) = default;
};

// Chat backend. Implementations must be safe to call from several threads.
class LlmBackend {
 public:
  virtual ~LlmBackend() = default;
  // Returns assistant text; throws Error(Backend) on transport failure.
  virtual std::string complete(const ChatPrompt& prompt, std::string_view doc_id,
                               int run_index) = 0;
};

struct AssessmentOptions {
  int runs = 5;
  int max_in_flight = 1;
  std::size_t max_policy_chars = 0;  // 0: no truncation
  PromptLanguage prompt_language = PromptLanguage::English;
};

// Issues `runs` independent requests, parses each and aggregates. A parse
// failure is kept on its run; a backend error aborts with Error(Backend).
EthicsAssessment run_assessment(const PolicyDocument& doc, LlmBackend& backend,
                                const AssessmentOptions& options = {});

// Rebuilds `aggregate` and `unmapped_labels` from `runs`.
void aggregate_runs(EthicsAssessment& assessment);

struct CorpusEthicsRow {
  std::string criterion;
  std::size_t runs = 0;      // mentioning runs over all policies
  std::size_t policies = 0;  // policies with at least one mention
  double average_score = 0;  // mean of all run scores, 2 decimals

  friend bool operator==(const CorpusEthicsRow&, const CorpusEthicsRow&) = default;
};

// Rows in table order; unmentioned criteria are omitted.
std::vector<CorpusEthicsRow> aggregate_corpus(const std::vector<EthicsAssessment>& assessments);

double round2(double v);

}  // namespace polfair
