#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polfair/document.hpp"
#include "polfair/embedding.hpp"
#include "polfair/resources.hpp"

namespace polfair {

// axis -> group -> occurrences
using RepresentationCounts = std::map<std::string, std::map<std::string, std::size_t>>;

// One counted occurrence: a word token attributed to (axis, group).
struct DescriptorMatch {
  std::string axis;
  std::string group;
  std::string term;
  std::size_t block_index = 0;
  std::size_t token_index = 0;  // index among the block's tokens

  friend bool operator==(const DescriptorMatch&, const DescriptorMatch&) = default;
};

// A token counts at most once per (axis, group); the first matching term of
// the group is reported.
std::vector<DescriptorMatch> find_descriptor_matches(const PolicyDocument& doc,
                                                     const LexiconSet& lexicon);

// Every group of the lexicon appears, with 0 when unmatched.
RepresentationCounts count_representation(const PolicyDocument& doc,
                                          const LexiconSet& lexicon);

struct GenderingRecord {
  std::size_t male = 0;
  std::size_t female = 0;
  std::size_t neutral = 0;
  // Same tallies with every gender term matched as a prefix.
  std::size_t male_prefix = 0;
  std::size_t female_prefix = 0;
  std::size_t neutral_prefix = 0;
  std::vector<std::pair<std::string, std::size_t>> ungendered_flagged;

  friend bool operator==(const GenderingRecord&, const GenderingRecord&) = default;
};

// `gender_lexicon` must contain axis "gender" with groups male, female and
// neutral (Error(InvalidArgument) otherwise). A watchlist occurrence is
// flagged when its sentence holds no female or neutral match.
GenderingRecord gendering_analysis(const PolicyDocument& doc, const LexiconSet& gender_lexicon,
                                   const std::vector<std::string>& watchlist);

struct AssociationTest {
  std::string name;
  std::string target_x_label;
  std::string target_y_label;
  std::string attribute_a_label;
  std::string attribute_b_label;
  std::vector<std::string> x, y, a, b;
};

struct AssociationResult {
  std::string target_x_label;
  std::string target_y_label;
  std::string attribute_a_label;
  std::string attribute_b_label;
  std::vector<std::pair<std::string, double>> per_word_associations;  // X then Y
  double effect_size = 0;
  std::vector<std::string> skipped_oov;

  friend bool operator==(const AssociationResult&, const AssociationResult&) = default;
};

// s(w) = mean_a cos(w,a) - mean_b cos(w,b);
// d = (mean_X s - mean_Y s) / population stddev of s over X and Y (0 when
// the stddev is 0). After dropping out-of-vocabulary words X and Y need at
// least two words each and equal sizes, A and B at least one; otherwise
// Error(InsufficientVocabulary).
AssociationResult weat_effect_size(const std::vector<std::string>& x,
                                   const std::vector<std::string>& y,
                                   const std::vector<std::string>& a,
                                   const std::vector<std::string>& b,
                                   const EmbeddingStore& store);

AssociationResult run_association_test(const AssociationTest& test, const EmbeddingStore& store);

struct RepresentationReport {
  RepresentationCounts counts;
  std::optional<GenderingRecord> gendering;
  std::optional<std::vector<AssociationResult>> associations;

  friend bool operator==(const RepresentationReport&, const RepresentationReport&) = default;
};

}  // namespace polfair
