#include "polfair/representational.hpp"

#include <cmath>
#include <numeric>

#include "polfair/error.hpp"
#include "polfair/lexical.hpp"
#include "polfair/text.hpp"

namespace polfair {

namespace {

const DescriptorTerm* first_match(const std::vector<DescriptorTerm>& terms,
                                  std::string_view normalized) {
  for (const auto& t : terms) {
    if (t.matches(normalized)) return &t;
  }
  return nullptr;
}

bool group_matches(const LexiconSet& lex, const std::string& axis, const std::string& group,
                   std::string_view normalized) {
  const auto a = lex.axes.find(axis);
  if (a == lex.axes.end()) return false;
  const auto g = a->second.find(group);
  return g != a->second.end() && first_match(g->second, normalized) != nullptr;
}

}  // namespace

std::vector<DescriptorMatch> find_descriptor_matches(const PolicyDocument& doc,
                                                     const LexiconSet& lexicon) {
  std::vector<DescriptorMatch> out;
  for (std::size_t bi = 0; bi < doc.blocks.size(); ++bi) {
    const auto tokens = tokenize(doc.blocks[bi].text);
    for (std::size_t ti = 0; ti < tokens.size(); ++ti) {
      if (!tokens[ti].is_word) continue;
      for (const auto& [axis, groups] : lexicon.axes) {
        for (const auto& [group, terms] : groups) {
          if (const auto* t = first_match(terms, tokens[ti].normalized)) {
            out.push_back({axis, group, t->term, bi, ti});
          }
        }
      }
    }
  }
  return out;
}

RepresentationCounts count_representation(const PolicyDocument& doc,
                                          const LexiconSet& lexicon) {
  RepresentationCounts counts;
  for (const auto& [axis, groups] : lexicon.axes) {
    for (const auto& [group, terms] : groups) counts[axis][group] = 0;
  }
  for (const auto& m : find_descriptor_matches(doc, lexicon)) ++counts[m.axis][m.group];
  return counts;
}

GenderingRecord gendering_analysis(const PolicyDocument& doc, const LexiconSet& gender_lexicon,
                                   const std::vector<std::string>& watchlist) {
  const auto axis = gender_lexicon.axes.find("gender");
  if (axis == gender_lexicon.axes.end() || !axis->second.count("male") ||
      !axis->second.count("female") || !axis->second.count("neutral")) {
    throw Error(ErrorKind::InvalidArgument,
                "gender lexicon needs axis 'gender' with groups male, female, neutral");
  }
  const LexiconSet gender = gender_lexicon.axis("gender");

  GenderingRecord rec;
  const auto declared = count_representation(doc, gender).at("gender");
  rec.male = declared.at("male");
  rec.female = declared.at("female");
  rec.neutral = declared.at("neutral");

  LexiconSet as_prefix = gender;
  for (auto& [group, terms] : as_prefix.axes.at("gender")) {
    for (auto& t : terms) t.match = MatchMode::Prefix;
  }
  const auto prefixed = count_representation(doc, as_prefix).at("gender");
  rec.male_prefix = prefixed.at("male");
  rec.female_prefix = prefixed.at("female");
  rec.neutral_prefix = prefixed.at("neutral");

  std::vector<std::string> terms;
  for (const auto& w : watchlist) terms.push_back(text::fold(w));
  std::vector<std::size_t> flagged(terms.size(), 0);
  for (const auto& block : doc.blocks) {
    for (const auto& sentence : split_sentences(block.text)) {
      const auto tokens = tokenize(sentence);
      bool paired = false;
      for (const auto& t : tokens) {
        if (t.is_word && (group_matches(gender, "gender", "female", t.normalized) ||
                          group_matches(gender, "gender", "neutral", t.normalized))) {
          paired = true;
          break;
        }
      }
      if (paired) continue;
      for (const auto& t : tokens) {
        if (!t.is_word) continue;
        for (std::size_t k = 0; k < terms.size(); ++k) {
          if (t.normalized == terms[k]) ++flagged[k];
        }
      }
    }
  }
  for (std::size_t k = 0; k < terms.size(); ++k) {
    if (flagged[k] > 0) rec.ungendered_flagged.emplace_back(terms[k], flagged[k]);
  }
  return rec;
}

namespace {

struct VocabSet {
  std::vector<std::string> words;
  std::vector<std::span<const double>> vectors;
};

VocabSet in_vocabulary(const std::vector<std::string>& words, const EmbeddingStore& store,
                       std::vector<std::string>& skipped) {
  VocabSet out;
  for (const auto& w : words) {
    const std::string key = text::fold(w);
    if (auto v = store.lookup(key)) {
      out.words.push_back(key);
      out.vectors.push_back(*v);
    } else {
      skipped.push_back(key);
    }
  }
  return out;
}

double mean_cosine(std::span<const double> w, const VocabSet& attrs) {
  double sum = 0;
  for (const auto& a : attrs.vectors) sum += cosine(w, a);
  return sum / static_cast<double>(attrs.vectors.size());
}

}  // namespace

AssociationResult weat_effect_size(const std::vector<std::string>& x,
                                   const std::vector<std::string>& y,
                                   const std::vector<std::string>& a,
                                   const std::vector<std::string>& b,
                                   const EmbeddingStore& store) {
  AssociationResult r;
  const auto xs = in_vocabulary(x, store, r.skipped_oov);
  const auto ys = in_vocabulary(y, store, r.skipped_oov);
  const auto as = in_vocabulary(a, store, r.skipped_oov);
  const auto bs = in_vocabulary(b, store, r.skipped_oov);
  if (xs.words.size() < 2 || ys.words.size() < 2 || as.words.empty() || bs.words.empty()) {
    throw Error(ErrorKind::InsufficientVocabulary,
                "association test needs >= 2 in-vocabulary targets per side and >= 1 "
                "attribute per side");
  }
  if (xs.words.size() != ys.words.size()) {
    throw Error(ErrorKind::InsufficientVocabulary,
                "target sets differ in size after dropping out-of-vocabulary words (" +
                    std::to_string(xs.words.size()) + " vs " +
                    std::to_string(ys.words.size()) + ")");
  }

  std::vector<double> sx, sy;
  for (std::size_t i = 0; i < xs.words.size(); ++i) {
    const double s = mean_cosine(xs.vectors[i], as) - mean_cosine(xs.vectors[i], bs);
    sx.push_back(s);
    r.per_word_associations.emplace_back(xs.words[i], s);
  }
  for (std::size_t i = 0; i < ys.words.size(); ++i) {
    const double s = mean_cosine(ys.vectors[i], as) - mean_cosine(ys.vectors[i], bs);
    sy.push_back(s);
    r.per_word_associations.emplace_back(ys.words[i], s);
  }

  auto mean = [](const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  };
  std::vector<double> all(sx);
  all.insert(all.end(), sy.begin(), sy.end());
  const double mu = mean(all);
  double var = 0;
  for (double s : all) var += (s - mu) * (s - mu);
  var /= static_cast<double>(all.size());
  const double sd = std::sqrt(var);
  r.effect_size = sd == 0.0 ? 0.0 : (mean(sx) - mean(sy)) / sd;
  return r;
}

AssociationResult run_association_test(const AssociationTest& test,
                                       const EmbeddingStore& store) {
  auto r = weat_effect_size(test.x, test.y, test.a, test.b, store);
  r.target_x_label = test.target_x_label;
  r.target_y_label = test.target_y_label;
  r.attribute_a_label = test.attribute_a_label;
  r.attribute_b_label = test.attribute_b_label;
  return r;
}

}  // namespace polfair
