#include "polfair/informational.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "polfair/error.hpp"

namespace polfair {

std::string_view to_string(ReadabilityFormula f) {
  return f == ReadabilityFormula::AmstadGerman ? "amstad_german" : "flesch_english";
}

double flesch_english(double asl, double asw) {
  return 206.835 - 1.015 * asl - 84.6 * asw;
}

double amstad_german(double asl, double asw) { return 180.0 - asl - 58.5 * asw; }

double readability_score(ReadabilityFormula f, double asl, double asw) {
  return f == ReadabilityFormula::AmstadGerman ? amstad_german(asl, asw)
                                               : flesch_english(asl, asw);
}

ReadabilityResult readability(const PolicyDocument& doc, ReadabilityFormula formula,
                              std::optional<Language> lang) {
  const Language syllable_lang = lang.value_or(
      formula == ReadabilityFormula::AmstadGerman ? Language::German : Language::English);
  const std::string text = doc.visible_text();

  ReadabilityResult r;
  r.formula = formula;
  for (const auto& t : tokenize(text)) {
    if (!t.is_word) continue;
    ++r.words;
    r.syllables += static_cast<std::size_t>(count_syllables(t.normalized, syllable_lang));
  }
  if (r.words == 0) {
    throw Error(ErrorKind::EmptyDocument, "document '" + doc.doc_id + "' has no words");
  }
  r.sentences = split_sentences(text).size();
  r.asl = static_cast<double>(r.words) / static_cast<double>(r.sentences);
  r.asw = static_cast<double>(r.syllables) / static_cast<double>(r.words);
  r.score = readability_score(formula, r.asl, r.asw);
  return r;
}

ReadabilityClass classify(double score, const ReadabilityThresholds& t) {
  return {score <= t.academic_max, score >= t.fair_min};
}

SurfaceStats surface_stats(const PolicyDocument& doc) {
  SurfaceStats s;
  std::size_t paragraph_words = 0;
  std::size_t heading_words = 0;
  std::set<int> levels;
  for (const auto& b : doc.blocks) {
    const std::size_t n = count_words(b.text);
    s.words += n;
    switch (b.kind) {
      case BlockKind::Paragraph:
        ++s.paragraphs;
        paragraph_words += n;
        break;
      case BlockKind::Heading:
        ++s.headings;
        heading_words += n;
        if (b.level) levels.insert(*b.level);
        break;
      case BlockKind::ListItem:
        ++s.list_items;
        break;
    }
  }
  s.heading_levels_used = levels.size();
  if (s.paragraphs > 0) {
    s.words_per_paragraph =
        static_cast<double>(paragraph_words) / static_cast<double>(s.paragraphs);
  }
  if (s.headings > 0) {
    s.words_per_heading =
        static_cast<double>(heading_words) / static_cast<double>(s.headings);
  }
  s.has_lists = s.list_items > 0;
  s.has_headings = s.headings > 0;
  for (const auto& span : doc.formatting) {
    if (span.style == FormatStyle::Strong) s.has_strong = true;
    if (span.style == FormatStyle::Italic) s.has_italic = true;
  }
  return s;
}

AnglicismStages anglicism_stages(const PolicyDocument& doc, const Wordlist* english_words,
                                 const Wordlist* german_stopwords,
                                 const WordMap* word_map_en_de) {
  if (!english_words || !german_stopwords || !word_map_en_de) {
    throw Error(ErrorKind::ResourceMissing,
                "anglicism detection needs an English wordlist, German stopwords "
                "and an en->de word map");
  }
  std::map<std::string, std::size_t> occurrences;
  for (const auto& t : document_words(doc)) {
    if (english_words->contains(t.normalized)) ++occurrences[t.normalized];
  }

  AnglicismStages out;
  for (const auto& [word, count] : occurrences) {
    out.english_hits.push_back(word);
    if (german_stopwords->contains(word)) continue;
    out.after_stopwords.push_back(word);
    const auto* translations = word_map_en_de->find(word);
    if (translations && translations->count(word) == 0) {
      out.anglicisms.emplace_back(word, count);
    }
  }
  std::stable_sort(out.anglicisms.begin(), out.anglicisms.end(),
                   [](const TermCount& a, const TermCount& b) { return a.second > b.second; });
  return out;
}

std::vector<TermCount> detect_anglicisms(const PolicyDocument& doc,
                                         const Wordlist* english_words,
                                         const Wordlist* german_stopwords,
                                         const WordMap* word_map_en_de) {
  return anglicism_stages(doc, english_words, german_stopwords, word_map_en_de).anglicisms;
}

double rare_word_proportion(const PolicyDocument& doc, const FrequencyDictionary& freq,
                            long threshold_rank) {
  if (threshold_rank < 1) {
    throw Error(ErrorKind::InvalidArgument, "rare-word threshold must be >= 1");
  }
  std::size_t words = 0;
  std::size_t rare = 0;
  for (const auto& t : document_words(doc)) {
    ++words;
    const auto rank = freq.rank(t.normalized);
    if (!rank || *rank > threshold_rank) ++rare;
  }
  return words == 0 ? 0.0 : static_cast<double>(rare) / static_cast<double>(words);
}

double roundtrip_unchanged(const PolicyDocument& doc, const WordMap& forward,
                           const WordMap& backward) {
  std::size_t words = 0;
  std::size_t unchanged = 0;
  for (const auto& t : document_words(doc)) {
    ++words;
    const auto* targets = forward.find(t.normalized);
    bool same = true;
    if (targets) {
      for (const auto& target : *targets) {
        const auto* back = backward.find(target);
        if (!back) continue;
        if (std::any_of(back->begin(), back->end(),
                        [&](const std::string& b) { return b != t.normalized; })) {
          same = false;
          break;
        }
      }
    }
    unchanged += same;
  }
  return words == 0 ? 1.0 : static_cast<double>(unchanged) / static_cast<double>(words);
}

ReadingTime reading_time(std::size_t words, const ReadingRates& rates) {
  if (!(rates.average_wpm > 0) || !(rates.dyslexic_wpm > 0)) {
    throw Error(ErrorKind::InvalidRate, "reading rates must be positive");
  }
  if (rates.dyslexic_wpm > rates.average_wpm) {
    throw Error(ErrorKind::InvalidRate, "dyslexic reading rate exceeds average rate");
  }
  const double w = static_cast<double>(words);
  return {words, w / rates.average_wpm, w / rates.dyslexic_wpm};
}

namespace {

std::vector<std::string> normalized_words(std::string_view text) {
  std::vector<std::string> out;
  for (auto& t : tokenize(text)) {
    if (t.is_word) out.push_back(std::move(t.normalized));
  }
  return out;
}

}  // namespace

HeadingFit heading_fit(const PolicyDocument& doc, const EmbeddingStore& embeddings) {
  HeadingFit fit;
  bool any_heading = false;
  const auto& blocks = doc.blocks;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i].kind != BlockKind::Heading) continue;
    any_heading = true;
    const int level = blocks[i].level.value_or(1);
    std::vector<std::string> section;
    for (std::size_t j = i + 1; j < blocks.size(); ++j) {
      if (blocks[j].kind == BlockKind::Heading && blocks[j].level.value_or(1) <= level) break;
      auto words = normalized_words(blocks[j].text);
      section.insert(section.end(), words.begin(), words.end());
    }
    const auto heading_words = normalized_words(blocks[i].text);
    const auto head_vec = mean_vector(heading_words, embeddings);
    const auto section_vec = mean_vector(section, embeddings);
    if (!head_vec || !section_vec) {
      fit.undefined.push_back(i);
      continue;
    }
    try {
      fit.scores.emplace_back(i, cosine(*head_vec, *section_vec));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ZeroVector) throw;
      fit.undefined.push_back(i);
    }
  }
  if (!any_heading) {
    throw Error(ErrorKind::NoHeadings, "document '" + doc.doc_id + "' has no headings");
  }
  return fit;
}

InformationalReport analyze_informational(const PolicyDocument& doc,
                                          const InformationalOptions& options,
                                          const InformationalResources& res,
                                          std::vector<Issue>& issues) {
  InformationalReport report;
  report.readability = readability(doc, options.formula, options.language);
  report.classification = classify(report.readability.score, options.thresholds);
  report.surface = surface_stats(doc);
  report.reading = reading_time(report.surface.words, options.rates);

  auto record = [&](std::string measure, const Error& e) {
    issues.push_back({std::move(measure), std::string(to_string(e.kind())), e.what()});
  };

  try {
    AnglicismSummary summary;
    summary.terms = detect_anglicisms(doc, res.english_words, res.german_stopwords,
                                      res.word_map_en_de);
    summary.distinct = summary.terms.size();
    for (const auto& [term, count] : summary.terms) summary.total += count;
    report.words.anglicisms = std::move(summary);
  } catch (const Error& e) {
    record("anglicisms", e);
  }

  if (res.frequency) {
    report.words.rare_word_proportion =
        rare_word_proportion(doc, *res.frequency, options.rare_word_rank);
    report.words.rare_word_threshold = options.rare_word_rank;
  } else {
    record("rare_words", Error(ErrorKind::ResourceMissing, "no frequency dictionary"));
  }

  if (res.word_map_de_en && res.word_map_en_de) {
    report.words.roundtrip_unchanged_proportion =
        roundtrip_unchanged(doc, *res.word_map_de_en, *res.word_map_en_de);
  } else {
    record("roundtrip", Error(ErrorKind::ResourceMissing, "round trip needs de->en and en->de word maps"));
  }

  if (res.embeddings) {
    try {
      report.heading_fit = heading_fit(doc, *res.embeddings);
      if (!report.heading_fit->undefined.empty()) {
        issues.push_back({"heading_fit", "OutOfVocabulary",
                          std::to_string(report.heading_fit->undefined.size()) +
                              " heading(s) without in-vocabulary words on one side"});
      }
    } catch (const Error& e) {
      record("heading_fit", e);
    }
  }
  return report;
}

}  // namespace polfair
