#include <cstdio>
#include <sstream>

#include "polfair/report.hpp"

namespace polfair {
namespace {

std::string fixed(double v, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string cell(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += "\\|";
    else if (c == '\n' || c == '\r') out += ' ';
    else out += c;
  }
  return out;
}

std::string criterion_title(const std::string& id) {
  for (const auto& c : ethics_taxonomy())
    if (c.id == id) return c.title;
  return id;
}

void write_issue_list(std::ostream& out, const std::vector<Issue>& issues) {
  for (const auto& i : issues)
    out << "- " << i.measure << ": " << i.kind << " (" << cell(i.message) << ")\n";
}

void write_counts(std::ostream& out, const RepresentationCounts& counts) {
  out << "| Axis | Group | Occurrences |\n|---|---|---:|\n";
  for (const auto& [axis, groups] : counts)
    for (const auto& [group, n] : groups) out << "| " << axis << " | " << group << " | " << n << " |\n";
}

void write_document(std::ostream& out, const AuditReport& r, const std::string& h) {
  out << h << " " << r.doc_id << "\n\n";
  out << "- source: " << r.source_name;
  if (r.year) out << " (" << *r.year << ")";
  out << "\n- file: " << r.source_file << "\n\n";

  if (r.informational) {
    out << h << "# Informational fairness\n\n";
    const auto& s = *r.informational;
    if (s.error) out << "Error: " << s.error->kind << " (" << cell(s.error->message) << ")\n\n";
    if (s.report) {
      const auto& rep = *s.report;
      const auto& rd = rep.readability;
      out << "| Measure | Value |\n|---|---:|\n";
      out << "| Readability (" << to_string(rd.formula) << ") | " << fixed(rd.score) << " |\n";
      out << "| Sentences | " << rd.sentences << " |\n";
      out << "| Words | " << rep.surface.words << " |\n";
      out << "| Paragraphs | " << rep.surface.paragraphs << " |\n";
      out << "| Words / paragraph | " << fixed(rep.surface.words_per_paragraph) << " |\n";
      out << "| Headings | " << rep.surface.headings << " |\n";
      out << "| Heading levels | " << rep.surface.heading_levels_used << " |\n";
      out << "| Words / heading | " << fixed(rep.surface.words_per_heading) << " |\n";
      out << "| List items | " << rep.surface.list_items << " |\n";
      out << "| Strong formatting | " << (rep.surface.has_strong ? "yes" : "no") << " |\n";
      out << "| Italic formatting | " << (rep.surface.has_italic ? "yes" : "no") << " |\n";
      out << "| Reading time, average reader (min) | " << fixed(rep.reading.minutes_average_reader) << " |\n";
      out << "| Reading time, dyslexic reader (min) | " << fixed(rep.reading.minutes_dyslexic_reader) << " |\n";
      if (rep.words.rare_word_proportion)
        out << "| Rare words (rank > " << rep.words.rare_word_threshold.value_or(0) << ") | "
            << fixed(100.0 * *rep.words.rare_word_proportion) << "% |\n";
      if (rep.words.roundtrip_unchanged_proportion)
        out << "| Unchanged after round trip | " << fixed(100.0 * *rep.words.roundtrip_unchanged_proportion)
            << "% |\n";
      if (rep.words.anglicisms)
        out << "| Anglicisms (distinct / occurrences) | " << rep.words.anglicisms->distinct << " / "
            << rep.words.anglicisms->total << " |\n";
      out << "\n";
      if (rep.classification.academic_only) out << "Readable only at an academic level.\n\n";
      else if (rep.classification.fair_target_met) out << "Plain-language target met.\n\n";
      if (rep.words.anglicisms && !rep.words.anglicisms->terms.empty()) {
        out << "Anglicisms:";
        for (const auto& [term, n] : rep.words.anglicisms->terms) out << " " << term << " (" << n << ")";
        out << "\n\n";
      }
    }
    if (!s.issues.empty()) {
      out << "Issues:\n\n";
      write_issue_list(out, s.issues);
      out << "\n";
    }
  }

  if (r.representational) {
    out << h << "# Representational fairness\n\n";
    const auto& s = *r.representational;
    if (s.error) out << "Error: " << s.error->kind << " (" << cell(s.error->message) << ")\n\n";
    if (s.report) {
      write_counts(out, s.report->counts);
      out << "\n";
      if (s.report->gendering) {
        const auto& g = *s.report->gendering;
        out << "Gender terms: male " << g.male << ", female " << g.female << ", neutral " << g.neutral
            << " (prefix matching: " << g.male_prefix << ", " << g.female_prefix << ", "
            << g.neutral_prefix << ")\n\n";
        if (!g.ungendered_flagged.empty()) {
          out << "Ungendered terms:";
          for (const auto& [term, n] : g.ungendered_flagged) out << " " << term << " (" << n << ")";
          out << "\n\n";
        }
      }
      if (s.report->associations) {
        out << "| Targets | Attributes | Effect size |\n|---|---|---:|\n";
        for (const auto& a : *s.report->associations)
          out << "| " << cell(a.target_x_label) << " vs " << cell(a.target_y_label) << " | "
              << cell(a.attribute_a_label) << " vs " << cell(a.attribute_b_label) << " | "
              << fixed(a.effect_size, 4) << " |\n";
        out << "\n";
      }
    }
    if (!s.issues.empty()) {
      out << "Issues:\n\n";
      write_issue_list(out, s.issues);
      out << "\n";
    }
  }

  if (r.ethics) {
    out << h << "# Ethics assessment\n\n";
    const auto& s = *r.ethics;
    if (s.error) out << "Error: " << s.error->kind << " (" << cell(s.error->message) << ")\n\n";
    if (s.assessment) {
      const auto& a = *s.assessment;
      out << "| Criterion | Runs | Mean score |\n|---|---:|---:|\n";
      for (const auto& c : ethics_taxonomy()) {
        auto it = a.aggregate.find(c.id);
        if (it == a.aggregate.end()) continue;
        out << "| " << c.title << " | " << it->second.runs_mentioning << " | "
            << fixed(it->second.mean_score) << " |\n";
      }
      out << "\n";
      for (const auto& run : a.runs)
        if (run.parse_error) out << "- run " << run.run_index << ": " << cell(*run.parse_error) << "\n";
      for (const auto& w : a.warnings) out << "- warning: " << cell(w) << "\n";
      if (!a.unmapped_labels.empty()) {
        out << "- unmapped labels:";
        for (const auto& l : a.unmapped_labels) out << " \"" << cell(l) << "\"";
        out << "\n";
      }
      out << "\n";
    }
  }
}

void write_aggregates(std::ostream& out, const CorpusAggregates& c, const std::string& h) {
  const auto& s = c.surface;
  out << "| Measure | Value |\n|---|---:|\n";
  out << "| Words / policy | " << fixed(s.words_per_policy) << " |\n";
  out << "| Paragraphs / policy | " << fixed(s.paragraphs_per_policy) << " |\n";
  out << "| Words / paragraph | " << fixed(s.words_per_paragraph) << " |\n";
  out << "| Headings / policy (% without headings) | " << fixed(s.headings_per_policy) << " ("
      << fixed(s.pct_without_headings) << "%) |\n";
  out << "| Heading types | " << fixed(s.heading_types) << " |\n";
  out << "| Words / heading | " << fixed(s.words_per_heading) << " |\n";
  out << "| Lists (% of policies) | " << fixed(s.pct_with_lists) << "% |\n";
  out << "| Other formatting: strong, italics (% of policies) | " << fixed(s.pct_with_strong) << "%, "
      << fixed(s.pct_with_italic) << "% |\n\n";
  if (c.readability) {
    const auto& r = *c.readability;
    out << "Readability (" << r.formula << "): mean " << fixed(r.mean) << ", min " << fixed(r.min)
        << ", max " << fixed(r.max) << "; academic only " << fixed(r.pct_academic_only)
        << "%, plain-language target met " << fixed(r.pct_fair_target_met) << "%\n\n";
  }
  if (c.anglicisms)
    out << "Anglicisms per policy: " << fixed(c.anglicisms->mean_distinct) << " distinct, "
        << fixed(c.anglicisms->mean_occurrences) << " occurrences\n\n";
  if (!c.representation.empty()) {
    out << h << " Representation\n\n";
    write_counts(out, c.representation);
    out << "\n";
  }
  if (c.gendering)
    out << "Gender terms: male " << c.gendering->male << ", female " << c.gendering->female
        << ", neutral " << c.gendering->neutral << "\n\n";
  if (!c.ethics.empty()) {
    out << h << " Ethics\n\n| Criterion | # Runs | # Policies | Average score |\n|---|---:|---:|---:|\n";
    for (const auto& row : c.ethics)
      out << "| " << criterion_title(row.criterion) << " | " << row.runs << " | " << row.policies << " | "
          << fixed(row.average_score) << " |\n";
    out << "\n";
  }
}

}  // namespace

std::string to_markdown(const AuditReport& report) {
  std::ostringstream out;
  write_document(out, report, "#");
  return out.str();
}

std::string to_markdown(const CorpusReport& report) {
  std::ostringstream out;
  out << "# Privacy policy audit\n\n";
  out << report.corpus.policies << " policies audited";
  if (!report.failures.empty()) out << ", " << report.failures.size() << " failed";
  out << ".\n\n## Corpus\n\n";
  write_aggregates(out, report.corpus, "###");
  for (const auto& [year, agg] : report.by_year) {
    out << "## " << year << "\n\n";
    write_aggregates(out, agg, "###");
  }
  if (!report.failures.empty()) {
    out << "## Failures\n\n";
    for (const auto& f : report.failures) out << "- " << f.file << ": " << f.kind << " (" << cell(f.message) << ")\n";
    out << "\n";
  }
  out << "## Policies\n\n";
  for (const auto& d : report.documents) write_document(out, d, "###");
  return out.str();
}

}  // namespace polfair
