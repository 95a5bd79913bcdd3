#include <json.hpp>

#include "polfair/error.hpp"
#include "polfair/report.hpp"

namespace polfair {
namespace {

using Json = nlohmann::ordered_json;

template <typename T>
void put_opt(Json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

template <typename T>
std::optional<T> get_opt(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return it->template get<T>();
}

const Json& at(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw Error(ErrorKind::MalformedInput, std::string("missing key '") + key + "'");
  return *it;
}

ReadabilityFormula formula_from(const std::string& s) {
  if (s == "amstad_german") return ReadabilityFormula::AmstadGerman;
  if (s == "flesch_english") return ReadabilityFormula::FleschEnglish;
  throw Error(ErrorKind::MalformedInput, "unknown formula '" + s + "'");
}

Json term_counts(const std::vector<std::pair<std::string, std::size_t>>& v) {
  Json a = Json::array();
  for (const auto& [term, count] : v) a.push_back(Json{{"term", term}, {"count", count}});
  return a;
}

std::vector<std::pair<std::string, std::size_t>> term_counts_from(const Json& a) {
  std::vector<std::pair<std::string, std::size_t>> out;
  for (const auto& e : a) out.emplace_back(at(e, "term").get<std::string>(), at(e, "count").get<std::size_t>());
  return out;
}

Json issue_json(const Issue& i) {
  return Json{{"measure", i.measure}, {"kind", i.kind}, {"message", i.message}};
}

Issue issue_from(const Json& j) {
  return {at(j, "measure").get<std::string>(), at(j, "kind").get<std::string>(),
          at(j, "message").get<std::string>()};
}

Json issues_json(const std::vector<Issue>& v) {
  Json a = Json::array();
  for (const auto& i : v) a.push_back(issue_json(i));
  return a;
}

std::vector<Issue> issues_from(const Json& a) {
  std::vector<Issue> out;
  for (const auto& e : a) out.push_back(issue_from(e));
  return out;
}

Json informational_json(const InformationalReport& r) {
  Json j;
  const auto& rd = r.readability;
  j["readability"] = Json{{"formula", std::string(to_string(rd.formula))},
                          {"sentences", rd.sentences},
                          {"words", rd.words},
                          {"syllables", rd.syllables},
                          {"asl", rd.asl},
                          {"asw", rd.asw},
                          {"score", rd.score},
                          {"academic_only", r.classification.academic_only},
                          {"fair_target_met", r.classification.fair_target_met}};
  const auto& s = r.surface;
  j["surface"] = Json{{"words", s.words},
                      {"paragraphs", s.paragraphs},
                      {"words_per_paragraph", s.words_per_paragraph},
                      {"headings", s.headings},
                      {"heading_levels_used", s.heading_levels_used},
                      {"words_per_heading", s.words_per_heading},
                      {"list_items", s.list_items},
                      {"has_lists", s.has_lists},
                      {"has_strong", s.has_strong},
                      {"has_italic", s.has_italic},
                      {"has_headings", s.has_headings}};
  Json w = Json::object();
  if (r.words.anglicisms) {
    const auto& a = *r.words.anglicisms;
    w["anglicisms"] = Json{{"distinct", a.distinct}, {"total", a.total}, {"terms", term_counts(a.terms)}};
  }
  put_opt(w, "rare_word_proportion", r.words.rare_word_proportion);
  put_opt(w, "rare_word_threshold", r.words.rare_word_threshold);
  put_opt(w, "roundtrip_unchanged_proportion", r.words.roundtrip_unchanged_proportion);
  j["words"] = w;
  j["reading_time"] = Json{{"words", r.reading.words},
                           {"minutes_average_reader", r.reading.minutes_average_reader},
                           {"minutes_dyslexic_reader", r.reading.minutes_dyslexic_reader}};
  if (r.heading_fit) {
    Json scores = Json::array();
    for (const auto& [block, score] : r.heading_fit->scores)
      scores.push_back(Json{{"block_index", block}, {"cosine", score}});
    j["heading_fit"] = Json{{"scores", scores}, {"undefined", r.heading_fit->undefined}};
  }
  return j;
}

InformationalReport informational_from(const Json& j) {
  InformationalReport r;
  const auto& rd = at(j, "readability");
  r.readability.formula = formula_from(at(rd, "formula").get<std::string>());
  r.readability.sentences = at(rd, "sentences").get<std::size_t>();
  r.readability.words = at(rd, "words").get<std::size_t>();
  r.readability.syllables = at(rd, "syllables").get<std::size_t>();
  r.readability.asl = at(rd, "asl").get<double>();
  r.readability.asw = at(rd, "asw").get<double>();
  r.readability.score = at(rd, "score").get<double>();
  r.classification.academic_only = at(rd, "academic_only").get<bool>();
  r.classification.fair_target_met = at(rd, "fair_target_met").get<bool>();
  const auto& s = at(j, "surface");
  r.surface.words = at(s, "words").get<std::size_t>();
  r.surface.paragraphs = at(s, "paragraphs").get<std::size_t>();
  r.surface.words_per_paragraph = at(s, "words_per_paragraph").get<double>();
  r.surface.headings = at(s, "headings").get<std::size_t>();
  r.surface.heading_levels_used = at(s, "heading_levels_used").get<std::size_t>();
  r.surface.words_per_heading = at(s, "words_per_heading").get<double>();
  r.surface.list_items = at(s, "list_items").get<std::size_t>();
  r.surface.has_lists = at(s, "has_lists").get<bool>();
  r.surface.has_strong = at(s, "has_strong").get<bool>();
  r.surface.has_italic = at(s, "has_italic").get<bool>();
  r.surface.has_headings = at(s, "has_headings").get<bool>();
  const auto& w = at(j, "words");
  if (auto it = w.find("anglicisms"); it != w.end()) {
    AnglicismSummary a;
    a.distinct = at(*it, "distinct").get<std::size_t>();
    a.total = at(*it, "total").get<std::size_t>();
    a.terms = term_counts_from(at(*it, "terms"));
    r.words.anglicisms = std::move(a);
  }
  r.words.rare_word_proportion = get_opt<double>(w, "rare_word_proportion");
  r.words.rare_word_threshold = get_opt<long>(w, "rare_word_threshold");
  r.words.roundtrip_unchanged_proportion = get_opt<double>(w, "roundtrip_unchanged_proportion");
  const auto& rt = at(j, "reading_time");
  r.reading.words = at(rt, "words").get<std::size_t>();
  r.reading.minutes_average_reader = at(rt, "minutes_average_reader").get<double>();
  r.reading.minutes_dyslexic_reader = at(rt, "minutes_dyslexic_reader").get<double>();
  if (auto it = j.find("heading_fit"); it != j.end()) {
    HeadingFit fit;
    for (const auto& e : at(*it, "scores"))
      fit.scores.emplace_back(at(e, "block_index").get<std::size_t>(), at(e, "cosine").get<double>());
    fit.undefined = at(*it, "undefined").get<std::vector<std::size_t>>();
    r.heading_fit = std::move(fit);
  }
  return r;
}

Json counts_json(const RepresentationCounts& c) {
  Json j = Json::object();
  for (const auto& [axis, groups] : c) {
    Json g = Json::object();
    for (const auto& [group, n] : groups) g[group] = n;
    j[axis] = g;
  }
  return j;
}

RepresentationCounts counts_from(const Json& j) {
  RepresentationCounts c;
  for (const auto& [axis, groups] : j.items())
    for (const auto& [group, n] : groups.items()) c[axis][group] = n.get<std::size_t>();
  return c;
}

Json representational_json(const RepresentationReport& r) {
  Json j;
  j["counts"] = counts_json(r.counts);
  if (r.gendering) {
    const auto& g = *r.gendering;
    j["gendering"] = Json{{"male", g.male},
                          {"female", g.female},
                          {"neutral", g.neutral},
                          {"male_prefix", g.male_prefix},
                          {"female_prefix", g.female_prefix},
                          {"neutral_prefix", g.neutral_prefix},
                          {"ungendered_flagged", term_counts(g.ungendered_flagged)}};
  }
  if (r.associations) {
    Json a = Json::array();
    for (const auto& res : *r.associations) {
      Json per = Json::array();
      for (const auto& [word, s] : res.per_word_associations)
        per.push_back(Json{{"word", word}, {"association", s}});
      a.push_back(Json{{"target_x", res.target_x_label},
                       {"target_y", res.target_y_label},
                       {"attribute_a", res.attribute_a_label},
                       {"attribute_b", res.attribute_b_label},
                       {"effect_size", res.effect_size},
                       {"per_word_associations", per},
                       {"skipped_oov", res.skipped_oov}});
    }
    j["associations"] = a;
  }
  return j;
}

RepresentationReport representational_from(const Json& j) {
  RepresentationReport r;
  r.counts = counts_from(at(j, "counts"));
  if (auto it = j.find("gendering"); it != j.end()) {
    GenderingRecord g;
    g.male = at(*it, "male").get<std::size_t>();
    g.female = at(*it, "female").get<std::size_t>();
    g.neutral = at(*it, "neutral").get<std::size_t>();
    g.male_prefix = at(*it, "male_prefix").get<std::size_t>();
    g.female_prefix = at(*it, "female_prefix").get<std::size_t>();
    g.neutral_prefix = at(*it, "neutral_prefix").get<std::size_t>();
    g.ungendered_flagged = term_counts_from(at(*it, "ungendered_flagged"));
    r.gendering = std::move(g);
  }
  if (auto it = j.find("associations"); it != j.end()) {
    std::vector<AssociationResult> list;
    for (const auto& e : *it) {
      AssociationResult res;
      res.target_x_label = at(e, "target_x").get<std::string>();
      res.target_y_label = at(e, "target_y").get<std::string>();
      res.attribute_a_label = at(e, "attribute_a").get<std::string>();
      res.attribute_b_label = at(e, "attribute_b").get<std::string>();
      res.effect_size = at(e, "effect_size").get<double>();
      for (const auto& p : at(e, "per_word_associations"))
        res.per_word_associations.emplace_back(at(p, "word").get<std::string>(),
                                               at(p, "association").get<double>());
      res.skipped_oov = at(e, "skipped_oov").get<std::vector<std::string>>();
      list.push_back(std::move(res));
    }
    r.associations = std::move(list);
  }
  return r;
}

Json ethics_json(const EthicsAssessment& a) {
  Json runs = Json::array();
  for (const auto& run : a.runs) {
    Json scores = Json::array();
    for (const auto& s : run.extracted)
      scores.push_back(Json{{"criterion", s.criterion}, {"score", s.score}, {"rationale", s.rationale}});
    Json r{{"run_index", run.run_index}, {"scores", scores}};
    put_opt(r, "parse_error", run.parse_error);
    r["raw_text"] = run.raw_text;
    runs.push_back(r);
  }
  Json agg = Json::object();
  for (const auto& [id, c] : a.aggregate)
    agg[id] = Json{{"runs_mentioning", c.runs_mentioning}, {"mean_score", c.mean_score}};
  return Json{{"doc_id", a.doc_id},
              {"aggregate", agg},
              {"unmapped_labels", a.unmapped_labels},
              {"warnings", a.warnings},
              {"runs", runs}};
}

EthicsAssessment ethics_from(const Json& j) {
  EthicsAssessment a;
  a.doc_id = at(j, "doc_id").get<std::string>();
  for (const auto& [id, c] : at(j, "aggregate").items())
    a.aggregate[id] = {at(c, "runs_mentioning").get<std::size_t>(), at(c, "mean_score").get<double>()};
  a.unmapped_labels = at(j, "unmapped_labels").get<std::vector<std::string>>();
  a.warnings = at(j, "warnings").get<std::vector<std::string>>();
  for (const auto& r : at(j, "runs")) {
    RunResult run;
    run.run_index = at(r, "run_index").get<int>();
    run.raw_text = at(r, "raw_text").get<std::string>();
    run.parse_error = get_opt<std::string>(r, "parse_error");
    for (const auto& s : at(r, "scores"))
      run.extracted.push_back({at(s, "criterion").get<std::string>(), at(s, "score").get<int>(),
                               at(s, "rationale").get<std::string>()});
    a.runs.push_back(std::move(run));
  }
  return a;
}

template <typename Section>
void section_status(Json& j, const Section& s) {
  if (s.error) j["error"] = issue_json(*s.error);
}

Json report_json(const AuditReport& r) {
  Json j;
  j["schema_version"] = r.schema_version;
  j["tool_version"] = r.tool_version;
  j["doc_id"] = r.doc_id;
  j["source_name"] = r.source_name;
  put_opt(j, "year", r.year);
  j["source_file"] = r.source_file;
  if (r.informational) {
    Json s = Json::object();
    section_status(s, *r.informational);
    if (r.informational->report) s["report"] = informational_json(*r.informational->report);
    s["issues"] = issues_json(r.informational->issues);
    j["informational"] = s;
  }
  if (r.representational) {
    Json s = Json::object();
    section_status(s, *r.representational);
    if (r.representational->report) s["report"] = representational_json(*r.representational->report);
    s["issues"] = issues_json(r.representational->issues);
    j["representational"] = s;
  }
  if (r.ethics) {
    Json s = Json::object();
    section_status(s, *r.ethics);
    if (r.ethics->assessment) s["assessment"] = ethics_json(*r.ethics->assessment);
    j["ethics"] = s;
  }
  j["resource_checksums"] = r.resource_checksums;
  return j;
}

void check_schema(const Json& j) {
  const int v = at(j, "schema_version").get<int>();
  if (v != kSchemaVersion)
    throw Error(ErrorKind::MalformedInput, "unsupported schema_version " + std::to_string(v));
}

AuditReport report_from(const Json& j) {
  check_schema(j);
  AuditReport r;
  r.schema_version = at(j, "schema_version").get<int>();
  r.tool_version = at(j, "tool_version").get<std::string>();
  r.doc_id = at(j, "doc_id").get<std::string>();
  r.source_name = at(j, "source_name").get<std::string>();
  r.year = get_opt<int>(j, "year");
  r.source_file = at(j, "source_file").get<std::string>();
  if (auto it = j.find("informational"); it != j.end()) {
    InformationalSection s;
    if (auto e = it->find("error"); e != it->end()) s.error = issue_from(*e);
    if (auto e = it->find("report"); e != it->end()) s.report = informational_from(*e);
    s.issues = issues_from(at(*it, "issues"));
    r.informational = std::move(s);
  }
  if (auto it = j.find("representational"); it != j.end()) {
    RepresentationalSection s;
    if (auto e = it->find("error"); e != it->end()) s.error = issue_from(*e);
    if (auto e = it->find("report"); e != it->end()) s.report = representational_from(*e);
    s.issues = issues_from(at(*it, "issues"));
    r.representational = std::move(s);
  }
  if (auto it = j.find("ethics"); it != j.end()) {
    EthicsSection s;
    if (auto e = it->find("error"); e != it->end()) s.error = issue_from(*e);
    if (auto e = it->find("assessment"); e != it->end()) s.assessment = ethics_from(*e);
    r.ethics = std::move(s);
  }
  r.resource_checksums = at(j, "resource_checksums").get<std::map<std::string, std::string>>();
  return r;
}

Json aggregates_json(const CorpusAggregates& c) {
  Json j;
  j["policies"] = c.policies;
  const auto& s = c.surface;
  j["surface"] = Json{{"policies", s.policies},
                      {"words_per_policy", s.words_per_policy},
                      {"paragraphs_per_policy", s.paragraphs_per_policy},
                      {"words_per_paragraph", s.words_per_paragraph},
                      {"headings_per_policy", s.headings_per_policy},
                      {"pct_without_headings", s.pct_without_headings},
                      {"heading_types", s.heading_types},
                      {"words_per_heading", s.words_per_heading},
                      {"pct_with_lists", s.pct_with_lists},
                      {"pct_with_strong", s.pct_with_strong},
                      {"pct_with_italic", s.pct_with_italic}};
  if (c.readability) {
    const auto& r = *c.readability;
    j["readability"] = Json{{"formula", r.formula},
                            {"policies", r.policies},
                            {"mean", r.mean},
                            {"min", r.min},
                            {"max", r.max},
                            {"pct_academic_only", r.pct_academic_only},
                            {"pct_fair_target_met", r.pct_fair_target_met}};
  }
  if (c.anglicisms) {
    j["anglicisms"] = Json{{"policies", c.anglicisms->policies},
                           {"mean_distinct", c.anglicisms->mean_distinct},
                           {"mean_occurrences", c.anglicisms->mean_occurrences}};
  }
  j["representation"] = counts_json(c.representation);
  if (c.gendering) {
    const auto& g = *c.gendering;
    j["gendering"] = Json{{"male", g.male},
                          {"female", g.female},
                          {"neutral", g.neutral},
                          {"male_prefix", g.male_prefix},
                          {"female_prefix", g.female_prefix},
                          {"neutral_prefix", g.neutral_prefix},
                          {"ungendered_flagged", g.ungendered_flagged}};
  }
  Json rows = Json::array();
  for (const auto& row : c.ethics)
    rows.push_back(Json{{"criterion", row.criterion},
                        {"runs", row.runs},
                        {"policies", row.policies},
                        {"average_score", row.average_score}});
  j["ethics"] = rows;
  return j;
}

CorpusAggregates aggregates_from(const Json& j) {
  CorpusAggregates c;
  c.policies = at(j, "policies").get<std::size_t>();
  const auto& s = at(j, "surface");
  c.surface.policies = at(s, "policies").get<std::size_t>();
  c.surface.words_per_policy = at(s, "words_per_policy").get<double>();
  c.surface.paragraphs_per_policy = at(s, "paragraphs_per_policy").get<double>();
  c.surface.words_per_paragraph = at(s, "words_per_paragraph").get<double>();
  c.surface.headings_per_policy = at(s, "headings_per_policy").get<double>();
  c.surface.pct_without_headings = at(s, "pct_without_headings").get<double>();
  c.surface.heading_types = at(s, "heading_types").get<double>();
  c.surface.words_per_heading = at(s, "words_per_heading").get<double>();
  c.surface.pct_with_lists = at(s, "pct_with_lists").get<double>();
  c.surface.pct_with_strong = at(s, "pct_with_strong").get<double>();
  c.surface.pct_with_italic = at(s, "pct_with_italic").get<double>();
  if (auto it = j.find("readability"); it != j.end()) {
    ReadabilitySummary r;
    r.formula = at(*it, "formula").get<std::string>();
    r.policies = at(*it, "policies").get<std::size_t>();
    r.mean = at(*it, "mean").get<double>();
    r.min = at(*it, "min").get<double>();
    r.max = at(*it, "max").get<double>();
    r.pct_academic_only = at(*it, "pct_academic_only").get<double>();
    r.pct_fair_target_met = at(*it, "pct_fair_target_met").get<double>();
    c.readability = r;
  }
  if (auto it = j.find("anglicisms"); it != j.end()) {
    c.anglicisms = AnglicismTotals{at(*it, "policies").get<std::size_t>(),
                                   at(*it, "mean_distinct").get<double>(),
                                   at(*it, "mean_occurrences").get<double>()};
  }
  c.representation = counts_from(at(j, "representation"));
  if (auto it = j.find("gendering"); it != j.end()) {
    GenderingTotals g;
    g.male = at(*it, "male").get<std::size_t>();
    g.female = at(*it, "female").get<std::size_t>();
    g.neutral = at(*it, "neutral").get<std::size_t>();
    g.male_prefix = at(*it, "male_prefix").get<std::size_t>();
    g.female_prefix = at(*it, "female_prefix").get<std::size_t>();
    g.neutral_prefix = at(*it, "neutral_prefix").get<std::size_t>();
    g.ungendered_flagged = at(*it, "ungendered_flagged").get<std::map<std::string, std::size_t>>();
    c.gendering = std::move(g);
  }
  for (const auto& row : at(j, "ethics"))
    c.ethics.push_back({at(row, "criterion").get<std::string>(), at(row, "runs").get<std::size_t>(),
                        at(row, "policies").get<std::size_t>(),
                        at(row, "average_score").get<double>()});
  return c;
}

Json corpus_json(const CorpusReport& r) {
  Json j;
  j["schema_version"] = r.schema_version;
  j["tool_version"] = r.tool_version;
  j["corpus"] = aggregates_json(r.corpus);
  Json years = Json::object();
  for (const auto& [year, agg] : r.by_year) years[std::to_string(year)] = aggregates_json(agg);
  j["by_year"] = years;
  Json failures = Json::array();
  for (const auto& f : r.failures)
    failures.push_back(Json{{"file", f.file}, {"kind", f.kind}, {"message", f.message}});
  j["failures"] = failures;
  j["resource_checksums"] = r.resource_checksums;
  Json docs = Json::array();
  for (const auto& d : r.documents) docs.push_back(report_json(d));
  j["documents"] = docs;
  return j;
}

CorpusReport corpus_from(const Json& j) {
  check_schema(j);
  CorpusReport r;
  r.schema_version = at(j, "schema_version").get<int>();
  r.tool_version = at(j, "tool_version").get<std::string>();
  r.corpus = aggregates_from(at(j, "corpus"));
  for (const auto& [year, agg] : at(j, "by_year").items()) r.by_year[std::stoi(year)] = aggregates_from(agg);
  for (const auto& f : at(j, "failures"))
    r.failures.push_back({at(f, "file").get<std::string>(), at(f, "kind").get<std::string>(),
                          at(f, "message").get<std::string>()});
  r.resource_checksums = at(j, "resource_checksums").get<std::map<std::string, std::string>>();
  for (const auto& d : at(j, "documents")) r.documents.push_back(report_from(d));
  return r;
}

std::string dump(const Json& j) {
  return j.dump(2, ' ', false, Json::error_handler_t::replace) + "\n";
}

template <typename Fn>
auto parse_with(std::string_view text, Fn fn) {
  try {
    return fn(Json::parse(text));
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::MalformedInput, std::string("report JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw Error(ErrorKind::MalformedInput, std::string("report JSON: ") + e.what());
  }
}

}  // namespace

std::string to_json_text(const AuditReport& report) { return dump(report_json(report)); }
std::string to_json_text(const CorpusReport& report) { return dump(corpus_json(report)); }

AuditReport audit_report_from_json(std::string_view text) {
  return parse_with(text, [](const Json& j) { return report_from(j); });
}

CorpusReport corpus_report_from_json(std::string_view text) {
  return parse_with(text, [](const Json& j) { return corpus_from(j); });
}

}  // namespace polfair
