#include "polfair/audit.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <regex>
#include <set>
#include <thread>

#include <json.hpp>

#include "polfair/error.hpp"
#include "polfair/llm_backend.hpp"
#include "polfair/text.hpp"

#ifndef POLFAIR_VERSION
#define POLFAIR_VERSION "0.0.0"
#endif
#ifndef POLFAIR_DATA_DIR
#define POLFAIR_DATA_DIR "data"
#endif

namespace fs = std::filesystem;

namespace polfair {

std::string_view tool_version() { return POLFAIR_VERSION; }

ReadabilityFormula AuditConfig::effective_formula() const {
  if (formula) return *formula;
  return language == Language::German ? ReadabilityFormula::AmstadGerman
                                      : ReadabilityFormula::FleschEnglish;
}

namespace {

using Json = nlohmann::json;

[[noreturn]] void config_error(const std::string& msg) { throw Error(ErrorKind::Config, msg); }

void only_keys(const Json& j, std::string_view where, std::initializer_list<std::string_view> keys) {
  if (!j.is_object()) config_error(std::string(where) + " must be an object");
  for (const auto& [k, v] : j.items())
    if (std::find(keys.begin(), keys.end(), k) == keys.end())
      config_error("unknown key '" + k + "' in " + std::string(where));
}

template <typename T>
void read(const Json& j, const char* key, T& out) {
  if (auto it = j.find(key); it != j.end()) out = it->get<T>();
}

fs::path resolve(const fs::path& base, const std::string& p) {
  fs::path path(p);
  return path.is_relative() && !base.empty() ? base / path : path;
}

Language language_from(const std::string& s) {
  if (s == "german") return Language::German;
  if (s == "english") return Language::English;
  config_error("language must be 'german' or 'english', got '" + s + "'");
}

std::vector<std::string> word_list(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) config_error(std::string("association test lacks '") + key + "'");
  return it->get<std::vector<std::string>>();
}

}  // namespace

AuditConfig parse_config(std::string_view json_text, const fs::path& base_dir) {
  Json j;
  try {
    j = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    config_error(std::string("config is not valid JSON: ") + e.what());
  }
  AuditConfig c;
  try {
    only_keys(j, "config",
              {"language", "readability_formula", "resources", "thresholds", "reading_rates", "llm",
               "output_format", "analyzers", "association_tests", "workers"});
    if (auto it = j.find("language"); it != j.end()) c.language = language_from(it->get<std::string>());
    if (auto it = j.find("readability_formula"); it != j.end()) {
      const auto f = it->get<std::string>();
      if (f == "amstad_german") c.formula = ReadabilityFormula::AmstadGerman;
      else if (f == "flesch_english") c.formula = ReadabilityFormula::FleschEnglish;
      else config_error("unknown readability_formula '" + f + "'");
    }
    if (auto it = j.find("resources"); it != j.end()) {
      only_keys(*it, "resources",
                {"frequency_dictionary", "english_words", "german_stopwords", "word_map_en_de",
                 "word_map_de_en", "lexicon", "watchlist", "embeddings"});
      auto& r = c.resources;
      const std::pair<const char*, std::optional<fs::path>*> slots[] = {
          {"frequency_dictionary", &r.frequency_dictionary},
          {"english_words", &r.english_words},
          {"german_stopwords", &r.german_stopwords},
          {"word_map_en_de", &r.word_map_en_de},
          {"word_map_de_en", &r.word_map_de_en},
          {"lexicon", &r.lexicon},
          {"watchlist", &r.watchlist},
          {"embeddings", &r.embeddings}};
      for (const auto& [key, slot] : slots)
        if (auto p = it->find(key); p != it->end() && !p->is_null())
          *slot = resolve(base_dir, p->get<std::string>());
    }
    if (auto it = j.find("thresholds"); it != j.end()) {
      only_keys(*it, "thresholds", {"rare_word_rank", "fre_academic_max", "fre_fair_min"});
      read(*it, "rare_word_rank", c.rare_word_rank);
      read(*it, "fre_academic_max", c.thresholds.academic_max);
      read(*it, "fre_fair_min", c.thresholds.fair_min);
    }
    if (auto it = j.find("reading_rates"); it != j.end()) {
      only_keys(*it, "reading_rates", {"average_wpm", "dyslexic_wpm"});
      read(*it, "average_wpm", c.rates.average_wpm);
      read(*it, "dyslexic_wpm", c.rates.dyslexic_wpm);
    }
    if (auto it = j.find("llm"); it != j.end()) {
      only_keys(*it, "llm",
                {"endpoint", "model", "runs", "offline", "offline_dir", "api_key_env", "temperature",
                 "max_in_flight", "max_policy_chars", "prompt_language", "attempts", "backoff_ms"});
      auto& l = c.llm;
      read(*it, "endpoint", l.endpoint);
      read(*it, "model", l.model);
      read(*it, "runs", l.runs);
      read(*it, "offline", l.offline);
      if (auto d = it->find("offline_dir"); d != it->end() && !d->is_null())
        l.offline_dir = resolve(base_dir, d->get<std::string>());
      read(*it, "api_key_env", l.api_key_env);
      if (auto t = it->find("temperature"); t != it->end() && !t->is_null()) l.temperature = t->get<double>();
      read(*it, "max_in_flight", l.max_in_flight);
      read(*it, "max_policy_chars", l.max_policy_chars);
      if (auto p = it->find("prompt_language"); p != it->end())
        l.prompt_language = language_from(p->get<std::string>()) == Language::German
                                ? PromptLanguage::German
                                : PromptLanguage::English;
      read(*it, "attempts", l.attempts);
      read(*it, "backoff_ms", l.backoff_ms);
    }
    if (auto it = j.find("output_format"); it != j.end()) {
      const auto f = it->get<std::string>();
      if (f == "json") c.format = OutputFormat::Json;
      else if (f == "markdown") c.format = OutputFormat::Markdown;
      else config_error("output_format must be 'json' or 'markdown'");
    }
    if (auto it = j.find("analyzers"); it != j.end()) {
      c.analyzers = {false, false, false};
      for (const auto& name : it->get<std::vector<std::string>>()) {
        if (name == "informational") c.analyzers.informational = true;
        else if (name == "representational") c.analyzers.representational = true;
        else if (name == "ethics") c.analyzers.ethics = true;
        else config_error("unknown analyzer '" + name + "'");
      }
    }
    if (auto it = j.find("association_tests"); it != j.end()) {
      for (const auto& t : *it) {
        only_keys(t, "association test",
                  {"name", "x_label", "y_label", "a_label", "b_label", "x", "y", "a", "b"});
        AssociationTest test;
        read(t, "name", test.name);
        read(t, "x_label", test.target_x_label);
        read(t, "y_label", test.target_y_label);
        read(t, "a_label", test.attribute_a_label);
        read(t, "b_label", test.attribute_b_label);
        test.x = word_list(t, "x");
        test.y = word_list(t, "y");
        test.a = word_list(t, "a");
        test.b = word_list(t, "b");
        c.association_tests.push_back(std::move(test));
      }
    }
    read(j, "workers", c.workers);
  } catch (const Json::exception& e) {
    config_error(std::string("config value has the wrong type: ") + e.what());
  }
  return c;
}

AuditConfig load_config(const fs::path& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const Error& e) {
    config_error(e.what());
  }
  return parse_config(text, path.parent_path());
}

void validate(const AuditConfig& c) {
  if (c.rare_word_rank < 1) config_error("thresholds.rare_word_rank must be at least 1");
  if (!(c.thresholds.academic_max > 0) || !(c.thresholds.fair_min > 0))
    config_error("readability thresholds must be positive");
  if (!(c.thresholds.academic_max < c.thresholds.fair_min))
    config_error("fre_academic_max must lie below fre_fair_min");
  if (!(c.rates.average_wpm > 0) || !(c.rates.dyslexic_wpm > 0))
    config_error("reading rates must be positive");
  if (c.rates.dyslexic_wpm > c.rates.average_wpm)
    config_error("dyslexic_wpm must not exceed average_wpm");
  if (c.workers < 1) config_error("workers must be at least 1");
  if (c.analyzers.representational && !c.association_tests.empty() && !c.resources.embeddings)
    config_error("association_tests need resources.embeddings");
  if (c.analyzers.ethics) {
    if (c.llm.runs < 1) config_error("llm.runs must be at least 1");
    if (c.llm.max_in_flight < 1) config_error("llm.max_in_flight must be at least 1");
    if (c.llm.attempts < 1) config_error("llm.attempts must be at least 1");
    if (c.llm.backoff_ms < 0) config_error("llm.backoff_ms must not be negative");
    if (c.llm.offline) {
      if (!c.llm.offline_dir) config_error("llm.offline needs llm.offline_dir");
    } else if (c.llm.endpoint.empty() || c.llm.model.empty()) {
      config_error("ethics analysis needs llm.endpoint and llm.model, or llm.offline");
    }
  }
}

fs::path default_data_dir() {
  if (const char* env = std::getenv("POLFAIR_DATA_DIR"); env && *env) return env;
  return POLFAIR_DATA_DIR;
}

namespace {

std::vector<std::string> read_watchlist(const fs::path& path) {
  const auto list = load_wordlist(path);
  return {list.words.begin(), list.words.end()};
}

}  // namespace

LoadedResources load_resources(const AuditConfig& config) {
  LoadedResources out;
  const auto& r = config.resources;
  auto checksum = [&](const char* name, const fs::path& p) { out.checksums[name] = file_sha256(p); };

  if (r.frequency_dictionary) {
    out.frequency = load_frequency_dictionary(*r.frequency_dictionary);
    checksum("frequency_dictionary", *r.frequency_dictionary);
  }
  if (r.english_words) {
    out.english_words = load_wordlist(*r.english_words);
    checksum("english_words", *r.english_words);
  }
  if (r.german_stopwords) {
    out.german_stopwords = load_wordlist(*r.german_stopwords);
    checksum("german_stopwords", *r.german_stopwords);
  }
  if (r.word_map_en_de) {
    out.word_map_en_de = load_word_map(*r.word_map_en_de, {"en", "de"});
    checksum("word_map_en_de", *r.word_map_en_de);
  }
  if (r.word_map_de_en) {
    out.word_map_de_en = load_word_map(*r.word_map_de_en, {"de", "en"});
    checksum("word_map_de_en", *r.word_map_de_en);
  }
  if (config.analyzers.representational) {
    const fs::path lexicon = r.lexicon.value_or(default_data_dir() / "lexicon_de.csv");
    out.lexicon = load_lexicon(lexicon);
    checksum("lexicon", lexicon);
    const fs::path watchlist = r.watchlist.value_or(default_data_dir() / "watchlist_de.txt");
    out.watchlist = read_watchlist(watchlist);
    checksum("watchlist", watchlist);
  } else {
    if (r.lexicon) {
      out.lexicon = load_lexicon(*r.lexicon);
      checksum("lexicon", *r.lexicon);
    }
    if (r.watchlist) {
      out.watchlist = read_watchlist(*r.watchlist);
      checksum("watchlist", *r.watchlist);
    }
  }
  if (r.embeddings) {
    out.embeddings = load_embeddings(*r.embeddings);
    checksum("embeddings", *r.embeddings);
  }
  return out;
}

bool AuditReport::has_errors() const {
  return (informational && informational->error) || (representational && representational->error) ||
         (ethics && ethics->error);
}

namespace {

Issue issue_of(std::string measure, const Error& e) {
  return {std::move(measure), std::string(to_string(e.kind())), e.what()};
}

template <typename T>
const T* ptr(const std::optional<T>& o) {
  return o ? &*o : nullptr;
}

InformationalSection run_informational(const PolicyDocument& doc, const AuditConfig& config,
                                       const LoadedResources& res) {
  InformationalSection section;
  InformationalOptions options;
  options.formula = config.effective_formula();
  options.language = config.language;
  options.thresholds = config.thresholds;
  options.rates = config.rates;
  options.rare_word_rank = config.rare_word_rank;
  InformationalResources r;
  r.english_words = ptr(res.english_words);
  r.german_stopwords = ptr(res.german_stopwords);
  r.word_map_en_de = ptr(res.word_map_en_de);
  r.word_map_de_en = ptr(res.word_map_de_en);
  r.frequency = ptr(res.frequency);
  r.embeddings = ptr(res.embeddings);
  try {
    section.report = analyze_informational(doc, options, r, section.issues);
  } catch (const Error& e) {
    section.error = issue_of("informational", e);
  }
  return section;
}

bool has_gender_groups(const LexiconSet& lexicon) {
  auto it = lexicon.axes.find("gender");
  if (it == lexicon.axes.end()) return false;
  for (const char* g : {"male", "female", "neutral"})
    if (!it->second.count(g)) return false;
  return true;
}

RepresentationalSection run_representational(const PolicyDocument& doc, const AuditConfig& config,
                                             const LoadedResources& res) {
  RepresentationalSection section;
  if (!res.lexicon) {
    section.error = Issue{"representational", std::string(to_string(ErrorKind::ResourceMissing)),
                          "no descriptor lexicon loaded"};
    return section;
  }
  try {
    RepresentationReport report;
    report.counts = count_representation(doc, *res.lexicon);
    if (has_gender_groups(*res.lexicon)) {
      static const std::vector<std::string> kNoWatchlist;
      report.gendering = gendering_analysis(doc, res.lexicon->axis("gender"),
                                            res.watchlist ? *res.watchlist : kNoWatchlist);
    } else {
      section.issues.push_back({"gendering", std::string(to_string(ErrorKind::ResourceMissing)),
                                "lexicon has no gender axis with male, female and neutral groups"});
    }
    if (!config.association_tests.empty()) {
      std::vector<AssociationResult> results;
      for (const auto& test : config.association_tests) {
        if (!res.embeddings) {
          section.issues.push_back({"association:" + test.name,
                                    std::string(to_string(ErrorKind::ResourceMissing)),
                                    "no embeddings loaded"});
          continue;
        }
        try {
          results.push_back(run_association_test(test, *res.embeddings));
        } catch (const Error& e) {
          section.issues.push_back(issue_of("association:" + test.name, e));
        }
      }
      report.associations = std::move(results);
    }
    section.report = std::move(report);
  } catch (const Error& e) {
    section.error = issue_of("representational", e);
  }
  return section;
}

EthicsSection run_ethics(const PolicyDocument& doc, const AuditConfig& config, LlmBackend* backend) {
  EthicsSection section;
  if (doc.empty()) {
    EthicsAssessment empty;
    empty.doc_id = doc.doc_id;
    section.assessment = std::move(empty);
    return section;
  }
  if (!backend) {
    section.error = Issue{"ethics", std::string(to_string(ErrorKind::Backend)), "no LLM backend configured"};
    return section;
  }
  AssessmentOptions options;
  options.runs = config.llm.runs;
  options.max_in_flight = config.llm.max_in_flight;
  options.max_policy_chars = config.llm.max_policy_chars;
  options.prompt_language = config.llm.prompt_language;
  try {
    section.assessment = run_assessment(doc, *backend, options);
  } catch (const Error& e) {
    section.error = issue_of("ethics", e);
  }
  return section;
}

}  // namespace

AuditReport audit_document(const PolicyDocument& doc, const AuditConfig& config,
                           const LoadedResources& resources, LlmBackend* backend) {
  AuditReport report;
  report.tool_version = std::string(tool_version());
  report.doc_id = doc.doc_id;
  report.source_name = doc.source_name;
  report.year = doc.year;
  report.resource_checksums = resources.checksums;
  if (config.analyzers.informational) report.informational = run_informational(doc, config, resources);
  if (config.analyzers.representational)
    report.representational = run_representational(doc, config, resources);
  if (config.analyzers.ethics) report.ethics = run_ethics(doc, config, backend);
  return report;
}

std::unique_ptr<LlmBackend> make_backend(const AuditConfig& config) {
  if (config.llm.offline) {
    if (!config.llm.offline_dir) config_error("llm.offline needs llm.offline_dir");
    return std::make_unique<OfflineBackend>(*config.llm.offline_dir);
  }
  HttpBackendConfig http;
  http.base_url = config.llm.endpoint;
  http.model = config.llm.model;
  http.temperature = config.llm.temperature;
  http.api_key_env = config.llm.api_key_env;
  http.attempts = config.llm.attempts;
  http.initial_backoff = std::chrono::milliseconds(config.llm.backoff_ms);
  return std::make_unique<HttpBackend>(std::move(http));
}

namespace {

double mean(double sum, std::size_t n) { return n == 0 ? 0.0 : sum / static_cast<double>(n); }
double pct(std::size_t k, std::size_t n) { return n == 0 ? 0.0 : 100.0 * static_cast<double>(k) / static_cast<double>(n); }

}  // namespace

CorpusAggregates aggregate_reports(const std::vector<AuditReport>& reports) {
  CorpusAggregates c;
  c.policies = reports.size();

  std::vector<const InformationalReport*> info;
  for (const auto& r : reports)
    if (r.informational && r.informational->report) info.push_back(&*r.informational->report);

  double words = 0, paragraphs = 0, wpp = 0, headings = 0, levels = 0, wph = 0;
  std::size_t without_headings = 0, lists = 0, strong = 0, italic = 0;
  std::size_t with_paragraphs = 0;
  for (const auto* r : info) {
    const auto& s = r->surface;
    words += static_cast<double>(s.words);
    paragraphs += static_cast<double>(s.paragraphs);
    if (s.paragraphs > 0) {
      wpp += s.words_per_paragraph;
      ++with_paragraphs;
    }
    headings += static_cast<double>(s.headings);
    levels += static_cast<double>(s.heading_levels_used);
    if (s.has_headings) wph += s.words_per_heading;
    without_headings += s.has_headings ? 0 : 1;
    lists += s.has_lists ? 1 : 0;
    strong += s.has_strong ? 1 : 0;
    italic += s.has_italic ? 1 : 0;
  }
  const std::size_t n = info.size();
  auto& t = c.surface;
  t.policies = n;
  t.words_per_policy = round2(mean(words, n));
  t.paragraphs_per_policy = round2(mean(paragraphs, n));
  t.words_per_paragraph = round2(mean(wpp, with_paragraphs));
  t.headings_per_policy = round2(mean(headings, n));
  t.pct_without_headings = round2(pct(without_headings, n));
  t.heading_types = round2(mean(levels, n));
  t.words_per_heading = round2(mean(wph, n - without_headings));
  t.pct_with_lists = round2(pct(lists, n));
  t.pct_with_strong = round2(pct(strong, n));
  t.pct_with_italic = round2(pct(italic, n));

  if (n > 0) {
    ReadabilitySummary r;
    r.formula = std::string(to_string(info.front()->readability.formula));
    r.policies = n;
    double sum = 0, lo = info.front()->readability.score, hi = lo;
    std::size_t academic = 0, fair = 0;
    for (const auto* i : info) {
      const double s = i->readability.score;
      sum += s;
      lo = std::min(lo, s);
      hi = std::max(hi, s);
      academic += i->classification.academic_only ? 1 : 0;
      fair += i->classification.fair_target_met ? 1 : 0;
    }
    r.mean = round2(sum / static_cast<double>(n));
    r.min = round2(lo);
    r.max = round2(hi);
    r.pct_academic_only = round2(pct(academic, n));
    r.pct_fair_target_met = round2(pct(fair, n));
    c.readability = r;
  }

  std::size_t ang_n = 0;
  double ang_distinct = 0, ang_total = 0;
  for (const auto* i : info) {
    if (!i->words.anglicisms) continue;
    ++ang_n;
    ang_distinct += static_cast<double>(i->words.anglicisms->distinct);
    ang_total += static_cast<double>(i->words.anglicisms->total);
  }
  if (ang_n > 0) c.anglicisms = AnglicismTotals{ang_n, round2(ang_distinct / static_cast<double>(ang_n)),
                                                round2(ang_total / static_cast<double>(ang_n))};

  for (const auto& r : reports) {
    if (!r.representational || !r.representational->report) continue;
    const auto& rep = *r.representational->report;
    for (const auto& [axis, groups] : rep.counts)
      for (const auto& [group, k] : groups) c.representation[axis][group] += k;
    if (rep.gendering) {
      if (!c.gendering) c.gendering.emplace();
      auto& g = *c.gendering;
      g.male += rep.gendering->male;
      g.female += rep.gendering->female;
      g.neutral += rep.gendering->neutral;
      g.male_prefix += rep.gendering->male_prefix;
      g.female_prefix += rep.gendering->female_prefix;
      g.neutral_prefix += rep.gendering->neutral_prefix;
      for (const auto& [term, k] : rep.gendering->ungendered_flagged) g.ungendered_flagged[term] += k;
    }
  }

  std::vector<EthicsAssessment> assessments;
  for (const auto& r : reports)
    if (r.ethics && r.ethics->assessment) assessments.push_back(*r.ethics->assessment);
  c.ethics = aggregate_corpus(assessments);
  return c;
}

bool CorpusReport::partial() const {
  if (!failures.empty()) return true;
  return std::any_of(documents.begin(), documents.end(), [](const AuditReport& r) { return r.has_errors(); });
}

namespace {

bool policy_extension(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char ch) { return std::tolower(ch); });
  return ext == ".html" || ext == ".htm" || ext == ".txt";
}

bool is_html(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char ch) { return std::tolower(ch); });
  return ext == ".html" || ext == ".htm";
}

}  // namespace

std::vector<fs::path> collect_inputs(const std::vector<fs::path>& paths) {
  std::set<fs::path> files;
  for (const auto& p : paths) {
    std::error_code ec;
    if (fs::is_directory(p, ec)) {
      for (auto it = fs::recursive_directory_iterator(p); it != fs::recursive_directory_iterator(); ++it)
        if (it->is_regular_file() && policy_extension(it->path())) files.insert(it->path());
    } else if (fs::exists(p, ec)) {
      files.insert(p);
    } else {
      config_error("input not found: " + p.string());
    }
  }
  return {files.begin(), files.end()};
}

PolicyDocument load_policy(const fs::path& file) {
  const std::string stem = file.stem().string();
  SourceMeta meta;
  static const std::regex kYear(R"((.+)_(\d{4}))");
  std::smatch m;
  if (std::regex_match(stem, m, kYear)) {
    meta.source_name = m[1].str();
    meta.year = std::stoi(m[2].str());
  } else {
    meta.source_name = stem;
  }
  const std::string raw = read_file(file);
  return is_html(file) ? parse_html(raw, stem, meta) : parse_plain(raw, stem, meta);
}

CorpusReport audit_corpus(const std::vector<fs::path>& paths, const AuditConfig& config,
                          const LoadedResources& resources, LlmBackend* backend) {
  CorpusReport out;
  out.tool_version = std::string(tool_version());
  out.resource_checksums = resources.checksums;

  std::vector<PolicyDocument> docs;
  std::vector<std::string> files;
  std::set<std::string> seen;
  for (const auto& file : collect_inputs(paths)) {
    const std::string name = file.filename().string();
    try {
      auto doc = load_policy(file);
      if (!seen.insert(doc.doc_id).second) {
        out.failures.push_back({name, std::string(to_string(ErrorKind::InvalidArgument)),
                                "duplicate doc_id '" + doc.doc_id + "'"});
        continue;
      }
      docs.push_back(std::move(doc));
      files.push_back(name);
    } catch (const Error& e) {
      out.failures.push_back({name, std::string(to_string(e.kind())), e.what()});
    }
  }
  if (docs.empty()) throw Error(ErrorKind::EmptyCorpus, "no parseable policy among the inputs");

  out.documents.resize(docs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < docs.size(); i = next++) {
      try {
        out.documents[i] = audit_document(docs[i], config, resources, backend);
        out.documents[i].source_file = files[i];
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  {
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(1, config.workers)),
                                                      docs.size());
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
  }
  if (failure) std::rethrow_exception(failure);

  out.corpus = aggregate_reports(out.documents);
  std::map<int, std::vector<AuditReport>> by_year;
  for (const auto& d : out.documents)
    if (d.year) by_year[*d.year].push_back(d);
  for (const auto& [year, reports] : by_year) out.by_year[year] = aggregate_reports(reports);
  return out;
}

CorpusReport audit_corpus(const fs::path& dir, const AuditConfig& config) {
  validate(config);
  const auto resources = load_resources(config);
  std::unique_ptr<LlmBackend> backend;
  if (config.analyzers.ethics) backend = make_backend(config);
  return audit_corpus(std::vector<fs::path>{dir}, config, resources, backend.get());
}

}  // namespace polfair
