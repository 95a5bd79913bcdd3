#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>

#include "polfair/audit.hpp"
#include "polfair/error.hpp"
#include "polfair/llm_backend.hpp"
#include "polfair/report.hpp"
#include "unit/gen.hpp"

using namespace polfair;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = POLFAIR_FIXTURES;

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no polfair::Error thrown";
  return ErrorKind::InvalidArgument;
}

class TempDir {
 public:
  explicit TempDir(const std::string& name) : path_(fs::temp_directory_path() / name) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }
  void write(const std::string& name, const std::string& content) const {
    std::ofstream(path_ / name, std::ios::binary) << content;
  }

 private:
  fs::path path_;
};

AuditConfig informational_only() {
  AuditConfig c;
  c.analyzers = {true, false, false};
  return c;
}

std::string words(int n) {
  std::string s;
  for (int i = 0; i < n; ++i) s += i ? " wort" : "Wort";
  return s + ".";
}

}  // namespace

TEST(Config, Defaults) {
  const auto c = parse_config("{}");
  EXPECT_EQ(c.language, Language::German);
  EXPECT_EQ(c.effective_formula(), ReadabilityFormula::AmstadGerman);
  EXPECT_EQ(c.rare_word_rank, 10000);
  EXPECT_EQ(c.thresholds.academic_max, 30.0);
  EXPECT_EQ(c.thresholds.fair_min, 60.0);
  EXPECT_EQ(c.rates.average_wpm, 250.0);
  EXPECT_EQ(c.rates.dyslexic_wpm, 125.0);
  EXPECT_EQ(c.llm.runs, 5);
  EXPECT_EQ(c.workers, 1);
}

TEST(Config, EnglishProfileUsesFlesch) {
  EXPECT_EQ(parse_config(R"({"language":"english"})").effective_formula(),
            ReadabilityFormula::FleschEnglish);
  EXPECT_EQ(parse_config(R"({"language":"english","readability_formula":"amstad_german"})")
                .effective_formula(),
            ReadabilityFormula::AmstadGerman);
}

TEST(Config, RelativePathsResolveAgainstConfigDir) {
  const auto c = parse_config(R"({"resources":{"lexicon":"res/lex.csv"}})", "/etc/polfair");
  EXPECT_EQ(*c.resources.lexicon, fs::path("/etc/polfair/res/lex.csv"));
}

TEST(Config, RejectsUnknownKeysAndBadValues) {
  EXPECT_EQ(kind_of([] { parse_config(R"({"lenguage":"german"})"); }), ErrorKind::Config);
  EXPECT_EQ(kind_of([] { parse_config(R"({"language":"french"})"); }), ErrorKind::Config);
  EXPECT_EQ(kind_of([] { parse_config(R"({"analyzers":["semantic"]})"); }), ErrorKind::Config);
  EXPECT_EQ(kind_of([] { parse_config("{not json"); }), ErrorKind::Config);
}

TEST(Config, LoadsFixture) {
  const auto c = load_config(kFixtures / "audit.json");
  EXPECT_EQ(c.rare_word_rank, 50);
  EXPECT_TRUE(c.llm.offline);
  EXPECT_EQ(*c.llm.offline_dir, kFixtures / "llm");
  ASSERT_EQ(c.association_tests.size(), 1u);
  EXPECT_EQ(c.association_tests[0].x, (std::vector<std::string>{"frau", "nutzerin"}));
  EXPECT_NO_THROW(validate(c));
}

TEST(Validate, ThresholdsRatesAndAnalyzerInputs) {
  auto c = informational_only();
  EXPECT_NO_THROW(validate(c));
  c.thresholds = {60, 30};
  EXPECT_EQ(kind_of([&] { validate(c); }), ErrorKind::Config);
  c = informational_only();
  c.rates = {0, 125};
  EXPECT_EQ(kind_of([&] { validate(c); }), ErrorKind::Config);
  c = informational_only();
  c.workers = 0;
  EXPECT_EQ(kind_of([&] { validate(c); }), ErrorKind::Config);
  c = informational_only();
  c.rare_word_rank = 0;
  EXPECT_EQ(kind_of([&] { validate(c); }), ErrorKind::Config);
  c = AuditConfig{};
  EXPECT_EQ(kind_of([&] { validate(c); }), ErrorKind::Config);  // ethics without backend
  c.llm.offline = true;
  c.llm.offline_dir = "/tmp";
  EXPECT_NO_THROW(validate(c));
  c.association_tests.push_back({});
  EXPECT_EQ(kind_of([&] { validate(c); }), ErrorKind::Config);  // needs embeddings
}

TEST(Resources, ChecksumsForEveryLoadedResource) {
  const auto c = load_config(kFixtures / "audit.json");
  const auto r = load_resources(c);
  EXPECT_TRUE(r.frequency && r.english_words && r.german_stopwords && r.word_map_en_de &&
              r.word_map_de_en && r.lexicon && r.watchlist && r.embeddings);
  EXPECT_EQ(r.checksums.size(), 8u);
  EXPECT_EQ(r.checksums.at("lexicon"), file_sha256(kFixtures / "resources/lexicon.csv"));
}

TEST(Resources, DefaultLexiconShipsWithTool) {
  AuditConfig c;
  c.analyzers = {false, true, false};
  const auto r = load_resources(c);
  ASSERT_TRUE(r.lexicon);
  ASSERT_TRUE(r.watchlist);
  EXPECT_TRUE(r.lexicon->axes.count("gender"));
  EXPECT_GT(r.lexicon->term_count(), 100u);
  EXPECT_TRUE(r.checksums.count("lexicon"));
}

TEST(AuditDocument, EthicsDisabledOmitsSection) {
  const auto c = informational_only();
  const auto report = audit_document(parse_plain("Wir speichern Daten.", "d"), c, {}, nullptr);
  EXPECT_TRUE(report.informational);
  EXPECT_FALSE(report.representational);
  EXPECT_FALSE(report.ethics);
  EXPECT_FALSE(report.has_errors());
}

TEST(AuditDocument, EmptyDocumentRecordsErrorInSection) {
  auto c = load_config(kFixtures / "audit.json");
  const auto res = load_resources(c);
  auto backend = make_backend(c);
  PolicyDocument empty;
  empty.doc_id = "leer";
  const auto report = audit_document(empty, c, res, backend.get());
  ASSERT_TRUE(report.informational);
  ASSERT_TRUE(report.informational->error);
  EXPECT_EQ(report.informational->error->kind, "EmptyDocument");
  EXPECT_FALSE(report.informational->report);
  ASSERT_TRUE(report.representational && report.representational->report);
  for (const auto& [axis, groups] : report.representational->report->counts)
    for (const auto& [group, n] : groups) EXPECT_EQ(n, 0u);
  ASSERT_TRUE(report.ethics && report.ethics->assessment);
  EXPECT_TRUE(report.ethics->assessment->runs.empty());
  EXPECT_TRUE(report.has_errors());
}

TEST(AuditDocument, MissingBackendIsSectionError) {
  AuditConfig c;
  c.analyzers = {true, false, true};
  const auto report = audit_document(parse_plain("Wir speichern Daten.", "d"), c, {}, nullptr);
  ASSERT_TRUE(report.ethics && report.ethics->error);
  EXPECT_EQ(report.ethics->error->kind, "BackendError");
  EXPECT_FALSE(report.informational->error);
}

TEST(AuditDocument, DeterministicWithOfflineBackend) {
  const auto c = load_config(kFixtures / "audit.json");
  const auto res = load_resources(c);
  auto backend = make_backend(c);
  const auto doc = load_policy(kFixtures / "corpus/shopwelt_2019.html");
  const auto a = audit_document(doc, c, res, backend.get());
  const auto b = audit_document(doc, c, res, backend.get());
  EXPECT_EQ(a, b);
  EXPECT_EQ(to_json_text(a), to_json_text(b));
  EXPECT_EQ(a.source_name, "shopwelt");
  EXPECT_EQ(a.year, 2019);
}

TEST(Corpus, MeanWordsPerPolicy) {
  TempDir dir("polfair_corpus_mean");
  dir.write("a.txt", words(10));
  dir.write("b.txt", words(20));
  const auto report = audit_corpus({dir.path()}, informational_only(), {}, nullptr);
  EXPECT_EQ(report.documents.size(), 2u);
  EXPECT_DOUBLE_EQ(report.corpus.surface.words_per_policy, 15.0);
  EXPECT_FALSE(report.partial());
}

TEST(Corpus, PercentOfPoliciesWithLists) {
  TempDir dir("polfair_corpus_lists");
  dir.write("a.txt", "Text.\n\n- eins");
  dir.write("b.txt", "Text.\n\n- zwei");
  dir.write("c.txt", "Nur Text.");
  const auto report = audit_corpus({dir.path()}, informational_only(), {}, nullptr);
  EXPECT_DOUBLE_EQ(report.corpus.surface.pct_with_lists, 66.67);
  EXPECT_DOUBLE_EQ(report.corpus.surface.pct_without_headings, 100.0);
}

TEST(Corpus, UnparseableInputsGiveEmptyCorpus) {
  TempDir dir("polfair_corpus_bad");
  dir.write("a.txt", "\xff\xfe\xfd");
  dir.write("b.html", "\xc3\x28");
  EXPECT_EQ(kind_of([&] { audit_corpus({dir.path()}, informational_only(), {}, nullptr); }),
            ErrorKind::EmptyCorpus);
}

TEST(Corpus, FailuresMakeReportPartial) {
  TempDir dir("polfair_corpus_partial");
  dir.write("gut.txt", words(5));
  dir.write("kaputt.txt", "\xff");
  const auto report = audit_corpus({dir.path()}, informational_only(), {}, nullptr);
  ASSERT_EQ(report.failures.size(), 1u);
  EXPECT_EQ(report.failures[0].file, "kaputt.txt");
  EXPECT_EQ(report.failures[0].kind, "MalformedInput");
  EXPECT_TRUE(report.partial());
}

TEST(Corpus, DuplicateDocIdIsFailure) {
  TempDir dir("polfair_corpus_dup");
  dir.write("x.txt", words(3));
  dir.write("x.html", "<p>Drei Worte hier.</p>");
  const auto report = audit_corpus({dir.path()}, informational_only(), {}, nullptr);
  EXPECT_EQ(report.documents.size(), 1u);
  EXPECT_EQ(report.failures.size(), 1u);
}

TEST(Corpus, MissingInputIsConfigError) {
  EXPECT_EQ(kind_of([] { collect_inputs({"/nonexistent/polfair"}); }), ErrorKind::Config);
}

TEST(Corpus, GroupsByYear) {
  const auto c = load_config(kFixtures / "audit.json");
  const auto report = audit_corpus(kFixtures / "corpus", c);
  EXPECT_EQ(report.documents.size(), 5u);
  ASSERT_EQ(report.by_year.size(), 3u);
  EXPECT_EQ(report.by_year.at(2021).policies, 2u);
  EXPECT_EQ(report.by_year.at(2019).policies, 1u);
  std::size_t grouped = 0;
  for (const auto& [year, agg] : report.by_year) grouped += agg.policies;
  EXPECT_EQ(grouped, 4u);  // stadtwerke has no year
  EXPECT_EQ(report.resource_checksums.size(), 8u);
}

TEST(Corpus, WorkerCountDoesNotChangeReport) {
  auto c = load_config(kFixtures / "audit.json");
  c.workers = 1;
  const auto one = audit_corpus(kFixtures / "corpus", c);
  c.workers = 4;
  const auto four = audit_corpus(kFixtures / "corpus", c);
  EXPECT_EQ(to_json_text(one), to_json_text(four));
}

TEST(Corpus, AggregatesMatchRecomputationFromReports) {
  const auto c = load_config(kFixtures / "audit.json");
  const auto report = audit_corpus(kFixtures / "corpus", c);
  const auto& docs = report.documents;
  double words = 0, lists = 0, fre_sum = 0, fre_min = 1e9, fre_max = -1e9;
  std::size_t n = 0;
  std::map<std::string, std::map<std::string, std::size_t>> rep;
  for (const auto& d : docs) {
    const auto& info = *d.informational->report;
    ++n;
    words += static_cast<double>(info.surface.words);
    lists += info.surface.has_lists;
    fre_sum += info.readability.score;
    fre_min = std::min(fre_min, info.readability.score);
    fre_max = std::max(fre_max, info.readability.score);
    for (const auto& [axis, groups] : d.representational->report->counts)
      for (const auto& [group, k] : groups) rep[axis][group] += k;
  }
  EXPECT_EQ(report.corpus.policies, n);
  EXPECT_DOUBLE_EQ(report.corpus.surface.words_per_policy, round2(words / n));
  EXPECT_DOUBLE_EQ(report.corpus.surface.pct_with_lists, round2(100.0 * lists / n));
  EXPECT_DOUBLE_EQ(report.corpus.readability->mean, round2(fre_sum / n));
  EXPECT_DOUBLE_EQ(report.corpus.readability->min, round2(fre_min));
  EXPECT_DOUBLE_EQ(report.corpus.readability->max, round2(fre_max));
  EXPECT_EQ(report.corpus.representation, rep);
  EXPECT_EQ(aggregate_reports(docs), report.corpus);
}

TEST(Report, JsonRoundTrip) {
  const auto c = load_config(kFixtures / "audit.json");
  const auto report = audit_corpus(kFixtures / "corpus", c);
  const auto text = to_json_text(report);
  const auto back = corpus_report_from_json(text);
  EXPECT_EQ(back, report);
  EXPECT_EQ(to_json_text(back), text);
  for (const auto& d : report.documents) EXPECT_EQ(audit_report_from_json(to_json_text(d)), d);
}

TEST(Report, RejectsOtherSchemaVersion) {
  EXPECT_EQ(kind_of([] { corpus_report_from_json(R"({"schema_version":2})"); }),
            ErrorKind::MalformedInput);
  EXPECT_EQ(kind_of([] { audit_report_from_json("[]"); }), ErrorKind::MalformedInput);
}

TEST(ReportProperty, RandomDocumentsRoundTrip) {
  polfair::testing::Gen g(61);
  const auto c = load_config(kFixtures / "audit.json");
  const auto res = load_resources(c);
  auto cfg = c;
  cfg.analyzers.ethics = false;
  for (int i = 0; i < 100; ++i) {
    std::string src;
    const int blocks = g.range(1, 5);
    for (int b = 0; b < blocks; ++b) {
      if (g.chance(0.3)) src += "## ";
      else if (g.chance(0.3)) src += "- ";
      src += g.sentence(1, 12) + (g.chance(0.5) ? "." : "") + "\n\n";
    }
    const auto report = audit_document(parse_plain(src, "r" + std::to_string(i)), cfg, res, nullptr);
    EXPECT_EQ(audit_report_from_json(to_json_text(report)), report) << src;
  }
}

TEST(Report, MarkdownHasTables) {
  const auto c = load_config(kFixtures / "audit.json");
  const auto report = audit_corpus(kFixtures / "corpus", c);
  const auto md = to_markdown(report);
  EXPECT_NE(md.find("| Words / policy"), std::string::npos) << md.substr(0, 400);
  EXPECT_NE(md.find("transparency (precise, complete, comprehensible)"), std::string::npos);
}
