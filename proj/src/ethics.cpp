#include "polfair/ethics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <regex>
#include <set>
#include <thread>

#include "polfair/error.hpp"
#include "polfair/text.hpp"

namespace polfair {

const std::vector<EthicsCriterion>& ethics_taxonomy() {
  static const std::vector<EthicsCriterion> taxonomy = {
      {"transparency", "transparency (precise, complete, comprehensible)",
       {"transparen", "verständlich", "nachvollziehbar", "klarheit", "präzision",
        "comprehensib", "clarity", "intelligib"}},
      {"control_autonomy", "data subject control and autonomy (user rights, freedom of choice)",
       {"kontrolle", "autonomie", "betroffenenrecht", "nutzerrecht", "rechte der nutzer",
        "rechte der betroffenen", "wahlfreiheit", "selbstbestimmung", "einwilligung",
        "widerspruch", "control", "autonomy", "user rights", "data subject rights",
        "freedom of choice", "consent", "opt-out"}},
      {"minimization_purpose", "data minimalization and purpose binding",
       {"minimierung", "datensparsamkeit", "zweckbindung", "zweckbestimmung", "minimization",
        "minimisation", "minimalization", "purpose limitation", "purpose binding"}},
      {"data_usage", "data usage (surveillance concerns, automated decisions)",
       {"datennutzung", "datenverwendung", "nutzung der daten", "verwendung der daten",
        "datenverarbeitung", "überwachung", "profiling", "profilbildung",
        "automatisierte entscheidung", "tracking", "data usage", "use of data",
        "data use", "surveillance", "automated decision", "data processing"}},
      {"storage_deletion", "data storage and deletion",
       {"speicher", "löschung", "löschfrist", "aufbewahrung", "storage", "deletion",
        "retention", "erasure"}},
      {"protection_security", "data protection and security (avoiding misuse or leakage)",
       {"sicherheit", "schutzmaßnahme", "missbrauch", "datenleck", "security", "misuse",
        "leakage", "breach", "safeguard"}},
      {"transmission_sharing",
       "(international) data transmission and sharing (third-parties, where is what transferred)",
       {"weitergabe", "übermittlung", "übertragung an", "dritte", "drittanbieter",
        "drittland", "drittländer", "international", "third part", "third-part", "sharing",
        "transfer", "transmission", "disclosure"}},
      {"regulatory_compliance",
       "compliance with data protection regulation (GDPR, relevant countries data protection "
       "regulation and standards)",
       {"dsgvo", "gdpr", "rechtskonform", "gesetzeskonform", "datenschutzrecht",
        "datenschutzvorschrift", "datenschutzgesetz", "einhaltung", "konformität",
        "compliance", "regulation", "regulatory", "legal basis", "rechtsgrundlage"}},
      {"communication_changes", "communication and changes (timeliness, changes, risks)",
       {"änderung", "kommunikation", "aktualität", "aktualisierung", "benachrichtigung",
        "changes", "communication", "notification", "timeliness", "updates"}},
      {"minors", "protection of minors",
       {"minderjährig", "kinder", "jugend", "minors", "children", "child", "youth"}},
      {"fairness", "fairness (no discrimination, fair use)",
       {"fairness", "diskriminierung", "gleichbehandlung", "fair use", "discrimination",
        "fair", "ausgewogen"}},
      {"accountability_governance",
       "assurance, accountability and governance (compliance, reliability, assurance, "
       "ability to react)",
       {"verantwortlichkeit", "rechenschaft", "haftung", "governance", "zuverlässigkeit",
        "gewährleistung", "accountability", "assurance", "reliability", "liability",
        "responsibility"}},
  };
  return taxonomy;
}

std::optional<std::string> map_criterion(std::string_view label,
                                         const std::vector<EthicsCriterion>& taxonomy) {
  const std::string folded = text::fold(label);
  const EthicsCriterion* best = nullptr;
  std::size_t best_len = 0;
  for (const auto& c : taxonomy) {
    for (const auto& alias : c.aliases) {
      const std::string a = text::fold(alias);
      if (a.size() > best_len && folded.find(a) != std::string::npos) {
        best = &c;
        best_len = a.size();
      }
    }
  }
  if (!best) return std::nullopt;
  return best->id;
}

namespace {

constexpr std::string_view kSystemPromptEn =
    "You are a critically scrutinizing, experienced expert in an ethics council on issues "
    "around fairness and justice and are committed to consumer protection for fairness. You "
    "have 20 years of experience in ethical issues around consumer protection, data "
    "protection, cybersecurity and related fairness aspects. You have already provided "
    "precise expert opinions in many court proceedings.\n"
    "Your task is to uncover aspects in privacy policies that are ethically questionable. You "
    "must clearly explain your thoughts and how you came to your conclusion. Explain step by "
    "step! Also disclose the ethical and moral principles on which you base your judgment. In "
    "particular, point out potential for improvement or risks to users.\n"
    "IMPORTANT: Also rate the privacy policy for each of your criteria on a 5-point Likert "
    "scale. Check whether the following privacy policy is fair and ethical towards its users.\n"
    "The user wants a critical review and an assessment of vulnerabilities in privacy "
    "policies.";

constexpr std::string_view kFormatLineEn =
    "\nEnd your answer with one line per criterion in the form: "
    "'<criterion> — Score: <n>/5'";

constexpr std::string_view kSystemPromptDe =
    "Du bist ein kritisch hinterfragender, erfahrener Experte in einem Ethikrat zu Fragen "
    "rund um Fairness und Gerechtigkeit und setzt dich für Verbraucherschutz im Sinne der "
    "Fairness ein. Du hast 20 Jahre Erfahrung mit ethischen Fragen rund um Verbraucherschutz, "
    "Datenschutz, Cybersicherheit und verwandte Fairnessaspekte. Du hast bereits in vielen "
    "Gerichtsverfahren präzise Gutachten erstellt.\n"
    "Deine Aufgabe ist es, Aspekte in Datenschutzerklärungen aufzudecken, die ethisch "
    "fragwürdig sind. Du musst deine Gedanken und deinen Weg zu deiner Schlussfolgerung klar "
    "erklären. Erkläre Schritt für Schritt! Lege auch die ethischen und moralischen Prinzipien "
    "offen, auf die du dein Urteil stützt. Weise insbesondere auf Verbesserungspotenzial oder "
    "Risiken für Nutzende hin.\n"
    "WICHTIG: Bewerte die Datenschutzerklärung außerdem für jedes deiner Kriterien auf einer "
    "5-stufigen Likert-Skala. Prüfe, ob die folgende Datenschutzerklärung fair und ethisch "
    "gegenüber ihren Nutzenden ist.\n"
    "Der Nutzer wünscht eine kritische Prüfung und eine Bewertung von Schwachstellen in "
    "Datenschutzerklärungen.";

constexpr std::string_view kFormatLineDe =
    "\nBeende deine Antwort mit einer Zeile pro Kriterium in der Form: "
    "'<Kriterium> — Score: <n>/5'";

}  // namespace

ChatPrompt build_prompt(std::string_view policy_text, PromptLanguage lang) {
  if (text::trim_ascii(policy_text).empty()) {
    throw Error(ErrorKind::EmptyPolicy, "policy text is empty");
  }
  ChatPrompt p;
  if (lang == PromptLanguage::English) {
    p.system = std::string(kSystemPromptEn) + std::string(kFormatLineEn);
    p.user = "The privacy policy: " + std::string(policy_text);
  } else {
    p.system = std::string(kSystemPromptDe) + std::string(kFormatLineDe);
    p.user = "Die Datenschutzerklärung: " + std::string(policy_text);
  }
  return p;
}

namespace {

std::string strip_markup(std::string line) {
  for (std::string_view marker : {"**", "__", "`"}) {
    std::size_t pos;
    while ((pos = line.find(marker)) != std::string::npos) line.erase(pos, marker.size());
  }
  static const std::regex lead(R"(^\s*(?:(?:#+|>|[-*+]|•|\d+[.)])\s*)*)");
  line = std::regex_replace(line, lead, "", std::regex_constants::format_first_only);
  return std::string(text::trim_ascii(line));
}

std::string clean_label(std::string label) {
  static const std::regex trailing(R"([\s:;,.\-–—"'„“”]+$)");
  static const std::regex leading(R"(^[\s"'„“”]+)");
  label = std::regex_replace(label, trailing, "");
  label = std::regex_replace(label, leading, "");
  return label;
}

std::string clean_rationale(std::string rest) {
  static const std::regex lead(R"(^[\s)\].,;:\-–—]+)");
  rest = std::regex_replace(rest, lead, "");
  return std::string(text::trim_ascii(rest));
}

bool generic_label(const std::string& label) {
  static const std::set<std::string> generic = {"score", "bewertung", "rating", "punkte",
                                                "punktzahl", "likert", "likert-score",
                                                "likert-bewertung", "note"};
  return generic.count(text::fold(label)) != 0;
}

struct ScoredLine {
  std::string label;
  int score;
  std::string rationale;
};

std::optional<ScoredLine> match_primary(const std::string& line) {
  static const std::regex primary(
      "^(.+?)\\s*(?:\xE2\x80\x94|\xE2\x80\x93|-|:|\\()\\s*"
      "(?:(?:score|bewertung|punkte|punktzahl|rating|note|likert(?:-skala|-score|-wert)?)"
      "\\s*:?\\s*)?([1-5])(?:[.,]0)?\\s*(?:/\\s*5|von\\s+5|out\\s+of\\s+5)\\b(.*)$",
      std::regex::icase);
  std::smatch m;
  if (!std::regex_match(line, m, primary)) return std::nullopt;
  return ScoredLine{clean_label(m[1].str()), m[2].str()[0] - '0', clean_rationale(m[3].str())};
}

std::optional<ScoredLine> match_likert(const std::string& line) {
  const std::string folded = text::fold(line);
  const auto at = folded.find("likert");
  if (at == std::string::npos) return std::nullopt;

  std::string head = line.substr(0, at);
  static const std::regex sep("\\s*(?:\xE2\x80\x94|\xE2\x80\x93|:|\\s-\\s)");
  std::smatch m;
  if (std::regex_search(head, m, sep)) head = head.substr(0, static_cast<std::size_t>(m.position(0)));
  head = clean_label(head);
  if (head.empty()) return std::nullopt;

  std::string tail = line.substr(at);
  static const std::regex noise(
      "[1-5]\\s*(?:-|\xE2\x80\x93|bis|to)\\s*[1-5]|/\\s*5|von\\s+5|out\\s+of\\s+5|\\d+-(?:punkt|stufig|point)\\w*",
      std::regex::icase);
  tail = std::regex_replace(tail, noise, " ");
  static const std::regex digit("(^|[^0-9])([1-5])(?![0-9])");
  if (!std::regex_search(tail, m, digit)) return std::nullopt;
  return ScoredLine{head, m[2].str()[0] - '0', ""};
}

}  // namespace

std::vector<ExtractedScore> parse_response(std::string_view raw,
                                           const std::vector<EthicsCriterion>& taxonomy) {
  struct Acc {
    std::string display;
    int sum = 0;
    int count = 0;
    std::string rationale;
  };
  std::map<std::string, Acc> by_id;  // canonical ids and "unmapped:<folded>"
  std::string previous;              // last unscored non-empty line

  for (auto part : text::split(raw, '\n')) {
    std::string line = strip_markup(std::string(part));
    if (line.empty()) continue;
    auto hit = match_primary(line);
    if (!hit) hit = match_likert(line);
    if (!hit) {
      previous = line;
      continue;
    }
    if (generic_label(hit->label) && !previous.empty()) hit->label = clean_label(previous);
    if (hit->label.empty()) continue;

    std::string key;
    if (auto id = map_criterion(hit->label, taxonomy)) {
      key = *id;
    } else {
      key = "unmapped:" + text::fold(hit->label);
    }
    auto& acc = by_id[key];
    if (acc.count == 0) acc.display = hit->label;
    acc.sum += hit->score;
    acc.count += 1;
    if (acc.rationale.empty()) acc.rationale = hit->rationale;
    previous.clear();
  }
  if (by_id.empty()) throw Error(ErrorKind::ParseFailure, "no scored criterion line found");

  std::vector<ExtractedScore> out;
  auto emit = [&](const std::string& key, const Acc& acc, std::string id) {
    (void)key;
    const double mean = static_cast<double>(acc.sum) / acc.count;
    const int score = static_cast<int>(std::floor(mean + 0.5));
    out.push_back({std::move(id), score, acc.rationale});
  };
  for (const auto& c : taxonomy) {
    if (auto it = by_id.find(c.id); it != by_id.end()) emit(it->first, it->second, c.id);
  }
  for (const auto& [key, acc] : by_id) {
    if (key.rfind("unmapped:", 0) == 0) emit(key, acc, "unmapped:" + acc.display);
  }
  return out;
}

void aggregate_runs(EthicsAssessment& a) {
  std::map<std::string, std::pair<int, std::size_t>> sums;
  std::set<std::string> unmapped;
  for (const auto& run : a.runs) {
    for (const auto& e : run.extracted) {
      if (e.criterion.rfind("unmapped:", 0) == 0) {
        unmapped.insert(e.criterion.substr(9));
        continue;
      }
      auto& s = sums[e.criterion];
      s.first += e.score;
      s.second += 1;
    }
  }
  a.aggregate.clear();
  for (const auto& [id, s] : sums) {
    a.aggregate[id] = {s.second, static_cast<double>(s.first) / static_cast<double>(s.second)};
  }
  a.unmapped_labels.assign(unmapped.begin(), unmapped.end());
}

EthicsAssessment run_assessment(const PolicyDocument& doc, LlmBackend& backend,
                                const AssessmentOptions& options) {
  if (options.runs < 1) throw Error(ErrorKind::InvalidArgument, "runs must be >= 1");
  EthicsAssessment result;
  result.doc_id = doc.doc_id;

  std::string policy = doc.empty() ? std::string() : render_plain(doc);
  if (options.max_policy_chars > 0 && text::length(policy) > options.max_policy_chars) {
    auto cps = *text::decode_utf8(policy);
    cps.resize(options.max_policy_chars);
    policy = text::encode_utf8(cps);
    result.warnings.push_back("policy text truncated to " +
                              std::to_string(options.max_policy_chars) + " characters");
  }
  const ChatPrompt prompt = build_prompt(policy, options.prompt_language);

  const auto runs = static_cast<std::size_t>(options.runs);
  std::vector<RunResult> results(runs);
  std::vector<std::exception_ptr> failures(runs);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < runs; i = next++) {
      const int index = static_cast<int>(i) + 1;
      try {
        RunResult r;
        r.run_index = index;
        r.raw_text = backend.complete(prompt, doc.doc_id, index);
        try {
          r.extracted = parse_response(r.raw_text, ethics_taxonomy());
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::ParseFailure) throw;
          r.parse_error = e.what();
        }
        results[i] = std::move(r);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  const auto workers = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::max(options.max_in_flight, 1)), 1, runs);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  result.runs = std::move(results);
  aggregate_runs(result);
  return result;
}

double round2(double v) { return std::round(v * 100.0) / 100.0; }

std::vector<CorpusEthicsRow> aggregate_corpus(const std::vector<EthicsAssessment>& assessments) {
  std::vector<CorpusEthicsRow> rows;
  for (const auto& c : ethics_taxonomy()) {
    CorpusEthicsRow row;
    row.criterion = c.id;
    long sum = 0;
    std::size_t count = 0;
    for (const auto& a : assessments) {
      bool mentioned = false;
      for (const auto& run : a.runs) {
        for (const auto& e : run.extracted) {
          if (e.criterion != c.id) continue;
          sum += e.score;
          ++count;
          mentioned = true;
          ++row.runs;
        }
      }
      row.policies += mentioned;
    }
    if (count == 0) continue;
    row.average_score = round2(static_cast<double>(sum) / static_cast<double>(count));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace polfair
