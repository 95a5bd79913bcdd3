// polfair: audit privacy policies for informational fairness,
// representational fairness and an LLM-based ethics assessment.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "polfair/audit.hpp"
#include "polfair/error.hpp"
#include "polfair/llm_backend.hpp"
#include "polfair/report.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFatal = 1;
constexpr int kExitPartial = 2;

struct AuditArgs {
  std::vector<std::string> inputs;
  std::string config;
  std::string format;
  std::vector<std::string> only;
  bool llm_offline = false;
  std::string llm_offline_dir;
  int llm_runs = 0;
  std::string lexicon;
  std::string watchlist;
  int workers = 0;
  std::string out;
};

void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw polfair::Error(polfair::ErrorKind::Config, "cannot write " + path.string());
  f << content;
}

polfair::AuditConfig build_config(const AuditArgs& args) {
  polfair::AuditConfig config;
  if (!args.config.empty()) config = polfair::load_config(args.config);
  if (!args.format.empty())
    config.format = args.format == "markdown" ? polfair::OutputFormat::Markdown : polfair::OutputFormat::Json;
  if (!args.only.empty()) {
    config.analyzers = {false, false, false};
    for (const auto& name : args.only) {
      if (name == "informational") config.analyzers.informational = true;
      else if (name == "representational") config.analyzers.representational = true;
      else if (name == "ethics") config.analyzers.ethics = true;
    }
  }
  if (args.llm_offline) config.llm.offline = true;
  if (!args.llm_offline_dir.empty()) config.llm.offline_dir = fs::path(args.llm_offline_dir);
  if (args.llm_runs > 0) config.llm.runs = args.llm_runs;
  if (!args.lexicon.empty()) config.resources.lexicon = fs::path(args.lexicon);
  if (!args.watchlist.empty()) config.resources.watchlist = fs::path(args.watchlist);
  if (args.workers > 0) config.workers = args.workers;
  return config;
}

void write_outputs(const polfair::CorpusReport& report, const polfair::AuditConfig& config,
                   const fs::path& out) {
  const bool md = config.format == polfair::OutputFormat::Markdown;
  const std::string ext = md ? ".md" : ".json";
  for (const auto& doc : report.documents) {
    write_file(out / (doc.doc_id + ext), md ? polfair::to_markdown(doc) : polfair::to_json_text(doc));
    if (doc.ethics && doc.ethics->assessment)
      for (const auto& run : doc.ethics->assessment->runs)
        write_file(out / "raw" / doc.doc_id / ("run_" + std::to_string(run.run_index) + ".txt"),
                   run.raw_text);
  }
  write_file(out / ("corpus" + ext), md ? polfair::to_markdown(report) : polfair::to_json_text(report));
}

int run_audit(const AuditArgs& args) {
  try {
    const auto config = build_config(args);
    polfair::validate(config);
    const auto resources = polfair::load_resources(config);
    std::unique_ptr<polfair::LlmBackend> backend;
    if (config.analyzers.ethics) backend = polfair::make_backend(config);

    std::vector<fs::path> inputs(args.inputs.begin(), args.inputs.end());
    const auto report = polfair::audit_corpus(inputs, config, resources, backend.get());

    if (!args.out.empty()) {
      write_outputs(report, config, args.out);
    } else if (config.format == polfair::OutputFormat::Markdown) {
      std::cout << polfair::to_markdown(report);
    } else {
      std::cout << polfair::to_json_text(report);
    }
    for (const auto& f : report.failures)
      std::cerr << "polfair: " << f.file << ": " << f.kind << ": " << f.message << "\n";
    for (const auto& d : report.documents)
      if (d.has_errors()) std::cerr << "polfair: " << d.doc_id << ": a report section failed\n";
    return report.partial() ? kExitPartial : kExitOk;
  } catch (const polfair::Error& e) {
    std::cerr << "polfair: " << polfair::to_string(e.kind()) << ": " << e.what() << "\n";
    return kExitFatal;
  } catch (const std::exception& e) {
    std::cerr << "polfair: " << e.what() << "\n";
    return kExitFatal;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fairness audit of privacy policies"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(polfair::tool_version()));

  AuditArgs args;
  auto* audit = app.add_subcommand("audit", "Audit policy files or directories");
  audit->add_option("paths", args.inputs, "Policy files (.html, .htm, .txt) or directories")->required();
  audit->add_option("--config", args.config, "JSON audit configuration")->check(CLI::ExistingFile);
  audit->add_option("--format", args.format, "Report format")
      ->check(CLI::IsMember({"json", "markdown"}));
  audit->add_option("--only", args.only, "Analyzers to run")
      ->delimiter(',')
      ->check(CLI::IsMember({"informational", "representational", "ethics"}));
  audit->add_flag("--llm-offline", args.llm_offline, "Read canned LLM responses instead of calling an endpoint");
  audit->add_option("--llm-offline-dir", args.llm_offline_dir, "Directory of canned responses <doc_id>/run_<k>.txt");
  audit->add_option("--llm-runs", args.llm_runs, "LLM runs per policy")->check(CLI::PositiveNumber);
  audit->add_option("--lexicon", args.lexicon, "Descriptor lexicon CSV")->check(CLI::ExistingFile);
  audit->add_option("--watchlist", args.watchlist, "Ungendered-term watchlist")->check(CLI::ExistingFile);
  audit->add_option("--workers", args.workers, "Documents audited in parallel")->check(CLI::PositiveNumber);
  audit->add_option("--out", args.out, "Write per-policy reports, corpus report and raw LLM output here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitFatal;
  }
  return run_audit(args);
}
