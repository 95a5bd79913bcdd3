#pragma once
// JSON and Markdown forms of audit reports. JSON output is deterministic:
// fixed key order, shortest round-trip doubles, two-space indentation and a
// trailing newline.

#include <string>
#include <string_view>

#include "polfair/audit.hpp"

namespace polfair {

std::string to_json_text(const AuditReport& report);
std::string to_json_text(const CorpusReport& report);

// Throw Error(MalformedInput) on invalid JSON or a schema mismatch.
AuditReport audit_report_from_json(std::string_view text);
CorpusReport corpus_report_from_json(std::string_view text);

std::string to_markdown(const AuditReport& report);
std::string to_markdown(const CorpusReport& report);

}  // namespace polfair
