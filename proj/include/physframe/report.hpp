// report.hpp - Serialization of findings and exit codes
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "physframe/diagnostic.hpp"

namespace physframe
{

enum class ReportFormat { Text, Json };

inline constexpr int kReportSchema = 1;

inline constexpr int kExitClean = 0;
inline constexpr int kExitWarnings = 1;
inline constexpr int kExitErrors = 2;
inline constexpr int kExitFailure = 3;

/// Text: one "severity code file:line message" line per finding.
/// Json: an array of finding objects in report order ("[]" when empty).
std::string emit_report(const std::vector<Diagnostic> & findings, ReportFormat format);

/// {"schema": 1, "findings": [...]}, as printed by the CLI.
std::string emit_json_document(const std::vector<Diagnostic> & findings);

/// Accepts either the bare array or the versioned document.
/// Throws std::runtime_error on malformed input.
std::vector<Diagnostic> parse_json_report(std::string_view text);

/// 2 with any error, 1 with warnings only, 0 otherwise (info notes included).
int exit_code(const std::vector<Diagnostic> & findings);

}  // namespace physframe
