// report.cpp
#include "physframe/report.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

namespace physframe
{

namespace
{

nlohmann::json to_json(const Diagnostic & d)
{
  return {{"code", code_name(d.code)},         {"severity", severity_name(d.severity)},
          {"file", d.loc.file},                {"line", d.loc.line},
          {"column", d.loc.column},            {"message", d.message},
          {"context", d.context}};
}

nlohmann::json to_json(const std::vector<Diagnostic> & findings)
{
  nlohmann::json arr = nlohmann::json::array();
  for (const auto & d : findings) {
    arr.push_back(to_json(d));
  }
  return arr;
}

Diagnostic from_json(const nlohmann::json & j)
{
  const auto code = code_from_name(j.at("code").get<std::string>());
  if (!code) {
    throw std::runtime_error("unknown finding code '" + j.at("code").get<std::string>() + "'");
  }
  const auto sev = severity_from_name(j.at("severity").get<std::string>());
  if (!sev) {
    throw std::runtime_error("unknown severity '" + j.at("severity").get<std::string>() + "'");
  }
  Diagnostic d{*code, *sev, {}, {}, {}};
  d.loc.file = j.at("file").get<std::string>();
  d.loc.line = j.at("line").get<int>();
  d.loc.column = j.value("column", 0);
  d.message = j.at("message").get<std::string>();
  d.context = j.value("context", std::string());
  return d;
}

}  // namespace

std::string emit_report(const std::vector<Diagnostic> & findings, ReportFormat format)
{
  if (format == ReportFormat::Json) {
    return to_json(findings).dump(2) + "\n";
  }
  std::string out;
  for (const auto & d : findings) {
    out += std::string(severity_name(d.severity)) + " " + std::string(code_name(d.code)) + " " +
           d.loc.file + ":" + std::to_string(d.loc.line) + " " + d.message + "\n";
  }
  return out;
}

std::string emit_json_document(const std::vector<Diagnostic> & findings)
{
  nlohmann::json doc;
  doc["schema"] = kReportSchema;
  doc["findings"] = to_json(findings);
  return doc.dump(2) + "\n";
}

std::vector<Diagnostic> parse_json_report(std::string_view text)
{
  try {
    const nlohmann::json j = nlohmann::json::parse(text);
    const nlohmann::json & arr = j.is_object() ? j.at("findings") : j;
    if (j.is_object() && j.at("schema").get<int>() != kReportSchema) {
      throw std::runtime_error("unsupported report schema");
    }
    if (!arr.is_array()) {
      throw std::runtime_error("findings must be a JSON array");
    }
    std::vector<Diagnostic> out;
    for (const auto & f : arr) {
      out.push_back(from_json(f));
    }
    return out;
  } catch (const nlohmann::json::exception & e) {
    throw std::runtime_error(std::string("malformed report: ") + e.what());
  }
}

int exit_code(const std::vector<Diagnostic> & findings)
{
  Severity worst = Severity::Info;
  for (const auto & d : findings) {
    worst = std::max(worst, d.severity);
  }
  switch (worst) {
    case Severity::Error:
      return kExitErrors;
    case Severity::Warning:
      return kExitWarnings;
    case Severity::Info:
      break;
  }
  return kExitClean;
}

}  // namespace physframe
