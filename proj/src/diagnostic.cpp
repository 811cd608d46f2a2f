// diagnostic.cpp
#include "physframe/diagnostic.hpp"

#include <algorithm>
#include <array>
#include <tuple>
#include <utility>

namespace physframe
{

namespace
{

struct CodeInfo
{
  Code code;
  std::string_view name;
  Severity severity;
};

constexpr std::array<CodeInfo, 18> kCodes = {{
  {Code::MultipleParentsInFrameTree, "c_MULTIPLE_PARENTS_IN_FRAME_TREE", Severity::Error},
  {Code::CycleInFrameTree, "c_CYCLE_IN_FRAME_TREE", Severity::Error},
  {Code::IncorrectFrameOrderInTree, "td_INCORRECT_FRAME_ORDER_IN_TREE", Severity::Error},
  {Code::IncorrectTransform, "c_INCORRECT_TRANSFORM", Severity::Error},
  {Code::RedundantTransform, "td_REDUNDANT_TRANSFORM", Severity::Error},
  {Code::MissingFrame, "td_MISSING_FRAME", Severity::Error},
  {Code::MissingChildFrame, "td_MISSING_CHILD_FRAME", Severity::Error},
  {Code::ReversedName, "td_REVERSED_NAME", Severity::Warning},
  {Code::SensorNull, "c_SENSOR_NULL", Severity::Warning},
  {Code::SigNullRotExpected, "w_sig_null_rot_exp", Severity::Warning},
  {Code::NameNullRotExpected, "w_name_null_rot_exp", Severity::Warning},
  {Code::SigNullDispExpected, "w_sig_null_disp_exp", Severity::Warning},
  {Code::NameNullDispExpected, "w_name_null_disp_exp", Severity::Warning},
  {Code::NameCoOccurrence, "w_name_co-occurrence", Severity::Warning},
  {Code::FrameMismatch, "e_FRAME_MISMATCH", Severity::Error},
  {Code::UnreachableFrames, "e_UNREACHABLE_FRAMES", Severity::Error},
  {Code::MalformedInput, "e_MALFORMED_INPUT", Severity::Error},
  {Code::SkippedMacroArgs, "i_SKIPPED_MACRO_ARGS", Severity::Info},
}};

const CodeInfo & info(Code c) { return kCodes[static_cast<std::size_t>(c)]; }

}  // namespace

std::string_view code_name(Code c) { return info(c).name; }

std::optional<Code> code_from_name(std::string_view name)
{
  for (const auto & ci : kCodes) {
    if (ci.name == name) {
      return ci.code;
    }
  }
  return std::nullopt;
}

Severity severity_of(Code c) { return info(c).severity; }

std::string_view severity_name(Severity s)
{
  switch (s) {
    case Severity::Info: return "info";
    case Severity::Warning: return "warning";
    case Severity::Error: return "error";
  }
  return "?";
}

std::optional<Severity> severity_from_name(std::string_view name)
{
  for (Severity s : {Severity::Info, Severity::Warning, Severity::Error}) {
    if (severity_name(s) == name) {
      return s;
    }
  }
  return std::nullopt;
}

const std::vector<Code> & all_codes()
{
  static const std::vector<Code> codes = [] {
    std::vector<Code> out;
    for (const auto & ci : kCodes) {
      out.push_back(ci.code);
    }
    return out;
  }();
  return codes;
}

Diagnostic make_diagnostic(Code code, SourceLoc loc, std::string message, std::string context)
{
  return Diagnostic{code, severity_of(code), std::move(loc), std::move(message), std::move(context)};
}

void sort_and_dedup(std::vector<Diagnostic> & diags)
{
  auto key = [](const Diagnostic & d) {
    return std::tie(d.loc.file, d.loc.line, d.code, d.message, d.loc.column, d.context);
  };
  std::stable_sort(diags.begin(), diags.end(), [&](const Diagnostic & a, const Diagnostic & b) {
    return key(a) < key(b);
  });
  std::vector<Diagnostic> out;
  out.reserve(diags.size());
  for (auto & d : diags) {
    // equal (file, line, code) keys are adjacent after the sort
    const bool repeat = !out.empty() && out.back().code == d.code &&
                        out.back().loc.file == d.loc.file && out.back().loc.line == d.loc.line;
    if (!repeat) {
      out.push_back(std::move(d));
    }
  }
  diags = std::move(out);
}

}  // namespace physframe
