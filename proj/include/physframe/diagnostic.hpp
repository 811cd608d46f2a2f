// diagnostic.hpp - Findings reported by the analyzer
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace physframe
{

enum class Code : std::uint8_t {
  // tree shape and order
  MultipleParentsInFrameTree,
  CycleInFrameTree,
  IncorrectFrameOrderInTree,
  // frames and transforms
  IncorrectTransform,
  RedundantTransform,
  MissingFrame,
  MissingChildFrame,
  // type warnings
  ReversedName,
  SensorNull,
  // mined convention violations
  SigNullRotExpected,
  NameNullRotExpected,
  SigNullDispExpected,
  NameNullDispExpected,
  NameCoOccurrence,
  // rule premise failures
  FrameMismatch,
  UnreachableFrames,
  // tool-side notes about the input itself
  MalformedInput,
  SkippedMacroArgs,
};

enum class Severity : std::uint8_t { Info, Warning, Error };

/// Verbatim code string, e.g. "c_CYCLE_IN_FRAME_TREE".
std::string_view code_name(Code c);
std::optional<Code> code_from_name(std::string_view name);
/// Fixed classification: the seven tree/frame/transform codes and the two
/// premise-failure codes are errors, type warnings and w_ codes are warnings.
Severity severity_of(Code c);
std::string_view severity_name(Severity s);
std::optional<Severity> severity_from_name(std::string_view name);

/// Every code, in declaration order.
const std::vector<Code> & all_codes();

struct SourceLoc
{
  std::string file;
  int line = 0;
  int column = 0;

  friend bool operator==(const SourceLoc &, const SourceLoc &) = default;
};

struct Diagnostic
{
  Code code;
  Severity severity;
  SourceLoc loc;
  std::string message;
  /// Optional frame or transform the finding is about, e.g. "map->odom".
  std::string context;

  friend bool operator==(const Diagnostic &, const Diagnostic &) = default;
};

Diagnostic make_diagnostic(
  Code code, SourceLoc loc, std::string message, std::string context = {});

/// Sorts by (file, line, code, message) and drops repeats of (code, file, line).
void sort_and_dedup(std::vector<Diagnostic> & diags);

}  // namespace physframe
