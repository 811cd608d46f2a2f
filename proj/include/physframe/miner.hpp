// miner.hpp - Implicit conventions mined from a corpus of launch files
#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "physframe/diagnostic.hpp"
#include "physframe/launch.hpp"
#include "physframe/type_checker.hpp"

namespace physframe
{

inline constexpr double kDefaultP0 = 0.9;
/// Marker file that excludes a project directory from the corpus.
inline constexpr const char * kImmatureMarker = ".immature";

/// (parent, child)
using Signature = std::pair<std::string, std::string>;

struct DbRow
{
  std::string project;
  std::string file;
  StaticTransformRecord record;
};

struct TransformDb
{
  std::vector<DbRow> rows;
  /// Every mature project scanned, including those without transforms.
  std::vector<std::string> projects;
  /// Unreadable or malformed files, skipped.
  std::vector<std::string> notes;
};

/// Each subdirectory of `corpus_dir` is a project; its *.launch files are
/// scanned recursively. Byte-identical files within a project count once
/// and rows are unique per (project, file, node name, parent, child).
TransformDb build_transform_db(const std::filesystem::path & corpus_dir);

/// (e/n - p0) / sqrt(p0 (1 - p0) / n). Throws std::invalid_argument when
/// n == 0, e is outside [0, n] or p0 is outside (0, 1).
double z_score(int n, int e, double p0 = kDefaultP0);

enum class RuleKind { CoOccurrence, NullDispBySig, NullRotBySig, NullDispByName, NullRotByName };

std::string_view to_string(RuleKind k);
std::optional<RuleKind> rule_kind_from_string(std::string_view s);

struct ConventionRule
{
  RuleKind kind = RuleKind::NullRotBySig;
  /// Premise signature for *_by_sig and co_occurrence.
  Signature sig;
  /// Premise node name for *_by_name.
  std::string name;
  /// Conclusion signature for co_occurrence.
  Signature implied;
  int n = 0;
  int e = 0;
  double z = 0.0;

  friend bool operator==(const ConventionRule &, const ConventionRule &) = default;
};

/// Every rule with z > z_threshold, ordered by (kind, key).
std::vector<ConventionRule> mine_conventions(
  const TransformDb & db, double z_threshold, double p0 = kDefaultP0);

/// One finding per transform (or per co-occurrence premise) whose
/// conclusion fails. Unknown code-side values never violate a rule.
std::vector<Diagnostic> check_convention_violations(
  const std::vector<StaticTransformRecord> & records, const std::vector<CodeTransform> & code,
  const std::vector<ConventionRule> & rules);

/// JSON array of {kind, key, n, e, z}. Signatures serialize as
/// [parent, child], names as strings, co-occurrence keys as [premise, conclusion].
std::string rules_to_json(const std::vector<ConventionRule> & rules);
/// Throws std::runtime_error on malformed input.
std::vector<ConventionRule> rules_from_json(std::string_view text);

}  // namespace physframe
