// project.hpp - File groups, per-group analysis and project-wide reports
#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "physframe/conventions.hpp"
#include "physframe/diagnostic.hpp"
#include "physframe/miner.hpp"
#include "physframe/tf_tree.hpp"

namespace physframe
{

inline constexpr const char * kManifestName = "physframe.toml";

class ConfigError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Files (relative to the project directory) analyzed together.
struct FileGroup
{
  std::string name;
  std::vector<std::string> files;
  friend bool operator==(const FileGroup &, const FileGroup &) = default;
};

/// Group name -> files. Syntax:
///
///   # comment
///   [group.nav]
///   files = ["nav.launch", "src/planner.pf"]
///
/// Arrays may span lines. A file may appear in several groups.
struct ProjectManifest
{
  std::map<std::string, std::vector<std::string>> groups;

  /// Throws ConfigError with the offending line.
  static ProjectManifest parse(std::string_view text, const std::string & source = kManifestName);
  static ProjectManifest load(const std::filesystem::path & path);
};

/// Groups from `manifest` (or <dir>/physframe.toml when present), ordered by
/// name; otherwise one group "default" holding every .pf and .launch file
/// under `dir`, sorted. Throws ConfigError when a listed file is missing.
std::vector<FileGroup> discover_groups(
  const std::filesystem::path & dir,
  const std::optional<std::filesystem::path> & manifest = std::nullopt);

struct AnalysisReport
{
  std::string group;
  TfTree tree;
  /// Sorted by (file, line, code), unique per (code, file, line).
  std::vector<Diagnostic> diagnostics;
};

struct AnalysisOptions
{
  const std::vector<ConventionRule> * rules = nullptr;
  ConventionTable conventions;
};

/// Fresh tree per group: launch files are installed first, then each source
/// file is parsed, versioned, folded and typed; the reserved order and the
/// mined conventions are checked last.
AnalysisReport analyze_group(
  const std::filesystem::path & project_dir, const FileGroup & group,
  const AnalysisOptions & opts = {});

struct ProjectReport
{
  std::vector<AnalysisReport> groups;
  /// Union over groups, sorted and deduplicated like a group report.
  std::vector<Diagnostic> diagnostics;
};

/// Groups run concurrently when `parallel` is set; the result does not
/// depend on the schedule.
ProjectReport analyze_project(
  const std::filesystem::path & project_dir, const std::vector<FileGroup> & groups,
  const AnalysisOptions & opts = {}, bool parallel = true);

}  // namespace physframe
