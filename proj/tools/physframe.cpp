// physframe - frame-of-reference checks for .pf sources and launch files
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "physframe/miner.hpp"
#include "physframe/project.hpp"
#include "physframe/report.hpp"

namespace fs = std::filesystem;
using namespace physframe;

namespace
{

struct CheckArgs
{
  std::string path;
  std::string rules;
  std::string manifest;
  double z_threshold = 1.0;
  std::string format = "text";
  bool dump_tree = false;
  bool serial = false;
};

struct MineArgs
{
  std::string corpus;
  std::string out;
  double p0 = kDefaultP0;
  double min_z = 0.0;
};

int run_check(const CheckArgs & a)
{
  fs::path path(a.path);
  std::error_code ec;
  if (!fs::exists(path, ec)) {
    std::cerr << "physframe: no such file or directory: " << a.path << "\n";
    return kExitFailure;
  }

  std::vector<FileGroup> groups;
  fs::path root = path;
  if (fs::is_regular_file(path, ec)) {
    root = path.has_parent_path() ? path.parent_path() : fs::path(".");
    groups.push_back({"default", {path.filename().generic_string()}});
  } else {
    std::optional<fs::path> manifest;
    if (!a.manifest.empty()) {
      manifest = fs::path(a.manifest);
    }
    groups = discover_groups(path, manifest);
  }

  std::vector<ConventionRule> rules;
  AnalysisOptions opts;
  if (!a.rules.empty()) {
    std::ifstream in(a.rules, std::ios::binary);
    if (!in) {
      std::cerr << "physframe: cannot read rules file " << a.rules << "\n";
      return kExitFailure;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    for (auto & r : rules_from_json(buf.str())) {
      if (r.z > a.z_threshold) {
        rules.push_back(std::move(r));
      }
    }
    opts.rules = &rules;
  }

  const ProjectReport report = analyze_project(root, groups, opts, !a.serial);
  if (a.dump_tree) {
    for (const auto & g : report.groups) {
      std::cerr << g.tree.to_dot(g.group);
    }
  }
  if (a.format == "json") {
    std::cout << emit_json_document(report.diagnostics);
  } else {
    std::cout << emit_report(report.diagnostics, ReportFormat::Text);
  }
  return exit_code(report.diagnostics);
}

int run_mine(const MineArgs & a)
{
  if (!(a.p0 > 0.0 && a.p0 < 1.0)) {
    std::cerr << "physframe: --p0 must lie strictly between 0 and 1\n";
    return kExitFailure;
  }
  const TransformDb db = build_transform_db(a.corpus);
  for (const auto & note : db.notes) {
    std::cerr << "note: " << note << "\n";
  }
  const auto rules = mine_conventions(db, a.min_z, a.p0);
  std::ofstream out(a.out, std::ios::binary | std::ios::trunc);
  if (!out) {
    std::cerr << "physframe: cannot write " << a.out << "\n";
    return kExitFailure;
  }
  out << rules_to_json(rules);
  out.close();
  if (!out) {
    std::cerr << "physframe: failed writing " << a.out << "\n";
    return kExitFailure;
  }

  std::map<std::string_view, int> per_kind;
  for (auto k : {RuleKind::CoOccurrence, RuleKind::NullDispBySig, RuleKind::NullRotBySig,
                 RuleKind::NullDispByName, RuleKind::NullRotByName}) {
    per_kind[to_string(k)] = 0;
  }
  for (const auto & r : rules) {
    ++per_kind[to_string(r.kind)];
  }
  std::cout << db.projects.size() << " projects, " << db.rows.size() << " static transforms\n";
  for (const auto & [kind, count] : per_kind) {
    std::cout << kind << ": " << count << "\n";
  }
  return kExitClean;
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"Frame-of-reference checks for .pf sources and launch files"};
  app.require_subcommand(1);

  CheckArgs check;
  auto * check_cmd = app.add_subcommand("check", "Analyze a project directory or a single file");
  check_cmd->add_option("path", check.path, "Project directory, .pf or .launch file")->required();
  check_cmd->add_option("--rules", check.rules, "Mined rules JSON");
  check_cmd->add_option("--z-threshold", check.z_threshold, "Use rules with z above this")
    ->capture_default_str();
  check_cmd->add_option("--format", check.format, "Output format")
    ->check(CLI::IsMember({"text", "json"}))
    ->capture_default_str();
  check_cmd->add_option("--manifest", check.manifest, "Group manifest (default <path>/physframe.toml)");
  check_cmd->add_flag("--dump-tree", check.dump_tree, "Print each group's TF tree as DOT on stderr");
  check_cmd->add_flag("--serial", check.serial, "Analyze groups one after another");

  MineArgs mine;
  auto * mine_cmd = app.add_subcommand("mine", "Mine conventions from a corpus of projects");
  mine_cmd->add_option("corpus", mine.corpus, "Directory of project directories")->required();
  mine_cmd->add_option("--out", mine.out, "Rules JSON to write")->required();
  mine_cmd->add_option("--p0", mine.p0, "Expected likelihood of a convention")->capture_default_str();
  mine_cmd->add_option("--min-z", mine.min_z, "Keep rules with z above this")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp & e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp & e) {
    return app.exit(e);
  } catch (const CLI::ParseError & e) {
    app.exit(e);
    return kExitFailure;
  }

  try {
    if (check_cmd->parsed()) {
      return run_check(check);
    }
    return run_mine(mine);
  } catch (const std::exception & e) {
    std::cerr << "physframe: " << e.what() << "\n";
    return kExitFailure;
  }
}
