// project.cpp - Manifest parsing, group discovery and the analysis pipeline
#include "physframe/project.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <future>
#include <sstream>

#include "physframe/const_prop.hpp"
#include "physframe/launch.hpp"
#include "physframe/program.hpp"
#include "physframe/type_checker.hpp"

namespace physframe
{

namespace fs = std::filesystem;

namespace
{

std::string trim(std::string_view s)
{
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) {
    ++b;
  }
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) {
    --e;
  }
  return std::string(s.substr(b, e - b));
}

// Drops a '#' comment that is not inside a string.
std::string strip_comment(std::string_view line)
{
  bool in_str = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"' && (i == 0 || line[i - 1] != '\\')) {
      in_str = !in_str;
    } else if (line[i] == '#' && !in_str) {
      return std::string(line.substr(0, i));
    }
  }
  return std::string(line);
}

std::vector<std::string> parse_string_array(
  std::string_view text, const std::string & source, int line)
{
  auto fail = [&](const std::string & msg) {
    throw ConfigError(source + ":" + std::to_string(line) + ": " + msg);
  };
  std::vector<std::string> out;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    }
  };
  skip_ws();
  if (i >= text.size() || text[i] != '[') {
    fail("expected '[' to start the file list");
  }
  ++i;
  while (true) {
    skip_ws();
    if (i < text.size() && text[i] == ']') {
      ++i;
      break;
    }
    if (i >= text.size() || text[i] != '"') {
      fail("expected a quoted file name");
    }
    ++i;
    std::string value;
    while (i < text.size() && text[i] != '"') {
      if (text[i] == '\\' && i + 1 < text.size()) {
        ++i;
      }
      value += text[i++];
    }
    if (i >= text.size()) {
      fail("unterminated string");
    }
    ++i;
    out.push_back(std::move(value));
    skip_ws();
    if (i < text.size() && text[i] == ',') {
      ++i;
    } else if (i >= text.size() || text[i] != ']') {
      fail("expected ',' or ']'");
    }
  }
  skip_ws();
  if (i != text.size()) {
    fail("unexpected text after the file list");
  }
  return out;
}

bool is_analyzable(const fs::path & p)
{
  return p.extension() == ".pf" || p.extension() == ".launch";
}

std::optional<std::string> slurp(const fs::path & p)
{
  std::ifstream in(p, std::ios::binary);
  if (!in) {
    return std::nullopt;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct ParsedSource
{
  std::optional<VersionedProgram> program;
  ConstEnv consts;
  std::optional<Diagnostic> failure;
};

ParsedSource parse_source(const fs::path & path, const std::string & rel)
{
  ParsedSource out;
  auto text = slurp(path);
  if (!text) {
    out.failure = make_diagnostic(Code::MalformedInput, {rel, 0, 0}, "cannot read source file");
    return out;
  }
  try {
    out.program = version_variables(parse_program(*text, rel));
    out.consts = propagate_constants(*out.program);
  } catch (const ParseError & e) {
    out.program.reset();
    out.failure = make_diagnostic(Code::MalformedInput, e.loc(), e.detail());
  }
  return out;
}

}  // namespace

ProjectManifest ProjectManifest::parse(std::string_view text, const std::string & source)
{
  ProjectManifest m;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::string current;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const int start_line = line_no;
    std::string line = trim(strip_comment(raw));
    if (line.empty()) {
      continue;
    }
    auto fail = [&](const std::string & msg) {
      throw ConfigError(source + ":" + std::to_string(start_line) + ": " + msg);
    };
    if (line.front() == '[') {
      if (line.back() != ']') {
        fail("unterminated section header");
      }
      const std::string header = trim(std::string_view(line).substr(1, line.size() - 2));
      const std::string prefix = "group.";
      if (header.rfind(prefix, 0) != 0 || header.size() == prefix.size()) {
        fail("sections must be named [group.NAME]");
      }
      current = header.substr(prefix.size());
      if (m.groups.count(current)) {
        fail("group '" + current + "' is declared twice");
      }
      m.groups[current];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      fail("expected 'key = value'");
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    std::string value = trim(std::string_view(line).substr(eq + 1));
    if (current.empty()) {
      fail("key '" + key + "' outside a [group.NAME] section");
    }
    if (key != "files") {
      fail("unknown key '" + key + "'");
    }
    while (value.find(']') == std::string::npos && std::getline(in, raw)) {
      ++line_no;
      value += " " + trim(strip_comment(raw));
    }
    auto files = parse_string_array(value, source, start_line);
    auto & dst = m.groups[current];
    dst.insert(dst.end(), files.begin(), files.end());
  }
  return m;
}

ProjectManifest ProjectManifest::load(const fs::path & path)
{
  auto text = slurp(path);
  if (!text) {
    throw ConfigError("cannot read manifest " + path.string());
  }
  return parse(*text, path.string());
}

std::vector<FileGroup> discover_groups(
  const fs::path & dir, const std::optional<fs::path> & manifest)
{
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw ConfigError("project directory not found: " + dir.string());
  }
  std::optional<fs::path> mpath = manifest;
  if (!mpath && fs::exists(dir / kManifestName)) {
    mpath = dir / kManifestName;
  }

  std::vector<FileGroup> out;
  if (mpath) {
    const ProjectManifest m = ProjectManifest::load(*mpath);
    for (const auto & [name, files] : m.groups) {
      FileGroup g{name, {}};
      for (const auto & f : files) {
        const fs::path full = dir / f;
        if (!fs::is_regular_file(full, ec)) {
          throw ConfigError("group '" + name + "' lists missing file " + full.string());
        }
        if (!is_analyzable(full)) {
          throw ConfigError("group '" + name + "' lists " + f + ", which is neither .pf nor .launch");
        }
        g.files.push_back(fs::path(f).lexically_normal().generic_string());
      }
      out.push_back(std::move(g));
    }
    return out;
  }

  FileGroup all{"default", {}};
  for (auto it = fs::recursive_directory_iterator(dir, ec);
       !ec && it != fs::recursive_directory_iterator(); it.increment(ec)) {
    if (it->is_regular_file(ec) && is_analyzable(it->path())) {
      all.files.push_back(it->path().lexically_relative(dir).generic_string());
    }
  }
  if (ec) {
    throw ConfigError("cannot walk " + dir.string() + ": " + ec.message());
  }
  std::sort(all.files.begin(), all.files.end());
  out.push_back(std::move(all));
  return out;
}

AnalysisReport analyze_group(
  const fs::path & project_dir, const FileGroup & group, const AnalysisOptions & opts)
{
  AnalysisReport report;
  report.group = group.name;
  std::vector<Diagnostic> & diags = report.diagnostics;

  std::vector<std::string> launch_files;
  std::vector<std::string> sources;
  for (const auto & f : group.files) {
    (fs::path(f).extension() == ".launch" ? launch_files : sources).push_back(f);
  }

  // Parsing is independent per file; typing and tree mutation stay here.
  std::vector<std::future<LaunchParseResult>> launch_jobs;
  for (const auto & f : launch_files) {
    launch_jobs.push_back(std::async(std::launch::async, [&project_dir, f] {
      return parse_launch_file(project_dir / f, f);
    }));
  }
  std::vector<std::future<ParsedSource>> source_jobs;
  for (const auto & f : sources) {
    source_jobs.push_back(std::async(std::launch::async, [&project_dir, f] {
      return parse_source(project_dir / f, f);
    }));
  }

  std::vector<StaticTransformRecord> records;
  for (auto & job : launch_jobs) {
    LaunchParseResult parsed = job.get();
    diags.insert(diags.end(), parsed.diagnostics.begin(), parsed.diagnostics.end());
    auto found = analyze_static_transforms(parsed.records, report.tree, opts.conventions);
    diags.insert(diags.end(), found.begin(), found.end());
    records.insert(records.end(), parsed.records.begin(), parsed.records.end());
  }

  TypeChecker checker(report.tree, opts.conventions);
  for (auto & job : source_jobs) {
    ParsedSource parsed = job.get();
    if (parsed.failure) {
      diags.push_back(*parsed.failure);
      continue;
    }
    checker.check(*parsed.program, parsed.consts);
  }
  auto typed = checker.finish();
  diags.insert(diags.end(), typed.begin(), typed.end());

  auto order = check_order_conventions(report.tree, opts.conventions.tree_order);
  diags.insert(diags.end(), order.begin(), order.end());

  if (opts.rules) {
    auto violations = check_convention_violations(records, checker.transforms(), *opts.rules);
    diags.insert(diags.end(), violations.begin(), violations.end());
  }
  sort_and_dedup(diags);
  return report;
}

ProjectReport analyze_project(
  const fs::path & project_dir, const std::vector<FileGroup> & groups,
  const AnalysisOptions & opts, bool parallel)
{
  ProjectReport out;
  if (parallel) {
    std::vector<std::future<AnalysisReport>> jobs;
    for (const auto & g : groups) {
      jobs.push_back(std::async(std::launch::async, [&project_dir, &g, &opts] {
        return analyze_group(project_dir, g, opts);
      }));
    }
    for (auto & j : jobs) {
      out.groups.push_back(j.get());
    }
  } else {
    for (const auto & g : groups) {
      out.groups.push_back(analyze_group(project_dir, g, opts));
    }
  }
  for (const auto & g : out.groups) {
    out.diagnostics.insert(out.diagnostics.end(), g.diagnostics.begin(), g.diagnostics.end());
  }
  sort_and_dedup(out.diagnostics);
  return out;
}

}  // namespace physframe
