// miner.cpp - Transform database, z-score mining and violation checks
#include "physframe/miner.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include <json.hpp>

namespace physframe
{

namespace fs = std::filesystem;

namespace
{

struct ProjectScan
{
  std::vector<DbRow> rows;
  std::vector<std::string> notes;
};

std::optional<std::string> slurp(const fs::path & p)
{
  std::ifstream in(p, std::ios::binary);
  if (!in) {
    return std::nullopt;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) {
    return std::nullopt;
  }
  return buf.str();
}

ProjectScan scan_project(const fs::path & dir, const std::string & project)
{
  ProjectScan out;
  std::vector<fs::path> files;
  std::error_code ec;
  for (auto it = fs::recursive_directory_iterator(dir, fs::directory_options::skip_permission_denied, ec);
       !ec && it != fs::recursive_directory_iterator(); it.increment(ec)) {
    if (it->is_regular_file(ec) && it->path().extension() == ".launch") {
      files.push_back(it->path());
    }
  }
  if (ec) {
    out.notes.push_back(project + ": directory walk stopped: " + ec.message());
  }
  std::sort(files.begin(), files.end());

  std::set<std::string> seen_content;
  std::set<std::tuple<std::string, std::string, std::string, std::string>> seen_rows;
  for (const auto & f : files) {
    const std::string rel = f.lexically_relative(dir).generic_string();
    auto text = slurp(f);
    if (!text) {
      out.notes.push_back(project + "/" + rel + ": unreadable, skipped");
      continue;
    }
    if (!seen_content.insert(*text).second) {
      continue;
    }
    LaunchParseResult parsed = parse_launch_text(*text, rel);
    for (const auto & d : parsed.diagnostics) {
      if (d.code == Code::MalformedInput) {
        out.notes.push_back(project + "/" + rel + ":" + std::to_string(d.loc.line) + ": " + d.message);
      }
    }
    for (auto & r : parsed.records) {
      if (seen_rows.emplace(rel, r.name, r.parent, r.child).second) {
        out.rows.push_back({project, rel, std::move(r)});
      }
    }
  }
  return out;
}

// Per-key tally: projects where the premise appears, and where the
// conclusion holds for every occurrence.
struct Tally
{
  int n = 0;
  int e = 0;
};

template <typename Key>
void tally_project(
  const std::map<Key, bool> & holds_in_project, std::map<Key, Tally> & totals)
{
  for (const auto & [key, holds] : holds_in_project) {
    auto & t = totals[key];
    ++t.n;
    if (holds) {
      ++t.e;
    }
  }
}

template <typename Key>
void and_into(std::map<Key, bool> & m, const Key & k, bool v)
{
  auto [it, fresh] = m.emplace(k, v);
  if (!fresh) {
    it->second = it->second && v;
  }
}

enum class Null { Yes, No, Unknown };

Null disp_null(const TransformType & t)
{
  bool unknown = false;
  for (const auto * d : {&t.x, &t.y, &t.z}) {
    if (d->is_top()) {
      unknown = true;
    } else if (std::abs(*d->value) >= kNullTolerance) {
      return Null::No;
    }
  }
  return unknown ? Null::Unknown : Null::Yes;
}

Null rot_null(const Rotation & r)
{
  if (!r.is_fully_known()) {
    return Null::Unknown;
  }
  return r.is_identity() ? Null::Yes : Null::No;
}

struct Subject
{
  std::optional<std::string> name;
  Signature sig;
  Null disp;
  Null rot;
  SourceLoc loc;
};

bool loc_less(const SourceLoc & a, const SourceLoc & b)
{
  return std::tie(a.file, a.line, a.column) < std::tie(b.file, b.line, b.column);
}

std::string sig_text(const Signature & s) { return s.first + "->" + s.second; }

nlohmann::json sig_json(const Signature & s) { return nlohmann::json::array({s.first, s.second}); }

Signature sig_from_json(const nlohmann::json & j)
{
  if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_string()) {
    throw std::runtime_error("rule signature must be a [parent, child] pair");
  }
  return {j[0].get<std::string>(), j[1].get<std::string>()};
}

bool by_sig(RuleKind k) { return k == RuleKind::NullDispBySig || k == RuleKind::NullRotBySig; }
bool by_name(RuleKind k) { return k == RuleKind::NullDispByName || k == RuleKind::NullRotByName; }

}  // namespace

TransformDb build_transform_db(const fs::path & corpus_dir)
{
  TransformDb db;
  std::error_code ec;
  if (!fs::is_directory(corpus_dir, ec)) {
    throw std::runtime_error("corpus directory not found: " + corpus_dir.string());
  }
  std::vector<fs::path> projects;
  for (const auto & entry : fs::directory_iterator(corpus_dir)) {
    if (entry.is_directory() && !fs::exists(entry.path() / kImmatureMarker)) {
      projects.push_back(entry.path());
    }
  }
  std::sort(projects.begin(), projects.end());

  std::vector<std::future<ProjectScan>> jobs;
  jobs.reserve(projects.size());
  for (const auto & p : projects) {
    jobs.push_back(std::async(std::launch::async, scan_project, p, p.filename().string()));
  }
  for (std::size_t i = 0; i < projects.size(); ++i) {
    ProjectScan s = jobs[i].get();
    db.projects.push_back(projects[i].filename().string());
    std::move(s.rows.begin(), s.rows.end(), std::back_inserter(db.rows));
    std::move(s.notes.begin(), s.notes.end(), std::back_inserter(db.notes));
  }
  return db;
}

double z_score(int n, int e, double p0)
{
  if (n <= 0) {
    throw std::invalid_argument("z_score: n must be positive");
  }
  if (e < 0 || e > n) {
    throw std::invalid_argument("z_score: e must lie in [0, n]");
  }
  if (!(p0 > 0.0 && p0 < 1.0)) {
    throw std::invalid_argument("z_score: p0 must lie strictly between 0 and 1");
  }
  const double ratio = static_cast<double>(e) / n;
  return (ratio - p0) / std::sqrt(p0 * (1.0 - p0) / n);
}

std::string_view to_string(RuleKind k)
{
  switch (k) {
    case RuleKind::CoOccurrence:
      return "co_occurrence";
    case RuleKind::NullDispBySig:
      return "null_disp_by_sig";
    case RuleKind::NullRotBySig:
      return "null_rot_by_sig";
    case RuleKind::NullDispByName:
      return "null_disp_by_name";
    case RuleKind::NullRotByName:
      return "null_rot_by_name";
  }
  return "?";
}

std::optional<RuleKind> rule_kind_from_string(std::string_view s)
{
  for (auto k : {RuleKind::CoOccurrence, RuleKind::NullDispBySig, RuleKind::NullRotBySig,
                 RuleKind::NullDispByName, RuleKind::NullRotByName}) {
    if (to_string(k) == s) {
      return k;
    }
  }
  return std::nullopt;
}

std::vector<ConventionRule> mine_conventions(const TransformDb & db, double z_threshold, double p0)
{
  // Validate p0 up front so an empty corpus still rejects it.
  (void)z_score(1, 1, p0);

  std::map<std::string, std::vector<const DbRow *>> by_project;
  for (const auto & p : db.projects) {
    by_project[p];
  }
  for (const auto & r : db.rows) {
    by_project[r.project].push_back(&r);
  }

  std::map<Signature, Tally> disp_sig, rot_sig;
  std::map<std::string, Tally> disp_name, rot_name;
  std::map<Signature, int> sig_projects;
  std::map<std::pair<Signature, Signature>, int> both;

  for (const auto & [project, rows] : by_project) {
    std::map<Signature, bool> ds, rs;
    std::map<std::string, bool> dn, rn;
    for (const DbRow * row : rows) {
      const auto & r = row->record;
      const Signature sig{r.parent, r.child};
      and_into(ds, sig, r.has_null_displacement());
      and_into(rs, sig, r.has_null_rotation());
      if (!r.name.empty()) {
        and_into(dn, r.name, r.has_null_displacement());
        and_into(rn, r.name, r.has_null_rotation());
      }
    }
    tally_project(ds, disp_sig);
    tally_project(rs, rot_sig);
    tally_project(dn, disp_name);
    tally_project(rn, rot_name);
    for (const auto & [a, unused_a] : ds) {
      ++sig_projects[a];
      for (const auto & [b, unused_b] : ds) {
        if (a != b) {
          ++both[{a, b}];
        }
      }
    }
  }

  std::vector<ConventionRule> out;
  auto emit = [&](ConventionRule r) {
    r.z = z_score(r.n, r.e, p0);
    if (r.z > z_threshold) {
      out.push_back(std::move(r));
    }
  };
  for (const auto & [ab, e] : both) {
    emit({RuleKind::CoOccurrence, ab.first, {}, ab.second, sig_projects.at(ab.first), e, 0.0});
  }
  for (const auto & [sig, t] : disp_sig) {
    emit({RuleKind::NullDispBySig, sig, {}, {}, t.n, t.e, 0.0});
  }
  for (const auto & [sig, t] : rot_sig) {
    emit({RuleKind::NullRotBySig, sig, {}, {}, t.n, t.e, 0.0});
  }
  for (const auto & [name, t] : disp_name) {
    emit({RuleKind::NullDispByName, {}, name, {}, t.n, t.e, 0.0});
  }
  for (const auto & [name, t] : rot_name) {
    emit({RuleKind::NullRotByName, {}, name, {}, t.n, t.e, 0.0});
  }
  return out;
}

std::vector<Diagnostic> check_convention_violations(
  const std::vector<StaticTransformRecord> & records, const std::vector<CodeTransform> & code,
  const std::vector<ConventionRule> & rules)
{
  std::vector<Subject> subjects;
  for (const auto & r : records) {
    subjects.push_back(
      {r.name, {r.parent, r.child}, r.has_null_displacement() ? Null::Yes : Null::No,
       r.has_null_rotation() ? Null::Yes : Null::No, r.loc});
  }
  for (const auto & t : code) {
    if (t.type.cid.empty() || t.type.pid.empty()) {
      continue;
    }
    // Code variables are not transform names; only signature rules apply.
    subjects.push_back(
      {std::nullopt, {t.type.pid, t.type.cid}, disp_null(t.type), rot_null(t.type.rot), t.loc});
  }
  std::stable_sort(subjects.begin(), subjects.end(), [](const Subject & a, const Subject & b) {
    return loc_less(a.loc, b.loc);
  });
  std::set<Signature> present;
  for (const auto & s : subjects) {
    present.insert(s.sig);
  }

  std::vector<Diagnostic> out;
  for (const auto & rule : rules) {
    if (rule.kind == RuleKind::CoOccurrence) {
      if (!present.count(rule.sig) || present.count(rule.implied)) {
        continue;
      }
      const auto first = std::find_if(subjects.begin(), subjects.end(), [&](const Subject & s) {
        return s.sig == rule.sig;
      });
      out.push_back(make_diagnostic(
        Code::NameCoOccurrence, first->loc,
        "transform " + sig_text(rule.sig) + " usually comes with " + sig_text(rule.implied) +
          " (z=" + std::to_string(rule.z) + ")",
        sig_text(rule.sig) + " => " + sig_text(rule.implied)));
      continue;
    }
    const bool rot = rule.kind == RuleKind::NullRotBySig || rule.kind == RuleKind::NullRotByName;
    for (const auto & s : subjects) {
      const bool matches = by_sig(rule.kind) ? s.sig == rule.sig
                                             : (by_name(rule.kind) && s.name == rule.name);
      if (!matches || (rot ? s.rot : s.disp) != Null::No) {
        continue;
      }
      Code code_id = Code::SigNullRotExpected;
      switch (rule.kind) {
        case RuleKind::NullRotBySig:
          code_id = Code::SigNullRotExpected;
          break;
        case RuleKind::NullRotByName:
          code_id = Code::NameNullRotExpected;
          break;
        case RuleKind::NullDispBySig:
          code_id = Code::SigNullDispExpected;
          break;
        default:
          code_id = Code::NameNullDispExpected;
          break;
      }
      const std::string key = by_sig(rule.kind) ? "signature " + sig_text(rule.sig)
                                                : "name '" + rule.name + "'";
      out.push_back(make_diagnostic(
        code_id, s.loc,
        std::string(rot ? "zero rotation" : "zero displacement") + " expected for " + key +
          " (z=" + std::to_string(rule.z) + ")",
        sig_text(s.sig)));
    }
  }
  return out;
}

std::string rules_to_json(const std::vector<ConventionRule> & rules)
{
  nlohmann::json arr = nlohmann::json::array();
  for (const auto & r : rules) {
    nlohmann::json key;
    if (r.kind == RuleKind::CoOccurrence) {
      key = nlohmann::json::array({sig_json(r.sig), sig_json(r.implied)});
    } else if (by_sig(r.kind)) {
      key = sig_json(r.sig);
    } else {
      key = r.name;
    }
    arr.push_back({{"kind", to_string(r.kind)}, {"key", key}, {"n", r.n}, {"e", r.e}, {"z", r.z}});
  }
  return arr.dump(2) + "\n";
}

std::vector<ConventionRule> rules_from_json(std::string_view text)
{
  nlohmann::json arr;
  try {
    arr = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error & e) {
    throw std::runtime_error(std::string("rules file is not valid JSON: ") + e.what());
  }
  if (!arr.is_array()) {
    throw std::runtime_error("rules file must hold a JSON array");
  }
  std::vector<ConventionRule> out;
  try {
    for (const auto & j : arr) {
      if (!j.is_object() || !j.contains("kind") || !j.contains("key") || !j.contains("n") ||
          !j.contains("e") || !j.contains("z")) {
        throw std::runtime_error("rule entries need kind, key, n, e and z");
      }
      const auto kind = rule_kind_from_string(j.at("kind").get<std::string>());
      if (!kind) {
        throw std::runtime_error("unknown rule kind '" + j.at("kind").get<std::string>() + "'");
      }
      ConventionRule r;
      r.kind = *kind;
      const auto & key = j.at("key");
      if (r.kind == RuleKind::CoOccurrence) {
        if (!key.is_array() || key.size() != 2) {
          throw std::runtime_error("co_occurrence key must be [premise, conclusion]");
        }
        r.sig = sig_from_json(key[0]);
        r.implied = sig_from_json(key[1]);
      } else if (by_sig(r.kind)) {
        r.sig = sig_from_json(key);
      } else {
        if (!key.is_string()) {
          throw std::runtime_error("name key must be a string");
        }
        r.name = key.get<std::string>();
      }
      r.n = j.at("n").get<int>();
      r.e = j.at("e").get<int>();
      r.z = j.at("z").get<double>();
      if (r.n < 1 || r.e < 0 || r.e > r.n) {
        throw std::runtime_error("rule counts must satisfy 0 <= e <= n, n >= 1");
      }
      out.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception & e) {
    throw std::runtime_error(std::string("malformed rule entry: ") + e.what());
  }
  return out;
}

}  // namespace physframe
