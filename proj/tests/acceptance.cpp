// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <set>

#include "physframe/launch.hpp"
#include "physframe/miner.hpp"
#include "physframe/project.hpp"
#include "physframe/report.hpp"
#include "test_support.hpp"

using namespace physframe;
using namespace testing_support;
namespace fs = std::filesystem;

namespace
{

struct Outcome
{
  bool ok = true;
  std::string why;

  void require(bool cond, const std::string & what)
  {
    if (!cond && ok) {
      ok = false;
      why = what;
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Outcome motivating_trace()
{
  Outcome o;
  const auto t0 = Clock::now();
  const auto c = compile(read_file(fixture("motivating/camera_pose.pf")), "camera_pose.pf");
  TfTree tree;
  const TypeResult result = infer_types(c.program, c.consts, tree);
  const std::vector<std::pair<int, const char *>> expected = {
    {6, "Top"}, {10, "<x,-z,y>"}, {13, "<-y,x,z>"}, {20, "<x,-z,y>"}, {21, "<z,x,y>"}, {23, "<z,-x,-y>"}};
  for (const auto & [line, text] : expected) {
    bool found = false;
    for (const auto & st : c.program.program.statements) {
      const std::string * v = defined_variable(st.node);
      if (st.loc.line != line || !v) {
        continue;
      }
      found = true;
      const VarType t = result.env.type_of(*v);
      const auto * r = std::get_if<Rotation>(&t);
      o.require(r && *r == parse_rotation(text).value(),
                "line " + std::to_string(line) + " typed " + to_string(t) + ", expected " + text);
    }
    o.require(found, "no definition on line " + std::to_string(line));
  }
  o.require(result.diagnostics.size() == 1, "expected a single finding");
  o.require(count_code(result.diagnostics, Code::IncorrectTransform) == 1 &&
              result.diagnostics[0].loc.line == 30,
            "c_INCORRECT_TRANSFORM not reported at the new_transform statement");

  const auto fixed = compile(read_file(fixture("motivating/camera_pose_fixed.pf")), "fixed.pf");
  TfTree fixed_tree;
  const TypeResult fixed_result = infer_types(fixed.program, fixed.consts, fixed_tree);
  o.require(count_severity(fixed_result.diagnostics, Severity::Error) == 0,
            "fixed version still has errors");
  const double secs = seconds_since(t0);
  o.require(secs < 1.0, "took " + std::to_string(secs) + " s");
  return o;
}

Outcome rotation_oracle()
{
  Outcome o;
  const auto t0 = Clock::now();
  const auto mats = signed_permutation_matrices();
  o.require(mats.size() == 48, "expected 48 signed permutations");
  int round_trips = 0;
  int homomorphism = 0;
  int applications = 0;
  std::vector<Rotation> rots;
  for (const auto & m : mats) {
    const Rotation r = orthogonalize(m);
    rots.push_back(r);
    round_trips += matrix_of(r) == m;
  }
  for (const auto & a : mats) {
    for (const auto & b : mats) {
      homomorphism += compose(orthogonalize(a), orthogonalize(b)) == orthogonalize(multiply(a, b));
    }
  }
  for (const auto & src : orientation_triples()) {
    for (const auto & m : mats) {
      applications += rotate(src, orthogonalize(m)) == apply_matrix(src, m);
    }
  }
  o.require(round_trips == 48, std::to_string(round_trips) + "/48 round trips");
  o.require(homomorphism == 2304, std::to_string(homomorphism) + "/2304 homomorphism cases");
  o.require(applications == 2304, std::to_string(applications) + "/2304 rotate cases");
  std::mt19937 rng(2024);
  std::uniform_int_distribution<std::size_t> pick(0, rots.size() - 1);
  int assoc = 0;
  for (int i = 0; i < 10000; ++i) {
    const Rotation & a = rots[pick(rng)];
    const Rotation & b = rots[pick(rng)];
    const Rotation & c = rots[pick(rng)];
    assoc += compose(compose(a, b), c) == compose(a, compose(b, c));
  }
  o.require(assoc == 10000, std::to_string(assoc) + "/10000 associativity triples");
  const double secs = seconds_since(t0);
  o.require(secs < 5.0, "took " + std::to_string(secs) + " s");
  return o;
}

std::vector<Diagnostic> tree_findings(const std::string & rel, TfTree & tree)
{
  const auto parsed = parse_launch_file(fixture(rel), rel);
  auto d = parsed.diagnostics;
  const auto found = analyze_static_transforms(parsed.records, tree);
  d.insert(d.end(), found.begin(), found.end());
  const auto order = check_order_conventions(tree);
  d.insert(d.end(), order.begin(), order.end());
  return d;
}

Outcome tree_fixtures()
{
  Outcome o;
  const std::vector<std::pair<std::string, Code>> single = {
    {"tree/cycle.launch", Code::CycleInFrameTree},
    {"tree/two_parents.launch", Code::MultipleParentsInFrameTree},
    {"tree/order.launch", Code::IncorrectFrameOrderInTree}};
  for (const auto & [rel, code] : single) {
    TfTree tree;
    const auto d = tree_findings(rel, tree);
    o.require(d.size() == 1 && d[0].code == code,
              rel + " gave " + std::to_string(d.size()) + " findings");
  }
  TfTree robot;
  o.require(tree_findings("tree/robot.launch", robot).empty(), "robot tree is not clean");
  o.require(robot.edge_count() == 12 && robot.frames().size() == 13, "robot tree is not 12 edges");
  int reachable = 0;
  for (const auto & a : robot.frames()) {
    for (const auto & b : robot.frames()) {
      reachable += a != b && robot.reachable(a, b);
    }
  }
  o.require(reachable == 156, std::to_string(reachable) + "/156 reachable pairs");
  return o;
}

Outcome launch_snippet()
{
  Outcome o;
  const auto parsed = parse_launch_file(fixture("launch/gripper.launch"), "gripper.launch");
  o.require(parsed.diagnostics.empty() && parsed.records.size() == 1, "snippet did not parse");
  if (!o.ok) {
    return o;
  }
  const auto & r = parsed.records[0];
  const auto * e = std::get_if<EulerAngles>(&r.rotation);
  o.require(r.x == 0.536 && r.y == 0 && r.z == 1, "displacement fields differ");
  o.require(e && e->yaw == 1.5708 && e->pitch == 3.14159 && e->roll == 0, "Euler fields differ");
  o.require(r.parent == "base_link" && r.child == "openni_depth_optical_frame", "frame ids differ");
  o.require(r.period_ms == 100.0, "period differs");

  // numeric Rz(yaw) Ry(pitch) Rx(roll), snapped entry by entry
  const double cy = std::cos(1.5708), sy = std::sin(1.5708);
  const double cp = std::cos(3.14159), sp = std::sin(3.14159);
  const double m[3][3] = {{cy * cp, -sy, cy * sp}, {sy * cp, cy, sy * sp}, {-sp, 0, cp}};
  Eigen::Matrix3i snapped;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      o.require(std::abs(m[i][j] - std::round(m[i][j])) < 1e-3, "oracle entry not near an integer");
      snapped(i, j) = static_cast<int>(std::round(m[i][j]));
    }
  }
  const Rotation rot = r.snapped_rotation(1e-3);
  o.require(!rot.is_top(), "rotation snapped to Top");
  o.require(!rot.is_top() && matrix_of(rot) == snapped, "snapped triple " + to_string(rot) +
                                                         " disagrees with the oracle");
  return o;
}

Outcome taxonomy()
{
  Outcome o;
  int projects = 0;
  std::vector<fs::path> dirs;
  for (const auto & entry : fs::directory_iterator(fixture("taxonomy"))) {
    dirs.push_back(entry.path());
  }
  std::sort(dirs.begin(), dirs.end());
  std::set<Code> covered;
  for (const auto & dir : dirs) {
    const std::string name = dir.filename().string();
    const auto code = code_from_name(name);
    o.require(code.has_value(), name + " is not a finding code");
    if (!code) {
      continue;
    }
    ++projects;
    std::vector<ConventionRule> rules;
    AnalysisOptions opts;
    if (fs::exists(dir / "rules.json")) {
      for (auto & r : rules_from_json(read_file(dir / "rules.json"))) {
        if (r.z > 1.0) {
          rules.push_back(r);
        }
      }
      opts.rules = &rules;
    }
    const auto report = analyze_project(dir, discover_groups(dir), opts);
    const int hits = count_code(report.diagnostics, *code);
    int other_errors = 0;
    for (const auto & d : report.diagnostics) {
      other_errors += d.code != *code && d.severity == Severity::Error;
    }
    o.require(hits == 1, name + " reported " + std::to_string(hits) + " times");
    o.require(other_errors == 0, name + " has other error findings");
    covered.insert(*code);
  }
  o.require(projects == 16 && covered.size() == 16,
            std::to_string(covered.size()) + " of 16 codes covered");
  return o;
}

Outcome miner()
{
  Outcome o;
  const TransformDb db = build_transform_db(fixture("miner/corpus"));
  o.require(db.projects.size() == 10, "corpus does not hold 10 mature projects");
  const double z = z_score(10, 10);
  o.require(std::abs(z - 1.0541) < 1e-3, "z(10,10) = " + std::to_string(z));

  auto world_map = [](const std::vector<ConventionRule> & rules) {
    return std::find_if(rules.begin(), rules.end(), [](const ConventionRule & r) {
      return r.kind == RuleKind::NullRotBySig && r.sig == Signature{"world", "map"};
    });
  };
  const auto at1 = mine_conventions(db, 1.0);
  const auto hit = world_map(at1);
  o.require(hit != at1.end() && hit->n == 10 && hit->e == 10 && std::abs(hit->z - 1.0541) < 1e-3,
            "(world, map) rule missing at threshold 1");
  const auto at2 = mine_conventions(db, 2.0);
  o.require(world_map(at2) == at2.end(), "(world, map) rule present at threshold 2");

  const auto subject = parse_launch_file(fixture("miner/subject/robot.launch"), "robot.launch");
  std::vector<std::size_t> counts;
  for (double t : {1.0, 2.0, 5.0, 10.0}) {
    counts.push_back(check_convention_violations(subject.records, {}, mine_conventions(db, t)).size());
  }
  o.require(counts[0] > 0, "no warnings at threshold 1");
  for (std::size_t i = 1; i < counts.size(); ++i) {
    o.require(counts[i] <= counts[i - 1], "warning count increases with the threshold");
  }
  return o;
}

std::string full_suite_json(bool parallel)
{
  std::vector<fs::path> dirs = {fixture("project/clean"), fixture("project/grouped"),
                                fixture("motivating"),    fixture("tree"),
                                fixture("launch"),        fixture("miner/subject")};
  std::vector<fs::path> taxa;
  for (const auto & entry : fs::directory_iterator(fixture("taxonomy"))) {
    taxa.push_back(entry.path());
  }
  std::sort(taxa.begin(), taxa.end());
  dirs.insert(dirs.end(), taxa.begin(), taxa.end());
  std::string out;
  for (const auto & dir : dirs) {
    out += emit_json_document(analyze_project(dir, discover_groups(dir), {}, parallel).diagnostics);
  }
  return out;
}

Outcome determinism()
{
  Outcome o;
  const std::string serial = full_suite_json(false);
  const std::string parallel = full_suite_json(true);
  const std::string again = full_suite_json(true);
  o.require(serial == parallel, "serial and parallel reports differ");
  o.require(parallel == again, "two parallel runs differ");
  o.require(serial.find("\"findings\": [\n") != std::string::npos, "suite produced no findings");
  return o;
}

}  // namespace

int main()
{
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
    {"AC1 motivating example trace", motivating_trace},
    {"AC2 rotation algebra oracle", rotation_oracle},
    {"AC3 tf tree fixtures", tree_fixtures},
    {"AC4 launch snippet parse and snap", launch_snippet},
    {"AC5 diagnostic taxonomy coverage", taxonomy},
    {"AC6 miner z-score and thresholds", miner},
    {"AC7 deterministic reports", determinism},
  };
  int failures = 0;
  for (const auto & [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception & e) {
      o.ok = false;
      o.why = std::string("exception: ") + e.what();
    }
    std::cout << (o.ok ? "PASS " : "FAIL ") << name;
    if (!o.ok) {
      std::cout << ": " << o.why;
      ++failures;
    }
    std::cout << "\n";
  }
  return failures == 0 ? 0 : 1;
}
