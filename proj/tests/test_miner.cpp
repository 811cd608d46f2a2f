#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>
#include <set>

#include "physframe/miner.hpp"
#include "test_support.hpp"

using namespace physframe;
using namespace testing_support;
namespace fs = std::filesystem;

namespace
{

const std::vector<double> kThresholds = {1, 2, 5, 10};

TransformDb corpus_db() { return build_transform_db(fixture("miner/corpus")); }

StaticTransformRecord record(
  const std::string & name, const std::string & parent, const std::string & child, double x,
  double yaw)
{
  StaticTransformRecord r;
  r.name = name;
  r.parent = parent;
  r.child = child;
  r.x = x;
  r.rotation = EulerAngles{yaw, 0, 0};
  return r;
}

// Straight from the definitions: one project counts for a key when the key
// appears there, and supports the conclusion when every occurrence does.
std::vector<ConventionRule> mine_oracle(const TransformDb & db, double threshold, double p0)
{
  struct Hit
  {
    std::set<std::string> seen, disp_ok, rot_ok, disp_bad, rot_bad;
  };
  std::map<Signature, Hit> sigs;
  std::map<std::string, Hit> names;
  for (const auto & row : db.rows) {
    const auto & r = row.record;
    const bool dz = std::abs(r.x) < 1e-9 && std::abs(r.y) < 1e-9 && std::abs(r.z) < 1e-9;
    bool rz = false;
    if (const auto * e = std::get_if<EulerAngles>(&r.rotation)) {
      rz = std::abs(e->yaw) < 1e-9 && std::abs(e->pitch) < 1e-9 && std::abs(e->roll) < 1e-9;
    } else {
      const auto & q = std::get<Quaternion>(r.rotation);
      rz = std::abs(q.qx) < 1e-9 && std::abs(q.qy) < 1e-9 && std::abs(q.qz) < 1e-9;
    }
    for (Hit * h : {&sigs[{r.parent, r.child}], r.name.empty() ? nullptr : &names[r.name]}) {
      if (!h) {
        continue;
      }
      h->seen.insert(row.project);
      (dz ? h->disp_ok : h->disp_bad).insert(row.project);
      (rz ? h->rot_ok : h->rot_bad).insert(row.project);
    }
  }
  auto supported = [](const std::set<std::string> & ok, const std::set<std::string> & bad) {
    int e = 0;
    for (const auto & p : ok) {
      e += bad.count(p) == 0;
    }
    return e;
  };
  std::vector<ConventionRule> out;
  auto consider = [&](ConventionRule r) {
    r.z = (static_cast<double>(r.e) / r.n - p0) / std::sqrt(p0 * (1 - p0) / r.n);
    if (r.z > threshold) {
      out.push_back(r);
    }
  };
  for (const auto & [a, ha] : sigs) {
    for (const auto & [b, hb] : sigs) {
      if (a == b) {
        continue;
      }
      int e = 0;
      for (const auto & p : ha.seen) {
        e += hb.seen.count(p);
      }
      consider({RuleKind::CoOccurrence, a, {}, b, static_cast<int>(ha.seen.size()), e, 0});
    }
  }
  for (const auto & [s, h] : sigs) {
    consider({RuleKind::NullDispBySig, s, {}, {}, static_cast<int>(h.seen.size()),
              supported(h.disp_ok, h.disp_bad), 0});
  }
  for (const auto & [s, h] : sigs) {
    consider({RuleKind::NullRotBySig, s, {}, {}, static_cast<int>(h.seen.size()),
              supported(h.rot_ok, h.rot_bad), 0});
  }
  for (const auto & [n, h] : names) {
    consider({RuleKind::NullDispByName, {}, n, {}, static_cast<int>(h.seen.size()),
              supported(h.disp_ok, h.disp_bad), 0});
  }
  for (const auto & [n, h] : names) {
    consider({RuleKind::NullRotByName, {}, n, {}, static_cast<int>(h.seen.size()),
              supported(h.rot_ok, h.rot_bad), 0});
  }
  return out;
}

void expect_same_rules(const std::vector<ConventionRule> & a, const std::vector<ConventionRule> & b)
{
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].kind, b[i].kind);
    EXPECT_EQ(a[i].sig, b[i].sig);
    EXPECT_EQ(a[i].name, b[i].name);
    EXPECT_EQ(a[i].implied, b[i].implied);
    EXPECT_EQ(a[i].n, b[i].n);
    EXPECT_EQ(a[i].e, b[i].e);
    EXPECT_NEAR(a[i].z, b[i].z, 1e-12);
  }
}

// Large in-memory corpus with conventions of varying strength.
TransformDb synthetic_db(unsigned seed, int projects)
{
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(0, 1);
  TransformDb db;
  for (int p = 0; p < projects; ++p) {
    const std::string proj = "p" + std::to_string(p);
    db.projects.push_back(proj);
    auto add = [&](StaticTransformRecord r) { db.rows.push_back({proj, "a.launch", std::move(r)}); };
    add(record("world_map", "world", "map", u(rng) < 0.999 ? 0 : 1, u(rng) < 0.995 ? 0 : 0.2));
    if (u(rng) < 0.98) {
      add(record("left", "base_link", "left_wheel", 0.1, u(rng) < 0.96 ? 0 : 0.1));
      if (u(rng) < 0.97) {
        add(record("right", "base_link", "right_wheel", 0.1, 0));
      }
    }
    if (u(rng) < 0.5) {
      add(record("laser_mount", "base_link", "laser", u(rng) < 0.5 ? 0 : 0.2, 0));
    }
  }
  return db;
}

}  // namespace

TEST(ZScore, KnownValues)
{
  EXPECT_DOUBLE_EQ(z_score(10, 9), 0.0);
  EXPECT_NEAR(z_score(10, 10), 1.0541, 1e-4);
  EXPECT_NEAR(z_score(100, 90), 0.0, 1e-12);
  EXPECT_NEAR(z_score(100, 100), 10.0 / 3.0, 1e-12);
  EXPECT_NEAR(z_score(4, 2, 0.5), 0.0, 1e-12);
  EXPECT_THROW((void)z_score(0, 0), std::invalid_argument);
  EXPECT_THROW((void)z_score(5, 6), std::invalid_argument);
  EXPECT_THROW((void)z_score(5, -1), std::invalid_argument);
  EXPECT_THROW((void)z_score(5, 5, 1.0), std::invalid_argument);
  EXPECT_THROW((void)z_score(5, 5, 0.0), std::invalid_argument);
}

TEST(ZScore, IncreasesWithSupport)
{
  for (int n = 1; n <= 50; ++n) {
    for (int e = 1; e <= n; ++e) {
      ASSERT_GT(z_score(n, e), z_score(n, e - 1));
    }
    // full support scores exactly sqrt(n) / 3
    ASSERT_NEAR(z_score(n, n), std::sqrt(n) / 3.0, 1e-9);
  }
}

TEST(TransformDb, CorpusScan)
{
  const TransformDb db = corpus_db();
  EXPECT_EQ(db.projects.size(), 10U);
  for (const auto & p : db.projects) {
    EXPECT_NE(p, "proj_immature");
  }
  EXPECT_TRUE(db.notes.empty());
  // 3 robot transforms everywhere, 1 depth transform, laser in proj01..05;
  // proj03's copied camera file counts once
  EXPECT_EQ(db.rows.size(), 45U);
  int proj03 = 0;
  for (const auto & r : db.rows) {
    proj03 += r.project == "proj03";
  }
  EXPECT_EQ(proj03, 5);
}

TEST(TransformDb, MissingAndEmptyCorpus)
{
  EXPECT_THROW((void)build_transform_db(fixture("miner/does_not_exist")), std::runtime_error);
  const fs::path empty = fs::temp_directory_path() / "physframe_empty_corpus";
  fs::remove_all(empty);
  fs::create_directories(empty);
  const TransformDb db = build_transform_db(empty);
  EXPECT_TRUE(db.rows.empty());
  EXPECT_TRUE(db.projects.empty());
  EXPECT_TRUE(mine_conventions(db, 0).empty());
  EXPECT_THROW((void)mine_conventions(db, 0, 1.0), std::invalid_argument);
  fs::remove_all(empty);
}

TEST(TransformDb, MalformedFilesBecomeNotes)
{
  const fs::path dir = fs::temp_directory_path() / "physframe_note_corpus";
  fs::remove_all(dir);
  fs::create_directories(dir / "a");
  std::ofstream(dir / "a" / "bad.launch") << "<launch><node";
  std::ofstream(dir / "a" / "ok.launch")
    << "<launch><node pkg=\"tf\" type=\"static_transform_publisher\" name=\"n\" "
       "args=\"0 0 0 0 0 0 p c 10\"/></launch>";
  const TransformDb db = build_transform_db(dir);
  EXPECT_EQ(db.rows.size(), 1U);
  ASSERT_EQ(db.notes.size(), 1U);
  EXPECT_NE(db.notes[0].find("bad.launch"), std::string::npos);
  fs::remove_all(dir);
}

TEST(Mining, WorldMapRuleAppearsOnlyBelowItsScore)
{
  const TransformDb db = corpus_db();
  const auto at1 = mine_conventions(db, 1.0);
  const auto found = std::find_if(at1.begin(), at1.end(), [](const ConventionRule & r) {
    return r.kind == RuleKind::NullRotBySig && r.sig == Signature{"world", "map"};
  });
  ASSERT_NE(found, at1.end());
  EXPECT_EQ(found->n, 10);
  EXPECT_EQ(found->e, 10);
  EXPECT_NEAR(found->z, 1.0541, 1e-4);
  EXPECT_TRUE(mine_conventions(db, 2.0).empty());
}

TEST(Mining, CoOccurrenceOfWheels)
{
  const auto rules = mine_conventions(corpus_db(), 1.0);
  const ConventionRule * wheels = nullptr;
  for (const auto & r : rules) {
    if (r.kind == RuleKind::CoOccurrence && r.sig == Signature{"base_link", "left_wheel"} &&
        r.implied == Signature{"base_link", "right_wheel"}) {
      wheels = &r;
    }
    // the laser only appears in half the projects
    EXPECT_NE(r.sig, (Signature{"base_link", "laser"}));
    EXPECT_NE(r.implied, (Signature{"base_link", "laser"}));
  }
  ASSERT_NE(wheels, nullptr);
  EXPECT_EQ(wheels->n, 10);
  EXPECT_EQ(wheels->e, 10);
}

TEST(Mining, MatchesBruteForceOnCorpus)
{
  const TransformDb db = corpus_db();
  for (double t : {-10.0, -1.0, 0.0, 0.5, 1.0, 2.0}) {
    expect_same_rules(mine_conventions(db, t), mine_oracle(db, t, kDefaultP0));
  }
  expect_same_rules(mine_conventions(db, 0.0, 0.6), mine_oracle(db, 0.0, 0.6));
}

TEST(Mining, MatchesBruteForceOnSyntheticCorpora)
{
  for (unsigned seed = 1; seed <= 5; ++seed) {
    const TransformDb db = synthetic_db(seed, 40 + 200 * seed);
    for (double t : kThresholds) {
      expect_same_rules(mine_conventions(db, t), mine_oracle(db, t, kDefaultP0));
    }
  }
}

// Raising the threshold only ever removes rules, and so only removes findings.
TEST(Mining, ThresholdMonotonicity)
{
  const TransformDb db = synthetic_db(11, 600);
  const std::vector<StaticTransformRecord> subject = {
    record("world_map", "world", "map", 0.5, 0.3), record("left", "base_link", "left_wheel", 0.1, 0.2),
    record("laser_mount", "base_link", "laser", 0.2, 0)};
  std::vector<ConventionRule> previous;
  std::size_t previous_findings = 0;
  bool first = true;
  std::vector<std::size_t> counts;
  for (double t : kThresholds) {
    const auto rules = mine_conventions(db, t);
    const auto findings = check_convention_violations(subject, {}, rules);
    counts.push_back(findings.size());
    if (!first) {
      for (const auto & r : rules) {
        EXPECT_NE(std::find(previous.begin(), previous.end(), r), previous.end());
      }
      EXPECT_LE(findings.size(), previous_findings);
    }
    previous = rules;
    previous_findings = findings.size();
    first = false;
  }
  // the corpus is large enough that the strongest rules survive z > 5 but not z > 10
  EXPECT_GT(counts[2], 0U);
  EXPECT_EQ(counts[3], 0U);
  EXPECT_GT(counts[0], counts[2]);
}

TEST(Violations, SubjectAgainstCorpusRules)
{
  const auto rules = mine_conventions(corpus_db(), 1.0);
  const auto parsed = parse_launch_file(fixture("miner/subject/robot.launch"), "robot.launch");
  ASSERT_EQ(parsed.records.size(), 3U);
  const auto d = check_convention_violations(parsed.records, {}, rules);
  EXPECT_EQ(count_code(d, Code::SigNullRotExpected), 1);
  EXPECT_EQ(count_code(d, Code::NameNullRotExpected), 1);
  EXPECT_EQ(count_code(d, Code::SigNullDispExpected), 1);
  EXPECT_EQ(count_code(d, Code::NameNullDispExpected), 1);
  bool wheels = false;
  for (const auto & x : d) {
    if (x.code == Code::NameCoOccurrence) {
      EXPECT_NE(x.context.find("=> base_link->right_wheel"), std::string::npos);
      wheels = wheels || x.context == "base_link->left_wheel => base_link->right_wheel";
    }
    EXPECT_EQ(x.severity, Severity::Warning);
  }
  EXPECT_TRUE(wheels);
  // right_wheel is the only signature the subject lacks
  EXPECT_EQ(count_code(d, Code::NameCoOccurrence), 3);

  for (double t : {2.0, 5.0, 10.0}) {
    EXPECT_TRUE(check_convention_violations(parsed.records, {}, mine_conventions(corpus_db(), t))
                  .empty());
  }
}

TEST(Violations, CodeTransformsUseSignaturesOnly)
{
  const std::vector<ConventionRule> rules = {
    {RuleKind::NullRotBySig, {"world", "map"}, {}, {}, 10, 10, 1.05},
    {RuleKind::NullRotByName, {}, "t", {}, 10, 10, 1.05}};
  TransformType known;
  known.cid = "map";
  known.pid = "world";
  known.rot = Rotation(DirSwitch::Z, DirSwitch::NegX, DirSwitch::NegY);
  TransformType unknown = known;
  unknown.rot = Rotation::top();
  const auto d = check_convention_violations(
    {}, {{"t", known, {"a.pf", 2, 1}}, {"t", unknown, {"a.pf", 4, 1}}}, rules);
  ASSERT_EQ(d.size(), 1U);
  EXPECT_EQ(d[0].code, Code::SigNullRotExpected);
  EXPECT_EQ(d[0].loc.line, 2);
}

TEST(RulesJson, RoundTrip)
{
  const auto rules = mine_conventions(corpus_db(), 0.0);
  ASSERT_FALSE(rules.empty());
  const std::string text = rules_to_json(rules);
  EXPECT_EQ(rules_from_json(text), rules);
  EXPECT_EQ(rules_to_json(rules_from_json(text)), text);
  EXPECT_TRUE(rules_from_json("[]").empty());
}

TEST(RulesJson, RejectsMalformedInput)
{
  for (const char * bad :
       {"", "{}", "[1]", "[{\"kind\":\"x\",\"key\":\"a\",\"n\":1,\"e\":1,\"z\":0}]",
        "[{\"kind\":\"null_rot_by_sig\",\"key\":\"a\",\"n\":1,\"e\":1,\"z\":0}]",
        "[{\"kind\":\"null_rot_by_name\",\"key\":\"a\",\"n\":1,\"e\":2,\"z\":0}]",
        "[{\"kind\":\"null_rot_by_name\",\"key\":\"a\",\"n\":\"1\",\"e\":1,\"z\":0}]",
        "[{\"kind\":\"co_occurrence\",\"key\":[[\"a\",\"b\"]],\"n\":1,\"e\":1,\"z\":0}]"}) {
    EXPECT_THROW((void)rules_from_json(bad), std::runtime_error) << bad;
  }
}
