// type_checker.hpp - Frame, transform and rotation typing of versioned programs
#pragma once

#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "physframe/const_prop.hpp"
#include "physframe/conventions.hpp"
#include "physframe/diagnostic.hpp"
#include "physframe/frame_algebra.hpp"
#include "physframe/program.hpp"
#include "physframe/tf_tree.hpp"

namespace physframe
{

/// Frame of a value produced by code outside the analysis. Matches any frame.
struct ExternalFrame
{
  friend bool operator==(ExternalFrame, ExternalFrame) { return true; }
};

/// monostate marks a free (untyped) variable.
using VarType = std::variant<std::monostate, ExternalFrame, FrameType, TransformType, Rotation>;

std::string to_string(const VarType & t);

class TypeEnv
{
public:
  /// Free when unbound.
  [[nodiscard]] VarType type_of(const std::string & var) const;
  [[nodiscard]] bool is_bound(const std::string & var) const;
  /// First binding wins; returns false when `var` was already bound.
  bool bind(const std::string & var, VarType t);
  /// Overwrites; used by explicit frame-id refinement.
  void refine(const std::string & var, VarType t);

  /// Frames introduced by created transforms, keyed by id (first wins).
  std::map<std::string, FrameType, std::less<>> frames;

  [[nodiscard]] const std::map<std::string, VarType, std::less<>> & bindings() const
  {
    return vars_;
  }

private:
  std::map<std::string, VarType, std::less<>> vars_;
};

/// A transform created in code, kept for convention-violation checks.
struct CodeTransform
{
  std::string name;
  TransformType type;
  SourceLoc loc;
};

/// Everything a single statement check may need.
struct CheckContext
{
  TypeEnv & env;
  TfTree & tree;
  const ConventionTable & conv;
  const ConstEnv & consts;
  std::vector<Diagnostic> & diagnostics;
};

/// Reachability premise resolved once the whole group has published its edges.
struct ReachabilityObligation
{
  std::string from;
  std::string to;
  SourceLoc loc;
};

void check_transform_creation(
  const stmt::NewTransform & s, const SourceLoc & loc, CheckContext & ctx);
void check_transform_publish(
  const stmt::SendTransform & s, const SourceLoc & loc, CheckContext & ctx);
void check_lookup(
  const stmt::LookupTransform & s, const SourceLoc & loc, CheckContext & ctx,
  std::vector<ReachabilityObligation> & pending);
void check_apply(const stmt::ApplyTransform & s, const SourceLoc & loc, CheckContext & ctx);
void check_stamped_publish(const stmt::Publish & s, const SourceLoc & loc, CheckContext & ctx);

/// Types one file after another against a shared tree. Reachability
/// premises are checked in finish(), after every file has published.
class TypeChecker
{
public:
  TypeChecker(TfTree & tree, ConventionTable conv) : tree_(tree), conv_(std::move(conv)) {}

  TypeEnv check(const VersionedProgram & p, const ConstEnv & consts);
  /// Resolves pending reachability checks and returns every diagnostic so far.
  std::vector<Diagnostic> finish();

  [[nodiscard]] const std::vector<CodeTransform> & transforms() const { return transforms_; }

private:
  TfTree & tree_;
  ConventionTable conv_;
  std::vector<Diagnostic> diagnostics_;
  std::vector<ReachabilityObligation> pending_;
  std::vector<CodeTransform> transforms_;
};

struct TypeResult
{
  TypeEnv env;
  std::vector<Diagnostic> diagnostics;
};

/// Single-file convenience over TypeChecker.
TypeResult infer_types(
  const VersionedProgram & p, const ConstEnv & consts, TfTree & tree,
  const ConventionTable & conv = {});

}  // namespace physframe
