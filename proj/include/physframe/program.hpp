// program.hpp - AST of the frame-aware statement language
//
// Concrete syntax, one statement per line (or separated by ';'), '#' comments:
//
//   x := 0.5                    x := [1, 2, 3]           x := y
//   x := y + z                  x := y[1]
//   fx := stamped("map", x)     fx.id := "map"           x := get_data(fx)
//   fx := external()            fx := transform_to("map", fy)
//   tx := new_transform("child", "parent", x, y, z, rx)
//   sendTransform(tx)           tx := lookupTransform("parent", "child")
//   fx := apply_transform(tx, fy)
//   rx := [[1,0,0],[0,0,-1],[0,1,0]]    rx := rotation(x)    rx := ry @ rz
//   publish("topic", fx)
#pragma once

#include <Eigen/Core>

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "physframe/diagnostic.hpp"

namespace physframe
{

/// A variable reference or a numeric literal.
struct Operand
{
  std::variant<std::string, double> value;

  [[nodiscard]] bool is_var() const { return std::holds_alternative<std::string>(value); }
  [[nodiscard]] const std::string & var() const { return std::get<std::string>(value); }
  std::string & var() { return std::get<std::string>(value); }
  [[nodiscard]] double literal() const { return std::get<double>(value); }

  friend bool operator==(const Operand &, const Operand &) = default;
};

namespace stmt
{

// x := v  (scalar when the vector has one element)
struct Assign
{
  std::string target;
  std::vector<double> value;
  friend bool operator==(const Assign &, const Assign &) = default;
};

// x := y; also covers stamped and rotation copies
struct Copy
{
  std::string target;
  std::string source;
  friend bool operator==(const Copy &, const Copy &) = default;
};

struct BinOp
{
  std::string target;
  Operand lhs;
  char op = '+';
  Operand rhs;
  friend bool operator==(const BinOp &, const BinOp &) = default;
};

// x := y[k]
struct Element
{
  std::string target;
  std::string source;
  int index = 0;
  friend bool operator==(const Element &, const Element &) = default;
};

struct Stamped
{
  std::string target;
  std::string frame;
  std::string source;
  friend bool operator==(const Stamped &, const Stamped &) = default;
};

// fx.id := s
struct SetId
{
  std::string target;
  std::string frame;
  friend bool operator==(const SetId &, const SetId &) = default;
};

struct GetData
{
  std::string target;
  std::string source;
  friend bool operator==(const GetData &, const GetData &) = default;
};

struct External
{
  std::string target;
  friend bool operator==(const External &, const External &) = default;
};

struct TransformTo
{
  std::string target;
  std::string frame;
  std::string source;
  friend bool operator==(const TransformTo &, const TransformTo &) = default;
};

struct NewTransform
{
  std::string target;
  std::string child;
  std::string parent;
  std::array<Operand, 3> offset;
  std::string rotation;
  friend bool operator==(const NewTransform &, const NewTransform &) = default;
};

struct SendTransform
{
  std::string transform;
  friend bool operator==(const SendTransform &, const SendTransform &) = default;
};

struct LookupTransform
{
  std::string target;
  std::string parent;
  std::string child;
  friend bool operator==(const LookupTransform &, const LookupTransform &) = default;
};

struct ApplyTransform
{
  std::string target;
  std::string transform;
  std::string source;
  friend bool operator==(const ApplyTransform &, const ApplyTransform &) = default;
};

// rx := [[...],[...],[...]]
struct RotConst
{
  std::string target;
  Eigen::Matrix3d value;
  friend bool operator==(const RotConst & a, const RotConst & b)
  {
    return a.target == b.target && a.value == b.value;
  }
};

// rx := rotation(x)
struct RotDyn
{
  std::string target;
  std::string source;
  friend bool operator==(const RotDyn &, const RotDyn &) = default;
};

// rx := ry @ rz
struct RotCompose
{
  std::string target;
  std::string first;
  std::string second;
  friend bool operator==(const RotCompose &, const RotCompose &) = default;
};

struct Publish
{
  std::string topic;
  std::string source;
  friend bool operator==(const Publish &, const Publish &) = default;
};

}  // namespace stmt

using StatementNode = std::variant<
  stmt::Assign, stmt::Copy, stmt::BinOp, stmt::Element, stmt::Stamped, stmt::SetId, stmt::GetData,
  stmt::External, stmt::TransformTo, stmt::NewTransform, stmt::SendTransform,
  stmt::LookupTransform, stmt::ApplyTransform, stmt::RotConst, stmt::RotDyn, stmt::RotCompose,
  stmt::Publish>;

struct Statement
{
  StatementNode node;
  SourceLoc loc;

  friend bool operator==(const Statement & a, const Statement & b) { return a.node == b.node; }
};

struct Program
{
  std::string file;
  std::vector<Statement> statements;
};

/// Program whose variables are renamed to "name#k" (k-th definition of name).
/// Uses with no prior definition refer to "name#0".
struct VersionedProgram
{
  Program program;
};

class ParseError : public std::runtime_error
{
public:
  ParseError(const std::string & message, SourceLoc loc)
  : std::runtime_error(loc.file + ":" + std::to_string(loc.line) + ":" +
                       std::to_string(loc.column) + ": " + message),
    loc_(std::move(loc)),
    detail_(message)
  {
  }

  [[nodiscard]] const SourceLoc & loc() const { return loc_; }
  /// The message without the location prefix.
  [[nodiscard]] const std::string & detail() const { return detail_; }

private:
  SourceLoc loc_;
  std::string detail_;
};

/// Throws ParseError with line and column on malformed input.
Program parse_program(std::string_view text, std::string file = "<input>");

/// Canonical source text; parse_program(to_source(p)) reproduces p.
std::string to_source(const Program & p);

VersionedProgram version_variables(const Program & p);
Program strip_versions(const VersionedProgram & vp);

std::string versioned_name(std::string_view base, int version);
std::string_view base_name(std::string_view versioned);

/// The variable a statement defines, if any (SetId refines and returns null).
const std::string * defined_variable(const StatementNode & node);

}  // namespace physframe
