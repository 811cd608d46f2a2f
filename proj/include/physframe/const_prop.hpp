// const_prop.hpp - Constant propagation over versioned programs
#pragma once

#include <Eigen/Core>

#include <map>
#include <string>
#include <variant>

#include "physframe/frame_algebra.hpp"
#include "physframe/program.hpp"

namespace physframe
{

struct ConstTop
{
  friend bool operator==(ConstTop, ConstTop) { return true; }
};

using ConstValue = std::variant<ConstTop, double, Eigen::Vector3d, Eigen::Matrix3d>;

bool is_top(const ConstValue & v);
/// Equal constants join to themselves; anything else joins to Top.
ConstValue join(const ConstValue & a, const ConstValue & b);

/// Versioned variable -> constant. Absent entries read as Top.
class ConstEnv
{
public:
  [[nodiscard]] ConstValue lookup(const std::string & var) const;
  void bind(const std::string & var, ConstValue v);
  [[nodiscard]] std::size_t size() const { return values_.size(); }

  friend bool operator==(const ConstEnv & a, const ConstEnv & b);

private:
  std::map<std::string, ConstValue, std::less<>> values_;
};

/// Single forward pass. Literals bind; copies, element reads, stamping and
/// get_data carry values; +, -, *, / fold over scalars. Everything else is Top.
ConstEnv propagate_constants(const VersionedProgram & p);

/// Static scalar value of a variable, Top otherwise.
Displacement disp(const std::string & var, const ConstEnv & env);
Displacement disp(const Operand & o, const ConstEnv & env);

}  // namespace physframe
