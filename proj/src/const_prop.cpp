// const_prop.cpp
#include "physframe/const_prop.hpp"

namespace physframe
{

namespace
{

bool same(const ConstValue & a, const ConstValue & b)
{
  if (a.index() != b.index()) {
    return false;
  }
  return std::visit(
    [&](const auto & x) {
      using T = std::decay_t<decltype(x)>;
      return bool(x == std::get<T>(b));
    },
    a);
}

ConstValue operand_value(const Operand & o, const ConstEnv & env)
{
  return o.is_var() ? env.lookup(o.var()) : ConstValue{o.literal()};
}

ConstValue fold(char op, const ConstValue & a, const ConstValue & b)
{
  const auto * x = std::get_if<double>(&a);
  const auto * y = std::get_if<double>(&b);
  if (x == nullptr || y == nullptr) {
    return ConstTop{};
  }
  switch (op) {
    case '+': return *x + *y;
    case '-': return *x - *y;
    case '*': return *x * *y;
    case '/':
      if (*y == 0.0) {
        return ConstTop{};
      }
      return *x / *y;
    default: return ConstTop{};
  }
}

}  // namespace

bool is_top(const ConstValue & v) { return std::holds_alternative<ConstTop>(v); }

ConstValue join(const ConstValue & a, const ConstValue & b)
{
  return same(a, b) ? a : ConstValue{ConstTop{}};
}

ConstValue ConstEnv::lookup(const std::string & var) const
{
  const auto it = values_.find(var);
  return it == values_.end() ? ConstValue{ConstTop{}} : it->second;
}

void ConstEnv::bind(const std::string & var, ConstValue v)
{
  if (is_top(v)) {
    values_.erase(var);
    return;
  }
  values_[var] = std::move(v);
}

bool operator==(const ConstEnv & a, const ConstEnv & b)
{
  if (a.values_.size() != b.values_.size()) {
    return false;
  }
  auto it = b.values_.begin();
  for (const auto & [k, v] : a.values_) {
    if (k != it->first || !same(v, it->second)) {
      return false;
    }
    ++it;
  }
  return true;
}

ConstEnv propagate_constants(const VersionedProgram & p)
{
  ConstEnv env;
  for (const auto & s : p.program.statements) {
    std::visit(
      [&](const auto & st) {
        using T = std::decay_t<decltype(st)>;
        if constexpr (std::is_same_v<T, stmt::Assign>) {
          if (st.value.size() == 1) {
            env.bind(st.target, st.value[0]);
          } else if (st.value.size() == 3) {
            env.bind(st.target, Eigen::Vector3d(st.value[0], st.value[1], st.value[2]));
          }
        } else if constexpr (std::is_same_v<T, stmt::Copy> || std::is_same_v<T, stmt::GetData> ||
                             std::is_same_v<T, stmt::Stamped>) {
          env.bind(st.target, env.lookup(st.source));
        } else if constexpr (std::is_same_v<T, stmt::BinOp>) {
          env.bind(st.target, fold(st.op, operand_value(st.lhs, env), operand_value(st.rhs, env)));
        } else if constexpr (std::is_same_v<T, stmt::Element>) {
          const ConstValue src = env.lookup(st.source);
          if (const auto * v = std::get_if<Eigen::Vector3d>(&src); v && st.index < 3) {
            env.bind(st.target, (*v)(st.index));
          }
        } else if constexpr (std::is_same_v<T, stmt::RotConst>) {
          env.bind(st.target, st.value);
        }
      },
      s.node);
  }
  return env;
}

Displacement disp(const std::string & var, const ConstEnv & env)
{
  const ConstValue v = env.lookup(var);
  if (const auto * d = std::get_if<double>(&v)) {
    return Displacement::of(*d);
  }
  return Displacement::top();
}

Displacement disp(const Operand & o, const ConstEnv & env)
{
  return o.is_var() ? disp(o.var(), env) : Displacement::of(o.literal());
}

}  // namespace physframe
