// ssa.cpp - Single-assignment renaming of program variables
#include <map>

#include "physframe/program.hpp"

namespace physframe
{

namespace
{

template <typename F>
void for_each_use(StatementNode & node, F && f)
{
  auto op = [&](Operand & o) {
    if (o.is_var()) {
      f(o.var());
    }
  };
  std::visit(
    [&](auto & s) {
      using T = std::decay_t<decltype(s)>;
      if constexpr (std::is_same_v<T, stmt::Copy> || std::is_same_v<T, stmt::Element> ||
                    std::is_same_v<T, stmt::Stamped> || std::is_same_v<T, stmt::GetData> ||
                    std::is_same_v<T, stmt::TransformTo> || std::is_same_v<T, stmt::RotDyn> ||
                    std::is_same_v<T, stmt::Publish>) {
        f(s.source);
      } else if constexpr (std::is_same_v<T, stmt::BinOp>) {
        op(s.lhs);
        op(s.rhs);
      } else if constexpr (std::is_same_v<T, stmt::NewTransform>) {
        for (auto & o : s.offset) {
          op(o);
        }
        f(s.rotation);
      } else if constexpr (std::is_same_v<T, stmt::SendTransform>) {
        f(s.transform);
      } else if constexpr (std::is_same_v<T, stmt::ApplyTransform>) {
        f(s.transform);
        f(s.source);
      } else if constexpr (std::is_same_v<T, stmt::RotCompose>) {
        f(s.first);
        f(s.second);
      }
    },
    node);
}

std::string * target_of(StatementNode & node)
{
  return const_cast<std::string *>(defined_variable(node));
}

}  // namespace

std::string versioned_name(std::string_view base, int version)
{
  return std::string(base) + "#" + std::to_string(version);
}

std::string_view base_name(std::string_view versioned)
{
  return versioned.substr(0, versioned.find('#'));
}

const std::string * defined_variable(const StatementNode & node)
{
  return std::visit(
    [](const auto & s) -> const std::string * {
      using T = std::decay_t<decltype(s)>;
      if constexpr (std::is_same_v<T, stmt::SetId> || std::is_same_v<T, stmt::SendTransform> ||
                    std::is_same_v<T, stmt::Publish>) {
        return nullptr;
      } else {
        return &s.target;
      }
    },
    node);
}

VersionedProgram version_variables(const Program & p)
{
  VersionedProgram out{p};
  std::map<std::string, int, std::less<>> current;
  auto use = [&](std::string & name) {
    const auto it = current.find(name);
    name = versioned_name(name, it == current.end() ? 0 : it->second);
  };
  for (auto & s : out.program.statements) {
    if (auto * set = std::get_if<stmt::SetId>(&s.node)) {
      // refines the live version; a first mention creates it
      auto [it, inserted] = current.try_emplace(set->target, 1);
      set->target = versioned_name(set->target, it->second);
      continue;
    }
    for_each_use(s.node, use);
    if (std::string * target = target_of(s.node)) {
      int & v = current[*target];
      ++v;
      *target = versioned_name(*target, v);
    }
  }
  return out;
}

Program strip_versions(const VersionedProgram & vp)
{
  Program out = vp.program;
  auto strip = [](std::string & name) { name = std::string(base_name(name)); };
  for (auto & s : out.statements) {
    if (auto * set = std::get_if<stmt::SetId>(&s.node)) {
      strip(set->target);
      continue;
    }
    for_each_use(s.node, strip);
    if (std::string * target = target_of(s.node)) {
      strip(*target);
    }
  }
  return out;
}

}  // namespace physframe
