// tf_tree.cpp
#include "physframe/tf_tree.hpp"

#include <sstream>

namespace physframe
{

std::string normalize_frame_id(std::string_view id)
{
  if (!id.empty() && id.front() == '/') {
    id.remove_prefix(1);
  }
  return std::string(id);
}

std::optional<Diagnostic> TfTree::add_edge(
  std::string_view parent_raw, std::string_view child_raw, const SourceLoc & loc)
{
  const std::string parent = normalize_frame_id(parent_raw);
  const std::string child = normalize_frame_id(child_raw);
  const std::string edge = parent + "->" + child;

  if (const auto it = parent_.find(child); it != parent_.end()) {
    if (it->second.parent == parent) {
      return std::nullopt;
    }
    return make_diagnostic(
      Code::MultipleParentsInFrameTree, loc,
      "frame '" + child + "' already has parent '" + it->second.parent + "', cannot add parent '" +
        parent + "'",
      edge);
  }
  if (parent == child || is_ancestor(child, parent)) {
    return make_diagnostic(
      Code::CycleInFrameTree, loc,
      "transform " + edge + " closes a cycle in the frame tree", edge);
  }
  frames_.insert(parent);
  frames_.insert(child);
  parent_.emplace(child, Edge{parent, loc});
  return std::nullopt;
}

bool TfTree::contains(std::string_view id) const
{
  return frames_.find(normalize_frame_id(id)) != frames_.end();
}

std::optional<std::string> TfTree::parent_of(std::string_view id) const
{
  const auto it = parent_.find(normalize_frame_id(id));
  if (it == parent_.end()) {
    return std::nullopt;
  }
  return it->second.parent;
}

std::string TfTree::root_of(std::string_view id) const
{
  std::string cur = normalize_frame_id(id);
  // bounded walk; the shape checks keep the parent map acyclic
  for (std::size_t steps = 0; steps <= parent_.size(); ++steps) {
    const auto it = parent_.find(cur);
    if (it == parent_.end()) {
      break;
    }
    cur = it->second.parent;
  }
  return cur;
}

bool TfTree::is_ancestor(std::string_view ancestor_raw, std::string_view id) const
{
  const std::string ancestor = normalize_frame_id(ancestor_raw);
  std::string cur = normalize_frame_id(id);
  for (std::size_t steps = 0; steps <= parent_.size(); ++steps) {
    const auto it = parent_.find(cur);
    if (it == parent_.end()) {
      return false;
    }
    cur = it->second.parent;
    if (cur == ancestor) {
      return true;
    }
  }
  return false;
}

bool TfTree::reachable(std::string_view a, std::string_view b) const
{
  return contains(a) && contains(b) && root_of(a) == root_of(b);
}

bool TfTree::is_forest() const
{
  if (!frames_.empty() && parent_.size() >= frames_.size()) {
    return false;
  }
  for (const auto & [child, edge] : parent_) {
    if (!contains(child) || !contains(edge.parent)) {
      return false;
    }
    // walking up from any frame must terminate at a root
    std::string cur = child;
    std::size_t steps = 0;
    while (true) {
      const auto it = parent_.find(cur);
      if (it == parent_.end()) {
        break;
      }
      cur = it->second.parent;
      if (++steps > parent_.size()) {
        return false;
      }
    }
  }
  return true;
}

std::string TfTree::to_dot(std::string_view name) const
{
  std::ostringstream out;
  out << "digraph \"" << name << "\" {\n";
  for (const auto & f : frames_) {
    out << "  \"" << f << "\";\n";
  }
  for (const auto & [child, edge] : parent_) {
    out << "  \"" << edge.parent << "\" -> \"" << child << "\";\n";
  }
  out << "}\n";
  return out.str();
}

std::vector<Diagnostic> check_order_conventions(
  const TfTree & tree, const std::vector<std::string> & chain)
{
  std::vector<Diagnostic> out;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    for (std::size_t j = i + 1; j < chain.size(); ++j) {
      const std::string & u = chain[i];
      const std::string & v = chain[j];
      if (!tree.reachable(u, v) || !tree.is_ancestor(v, u)) {
        continue;
      }
      const auto it = tree.edges().find(u);
      const SourceLoc loc = it != tree.edges().end() ? it->second.loc : SourceLoc{};
      out.push_back(make_diagnostic(
        Code::IncorrectFrameOrderInTree, loc,
        "'" + u + "' must be an ancestor of '" + v + "' but is its descendant",
        it != tree.edges().end() ? it->second.parent + "->" + u : u));
    }
  }
  return out;
}

}  // namespace physframe
