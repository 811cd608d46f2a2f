// tf_tree.hpp - Forest of frames connected by one-step transforms
#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "physframe/diagnostic.hpp"

namespace physframe
{

/// Case-sensitive id with a single leading '/' removed ("/map" == "map").
std::string normalize_frame_id(std::string_view id);

/// Reserved frames that must appear root-to-leaf in this order.
inline const std::vector<std::string> kReservedFrameOrder = {"earth", "map", "odom", "base_link"};

class TfTree
{
public:
  struct Edge
  {
    std::string parent;
    SourceLoc loc;
    friend bool operator==(const Edge &, const Edge &) = default;
  };

  /// Inserts parent->child when the forest shape survives; otherwise returns
  /// the violation and leaves the tree untouched. Re-adding an identical
  /// edge is a no-op.
  std::optional<Diagnostic> add_edge(
    std::string_view parent, std::string_view child, const SourceLoc & loc);

  [[nodiscard]] bool contains(std::string_view id) const;
  [[nodiscard]] std::optional<std::string> parent_of(std::string_view id) const;
  [[nodiscard]] std::string root_of(std::string_view id) const;
  /// Strict ancestry.
  [[nodiscard]] bool is_ancestor(std::string_view ancestor, std::string_view id) const;
  /// Both ids exist and lie in the same tree of the forest.
  [[nodiscard]] bool reachable(std::string_view a, std::string_view b) const;

  [[nodiscard]] const std::set<std::string, std::less<>> & frames() const { return frames_; }
  [[nodiscard]] const std::map<std::string, Edge, std::less<>> & edges() const { return parent_; }
  [[nodiscard]] std::size_t edge_count() const { return parent_.size(); }

  /// Forest invariant: acyclic, in-degree <= 1, |edges| < |frames| when non-empty.
  [[nodiscard]] bool is_forest() const;

  [[nodiscard]] std::string to_dot(std::string_view name = "tf") const;

  friend bool operator==(const TfTree &, const TfTree &) = default;

private:
  std::set<std::string, std::less<>> frames_;
  // child -> parent edge
  std::map<std::string, Edge, std::less<>> parent_;
};

/// For each ordered pair (u, v) of `chain` present in one tree, u must be a
/// strict ancestor of v. Inverted ancestry is reported at the edge entering u.
/// Incomparable pairs and absent members are not reported.
std::vector<Diagnostic> check_order_conventions(
  const TfTree & tree, const std::vector<std::string> & chain = kReservedFrameOrder);

}  // namespace physframe
