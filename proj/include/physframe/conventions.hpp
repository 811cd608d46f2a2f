// conventions.hpp - Explicit ROS frame conventions
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "physframe/diagnostic.hpp"
#include "physframe/frame_algebra.hpp"
#include "physframe/tf_tree.hpp"

namespace physframe
{

struct ConventionTable
{
  std::string optical_suffix = "_optical";
  OrientationTriple body_axes = flu();
  OrientationTriple optical_axes = rdf();
  std::vector<std::string> tree_order = kReservedFrameOrder;
  /// Case-insensitive substrings marking sensor frames.
  std::vector<std::string> sensor_keywords = {"laser", "lidar", "camera", "kinect", "imu",
                                              "sonar", "radar", "gps",   "velodyne"};

  /// Optical frames (id ending in the optical suffix) are RDF, everything else FLU.
  [[nodiscard]] OrientationTriple expected_axes(std::string_view frame_id) const;
  [[nodiscard]] bool is_sensor_frame(std::string_view frame_id) const;
  /// Name follows "<child>_to_<parent>" or "<parent>_in_<child>".
  [[nodiscard]] bool is_reversed_name(
    std::string_view name, std::string_view parent, std::string_view child) const;
};

/// Orientation check of a one-step transform: rotating the parent's
/// conventional axes by `rot` must give the child's conventional axes.
/// Skipped for empty ids and when either side is not fully known.
std::optional<Diagnostic> check_orientation_convention(
  std::string_view parent, std::string_view child, const Rotation & rot,
  const ConventionTable & conv, const SourceLoc & loc);

}  // namespace physframe
