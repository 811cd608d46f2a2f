// launch.hpp - Static transform declarations in launch files
#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "physframe/conventions.hpp"
#include "physframe/diagnostic.hpp"
#include "physframe/frame_algebra.hpp"
#include "physframe/tf_tree.hpp"

namespace physframe
{

/// Tolerance below which a displacement or angle counts as zero.
inline constexpr double kNullTolerance = 1e-9;
/// Allowed deviation of a quaternion's norm from 1.
inline constexpr double kQuaternionNormTolerance = 1e-3;

struct EulerAngles
{
  double yaw = 0.0;
  double pitch = 0.0;
  double roll = 0.0;
  friend bool operator==(const EulerAngles &, const EulerAngles &) = default;
};

struct Quaternion
{
  double qx = 0.0;
  double qy = 0.0;
  double qz = 0.0;
  double qw = 1.0;
  friend bool operator==(const Quaternion &, const Quaternion &) = default;
};

struct StaticTransformRecord
{
  std::string name;
  std::string parent;
  std::string child;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  std::variant<EulerAngles, Quaternion> rotation;
  /// Publishing period in ms; tf2_ros publishers have none.
  std::optional<double> period_ms;
  SourceLoc loc;

  [[nodiscard]] Rotation snapped_rotation(double tol = kSnapTolerance) const;
  [[nodiscard]] bool has_null_displacement(double tol = kNullTolerance) const;
  /// All Euler angles, or the quaternion's vector part, within tol of zero.
  [[nodiscard]] bool has_null_rotation(double tol = kNullTolerance) const;

  friend bool operator==(const StaticTransformRecord &, const StaticTransformRecord &) = default;
};

struct LaunchParseResult
{
  std::vector<StaticTransformRecord> records;
  /// Malformed XML (file level), bad args (record level), skipped macro args (info).
  std::vector<Diagnostic> diagnostics;
};

/// Extracts <node type="static_transform_publisher"> from pkg "tf" (9 args:
/// x y z yaw pitch roll parent child period, or 10 with a quaternion) and
/// pkg "tf2_ros" (the same without the period).
LaunchParseResult parse_launch_text(std::string_view text, const std::string & file);
LaunchParseResult parse_launch_file(
  const std::filesystem::path & path, const std::string & display_name);

/// Installs each record into the tree and runs the launch-side checks:
/// redundancy, tree shape, orientation convention, null sensor transform
/// and reversed node name.
std::vector<Diagnostic> analyze_static_transforms(
  const std::vector<StaticTransformRecord> & records, TfTree & tree,
  const ConventionTable & conv = {});

}  // namespace physframe
