// frame_algebra.hpp - Abstract frame, transform and rotation domains
#pragma once

#include <Eigen/Core>

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace physframe
{

/// Snap tolerance used when abstracting float rotation matrices.
inline constexpr double kSnapTolerance = 1e-3;

enum class Orientation : std::uint8_t { Left, Right, Up, Down, Forward, Backward };

inline constexpr std::array<Orientation, 6> kAllOrientations = {
  Orientation::Left,    Orientation::Right,   Orientation::Up,
  Orientation::Down,    Orientation::Forward, Orientation::Backward,
};

Orientation opposite(Orientation o);
std::string_view to_string(Orientation o);

/// One axis orientation per slot; std::nullopt marks a statically unknown axis.
using OrientationSlot = std::optional<Orientation>;
using OrientationTriple = std::array<OrientationSlot, 3>;

/// (x: forward, y: left, z: up)
OrientationTriple flu();
/// (x: right, y: down, z: forward)
OrientationTriple rdf();

bool is_fully_known(const OrientationTriple & t);
std::string to_string(const OrientationTriple & t);

// DirSwitch: which previous axis a new axis is aligned with, possibly negated.
enum class DirSwitch : std::uint8_t { X, NegX, Y, NegY, Z, NegZ, Top };

DirSwitch negate(DirSwitch d);
/// 0, 1, 2 for the x, y, z family; -1 for Top.
int axis_of(DirSwitch d);
bool is_negative(DirSwitch d);
DirSwitch make_switch(int axis, bool negative);
std::string_view to_string(DirSwitch d);

class Rotation
{
public:
  using Switches = std::array<DirSwitch, 3>;

  Rotation(DirSwitch x, DirSwitch y, DirSwitch z) : switches_{{x, y, z}} {}
  explicit Rotation(const Switches & s) : switches_(s) {}

  static Rotation top() { return Rotation(); }
  static Rotation identity() { return {DirSwitch::X, DirSwitch::Y, DirSwitch::Z}; }

  [[nodiscard]] bool is_top() const { return !switches_.has_value(); }
  /// Non-Top and no Top slot.
  [[nodiscard]] bool is_fully_known() const;
  /// Fully known and the unsigned axes are pairwise distinct.
  [[nodiscard]] bool is_signed_permutation() const;
  [[nodiscard]] bool is_identity() const { return *this == identity(); }

  /// Precondition: !is_top().
  [[nodiscard]] const Switches & switches() const { return *switches_; }
  [[nodiscard]] DirSwitch operator[](std::size_t i) const { return (*switches_)[i]; }

  friend bool operator==(const Rotation &, const Rotation &) = default;

private:
  Rotation() = default;
  std::optional<Switches> switches_;
};

std::string to_string(const Rotation & r);
/// Parses "<x,-z,y>" or "Top"; std::nullopt on malformed input.
std::optional<Rotation> parse_rotation(std::string_view text);

/// A static displacement in meters, or Top when statically unknown.
struct Displacement
{
  std::optional<double> value;

  static Displacement top() { return {}; }
  static Displacement of(double v) { return {v}; }
  [[nodiscard]] bool is_top() const { return !value.has_value(); }

  friend bool operator==(const Displacement &, const Displacement &) = default;
};

Displacement operator+(Displacement a, Displacement b);
Displacement operator-(Displacement a, Displacement b);
Displacement operator*(Displacement a, Displacement b);
/// Division by zero yields Top.
Displacement operator/(Displacement a, Displacement b);
std::string to_string(const Displacement & d);

struct FrameType
{
  std::string id;
  std::string pid;
  Displacement x, y, z;
  OrientationTriple axes{};

  friend bool operator==(const FrameType &, const FrameType &) = default;
};

struct TransformType
{
  std::string cid;
  std::string pid;
  Displacement x, y, z;
  Rotation rot = Rotation::top();

  [[nodiscard]] bool is_well_formed() const { return cid != pid; }
  friend bool operator==(const TransformType &, const TransformType &) = default;
};

/// Composes two orientation changes, `first` followed by `second`.
/// A Top argument yields the other argument; Top slots propagate per slot.
Rotation compose(const Rotation & first, const Rotation & second);

/// Axis orientations after applying `r` to a frame with orientations `src`.
OrientationTriple rotate(const OrientationTriple & src, const Rotation & r);

/// Abstracts a numeric 3x3 matrix into a DirSwitch triple. Row i with a single
/// entry near +-1 at column j (others near 0) gives slot i the signed axis j.
/// Anything else, including repeated columns, is Top.
template <typename Derived>
Rotation orthogonalize(const Eigen::MatrixBase<Derived> & m, double tol = kSnapTolerance)
{
  static_assert(Derived::RowsAtCompileTime == 3 && Derived::ColsAtCompileTime == 3);
  Rotation::Switches out{};
  std::array<bool, 3> used{};
  for (int row = 0; row < 3; ++row) {
    int unit_col = -1;
    bool negative = false;
    for (int col = 0; col < 3; ++col) {
      const double v = static_cast<double>(m(row, col));
      if (std::abs(v) <= tol) {
        continue;
      }
      if (std::abs(std::abs(v) - 1.0) <= tol && unit_col < 0) {
        unit_col = col;
        negative = v < 0;
        continue;
      }
      return Rotation::top();
    }
    if (unit_col < 0 || used[unit_col]) {
      return Rotation::top();
    }
    used[unit_col] = true;
    out[row] = make_switch(unit_col, negative);
  }
  return Rotation(out);
}

/// Signed permutation matrix of a fully known rotation.
/// Throws std::invalid_argument for Top or non-permutation triples.
template <typename Scalar = int>
Eigen::Matrix<Scalar, 3, 3> matrix_of(const Rotation & r);

extern template Eigen::Matrix<int, 3, 3> matrix_of<int>(const Rotation &);
extern template Eigen::Matrix<double, 3, 3> matrix_of<double>(const Rotation &);

/// Fixed-axis Z*Y*X product Rz(yaw) Ry(pitch) Rx(roll).
Eigen::Matrix3d euler_matrix(double yaw, double pitch, double roll);
/// Standard rotation matrix of a unit quaternion (normalized first).
Eigen::Matrix3d quaternion_matrix(double qx, double qy, double qz, double qw);

Rotation euler_to_rotation(double yaw, double pitch, double roll, double tol = kSnapTolerance);
Rotation quaternion_to_rotation(
  double qx, double qy, double qz, double qw, double tol = kSnapTolerance);

}  // namespace physframe
