// frame_algebra.cpp - Rotation algebra over DirSwitch triples
#include "physframe/frame_algebra.hpp"

#include <Eigen/Geometry>

#include <stdexcept>

namespace physframe
{

Orientation opposite(Orientation o)
{
  switch (o) {
    case Orientation::Left: return Orientation::Right;
    case Orientation::Right: return Orientation::Left;
    case Orientation::Up: return Orientation::Down;
    case Orientation::Down: return Orientation::Up;
    case Orientation::Forward: return Orientation::Backward;
    case Orientation::Backward: return Orientation::Forward;
  }
  return o;
}

std::string_view to_string(Orientation o)
{
  switch (o) {
    case Orientation::Left: return "left";
    case Orientation::Right: return "right";
    case Orientation::Up: return "up";
    case Orientation::Down: return "down";
    case Orientation::Forward: return "forward";
    case Orientation::Backward: return "backward";
  }
  return "?";
}

OrientationTriple flu() { return {Orientation::Forward, Orientation::Left, Orientation::Up}; }

OrientationTriple rdf() { return {Orientation::Right, Orientation::Down, Orientation::Forward}; }

bool is_fully_known(const OrientationTriple & t)
{
  return t[0].has_value() && t[1].has_value() && t[2].has_value();
}

std::string to_string(const OrientationTriple & t)
{
  std::string out = "<";
  for (std::size_t i = 0; i < 3; ++i) {
    if (i > 0) {
      out += ",";
    }
    out += t[i] ? std::string(to_string(*t[i])) : std::string("unknown");
  }
  return out + ">";
}

DirSwitch negate(DirSwitch d)
{
  if (d == DirSwitch::Top) {
    return d;
  }
  return make_switch(axis_of(d), !is_negative(d));
}

int axis_of(DirSwitch d)
{
  switch (d) {
    case DirSwitch::X:
    case DirSwitch::NegX: return 0;
    case DirSwitch::Y:
    case DirSwitch::NegY: return 1;
    case DirSwitch::Z:
    case DirSwitch::NegZ: return 2;
    case DirSwitch::Top: return -1;
  }
  return -1;
}

bool is_negative(DirSwitch d)
{
  return d == DirSwitch::NegX || d == DirSwitch::NegY || d == DirSwitch::NegZ;
}

DirSwitch make_switch(int axis, bool negative)
{
  switch (axis) {
    case 0: return negative ? DirSwitch::NegX : DirSwitch::X;
    case 1: return negative ? DirSwitch::NegY : DirSwitch::Y;
    case 2: return negative ? DirSwitch::NegZ : DirSwitch::Z;
    default: return DirSwitch::Top;
  }
}

std::string_view to_string(DirSwitch d)
{
  switch (d) {
    case DirSwitch::X: return "x";
    case DirSwitch::NegX: return "-x";
    case DirSwitch::Y: return "y";
    case DirSwitch::NegY: return "-y";
    case DirSwitch::Z: return "z";
    case DirSwitch::NegZ: return "-z";
    case DirSwitch::Top: return "Top";
  }
  return "?";
}

bool Rotation::is_fully_known() const
{
  if (is_top()) {
    return false;
  }
  for (DirSwitch d : *switches_) {
    if (d == DirSwitch::Top) {
      return false;
    }
  }
  return true;
}

bool Rotation::is_signed_permutation() const
{
  if (!is_fully_known()) {
    return false;
  }
  std::array<bool, 3> seen{};
  for (DirSwitch d : *switches_) {
    const int a = axis_of(d);
    if (seen[a]) {
      return false;
    }
    seen[a] = true;
  }
  return true;
}

std::string to_string(const Rotation & r)
{
  if (r.is_top()) {
    return "Top";
  }
  std::string out = "<";
  for (std::size_t i = 0; i < 3; ++i) {
    if (i > 0) {
      out += ",";
    }
    out += to_string(r[i]);
  }
  return out + ">";
}

std::optional<Rotation> parse_rotation(std::string_view text)
{
  if (text == "Top") {
    return Rotation::top();
  }
  if (text.size() < 2 || text.front() != '<' || text.back() != '>') {
    return std::nullopt;
  }
  text = text.substr(1, text.size() - 2);
  Rotation::Switches out{};
  for (std::size_t i = 0; i < 3; ++i) {
    const auto comma = text.find(',');
    const std::string_view part = i < 2 ? text.substr(0, comma) : text;
    if ((i < 2 && comma == std::string_view::npos) || (i == 2 && comma != std::string_view::npos)) {
      return std::nullopt;
    }
    bool matched = false;
    for (DirSwitch d : {DirSwitch::X, DirSwitch::NegX, DirSwitch::Y, DirSwitch::NegY, DirSwitch::Z,
                        DirSwitch::NegZ, DirSwitch::Top}) {
      if (to_string(d) == part) {
        out[i] = d;
        matched = true;
      }
    }
    if (!matched) {
      return std::nullopt;
    }
    if (i < 2) {
      text.remove_prefix(comma + 1);
    }
  }
  return Rotation(out);
}

Displacement operator+(Displacement a, Displacement b)
{
  if (a.is_top() || b.is_top()) {
    return Displacement::top();
  }
  return Displacement::of(*a.value + *b.value);
}

Displacement operator-(Displacement a, Displacement b)
{
  if (a.is_top() || b.is_top()) {
    return Displacement::top();
  }
  return Displacement::of(*a.value - *b.value);
}

Displacement operator*(Displacement a, Displacement b)
{
  if (a.is_top() || b.is_top()) {
    return Displacement::top();
  }
  return Displacement::of(*a.value * *b.value);
}

Displacement operator/(Displacement a, Displacement b)
{
  if (a.is_top() || b.is_top() || *b.value == 0.0) {
    return Displacement::top();
  }
  return Displacement::of(*a.value / *b.value);
}

std::string to_string(const Displacement & d)
{
  return d.is_top() ? std::string("Top") : std::to_string(*d.value);
}

Rotation compose(const Rotation & first, const Rotation & second)
{
  if (first.is_top()) {
    return second;
  }
  if (second.is_top()) {
    return first;
  }
  Rotation::Switches out{};
  for (std::size_t i = 0; i < 3; ++i) {
    const DirSwitch sel = first[i];
    if (sel == DirSwitch::Top) {
      out[i] = DirSwitch::Top;
      continue;
    }
    const DirSwitch picked = second[static_cast<std::size_t>(axis_of(sel))];
    out[i] = is_negative(sel) ? negate(picked) : picked;
  }
  return Rotation(out);
}

OrientationTriple rotate(const OrientationTriple & src, const Rotation & r)
{
  OrientationTriple out{};
  if (r.is_top()) {
    return out;
  }
  for (int target = 0; target < 3; ++target) {
    // first slot (x, then y, then z) that maps onto the target axis
    for (std::size_t slot = 0; slot < 3; ++slot) {
      if (axis_of(r[slot]) != target) {
        continue;
      }
      if (src[slot]) {
        out[target] = is_negative(r[slot]) ? opposite(*src[slot]) : *src[slot];
      }
      break;
    }
  }
  return out;
}

template <typename Scalar>
Eigen::Matrix<Scalar, 3, 3> matrix_of(const Rotation & r)
{
  if (!r.is_signed_permutation()) {
    throw std::invalid_argument("matrix_of: not a signed permutation: " + to_string(r));
  }
  Eigen::Matrix<Scalar, 3, 3> m = Eigen::Matrix<Scalar, 3, 3>::Zero();
  for (int row = 0; row < 3; ++row) {
    const DirSwitch d = r[static_cast<std::size_t>(row)];
    m(row, axis_of(d)) = is_negative(d) ? Scalar(-1) : Scalar(1);
  }
  return m;
}

template Eigen::Matrix<int, 3, 3> matrix_of<int>(const Rotation &);
template Eigen::Matrix<double, 3, 3> matrix_of<double>(const Rotation &);

Eigen::Matrix3d euler_matrix(double yaw, double pitch, double roll)
{
  const Eigen::Matrix3d m = (Eigen::AngleAxisd(yaw, Eigen::Vector3d::UnitZ()) *
                             Eigen::AngleAxisd(pitch, Eigen::Vector3d::UnitY()) *
                             Eigen::AngleAxisd(roll, Eigen::Vector3d::UnitX()))
                              .toRotationMatrix();
  return m;
}

Eigen::Matrix3d quaternion_matrix(double qx, double qy, double qz, double qw)
{
  return Eigen::Quaterniond(qw, qx, qy, qz).normalized().toRotationMatrix();
}

Rotation euler_to_rotation(double yaw, double pitch, double roll, double tol)
{
  return orthogonalize(euler_matrix(yaw, pitch, roll), tol);
}

Rotation quaternion_to_rotation(double qx, double qy, double qz, double qw, double tol)
{
  return orthogonalize(quaternion_matrix(qx, qy, qz, qw), tol);
}

}  // namespace physframe
