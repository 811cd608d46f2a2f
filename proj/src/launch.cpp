// launch.cpp - static_transform_publisher extraction and launch-side checks
#include "physframe/launch.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "xml_scan.hpp"

namespace physframe
{

namespace
{

std::vector<std::string> split_ws(std::string_view s)
{
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string tok;
  while (in >> tok) {
    out.push_back(tok);
  }
  return out;
}

std::optional<double> to_double(const std::string & s)
{
  double v = 0.0;
  const char * first = s.data();
  const char * last = s.data() + s.size();
  if (first != last && *first == '+') {
    ++first;
  }
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

std::string attr(const xml::Element & e, const std::string & key)
{
  const auto it = e.attributes.find(key);
  return it == e.attributes.end() ? std::string() : it->second;
}

}  // namespace

Rotation StaticTransformRecord::snapped_rotation(double tol) const
{
  if (const auto * e = std::get_if<EulerAngles>(&rotation)) {
    return euler_to_rotation(e->yaw, e->pitch, e->roll, tol);
  }
  const auto & q = std::get<Quaternion>(rotation);
  return quaternion_to_rotation(q.qx, q.qy, q.qz, q.qw, tol);
}

bool StaticTransformRecord::has_null_displacement(double tol) const
{
  return std::abs(x) < tol && std::abs(y) < tol && std::abs(z) < tol;
}

bool StaticTransformRecord::has_null_rotation(double tol) const
{
  if (const auto * e = std::get_if<EulerAngles>(&rotation)) {
    return std::abs(e->yaw) < tol && std::abs(e->pitch) < tol && std::abs(e->roll) < tol;
  }
  const auto & q = std::get<Quaternion>(rotation);
  return std::abs(q.qx) < tol && std::abs(q.qy) < tol && std::abs(q.qz) < tol;
}

LaunchParseResult parse_launch_text(std::string_view text, const std::string & file)
{
  LaunchParseResult out;
  std::vector<xml::Element> elements;
  try {
    elements = xml::scan_elements(text);
  } catch (const xml::XmlError & err) {
    out.diagnostics.push_back(make_diagnostic(
      Code::MalformedInput, {file, err.line(), err.column()},
      std::string("malformed launch XML: ") + err.what()));
    return out;
  }

  for (const auto & e : elements) {
    const std::string pkg = attr(e, "pkg");
    if (e.name != "node" || attr(e, "type") != "static_transform_publisher" ||
        (pkg != "tf" && pkg != "tf2_ros")) {
      continue;
    }
    const SourceLoc loc{file, e.line, e.column};
    const std::string name = attr(e, "name");
    const std::string args = attr(e, "args");
    if (args.find("$(") != std::string::npos) {
      out.diagnostics.push_back(make_diagnostic(
        Code::SkippedMacroArgs, loc,
        "static transform '" + name + "' uses substitution args; skipped", name));
      continue;
    }
    const std::vector<std::string> tok = split_ws(args);
    const bool has_period = pkg == "tf";
    const std::size_t euler_count = has_period ? 9 : 8;
    if (tok.size() != euler_count && tok.size() != euler_count + 1) {
      out.diagnostics.push_back(make_diagnostic(
        Code::MalformedInput, loc,
        "static transform '" + name + "' has " + std::to_string(tok.size()) + " args, expected " +
          std::to_string(euler_count) + " or " + std::to_string(euler_count + 1),
        name));
      continue;
    }
    const bool quaternion = tok.size() == euler_count + 1;
    const std::size_t n_numbers = quaternion ? 7 : 6;
    std::vector<double> nums;
    for (std::size_t i = 0; i < n_numbers; ++i) {
      if (auto v = to_double(tok[i])) {
        nums.push_back(*v);
      }
    }
    std::optional<double> period;
    if (has_period) {
      period = to_double(tok.back());
    }
    if (nums.size() != n_numbers || (has_period && !period)) {
      out.diagnostics.push_back(make_diagnostic(
        Code::MalformedInput, loc, "static transform '" + name + "' has non-numeric args", name));
      continue;
    }

    StaticTransformRecord r;
    r.name = name;
    r.x = nums[0];
    r.y = nums[1];
    r.z = nums[2];
    if (quaternion) {
      const Quaternion q{nums[3], nums[4], nums[5], nums[6]};
      const double norm = std::sqrt(q.qx * q.qx + q.qy * q.qy + q.qz * q.qz + q.qw * q.qw);
      if (std::abs(norm - 1.0) > kQuaternionNormTolerance) {
        out.diagnostics.push_back(make_diagnostic(
          Code::MalformedInput, loc,
          "static transform '" + name + "' has a non-unit quaternion (norm " +
            std::to_string(norm) + ")",
          name));
        continue;
      }
      r.rotation = q;
    } else {
      r.rotation = EulerAngles{nums[3], nums[4], nums[5]};
    }
    r.parent = normalize_frame_id(tok[n_numbers]);
    r.child = normalize_frame_id(tok[n_numbers + 1]);
    r.period_ms = period;
    r.loc = loc;
    out.records.push_back(std::move(r));
  }
  return out;
}

LaunchParseResult parse_launch_file(
  const std::filesystem::path & path, const std::string & display_name)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    LaunchParseResult out;
    out.diagnostics.push_back(
      make_diagnostic(Code::MalformedInput, {display_name, 0, 0}, "cannot read launch file"));
    return out;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_launch_text(buf.str(), display_name);
}

std::vector<Diagnostic> analyze_static_transforms(
  const std::vector<StaticTransformRecord> & records, TfTree & tree, const ConventionTable & conv)
{
  std::vector<Diagnostic> out;
  for (const auto & r : records) {
    const std::string edge = r.parent + "->" + r.child;
    if (r.parent == r.child) {
      out.push_back(make_diagnostic(
        Code::RedundantTransform, r.loc,
        "static transform '" + r.name + "' has identical parent and child frame '" + r.child + "'",
        edge));
      continue;
    }
    if (auto d = tree.add_edge(r.parent, r.child, r.loc)) {
      out.push_back(std::move(*d));
    }
    const Rotation rot = r.snapped_rotation();
    if (!rot.is_top()) {
      if (auto d = check_orientation_convention(r.parent, r.child, rot, conv, r.loc)) {
        out.push_back(std::move(*d));
      }
    }
    const bool sensor = conv.is_sensor_frame(r.parent) || conv.is_sensor_frame(r.child);
    if (sensor && r.has_null_displacement() && rot.is_identity()) {
      out.push_back(make_diagnostic(
        Code::SensorNull, r.loc,
        "sensor transform " + edge + " has zero displacement and rotation", edge));
    }
    if (!r.name.empty() && conv.is_reversed_name(r.name, r.parent, r.child)) {
      out.push_back(make_diagnostic(
        Code::ReversedName, r.loc,
        "transform name '" + r.name + "' reads child-to-parent for " + edge +
          "; expected '" + r.parent + "_to_" + r.child + "' or '" + r.child + "_in_" + r.parent +
          "'",
        edge));
    }
  }
  return out;
}

}  // namespace physframe
