// conventions.cpp
#include "physframe/conventions.hpp"

#include <algorithm>
#include <cctype>

namespace physframe
{

namespace
{

std::string lower(std::string_view s)
{
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return out;
}

}  // namespace

OrientationTriple ConventionTable::expected_axes(std::string_view frame_id) const
{
  const std::string id = normalize_frame_id(frame_id);
  const bool optical = id.size() >= optical_suffix.size() &&
                       id.compare(id.size() - optical_suffix.size(), optical_suffix.size(),
                                  optical_suffix) == 0;
  return optical ? optical_axes : body_axes;
}

bool ConventionTable::is_sensor_frame(std::string_view frame_id) const
{
  const std::string id = lower(frame_id);
  return std::any_of(sensor_keywords.begin(), sensor_keywords.end(), [&](const std::string & k) {
    return id.find(lower(k)) != std::string::npos;
  });
}

bool ConventionTable::is_reversed_name(
  std::string_view name, std::string_view parent_raw, std::string_view child_raw) const
{
  const std::string parent = normalize_frame_id(parent_raw);
  const std::string child = normalize_frame_id(child_raw);
  if (parent.empty() || child.empty() || parent == child) {
    return false;
  }
  const std::string n = normalize_frame_id(name);
  return n == child + "_to_" + parent || n == parent + "_in_" + child;
}

std::optional<Diagnostic> check_orientation_convention(
  std::string_view parent_raw, std::string_view child_raw, const Rotation & rot,
  const ConventionTable & conv, const SourceLoc & loc)
{
  const std::string parent = normalize_frame_id(parent_raw);
  const std::string child = normalize_frame_id(child_raw);
  if (parent.empty() || child.empty()) {
    return std::nullopt;
  }
  const OrientationTriple computed = rotate(conv.expected_axes(parent), rot);
  const OrientationTriple expected = conv.expected_axes(child);
  if (!is_fully_known(computed) || !is_fully_known(expected) || computed == expected) {
    return std::nullopt;
  }
  return make_diagnostic(
    Code::IncorrectTransform, loc,
    "rotation " + to_string(rot) + " turns " + parent + " axes " +
      to_string(conv.expected_axes(parent)) + " into " + to_string(computed) + ", but '" + child +
      "' expects " + to_string(expected),
    parent + "->" + child);
}

}  // namespace physframe
