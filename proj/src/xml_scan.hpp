// xml_scan.hpp - Minimal well-formedness-checking XML element scanner
#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace physframe::xml
{

struct Element
{
  std::string name;
  std::map<std::string, std::string> attributes;
  int line = 0;
  int column = 0;
};

class XmlError : public std::runtime_error
{
public:
  XmlError(const std::string & msg, int line, int column)
  : std::runtime_error(msg), line_(line), column_(column)
  {
  }
  [[nodiscard]] int line() const { return line_; }
  [[nodiscard]] int column() const { return column_; }

private:
  int line_;
  int column_;
};

/// Returns every start or empty-element tag in document order. Throws XmlError
/// on unbalanced tags, bad attributes, unterminated constructs or unknown
/// entities. DTDs are skipped, not validated.
std::vector<Element> scan_elements(std::string_view text);

}  // namespace physframe::xml
