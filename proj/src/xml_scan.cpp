// xml_scan.cpp
#include "xml_scan.hpp"

#include <cctype>
#include <cstdint>

namespace physframe::xml
{

namespace
{

bool is_name_start(char c)
{
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == ':' ||
         static_cast<unsigned char>(c) >= 0x80;
}

bool is_name_char(char c)
{
  return is_name_start(c) || std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '.';
}

void append_utf8(std::string & out, std::uint32_t cp)
{
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

class Scanner
{
public:
  explicit Scanner(std::string_view text) : text_(text) {}

  std::vector<Element> run()
  {
    std::vector<Element> out;
    std::vector<Element> open;
    bool seen_root = false;
    while (pos_ < text_.size()) {
      if (text_[pos_] != '<') {
        const char c = text_[pos_];
        if (open.empty() && !std::isspace(static_cast<unsigned char>(c))) {
          fail("text outside the root element");
        }
        if (c == '&') {
          decode_entity();
        } else {
          advance();
        }
        continue;
      }
      if (starts_with("<!--")) {
        skip_past("-->", "unterminated comment");
      } else if (starts_with("<![CDATA[")) {
        if (open.empty()) {
          fail("CDATA outside the root element");
        }
        skip_past("]]>", "unterminated CDATA section");
      } else if (starts_with("<?")) {
        skip_past("?>", "unterminated processing instruction");
      } else if (starts_with("<!")) {
        skip_declaration();
      } else if (starts_with("</")) {
        const int line = line_;
        const int col = column_;
        advance();
        advance();
        const std::string name = read_name();
        skip_ws();
        expect('>');
        if (open.empty() || open.back().name != name) {
          throw XmlError("unexpected closing tag </" + name + ">", line, col);
        }
        open.pop_back();
      } else {
        if (seen_root && open.empty()) {
          fail("more than one root element");
        }
        Element e = read_start_tag();
        seen_root = true;
        const bool empty = last_tag_empty_;
        out.push_back(e);
        if (!empty) {
          open.push_back(std::move(e));
        }
      }
    }
    if (!open.empty()) {
      throw XmlError("element <" + open.back().name + "> is never closed", open.back().line,
                     open.back().column);
    }
    if (!seen_root) {
      throw XmlError("document has no root element", line_, column_);
    }
    return out;
  }

private:
  [[noreturn]] void fail(const std::string & msg) const { throw XmlError(msg, line_, column_); }

  [[nodiscard]] bool starts_with(std::string_view s) const
  {
    return text_.substr(pos_, s.size()) == s;
  }

  void advance()
  {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_ws()
  {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      advance();
    }
  }

  void expect(char c)
  {
    if (pos_ >= text_.size() || text_[pos_] != c) {
      fail(std::string("expected '") + c + "'");
    }
    advance();
  }

  void skip_past(std::string_view end, const char * msg)
  {
    while (pos_ < text_.size() && !starts_with(end)) {
      advance();
    }
    if (pos_ >= text_.size()) {
      fail(msg);
    }
    for (std::size_t i = 0; i < end.size(); ++i) {
      advance();
    }
  }

  void skip_declaration()
  {
    // <!DOCTYPE ...> possibly with an internal [ ... ] subset
    int depth = 0;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      advance();
      if (c == '[') {
        ++depth;
      } else if (c == ']') {
        --depth;
      } else if (c == '>' && depth <= 0) {
        return;
      }
    }
    fail("unterminated declaration");
  }

  std::string read_name()
  {
    if (pos_ >= text_.size() || !is_name_start(text_[pos_])) {
      fail("expected a name");
    }
    std::string out;
    while (pos_ < text_.size() && is_name_char(text_[pos_])) {
      out += text_[pos_];
      advance();
    }
    return out;
  }

  std::string decode_entity()
  {
    const std::size_t semi = text_.find(';', pos_);
    if (semi == std::string_view::npos || semi - pos_ > 12) {
      fail("malformed entity reference");
    }
    const std::string_view ent = text_.substr(pos_ + 1, semi - pos_ - 1);
    std::string out;
    if (ent == "amp") {
      out = "&";
    } else if (ent == "lt") {
      out = "<";
    } else if (ent == "gt") {
      out = ">";
    } else if (ent == "quot") {
      out = "\"";
    } else if (ent == "apos") {
      out = "'";
    } else if (ent.size() > 1 && ent[0] == '#') {
      const bool hex = ent[1] == 'x';
      const std::string digits(ent.substr(hex ? 2 : 1));
      std::size_t used = 0;
      unsigned long cp = 0;
      try {
        cp = std::stoul(digits, &used, hex ? 16 : 10);
      } catch (const std::exception &) {
        fail("malformed character reference");
      }
      if (used != digits.size() || cp > 0x10FFFF) {
        fail("malformed character reference");
      }
      append_utf8(out, static_cast<std::uint32_t>(cp));
    } else {
      fail("unknown entity '&" + std::string(ent) + ";'");
    }
    while (pos_ <= semi) {
      advance();
    }
    return out;
  }

  Element read_start_tag()
  {
    Element e;
    e.line = line_;
    e.column = column_;
    advance();  // '<'
    e.name = read_name();
    while (true) {
      const bool had_ws = pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]));
      skip_ws();
      if (pos_ >= text_.size()) {
        fail("unterminated start tag <" + e.name + ">");
      }
      if (starts_with("/>")) {
        advance();
        advance();
        last_tag_empty_ = true;
        return e;
      }
      if (text_[pos_] == '>') {
        advance();
        last_tag_empty_ = false;
        return e;
      }
      if (!had_ws) {
        fail("expected whitespace before attribute");
      }
      const std::string attr = read_name();
      skip_ws();
      expect('=');
      skip_ws();
      if (pos_ >= text_.size() || (text_[pos_] != '"' && text_[pos_] != '\'')) {
        fail("attribute value must be quoted");
      }
      const char quote = text_[pos_];
      advance();
      std::string value;
      while (pos_ < text_.size() && text_[pos_] != quote) {
        if (text_[pos_] == '<') {
          fail("'<' in attribute value");
        }
        if (text_[pos_] == '&') {
          value += decode_entity();
        } else {
          value += text_[pos_];
          advance();
        }
      }
      if (pos_ >= text_.size()) {
        fail("unterminated attribute value");
      }
      advance();
      if (!e.attributes.emplace(attr, std::move(value)).second) {
        fail("duplicate attribute '" + attr + "'");
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
  bool last_tag_empty_ = false;
};

}  // namespace

std::vector<Element> scan_elements(std::string_view text) { return Scanner(text).run(); }

}  // namespace physframe::xml
