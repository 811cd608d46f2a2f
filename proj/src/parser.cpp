// parser.cpp - Lexer and recursive-descent parser for .pf sources
#include <cctype>
#include <charconv>
#include <optional>

#include "physframe/program.hpp"

namespace physframe
{

namespace
{

enum class Tok { Ident, Number, String, Assign, LParen, RParen, LBracket, RBracket, Comma, Dot,
                 At, Op, Separator, End };

struct Token
{
  Tok kind;
  std::string text;
  double number = 0.0;
  int line = 1;
  int column = 1;
};

class Lexer
{
public:
  Lexer(std::string_view text, const std::string & file) : text_(text), file_(file) {}

  std::vector<Token> run()
  {
    std::vector<Token> out;
    while (true) {
      skip_blanks();
      Token t{Tok::End, {}, 0.0, line_, column_};
      if (pos_ >= text_.size()) {
        out.push_back(t);
        return out;
      }
      const char c = text_[pos_];
      if (c == '\n' || c == ';') {
        t.kind = Tok::Separator;
        advance();
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        t.kind = Tok::Ident;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
          t.text += text_[pos_];
          advance();
        }
      } else if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && next_is_digit())) {
        t.kind = Tok::Number;
        t.number = lex_number(t);
      } else if (c == '"') {
        t.kind = Tok::String;
        t.text = lex_string(t);
      } else if (c == ':' && peek(1) == '=') {
        t.kind = Tok::Assign;
        advance();
        advance();
      } else {
        switch (c) {
          case '(': t.kind = Tok::LParen; break;
          case ')': t.kind = Tok::RParen; break;
          case '[': t.kind = Tok::LBracket; break;
          case ']': t.kind = Tok::RBracket; break;
          case ',': t.kind = Tok::Comma; break;
          case '.': t.kind = Tok::Dot; break;
          case '@': t.kind = Tok::At; break;
          case '+':
          case '-':
          case '*':
          case '/': t.kind = Tok::Op; break;
          default:
            throw ParseError(std::string("unexpected character '") + c + "'", loc(t));
        }
        t.text = std::string(1, c);
        advance();
      }
      out.push_back(std::move(t));
    }
  }

private:
  [[nodiscard]] char peek(std::size_t ahead) const
  {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  [[nodiscard]] bool next_is_digit() const
  {
    return std::isdigit(static_cast<unsigned char>(peek(1))) != 0;
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

  void skip_blanks()
  {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') {
          advance();
        }
      } else if (c == ' ' || c == '\t' || c == '\r') {
        advance();
      } else {
        return;
      }
    }
  }

  double lex_number(const Token & t)
  {
    const std::size_t start = pos_;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      const bool exp_sign = (c == '+' || c == '-') && pos_ > start &&
                            (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E');
      if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == 'e' || c == 'E' ||
            exp_sign)) {
        break;
      }
      advance();
    }
    double value = 0.0;
    const char * first = text_.data() + start;
    const char * last = text_.data() + pos_;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
      throw ParseError("malformed number '" + std::string(first, last) + "'", loc(t));
    }
    return value;
  }

  std::string lex_string(const Token & t)
  {
    advance();  // opening quote
    std::string out;
    while (true) {
      if (pos_ >= text_.size() || text_[pos_] == '\n') {
        throw ParseError("unterminated string literal", loc(t));
      }
      const char c = text_[pos_];
      advance();
      if (c == '"') {
        return out;
      }
      if (c == '\\' && pos_ < text_.size()) {
        out += text_[pos_];
        advance();
        continue;
      }
      out += c;
    }
  }

  [[nodiscard]] SourceLoc loc(const Token & t) const { return {file_, t.line, t.column}; }

  std::string_view text_;
  const std::string & file_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

class Parser
{
public:
  Parser(std::vector<Token> tokens, std::string file) : toks_(std::move(tokens)), file_(std::move(file))
  {
  }

  Program run()
  {
    Program p;
    p.file = file_;
    while (true) {
      while (at(Tok::Separator)) {
        ++pos_;
      }
      if (at(Tok::End)) {
        return p;
      }
      const Token & first = cur();
      Statement s{parse_statement(), {file_, first.line, first.column}};
      p.statements.push_back(std::move(s));
      if (!at(Tok::Separator) && !at(Tok::End)) {
        fail("expected end of statement");
      }
    }
  }

private:
  [[nodiscard]] const Token & cur() const { return toks_[pos_]; }
  [[nodiscard]] const Token & ahead(std::size_t n) const
  {
    return toks_[std::min(pos_ + n, toks_.size() - 1)];
  }
  [[nodiscard]] bool at(Tok k) const { return cur().kind == k; }

  [[noreturn]] void fail(const std::string & msg) const
  {
    const Token & t = cur();
    std::string got = t.kind == Tok::End ? "end of input"
                      : t.kind == Tok::Separator ? "end of line"
                                                 : "'" + t.text + "'";
    if (t.kind == Tok::Number) {
      got = "number";
    } else if (t.kind == Tok::String) {
      got = "string \"" + t.text + "\"";
    }
    throw ParseError(msg + ", got " + got, {file_, t.line, t.column});
  }

  const Token & expect(Tok k, const char * what)
  {
    if (!at(k)) {
      fail(std::string("expected ") + what);
    }
    return toks_[pos_++];
  }

  std::string ident() { return expect(Tok::Ident, "identifier").text; }
  std::string string_lit() { return expect(Tok::String, "string literal").text; }

  double signed_number()
  {
    bool negative = false;
    if (at(Tok::Op) && (cur().text == "-" || cur().text == "+")) {
      negative = cur().text == "-";
      ++pos_;
    }
    const double v = expect(Tok::Number, "number").number;
    return negative ? -v : v;
  }

  [[nodiscard]] bool at_number_start() const
  {
    return at(Tok::Number) ||
           (at(Tok::Op) && (cur().text == "-" || cur().text == "+") &&
            ahead(1).kind == Tok::Number);
  }

  Operand operand()
  {
    if (at_number_start()) {
      return Operand{signed_number()};
    }
    return Operand{ident()};
  }

  [[nodiscard]] bool at_call(std::string_view name) const
  {
    return at(Tok::Ident) && cur().text == name && ahead(1).kind == Tok::LParen;
  }

  std::vector<double> number_list()
  {
    expect(Tok::LBracket, "'['");
    std::vector<double> out;
    if (!at(Tok::RBracket)) {
      out.push_back(signed_number());
      while (at(Tok::Comma)) {
        ++pos_;
        out.push_back(signed_number());
      }
    }
    expect(Tok::RBracket, "']'");
    return out;
  }

  StatementNode parse_statement()
  {
    if (at_call("sendTransform")) {
      pos_ += 2;
      stmt::SendTransform s{ident()};
      expect(Tok::RParen, "')'");
      return s;
    }
    if (at_call("publish")) {
      pos_ += 2;
      stmt::Publish s;
      s.topic = string_lit();
      expect(Tok::Comma, "','");
      s.source = ident();
      expect(Tok::RParen, "')'");
      return s;
    }
    const std::string target = ident();
    if (at(Tok::Dot)) {
      ++pos_;
      if (!at(Tok::Ident) || cur().text != "id") {
        fail("expected 'id' after '.'");
      }
      ++pos_;
      expect(Tok::Assign, "':='");
      return stmt::SetId{target, string_lit()};
    }
    expect(Tok::Assign, "':='");
    return parse_rhs(target);
  }

  StatementNode parse_rhs(const std::string & target)
  {
    if (at_call("stamped")) {
      pos_ += 2;
      stmt::Stamped s{target, string_lit(), {}};
      expect(Tok::Comma, "','");
      s.source = ident();
      expect(Tok::RParen, "')'");
      return s;
    }
    if (at_call("get_data")) {
      pos_ += 2;
      stmt::GetData s{target, ident()};
      expect(Tok::RParen, "')'");
      return s;
    }
    if (at_call("external")) {
      pos_ += 2;
      expect(Tok::RParen, "')'");
      return stmt::External{target};
    }
    if (at_call("transform_to")) {
      pos_ += 2;
      stmt::TransformTo s{target, string_lit(), {}};
      expect(Tok::Comma, "','");
      s.source = ident();
      expect(Tok::RParen, "')'");
      return s;
    }
    if (at_call("new_transform")) {
      pos_ += 2;
      stmt::NewTransform s;
      s.target = target;
      s.child = string_lit();
      expect(Tok::Comma, "','");
      s.parent = string_lit();
      for (auto & o : s.offset) {
        expect(Tok::Comma, "','");
        o = operand();
      }
      expect(Tok::Comma, "','");
      s.rotation = ident();
      expect(Tok::RParen, "')'");
      return s;
    }
    if (at_call("lookupTransform")) {
      pos_ += 2;
      stmt::LookupTransform s{target, string_lit(), {}};
      expect(Tok::Comma, "','");
      s.child = string_lit();
      expect(Tok::RParen, "')'");
      return s;
    }
    if (at_call("apply_transform")) {
      pos_ += 2;
      stmt::ApplyTransform s{target, ident(), {}};
      expect(Tok::Comma, "','");
      s.source = ident();
      expect(Tok::RParen, "')'");
      return s;
    }
    if (at_call("rotation")) {
      pos_ += 2;
      stmt::RotDyn s{target, ident()};
      expect(Tok::RParen, "')'");
      return s;
    }
    if (at(Tok::LBracket)) {
      if (ahead(1).kind == Tok::LBracket) {
        return parse_matrix(target);
      }
      std::vector<double> v = number_list();
      if (v.empty()) {
        fail("empty vector literal");
      }
      return stmt::Assign{target, std::move(v)};
    }
    if (at_number_start()) {
      Operand lhs = operand();
      if (at(Tok::Op)) {
        return binop(target, std::move(lhs));
      }
      return stmt::Assign{target, {lhs.literal()}};
    }
    const std::string source = ident();
    if (at(Tok::At)) {
      ++pos_;
      return stmt::RotCompose{target, source, ident()};
    }
    if (at(Tok::Op)) {
      return binop(target, Operand{source});
    }
    if (at(Tok::LBracket)) {
      ++pos_;
      const double idx = expect(Tok::Number, "index").number;
      if (idx < 0 || idx != static_cast<double>(static_cast<int>(idx))) {
        fail("index must be a non-negative integer");
      }
      expect(Tok::RBracket, "']'");
      return stmt::Element{target, source, static_cast<int>(idx)};
    }
    return stmt::Copy{target, source};
  }

  StatementNode binop(const std::string & target, Operand lhs)
  {
    const char op = cur().text[0];
    ++pos_;
    return stmt::BinOp{target, std::move(lhs), op, operand()};
  }

  StatementNode parse_matrix(const std::string & target)
  {
    expect(Tok::LBracket, "'['");
    Eigen::Matrix3d m;
    for (int row = 0; row < 3; ++row) {
      if (row > 0) {
        expect(Tok::Comma, "',' between matrix rows");
      }
      const std::vector<double> r = number_list();
      if (r.size() != 3) {
        fail("rotation matrix rows must have 3 entries");
      }
      m.row(row) << r[0], r[1], r[2];
    }
    expect(Tok::RBracket, "']' closing a 3x3 matrix");
    return stmt::RotConst{target, m};
  }

  std::vector<Token> toks_;
  std::string file_;
  std::size_t pos_ = 0;
};

std::string format_number(double v)
{
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string quote(const std::string & s)
{
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') {
      out += '\\';
    }
    out += c;
  }
  return out + "\"";
}

std::string format_operand(const Operand & o)
{
  return o.is_var() ? o.var() : format_number(o.literal());
}

struct Printer
{
  std::string operator()(const stmt::Assign & s) const
  {
    if (s.value.size() == 1) {
      return s.target + " := " + format_number(s.value[0]);
    }
    std::string out = s.target + " := [";
    for (std::size_t i = 0; i < s.value.size(); ++i) {
      out += (i ? ", " : "") + format_number(s.value[i]);
    }
    return out + "]";
  }
  std::string operator()(const stmt::Copy & s) const { return s.target + " := " + s.source; }
  std::string operator()(const stmt::BinOp & s) const
  {
    return s.target + " := " + format_operand(s.lhs) + " " + s.op + " " + format_operand(s.rhs);
  }
  std::string operator()(const stmt::Element & s) const
  {
    return s.target + " := " + s.source + "[" + std::to_string(s.index) + "]";
  }
  std::string operator()(const stmt::Stamped & s) const
  {
    return s.target + " := stamped(" + quote(s.frame) + ", " + s.source + ")";
  }
  std::string operator()(const stmt::SetId & s) const
  {
    return s.target + ".id := " + quote(s.frame);
  }
  std::string operator()(const stmt::GetData & s) const
  {
    return s.target + " := get_data(" + s.source + ")";
  }
  std::string operator()(const stmt::External & s) const { return s.target + " := external()"; }
  std::string operator()(const stmt::TransformTo & s) const
  {
    return s.target + " := transform_to(" + quote(s.frame) + ", " + s.source + ")";
  }
  std::string operator()(const stmt::NewTransform & s) const
  {
    return s.target + " := new_transform(" + quote(s.child) + ", " + quote(s.parent) + ", " +
           format_operand(s.offset[0]) + ", " + format_operand(s.offset[1]) + ", " +
           format_operand(s.offset[2]) + ", " + s.rotation + ")";
  }
  std::string operator()(const stmt::SendTransform & s) const
  {
    return "sendTransform(" + s.transform + ")";
  }
  std::string operator()(const stmt::LookupTransform & s) const
  {
    return s.target + " := lookupTransform(" + quote(s.parent) + ", " + quote(s.child) + ")";
  }
  std::string operator()(const stmt::ApplyTransform & s) const
  {
    return s.target + " := apply_transform(" + s.transform + ", " + s.source + ")";
  }
  std::string operator()(const stmt::RotConst & s) const
  {
    std::string out = s.target + " := [";
    for (int r = 0; r < 3; ++r) {
      out += r ? ", [" : "[";
      for (int c = 0; c < 3; ++c) {
        out += (c ? ", " : "") + format_number(s.value(r, c));
      }
      out += "]";
    }
    return out + "]";
  }
  std::string operator()(const stmt::RotDyn & s) const
  {
    return s.target + " := rotation(" + s.source + ")";
  }
  std::string operator()(const stmt::RotCompose & s) const
  {
    return s.target + " := " + s.first + " @ " + s.second;
  }
  std::string operator()(const stmt::Publish & s) const
  {
    return "publish(" + quote(s.topic) + ", " + s.source + ")";
  }
};

}  // namespace

Program parse_program(std::string_view text, std::string file)
{
  Lexer lexer(text, file);
  return Parser(lexer.run(), std::move(file)).run();
}

std::string to_source(const Program & p)
{
  std::string out;
  for (const auto & s : p.statements) {
    out += std::visit(Printer{}, s.node);
    out += '\n';
  }
  return out;
}

}  // namespace physframe
