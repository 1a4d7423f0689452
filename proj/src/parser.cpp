#include <cctype>
#include <charconv>

#include "ruletree/core.hpp"

namespace ruletree {

namespace {

// Single-line cursor with 1-based column reporting.
struct Cursor {
  std::string_view text;
  int line;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }
  bool eol() {
    skip_ws();
    return pos >= text.size();
  }
  char peek() { return pos < text.size() ? text[pos] : '\0'; }
  int col() const { return static_cast<int>(pos) + 1; }

  [[noreturn]] void fail(const std::string& what) {
    throw ParseError(line, col(), what);
  }

  bool eat(char c) {
    skip_ws();
    if (peek() != c) return false;
    ++pos;
    return true;
  }

  void expect(char c, const std::string& what) {
    if (!eat(c)) fail(what);
  }

  std::int64_t uint() {
    skip_ws();
    if (!std::isdigit(static_cast<unsigned char>(peek())))
      fail("expected an unsigned integer");
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), v);
    if (ec != std::errc()) fail("integer out of range");
    pos = static_cast<std::size_t>(ptr - text.data());
    return v;
  }

  AttrId attr() {
    skip_ws();
    if (peek() != 'a') fail("expected an attribute (a<index>)");
    ++pos;
    if (!std::isdigit(static_cast<unsigned char>(peek())))
      fail("expected an attribute index after 'a'");
    return AttrId{static_cast<int>(uint())};
  }

  std::int64_t arrow_and_decision() {
    skip_ws();
    if (pos + 1 >= text.size() || text[pos] != '-' || text[pos + 1] != '>')
      fail("expected '->'");
    pos += 2;
    std::int64_t rhs = uint();
    if (!eol()) fail("unexpected trailing input after the decision");
    return rhs;
  }
};

DecisionRule parse_rule_line(std::string_view line, int lineno) {
  Cursor c{line, lineno};
  std::vector<Equation> lhs;
  c.skip_ws();
  while (c.peek() == 'a') {
    AttrId a = c.attr();
    int at = c.col();
    c.expect('=', "expected '=' in an equation");
    Value v = Value::integer(c.uint());
    for (const auto& e : lhs)
      if (e.attr == a)
        throw ParseError(lineno, at,
                         "attribute " + to_string(a) + " occurs twice in a rule");
    lhs.push_back({a, v});
    if (!c.eat('&')) break;
    c.skip_ws();
    if (c.peek() != 'a') c.fail("expected an equation after '&'");
  }
  std::int64_t rhs = c.arrow_and_decision();
  return DecisionRule(std::move(lhs), rhs);
}

}  // namespace

RuleSystem parse_system(std::string_view text) {
  std::vector<DecisionRule> rules;
  int lineno = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    std::string_view line = text.substr(
        start, end == std::string_view::npos ? text.size() - start : end - start);
    ++lineno;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first != std::string_view::npos && line[first] != '#')
      rules.push_back(parse_rule_line(line.substr(0, line.find('\r')), lineno));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  if (rules.empty()) throw ParseError(lineno, 1, "no rules in input");
  return RuleSystem(std::move(rules));
}

Assignment parse_assignment(std::string_view text) {
  Assignment out;
  Cursor c{text, 1};
  if (c.eol()) return out;
  while (true) {
    AttrId a = c.attr();
    c.expect('=', "expected '=' in an assignment entry");
    c.skip_ws();
    Value v = c.eat('*') ? Value::star() : Value::integer(c.uint());
    if (!out.try_set(a, v))
      c.fail("conflicting value for " + to_string(a));
    if (c.eol()) return out;
    c.expect(',', "expected ',' between assignment entries");
  }
}

}  // namespace ruletree
