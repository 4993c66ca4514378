#include "smtkit/sexpr.hpp"

#include <cctype>

#include "smtkit/error.hpp"

namespace smtkit {

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == ';') {
      while (i < n && text[i] != '\n') ++i;
    } else if (c == '(' || c == ')') {
      tokens.emplace_back(1, c);
      ++i;
    } else if (c == '"') {
      std::size_t j = i + 1;
      for (;;) {
        if (j >= n) throw Error(Errc::UnterminatedString, "string literal never closed");
        if (text[j] == '"') {
          if (j + 1 < n && text[j + 1] == '"') {
            j += 2;
            continue;
          }
          break;
        }
        ++j;
      }
      tokens.emplace_back(text.substr(i, j + 1 - i));
      i = j + 1;
    } else if (c == '|') {
      const std::size_t j = text.find('|', i + 1);
      if (j == std::string_view::npos) {
        throw Error(Errc::UnterminatedQuotedSymbol, "quoted symbol never closed");
      }
      tokens.emplace_back(text.substr(i, j + 1 - i));
      i = j + 1;
    } else {
      std::size_t j = i;
      while (j < n && !std::isspace(static_cast<unsigned char>(text[j])) && text[j] != '(' &&
             text[j] != ')' && text[j] != ';' && text[j] != '"' && text[j] != '|') {
        ++j;
      }
      tokens.emplace_back(text.substr(i, j - i));
      i = j;
    }
  }
  return tokens;
}

bool SExpr::has_head(std::string_view head) const {
  return is_list() && !items().empty() && items().front().is_atom(head);
}

std::pair<SExpr, std::span<const std::string>> parse_sexpr(std::span<const std::string> tokens) {
  if (tokens.empty()) throw Error(Errc::EmptyInput, "no S-expression to parse");
  if (tokens.front() == ")") throw Error(Errc::UnbalancedParens, "unexpected ')'");
  if (tokens.front() != "(") return {SExpr::atom(tokens.front()), tokens.subspan(1)};

  // Explicit stack so deeply nested replies cannot exhaust the call stack.
  std::vector<SExpr::List> stack;
  std::size_t i = 0;
  for (; i < tokens.size(); ++i) {
    const std::string& tok = tokens[i];
    if (tok == "(") {
      stack.emplace_back();
    } else if (tok == ")") {
      SExpr done = SExpr::list(std::move(stack.back()));
      stack.pop_back();
      if (stack.empty()) return {std::move(done), tokens.subspan(i + 1)};
      stack.back().push_back(std::move(done));
    } else {
      stack.back().push_back(SExpr::atom(tok));
    }
  }
  throw Error(Errc::UnbalancedParens, std::to_string(stack.size()) + " unclosed '('");
}

std::vector<SExpr> parse_sexprs(std::string_view text) {
  const std::vector<std::string> tokens = tokenize(text);
  std::span<const std::string> rest(tokens);
  std::vector<SExpr> out;
  while (!rest.empty()) {
    auto [e, remaining] = parse_sexpr(rest);
    out.push_back(std::move(e));
    rest = remaining;
  }
  return out;
}

SExpr parse_one(std::string_view text) {
  const std::vector<std::string> tokens = tokenize(text);
  auto [e, rest] = parse_sexpr(tokens);
  if (!rest.empty()) {
    throw Error(Errc::UnbalancedParens, "trailing input after S-expression: " + rest.front());
  }
  return e;
}

namespace {
void render_to(std::string& out, const SExpr& e) {
  if (e.is_atom()) {
    out += e.text();
    return;
  }
  out += '(';
  bool first = true;
  for (const SExpr& item : e.items()) {
    if (!first) out += ' ';
    first = false;
    render_to(out, item);
  }
  out += ')';
}
}  // namespace

std::string render(const SExpr& e) {
  std::string out;
  render_to(out, e);
  return out;
}

std::ostream& operator<<(std::ostream& os, const SExpr& e) { return os << render(e); }

std::string unquote_string(std::string_view literal) {
  if (literal.size() < 2 || literal.front() != '"' || literal.back() != '"') {
    return std::string(literal);
  }
  std::string out;
  for (std::size_t i = 1; i + 1 < literal.size(); ++i) {
    out += literal[i];
    if (literal[i] == '"') ++i;  // "" -> "
  }
  return out;
}

std::string symbol_text(std::string_view atom) {
  if (atom.size() >= 2 && atom.front() == '|' && atom.back() == '|') {
    return std::string(atom.substr(1, atom.size() - 2));
  }
  return std::string(atom);
}

}  // namespace smtkit
