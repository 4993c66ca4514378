#pragma once

#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace smtkit {

/// Splits SMT-LIB text into "(", ")" and atom tokens. Atoms keep their
/// surface form: string literals retain their quotes, quoted symbols
/// their bars. Whitespace and `;` comments are dropped.
/// Throws UnterminatedString / UnterminatedQuotedSymbol.
std::vector<std::string> tokenize(std::string_view text);

class SExpr {
 public:
  using List = std::vector<SExpr>;

  SExpr() : data_(List{}) {}
  static SExpr atom(std::string text) { return SExpr(std::move(text)); }
  static SExpr list(List items) { return SExpr(std::move(items)); }

  bool is_atom() const { return std::holds_alternative<std::string>(data_); }
  bool is_list() const { return std::holds_alternative<List>(data_); }
  const std::string& text() const { return std::get<std::string>(data_); }
  const List& items() const { return std::get<List>(data_); }

  bool is_atom(std::string_view s) const { return is_atom() && text() == s; }
  /// True for a non-empty list whose first element is the atom `head`.
  bool has_head(std::string_view head) const;
  std::size_t size() const { return is_list() ? items().size() : 0; }
  const SExpr& operator[](std::size_t i) const { return items().at(i); }

  friend bool operator==(const SExpr&, const SExpr&) = default;

 private:
  explicit SExpr(std::string text) : data_(std::move(text)) {}
  explicit SExpr(List items) : data_(std::move(items)) {}
  std::variant<std::string, List> data_;
};

/// Parses the first complete S-expression; returns it with the unread
/// tokens. Throws EmptyInput or UnbalancedParens.
std::pair<SExpr, std::span<const std::string>> parse_sexpr(std::span<const std::string> tokens);

/// Every top-level S-expression in `text`.
std::vector<SExpr> parse_sexprs(std::string_view text);
/// Exactly one S-expression; trailing tokens are UnbalancedParens.
SExpr parse_one(std::string_view text);

/// Single-line rendering with one space between list items.
std::string render(const SExpr& e);
std::ostream& operator<<(std::ostream& os, const SExpr& e);

/// Contents of a string literal atom with `""` escapes resolved.
std::string unquote_string(std::string_view literal);
/// Symbol text with surrounding `|` removed when present.
std::string symbol_text(std::string_view atom);

}  // namespace smtkit
