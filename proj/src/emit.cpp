#include "smtkit/emit.hpp"

#include <map>
#include <sstream>
#include <unordered_set>

#include "smtkit/error.hpp"

namespace smtkit {

namespace {

std::string hex_digits(const BigInt& v, std::uint32_t digits) {
  std::ostringstream os;
  os << std::hex << v;
  std::string s = os.str();
  return std::string(digits - std::min<std::size_t>(digits, s.size()), '0') + s;
}

std::string bin_digits(const BigInt& v, std::uint32_t width) {
  std::string s(width, '0');
  for (std::uint32_t i = 0; i < width; ++i) {
    if (bit_test(v, i)) s[width - 1 - i] = '1';
  }
  return s;
}

// Decimal expansion when the denominator divides a power of ten.
std::optional<std::string> finite_decimal(const BigInt& num, const BigInt& den) {
  BigInt d = den;
  unsigned twos = 0, fives = 0;
  while (d % 2 == 0) { d /= 2; ++twos; }
  while (d % 5 == 0) { d /= 5; ++fives; }
  if (d != 1) return std::nullopt;
  const unsigned digits = std::max(twos, fives);
  BigInt scale = 1;
  for (unsigned i = 0; i < digits; ++i) scale *= 10;
  const BigInt scaled = num * (scale / den);
  std::string s = scaled.str();
  if (digits == 0) return s + ".0";
  if (s.size() <= digits) s = std::string(digits - s.size() + 1, '0') + s;
  return s.substr(0, s.size() - digits) + "." + s.substr(s.size() - digits);
}

void emit_term_to(std::ostream& os, const Term& t) {
  std::visit(
      [&os](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Term::Var>) {
          os << x.name;
        } else if constexpr (std::is_same_v<T, Term::Const>) {
          os << emit_value(x.value);
        } else if constexpr (std::is_same_v<T, Term::App>) {
          os << '(';
          if (x.op.op == Op::Extract) {
            os << "(_ extract " << x.op.p0 << ' ' << x.op.p1 << ')';
          } else if (x.op.op == Op::ZeroExtend || x.op.op == Op::SignExtend) {
            os << "(_ " << op_symbol(x.op.op) << ' ' << x.op.p0 << ')';
          } else {
            os << op_symbol(x.op.op);
          }
          for (const Term& a : x.args) {
            os << ' ';
            emit_term_to(os, a);
          }
          os << ')';
        } else {
          os << '(' << x.decl.name();
          for (const Term& a : x.args) {
            os << ' ';
            emit_term_to(os, a);
          }
          os << ')';
        }
      },
      t.node());
}

struct DeclCollector {
  std::vector<Command> out;
  std::map<std::string, cmd::DeclareFun, std::less<>> seen;
  std::unordered_set<const void*> visited;

  void add(cmd::DeclareFun d) {
    auto it = seen.find(d.name);
    if (it == seen.end()) {
      seen.emplace(d.name, d);
      out.emplace_back(std::move(d));
    } else if (!(it->second == d)) {
      throw Error(Errc::SortConflict, "'" + d.name + "' is used with two different signatures");
    }
  }

  void visit(const Term& t) {
    if (!visited.insert(t.id()).second) return;
    if (t.is_var()) {
      add(cmd::DeclareFun{t.var_name(), {}, t.sort()});
    } else if (t.is_app()) {
      for (const Term& a : t.app().args) visit(a);
    } else if (t.is_uapp()) {
      for (const Term& a : t.uapp().args) visit(a);
      const UFuncDecl& d = t.uapp().decl;
      add(cmd::DeclareFun{d.name(), d.arg_sorts(), d.result_sort()});
    }
  }
};

}  // namespace

Command make_assert(Term term) {
  if (!term.sort().is_bool()) {
    throw Error(Errc::NonBoolAssert, "cannot assert a term of sort " + term.sort().to_string());
  }
  return cmd::Assert{std::move(term)};
}

Command make_push(std::uint32_t n) {
  if (n == 0) throw Error(Errc::ArityError, "push count must be positive");
  return cmd::Push{n};
}

Command make_pop(std::uint32_t n) {
  if (n == 0) throw Error(Errc::ArityError, "pop count must be positive");
  return cmd::Pop{n};
}

std::string emit_sort(const Sort& s) { return s.to_string(); }

std::string emit_value(const ConstVal& v) {
  switch (v.storage().index()) {
    case 0: return v.as_bool() ? "true" : "false";
    case 1: {
      const BigInt& i = v.as_int();
      return i < 0 ? "(- " + BigInt(-i).str() + ")" : i.str();
    }
    case 2: {
      const Rational& r = v.as_real();
      const BigInt num = abs(numerator(r));
      const BigInt& den = denominator(r);
      std::string body;
      if (auto dec = finite_decimal(num, den)) {
        body = *dec;
      } else {
        body = "(/ " + num.str() + ".0 " + den.str() + ".0)";
      }
      return r < 0 ? "(- " + body + ")" : body;
    }
    default: {
      const BitVecValue& bv = v.as_bitvec();
      if (bv.width % 4 == 0) return "#x" + hex_digits(bv.value, bv.width / 4);
      return "#b" + bin_digits(bv.value, bv.width);
    }
  }
}

std::string emit_term(const Term& t) {
  std::ostringstream os;
  emit_term_to(os, t);
  return os.str();
}

std::string emit_command(const Command& c) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, cmd::SetOption>) {
          return "(set-option :" + x.key + " " + x.value + ")";
        } else if constexpr (std::is_same_v<T, cmd::SetLogic>) {
          return "(set-logic " + x.name + ")";
        } else if constexpr (std::is_same_v<T, cmd::DeclareFun>) {
          std::string s = "(declare-fun " + x.name + " (";
          for (std::size_t i = 0; i < x.arg_sorts.size(); ++i) {
            if (i) s += ' ';
            s += emit_sort(x.arg_sorts[i]);
          }
          return s + ") " + emit_sort(x.result) + ")";
        } else if constexpr (std::is_same_v<T, cmd::Assert>) {
          return "(assert " + emit_term(x.term) + ")";
        } else if constexpr (std::is_same_v<T, cmd::CheckSat>) {
          return "(check-sat)";
        } else if constexpr (std::is_same_v<T, cmd::GetModel>) {
          return "(get-model)";
        } else if constexpr (std::is_same_v<T, cmd::GetValue>) {
          std::string s = "(get-value (";
          for (std::size_t i = 0; i < x.terms.size(); ++i) {
            if (i) s += ' ';
            s += emit_term(x.terms[i]);
          }
          return s + "))";
        } else if constexpr (std::is_same_v<T, cmd::Push>) {
          return "(push " + std::to_string(x.n) + ")";
        } else if constexpr (std::is_same_v<T, cmd::Pop>) {
          return "(pop " + std::to_string(x.n) + ")";
        } else if constexpr (std::is_same_v<T, cmd::Exit>) {
          return "(exit)";
        } else {
          return x.text;
        }
      },
      c);
}

std::vector<Command> collect_decls(std::span<const Term> terms) {
  DeclCollector collector;
  for (const Term& t : terms) collector.visit(t);
  return std::move(collector.out);
}

std::string script_for(std::span<const Term> terms, const EmitOptions& options) {
  std::vector<Command> commands;
  if (options.models) commands.emplace_back(cmd::SetOption{"produce-models", "true"});
  if (options.logic) commands.emplace_back(cmd::SetLogic{*options.logic});
  for (const Term& t : terms) {
    if (!t.sort().is_bool()) {
      throw Error(Errc::NonBoolAssert, "cannot assert " + emit_term(t) + " of sort " +
                                           t.sort().to_string());
    }
  }
  for (Command& d : collect_decls(terms)) commands.push_back(std::move(d));
  for (const Term& t : terms) commands.emplace_back(cmd::Assert{t});

  std::string out;
  for (const Command& c : commands) {
    out += emit_command(c);
    out += '\n';
  }
  return out;
}

void save_script(std::span<const Term> terms, const EmitOptions& options, std::ostream& sink) {
  const std::string text = script_for(terms, options) + "(check-sat)\n";
  if (!sink.good()) throw Error(Errc::StreamWrite, "output stream is not writable");
  sink.write(text.data(), static_cast<std::streamsize>(text.size()));
  sink.flush();
  if (!sink.good()) throw Error(Errc::StreamWrite, "failed to write script");
}

}  // namespace smtkit
