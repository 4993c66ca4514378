#include "smtkit/response.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>

namespace smtkit {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

bool is_numeral(std::string_view s) { return all_digits(s); }

// cpp_int reads a leading 0 as an octal prefix, so go digit by digit.
BigInt digits_value(std::string_view s) {
  BigInt v = 0;
  for (char c : s) v = v * 10 + (c - '0');
  return v;
}

bool is_decimal(std::string_view s) {
  const auto dot = s.find('.');
  return dot != std::string_view::npos && all_digits(s.substr(0, dot)) &&
         all_digits(s.substr(dot + 1));
}

Rational decimal_value(std::string_view s) {
  const auto dot = s.find('.');
  const std::string digits = std::string(s.substr(0, dot)) + std::string(s.substr(dot + 1));
  BigInt den = 1;
  for (std::size_t i = dot + 1; i < s.size(); ++i) den *= 10;
  return Rational(digits_value(digits), den);
}

[[noreturn]] void unsupported(const SExpr& e, const std::string& why) {
  throw Error(Errc::UnsupportedValueForm, why + ": " + render(e));
}

std::optional<BitVecValue> bitvec_literal(std::string_view s) {
  if (s.size() > 2 && s[0] == '#' && s[1] == 'x') {
    BigInt v = 0;
    for (char c : s.substr(2)) {
      int d;
      if (c >= '0' && c <= '9') d = c - '0';
      else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
      else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
      else return std::nullopt;
      v = v * 16 + d;
    }
    return BitVecValue::make(v, static_cast<std::uint32_t>(4 * (s.size() - 2)));
  }
  if (s.size() > 2 && s[0] == '#' && s[1] == 'b') {
    BigInt v = 0;
    for (char c : s.substr(2)) {
      if (c != '0' && c != '1') return std::nullopt;
      v = v * 2 + (c - '0');
    }
    return BitVecValue::make(v, static_cast<std::uint32_t>(s.size() - 2));
  }
  return std::nullopt;
}

ConstVal coerce(ConstVal v, const std::optional<Sort>& expected, const SExpr& e) {
  if (!expected || v.sort() == *expected) return v;
  if (expected->is_real() && v.is_int()) return ConstVal::real(Rational(v.as_int()));
  unsupported(e, "value of sort " + v.sort().to_string() + " where " +
                     expected->to_string() + " was expected");
}

ConstVal parse_value_raw(const SExpr& e) {
  if (e.is_atom()) {
    const std::string& s = e.text();
    if (s == "true") return ConstVal::boolean(true);
    if (s == "false") return ConstVal::boolean(false);
    if (is_numeral(s)) return ConstVal::integer(digits_value(s));
    if (is_decimal(s)) return ConstVal::real(decimal_value(s));
    if (auto bv = bitvec_literal(s)) return ConstVal::bitvec(*bv);
    unsupported(e, "not a value");
  }
  if (e.size() == 2 && e.has_head("-")) {
    ConstVal inner = parse_value_raw(e[1]);
    if (inner.is_int()) return ConstVal::integer(-inner.as_int());
    if (inner.is_real()) return ConstVal::real(-inner.as_real());
    unsupported(e, "negation of a non-numeric value");
  }
  if (e.size() == 3 && e.has_head("/")) {
    auto rational = [&e](const ConstVal& v) -> Rational {
      if (v.is_int()) return Rational(v.as_int());
      if (v.is_real()) return v.as_real();
      unsupported(e, "division of non-numeric values");
    };
    const Rational num = rational(parse_value_raw(e[1]));
    const Rational den = rational(parse_value_raw(e[2]));
    if (den == 0) unsupported(e, "division by zero");
    return ConstVal::real(num / den);
  }
  if (e.size() == 3 && e.has_head("_") && e[1].is_atom() && e[1].text().starts_with("bv") &&
      e[2].is_atom() && is_numeral(e[2].text())) {
    const std::string digits = e[1].text().substr(2);
    if (!is_numeral(digits)) unsupported(e, "bad bitvector literal");
    const auto width = static_cast<std::uint32_t>(std::stoul(e[2].text()));
    return ConstVal::bitvec(digits_value(digits), width);
  }
  if (e.size() == 2 && e.has_head("to_real")) {
    ConstVal inner = parse_value_raw(e[1]);
    if (inner.is_int()) return ConstVal::real(Rational(inner.as_int()));
  }
  unsupported(e, "unrecognized value form");
}

// Function-body decoding ------------------------------------------------

class BodyDecoder {
 public:
  BodyDecoder(const std::vector<std::pair<std::string, Sort>>& params, Sort result)
      : params_(params), result_(result) {}

  FuncInterp decode(const SExpr& body) {
    FuncInterp fi;
    fi.params = params_;
    const SExpr* cur = &strip_let(body);
    while (cur->size() == 4 && cur->has_head("ite")) {
      auto args = guard_args(resolve((*cur)[1]));
      if (!args) unsupported(*cur, "ite guard is not a point condition");
      fi.cases.push_back({std::move(*args), value(resolve((*cur)[2]))});
      cur = &strip_let(resolve((*cur)[3]));
    }
    try {
      fi.fallback = value(*cur);
      return fi;
    } catch (const Error&) {
      if (!result_.is_bool() || !fi.cases.empty()) throw;
    }
    // Bool-valued body that is itself a point condition.
    bool negated = false;
    const SExpr* g = cur;
    if (g->size() == 2 && g->has_head("not")) {
      negated = true;
      g = &resolve((*g)[1]);
    }
    auto args = guard_args(*g);
    if (!args) unsupported(*cur, "function body is not an ite chain");
    fi.cases.push_back({std::move(*args), ConstVal::boolean(!negated)});
    fi.fallback = ConstVal::boolean(negated);
    return fi;
  }

 private:
  const SExpr& strip_let(const SExpr& e) {
    const SExpr* cur = &e;
    while (cur->size() == 3 && cur->has_head("let") && (*cur)[1].is_list()) {
      for (const SExpr& binding : (*cur)[1].items()) {
        if (binding.size() != 2 || !binding[0].is_atom()) unsupported(*cur, "bad let binding");
        env_[binding[0].text()] = &binding[1];
      }
      cur = &(*cur)[2];
    }
    return *cur;
  }

  const SExpr& resolve(const SExpr& e) {
    if (e.is_atom()) {
      auto it = env_.find(e.text());
      if (it != env_.end()) return strip_let(resolve(*it->second));
    }
    return strip_let(e);
  }

  ConstVal value(const SExpr& e) { return coerce(parse_value_raw(e), result_, e); }

  std::optional<std::size_t> param_index(const SExpr& e) const {
    if (!e.is_atom()) return std::nullopt;
    const std::string name = symbol_text(e.text());
    for (std::size_t i = 0; i < params_.size(); ++i) {
      if (params_[i].first == name) return i;
    }
    return std::nullopt;
  }

  bool bind(std::vector<std::optional<ConstVal>>& slots, const SExpr& g) {
    const SExpr& guard = resolve(g);
    if (guard.has_head("and")) {
      for (std::size_t i = 1; i < guard.size(); ++i) {
        if (!bind(slots, guard[i])) return false;
      }
      return true;
    }
    auto set = [&slots](std::size_t idx, ConstVal v) {
      if (slots[idx]) return false;
      slots[idx] = std::move(v);
      return true;
    };
    if (guard.size() == 3 && guard.has_head("=")) {
      const SExpr& lhs = resolve(guard[1]);
      const SExpr& rhs = resolve(guard[2]);
      auto li = param_index(lhs);
      auto ri = param_index(rhs);
      if (li && !ri) return try_set(*li, rhs, set);
      if (ri && !li) return try_set(*ri, lhs, set);
      return false;
    }
    if (auto idx = param_index(guard); idx && params_[*idx].second.is_bool()) {
      return set(*idx, ConstVal::boolean(true));
    }
    if (guard.size() == 2 && guard.has_head("not")) {
      if (auto idx = param_index(resolve(guard[1])); idx && params_[*idx].second.is_bool()) {
        return set(*idx, ConstVal::boolean(false));
      }
    }
    return false;
  }

  template <typename Set>
  bool try_set(std::size_t idx, const SExpr& v, Set& set) {
    try {
      return set(idx, coerce(parse_value_raw(v), params_[idx].second, v));
    } catch (const Error&) {
      return false;
    }
  }

  std::optional<std::vector<ConstVal>> guard_args(const SExpr& guard) {
    std::vector<std::optional<ConstVal>> slots(params_.size());
    if (!bind(slots, guard)) return std::nullopt;
    std::vector<ConstVal> out;
    for (auto& s : slots) {
      if (!s) return std::nullopt;
      out.push_back(std::move(*s));
    }
    return out;
  }

  const std::vector<std::pair<std::string, Sort>>& params_;
  Sort result_;
  std::unordered_map<std::string, const SExpr*> env_;
};

// Term reading ---------------------------------------------------------

const std::unordered_map<std::string_view, Op>& op_table() {
  static const std::unordered_map<std::string_view, Op> table = {
      {"not", Op::Not}, {"and", Op::And}, {"or", Op::Or}, {"xor", Op::Xor},
      {"=>", Op::Implies}, {"=", Op::Eq}, {"ite", Op::Ite}, {"distinct", Op::Distinct},
      {"+", Op::Add}, {"-", Op::Sub}, {"*", Op::Mul}, {"div", Op::IntDiv}, {"mod", Op::Mod},
      {"abs", Op::Abs}, {"/", Op::RealDiv}, {"<", Op::Lt}, {"<=", Op::Le}, {">", Op::Gt},
      {">=", Op::Ge}, {"to_real", Op::ToReal}, {"to_int", Op::ToInt}, {"concat", Op::Concat},
      {"bvnot", Op::BvNot}, {"bvand", Op::BvAnd}, {"bvor", Op::BvOr}, {"bvxor", Op::BvXor},
      {"bvneg", Op::BvNeg}, {"bvadd", Op::BvAdd}, {"bvsub", Op::BvSub}, {"bvmul", Op::BvMul},
      {"bvudiv", Op::BvUdiv}, {"bvurem", Op::BvUrem}, {"bvshl", Op::BvShl},
      {"bvlshr", Op::BvLshr}, {"bvashr", Op::BvAshr}, {"bvult", Op::BvUlt},
      {"bvule", Op::BvUle}, {"bvugt", Op::BvUgt}, {"bvuge", Op::BvUge}, {"bvslt", Op::BvSlt},
      {"bvsle", Op::BvSle}, {"bvsgt", Op::BvSgt}, {"bvsge", Op::BvSge},
  };
  return table;
}

bool numeric_atom(const SExpr& e) {
  return e.is_atom() && (is_numeral(e.text()) || is_decimal(e.text()));
}

Rational atom_rational(const SExpr& e) {
  return is_decimal(e.text()) ? decimal_value(e.text()) : Rational(digits_value(e.text()));
}

// Literal shapes produced by emit_value.
bool is_literal(const SExpr& e) {
  if (e.is_atom()) {
    const std::string& s = e.text();
    return s == "true" || s == "false" || numeric_atom(e) || bitvec_literal(s).has_value();
  }
  if (e.size() == 2 && e.has_head("-")) {
    return numeric_atom(e[1]) || (e[1].size() == 3 && e[1].has_head("/") && is_literal(e[1]));
  }
  if (e.size() == 3 && e.has_head("/")) {
    return numeric_atom(e[1]) && numeric_atom(e[2]) && atom_rational(e[2]) != 0;
  }
  return e.size() == 3 && e.has_head("_") && e[1].is_atom() && e[1].text().starts_with("bv");
}

std::uint32_t index_param(const SExpr& e) {
  if (!e.is_atom() || !is_numeral(e.text())) {
    throw Error(Errc::UnrecognizedResponse, "expected a numeral index, got " + render(e));
  }
  return static_cast<std::uint32_t>(std::stoul(e.text()));
}

Term parse_term_impl(const SExpr& e, const SymbolTable& symbols) {
  if (is_literal(e)) {
    ConstVal v = parse_value_raw(e);
    if (e.is_atom() && is_decimal(e.text()) && v.is_int()) v = ConstVal::real(Rational(v.as_int()));
    return mk_const(std::move(v));
  }
  if (e.is_atom()) {
    const std::string name = symbol_text(e.text());
    const cmd::DeclareFun* d = symbols.find(name);
    if (!d) throw Error(Errc::UnboundName, "undeclared symbol '" + name + "'");
    if (!d->arg_sorts.empty()) {
      throw Error(Errc::ArityError, "function '" + name + "' used without arguments");
    }
    return mk_var(name, d->result);
  }
  if (e.size() < 2) throw Error(Errc::UnrecognizedResponse, "cannot read term " + render(e));

  std::vector<Term> args;
  for (std::size_t i = 1; i < e.size(); ++i) args.push_back(parse_term_impl(e[i], symbols));

  const SExpr& head = e[0];
  if (head.is_list()) {
    if (head.size() == 4 && head.has_head("_") && head[1].is_atom("extract")) {
      return mk_app_raw(OpKind::extract(index_param(head[2]), index_param(head[3])), args);
    }
    if (head.size() == 3 && head.has_head("_") && head[1].is_atom("zero_extend")) {
      return mk_app_raw(OpKind::zero_extend(index_param(head[2])), args);
    }
    if (head.size() == 3 && head.has_head("_") && head[1].is_atom("sign_extend")) {
      return mk_app_raw(OpKind::sign_extend(index_param(head[2])), args);
    }
    throw Error(Errc::UnrecognizedResponse, "unknown indexed operator " + render(head));
  }

  const std::string name = symbol_text(head.text());
  if (const cmd::DeclareFun* d = symbols.find(name); d && !d->arg_sorts.empty()) {
    return apply_ufunc(UFuncDecl(d->name, d->arg_sorts, d->result), args);
  }
  const auto& table = op_table();
  auto it = table.find(name);
  if (it == table.end()) throw Error(Errc::UnrecognizedResponse, "unknown operator '" + name + "'");
  Op op = it->second;
  if (op == Op::Sub && args.size() == 1) op = Op::Neg;
  return mk_app_raw(op, args);
}

}  // namespace

std::string_view to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::Sat: return "sat";
    case CheckStatus::Unsat: return "unsat";
    case CheckStatus::Unknown: return "unknown";
  }
  return "?";
}

SymbolTable::SymbolTable(std::span<const Command> decls) {
  for (const Command& c : decls) {
    if (const auto* d = std::get_if<cmd::DeclareFun>(&c)) declare(*d);
  }
}

void SymbolTable::declare(const cmd::DeclareFun& decl) { table_.insert_or_assign(decl.name, decl); }

const cmd::DeclareFun* SymbolTable::find(std::string_view name) const {
  auto it = table_.find(name);
  return it == table_.end() ? nullptr : &it->second;
}

std::optional<std::string> error_message(const SExpr& reply) {
  if (reply.size() == 2 && reply.has_head("error") && reply[1].is_atom()) {
    return unquote_string(reply[1].text());
  }
  return std::nullopt;
}

CheckStatus parse_check_sat(std::string_view text) {
  std::vector<SExpr> exprs;
  try {
    exprs = parse_sexprs(text);
  } catch (const Error& e) {
    throw Error(Errc::UnrecognizedResponse, "unreadable check-sat reply: " + std::string(text));
  }
  if (exprs.size() == 1) {
    const SExpr& e = exprs.front();
    if (e.is_atom("sat")) return CheckStatus::Sat;
    if (e.is_atom("unsat")) return CheckStatus::Unsat;
    if (e.is_atom("unknown")) return CheckStatus::Unknown;
    if (auto msg = error_message(e)) throw Error(Errc::SolverError, *msg);
  }
  throw Error(Errc::UnrecognizedResponse, "unexpected check-sat reply: " + std::string(text));
}

Sort parse_sort(const SExpr& e) {
  if (e.is_atom("Bool")) return Sort::boolean();
  if (e.is_atom("Int")) return Sort::integer();
  if (e.is_atom("Real")) return Sort::real();
  if (e.size() == 3 && e.has_head("_") && e[1].is_atom("BitVec") && e[2].is_atom() &&
      is_numeral(e[2].text())) {
    return Sort::bitvec(static_cast<std::uint32_t>(std::stoul(e[2].text())));
  }
  throw Error(Errc::UnsupportedValueForm, "unsupported sort " + render(e));
}

ConstVal parse_value(const SExpr& e, std::optional<Sort> expected) {
  return coerce(parse_value_raw(e), expected, e);
}

Model parse_model(const SExpr& reply, const SymbolTable& decls) {
  if (!reply.is_list()) throw Error(Errc::MalformedModel, "model reply is not a list: " + render(reply));
  if (auto msg = error_message(reply)) throw Error(Errc::SolverError, *msg);

  std::span<const SExpr> entries(reply.items());
  if (!entries.empty() && entries.front().is_atom("model")) entries = entries.subspan(1);

  Model model;
  for (const SExpr& entry : entries) {
    if (entry.has_head("declare-sort") || entry.has_head("declare-fun") ||
        entry.has_head("forall")) {
      continue;  // uninterpreted sort universes; outside the supported theories
    }
    if (!(entry.size() == 5 && entry.has_head("define-fun") && entry[1].is_atom() &&
          entry[2].is_list())) {
      model.issues[render(entry)] = {Errc::MalformedModel, "not a define-fun entry"};
      continue;
    }
    const std::string name = symbol_text(entry[1].text());
    if (name.find('!') != std::string::npos && !decls.contains(name)) continue;

    try {
      const Sort result = parse_sort(entry[3]);
      std::vector<std::pair<std::string, Sort>> params;
      for (const SExpr& p : entry[2].items()) {
        if (p.size() != 2 || !p[0].is_atom()) {
          throw Error(Errc::MalformedModel, "bad parameter " + render(p));
        }
        params.emplace_back(symbol_text(p[0].text()), parse_sort(p[1]));
      }
      if (params.empty()) {
        BodyDecoder decoder(params, result);
        model.consts.insert_or_assign(name, decoder.decode(entry[4]).fallback);
      } else {
        model.funcs.insert_or_assign(name, BodyDecoder(params, result).decode(entry[4]));
      }
    } catch (const Error& e) {
      model.issues[name] = {e.code(), e.detail()};
    }
  }
  return model;
}

std::vector<std::pair<SExpr, ConstVal>> parse_get_value(const SExpr& reply) {
  if (auto msg = error_message(reply)) throw Error(Errc::SolverError, *msg);
  if (!reply.is_list()) {
    throw Error(Errc::UnrecognizedResponse, "get-value reply is not a list: " + render(reply));
  }
  std::vector<std::pair<SExpr, ConstVal>> out;
  for (const SExpr& pair : reply.items()) {
    if (pair.size() != 2) {
      throw Error(Errc::UnrecognizedResponse, "get-value entry is not a pair: " + render(pair));
    }
    out.emplace_back(pair[0], parse_value_raw(pair[1]));
  }
  return out;
}

Term parse_term(const SExpr& e, const SymbolTable& symbols) { return parse_term_impl(e, symbols); }

std::vector<Command> parse_script(std::string_view text) {
  std::vector<Command> out;
  SymbolTable symbols;
  for (const SExpr& e : parse_sexprs(text)) {
    auto count = [&e]() -> std::uint32_t { return e.size() >= 2 ? index_param(e[1]) : 1; };
    if (e.size() == 3 && e.has_head("set-option") && e[1].is_atom() &&
        e[1].text().starts_with(":")) {
      out.emplace_back(cmd::SetOption{e[1].text().substr(1), render(e[2])});
    } else if (e.size() == 2 && e.has_head("set-logic") && e[1].is_atom()) {
      out.emplace_back(cmd::SetLogic{e[1].text()});
    } else if (e.size() == 4 && e.has_head("declare-fun") && e[1].is_atom() && e[2].is_list()) {
      cmd::DeclareFun d{symbol_text(e[1].text()), {}, parse_sort(e[3])};
      for (const SExpr& s : e[2].items()) d.arg_sorts.push_back(parse_sort(s));
      symbols.declare(d);
      out.emplace_back(std::move(d));
    } else if (e.size() == 3 && e.has_head("declare-const") && e[1].is_atom()) {
      cmd::DeclareFun d{symbol_text(e[1].text()), {}, parse_sort(e[2])};
      symbols.declare(d);
      out.emplace_back(std::move(d));
    } else if (e.size() == 2 && e.has_head("assert")) {
      out.push_back(make_assert(parse_term(e[1], symbols)));
    } else if (e.size() == 1 && e.has_head("check-sat")) {
      out.emplace_back(cmd::CheckSat{});
    } else if (e.size() == 1 && e.has_head("get-model")) {
      out.emplace_back(cmd::GetModel{});
    } else if (e.size() == 2 && e.has_head("get-value") && e[1].is_list()) {
      cmd::GetValue gv;
      for (const SExpr& t : e[1].items()) gv.terms.push_back(parse_term(t, symbols));
      out.emplace_back(std::move(gv));
    } else if (e.size() <= 2 && e.has_head("push")) {
      out.push_back(make_push(count()));
    } else if (e.size() <= 2 && e.has_head("pop")) {
      out.push_back(make_pop(count()));
    } else if (e.size() == 1 && e.has_head("exit")) {
      out.emplace_back(cmd::Exit{});
    } else {
      out.emplace_back(cmd::Raw{render(e)});
    }
  }
  return out;
}

}  // namespace smtkit
