#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <ostream>
#include <string>
#include <variant>

#include "smtkit/sort.hpp"

namespace smtkit {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Fixed-width unsigned bitvector value. `value < 2^width` always holds
/// for objects built through make().
struct BitVecValue {
  BigInt value;
  std::uint32_t width = 1;

  /// Throws Errc::BitWidthOverflow when value >= 2^width or value < 0.
  static BitVecValue make(BigInt value, std::uint32_t width);
  /// Reduces `value` modulo 2^width (two's complement for negatives).
  static BitVecValue wrap(const BigInt& value, std::uint32_t width);

  /// Two's-complement interpretation.
  BigInt as_signed() const;

  friend bool operator==(const BitVecValue&, const BitVecValue&) = default;
};

BigInt pow2(std::uint32_t exponent);

/// A ground value of one of the four sorts. Reals are exact and reduced.
class ConstVal {
 public:
  using Storage = std::variant<bool, BigInt, Rational, BitVecValue>;

  static ConstVal boolean(bool b) { return ConstVal(Storage(b)); }
  static ConstVal integer(BigInt v) { return ConstVal(Storage(std::move(v))); }
  static ConstVal integer(long long v) { return integer(BigInt(v)); }
  static ConstVal real(Rational v) { return ConstVal(Storage(std::move(v))); }
  /// Throws Errc::EvalDomainError for a zero denominator.
  static ConstVal real(const BigInt& num, const BigInt& den);
  static ConstVal bitvec(BigInt value, std::uint32_t width) {
    return ConstVal(Storage(BitVecValue::make(std::move(value), width)));
  }
  static ConstVal bitvec(BitVecValue v) { return ConstVal(Storage(std::move(v))); }

  Sort sort() const;

  bool is_bool() const { return std::holds_alternative<bool>(data_); }
  bool is_int() const { return std::holds_alternative<BigInt>(data_); }
  bool is_real() const { return std::holds_alternative<Rational>(data_); }
  bool is_bitvec() const { return std::holds_alternative<BitVecValue>(data_); }

  bool as_bool() const { return std::get<bool>(data_); }
  const BigInt& as_int() const { return std::get<BigInt>(data_); }
  const Rational& as_real() const { return std::get<Rational>(data_); }
  const BitVecValue& as_bitvec() const { return std::get<BitVecValue>(data_); }

  const Storage& storage() const { return data_; }

  friend bool operator==(const ConstVal&, const ConstVal&) = default;

  /// Human-readable form, e.g. `true`, `-3`, `7/2`, `#xff`.
  std::string to_string() const;

 private:
  explicit ConstVal(Storage data) : data_(std::move(data)) {}
  Storage data_;
};

std::ostream& operator<<(std::ostream& os, const ConstVal& value);

}  // namespace smtkit
