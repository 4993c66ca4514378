#include "smtkit/value.hpp"

#include <sstream>

#include "smtkit/error.hpp"

namespace smtkit {

Sort Sort::bitvec(std::uint32_t width) {
  if (width == 0) throw Error(Errc::SortMismatch, "bitvector width must be at least 1");
  return Sort(SortKind::BitVec, width);
}

std::string Sort::to_string() const {
  switch (kind_) {
    case SortKind::Bool: return "Bool";
    case SortKind::Int: return "Int";
    case SortKind::Real: return "Real";
    case SortKind::BitVec: return "(_ BitVec " + std::to_string(width_) + ")";
  }
  return "?";
}

std::ostream& operator<<(std::ostream& os, const Sort& sort) { return os << sort.to_string(); }

BigInt pow2(std::uint32_t exponent) {
  BigInt r = 1;
  r <<= exponent;
  return r;
}

BitVecValue BitVecValue::make(BigInt value, std::uint32_t width) {
  if (width == 0) throw Error(Errc::BitWidthOverflow, "bitvector width must be at least 1");
  if (value < 0 || value >= pow2(width)) {
    throw Error(Errc::BitWidthOverflow,
                value.str() + " does not fit in " + std::to_string(width) + " bits");
  }
  return BitVecValue{std::move(value), width};
}

BitVecValue BitVecValue::wrap(const BigInt& value, std::uint32_t width) {
  BigInt m = pow2(width);
  BigInt r = value % m;
  if (r < 0) r += m;
  return BitVecValue{std::move(r), width};
}

BigInt BitVecValue::as_signed() const {
  if (bit_test(value, width - 1)) return value - pow2(width);
  return value;
}

ConstVal ConstVal::real(const BigInt& num, const BigInt& den) {
  if (den == 0) throw Error(Errc::EvalDomainError, "zero denominator");
  return real(Rational(num, den));
}

Sort ConstVal::sort() const {
  switch (data_.index()) {
    case 0: return Sort::boolean();
    case 1: return Sort::integer();
    case 2: return Sort::real();
    default: return Sort::bitvec(std::get<BitVecValue>(data_).width);
  }
}

std::string ConstVal::to_string() const {
  switch (data_.index()) {
    case 0: return as_bool() ? "true" : "false";
    case 1: return as_int().str();
    case 2: {
      const Rational& r = as_real();
      if (denominator(r) == 1) return numerator(r).str();
      return numerator(r).str() + "/" + denominator(r).str();
    }
    default: {
      const BitVecValue& bv = as_bitvec();
      std::ostringstream os;
      os << "#x" << std::hex << bv.value << "[" << std::dec << bv.width << "]";
      return os.str();
    }
  }
}

std::ostream& operator<<(std::ostream& os, const ConstVal& value) { return os << value.to_string(); }

}  // namespace smtkit
