#pragma once

#include <cstdint>
#include <ostream>
#include <string>

namespace smtkit {

enum class SortKind : std::uint8_t { Bool, Int, Real, BitVec };

/// The type of a term. `width` is meaningful only for BitVec and is zero
/// for every other kind.
class Sort {
 public:
  static Sort boolean() { return Sort(SortKind::Bool, 0); }
  static Sort integer() { return Sort(SortKind::Int, 0); }
  static Sort real() { return Sort(SortKind::Real, 0); }
  /// Throws Errc::SortMismatch for width 0.
  static Sort bitvec(std::uint32_t width);

  SortKind kind() const noexcept { return kind_; }
  std::uint32_t width() const noexcept { return width_; }

  bool is_bool() const noexcept { return kind_ == SortKind::Bool; }
  bool is_int() const noexcept { return kind_ == SortKind::Int; }
  bool is_real() const noexcept { return kind_ == SortKind::Real; }
  bool is_numeric() const noexcept { return is_int() || is_real(); }
  bool is_bitvec() const noexcept { return kind_ == SortKind::BitVec; }

  friend bool operator==(const Sort&, const Sort&) = default;

  std::string to_string() const;

 private:
  Sort(SortKind kind, std::uint32_t width) : kind_(kind), width_(width) {}

  SortKind kind_;
  std::uint32_t width_;
};

std::ostream& operator<<(std::ostream& os, const Sort& sort);

}  // namespace smtkit
