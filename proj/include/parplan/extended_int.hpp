#pragma once

#include <compare>
#include <limits>
#include <ostream>
#include <string>

namespace parplan {

// Non-negative integer extended with +infinity; infinity absorbs addition.
class ExtendedInt {
 public:
  constexpr ExtendedInt() = default;
  constexpr explicit ExtendedInt(int v) : v_(v) {}

  static constexpr ExtendedInt infinity() { return ExtendedInt(kInf); }

  constexpr bool is_infinite() const { return v_ == kInf; }
  constexpr bool is_finite() const { return v_ != kInf; }
  constexpr int value() const { return v_; }

  friend constexpr ExtendedInt operator+(ExtendedInt a, ExtendedInt b) {
    if (a.is_infinite() || b.is_infinite()) return infinity();
    return ExtendedInt(a.v_ + b.v_);
  }
  friend constexpr auto operator<=>(ExtendedInt, ExtendedInt) = default;

  std::string str() const { return is_infinite() ? "inf" : std::to_string(v_); }
  friend std::ostream &operator<<(std::ostream &os, ExtendedInt x) { return os << x.str(); }

 private:
  static constexpr int kInf = std::numeric_limits<int>::max();
  int v_ = 0;
};

using LevelValue = ExtendedInt;
using HeuristicValue = ExtendedInt;

}  // namespace parplan
