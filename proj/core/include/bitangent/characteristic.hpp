#pragma once

// Theta characteristics of genus 3, i.e. points of F_2^6 written as a top
// half m' = (a1,a2,a3) and a bottom half m'' = (b1,b2,b3). Values are always
// stored reduced mod 2.

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bitangent {

enum class Parity { even, odd };

class Characteristic {
 public:
  constexpr Characteristic() = default;

  /// `top` and `bottom` are the 3-bit labels i = 4a1+2a2+a3, j = 4b1+2b2+b3.
  constexpr Characteristic(unsigned top, unsigned bottom)
      : top_(static_cast<std::uint8_t>(top & 7u)),
        bottom_(static_cast<std::uint8_t>(bottom & 7u)) {}

  /// Two-digit label form used throughout the tables, e.g. 77 or 4 (== "04").
  static constexpr Characteristic from_label(int ij) {
    return {static_cast<unsigned>(ij / 10), static_cast<unsigned>(ij % 10)};
  }
  /// Dense index 0..63 (top * 8 + bottom).
  static constexpr Characteristic from_index(int index) {
    return {static_cast<unsigned>(index >> 3), static_cast<unsigned>(index & 7)};
  }

  /// Accepts "[abc,def]" (bits), "ij" (label digits, 0..7 each) or "(i,j)".
  static Characteristic parse(std::string_view text);

  constexpr unsigned top() const { return top_; }
  constexpr unsigned bottom() const { return bottom_; }
  constexpr int index() const { return top_ * 8 + bottom_; }
  constexpr int label() const { return top_ * 10 + bottom_; }

  /// Bit k (0-based, most significant first) of the top / bottom half.
  constexpr int top_bit(int k) const { return (top_ >> (2 - k)) & 1; }
  constexpr int bottom_bit(int k) const { return (bottom_ >> (2 - k)) & 1; }

  /// "[abc,def]"
  std::string to_string() const;
  /// "ij", always two digits.
  std::string label_string() const;

  friend constexpr Characteristic operator+(Characteristic a, Characteristic b) {
    return {static_cast<unsigned>(a.top_ ^ b.top_),
            static_cast<unsigned>(a.bottom_ ^ b.bottom_)};
  }
  friend constexpr bool operator==(Characteristic, Characteristic) = default;
  friend constexpr auto operator<=>(Characteristic a, Characteristic b) {
    return a.index() <=> b.index();
  }

 private:
  std::uint8_t top_ = 0;
  std::uint8_t bottom_ = 0;
};

namespace detail {
constexpr int popcount3(unsigned v) { return (v & 1) + ((v >> 1) & 1) + ((v >> 2) & 1); }
}  // namespace detail

/// e(m) = (-1)^{m'.m''}
constexpr int parity_sign(Characteristic m) {
  return detail::popcount3(m.top() & m.bottom()) % 2 == 0 ? 1 : -1;
}
constexpr Parity parity(Characteristic m) {
  return parity_sign(m) == 1 ? Parity::even : Parity::odd;
}
constexpr bool is_even(Characteristic m) { return parity(m) == Parity::even; }
constexpr bool is_odd(Characteristic m) { return parity(m) == Parity::odd; }

/// e(m1,m2,m3) = e(m1)e(m2)e(m3)e(m1+m2+m3); -1 is azygetic, +1 syzygetic.
constexpr int triple_sign(Characteristic a, Characteristic b, Characteristic c) {
  return parity_sign(a) * parity_sign(b) * parity_sign(c) * parity_sign(a + b + c);
}
constexpr bool is_azygetic(Characteristic a, Characteristic b, Characteristic c) {
  return triple_sign(a, b, c) == -1;
}

/// e(m,n) = (-1)^{m'.n'' - m''.n'}
constexpr int symplectic_pairing(Characteristic m, Characteristic n) {
  const int s = detail::popcount3(m.top() & n.bottom()) + detail::popcount3(m.bottom() & n.top());
  return s % 2 == 0 ? 1 : -1;
}

/// True iff the list holds 8 distinct characteristics with every triple azygetic.
bool is_fundamental_system(std::span<const Characteristic> chars);

/// All 64 characteristics in index order.
std::vector<Characteristic> all_characteristics();
/// The 36 even characteristics in index order.
std::vector<Characteristic> even_characteristics();
/// The 28 odd characteristics in index order.
std::vector<Characteristic> odd_characteristics();

}  // namespace bitangent
