#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "bitangent/characteristic.hpp"

namespace bitangent {

/// Seven distinct odd characteristics with every triple azygetic. The order
/// of the members is kept as given; `base()` is their sum, an even
/// characteristic.
class AronholdSet {
 public:
  /// Throws InvalidAronholdSet if any invariant fails.
  explicit AronholdSet(const std::array<Characteristic, 7>& members);

  const std::array<Characteristic, 7>& members() const { return members_; }
  Characteristic member(int i) const { return members_.at(static_cast<std::size_t>(i)); }
  Characteristic base() const { return base_; }

  /// Same members, ascending by label.
  AronholdSet canonical() const;
  bool same_members(const AronholdSet& other) const;

  friend bool operator==(const AronholdSet&, const AronholdSet&) = default;

 private:
  std::array<Characteristic, 7> members_;
  Characteristic base_;
};

/// {77, 64, 51, 46, 23, 15, 32} in this order; base [000,000].
AronholdSet reference_aronhold_set();

/// All 288 Aronhold sets, members in canonical order, sorted lexicographically.
std::vector<AronholdSet> enumerate_aronhold_sets();

/// Translates the fundamental system {m0, n_1..n_7} by m0 + n_i and returns
/// the odd part. Member k of the result is n_i for k == i and
/// (m0 + n_i) + n_k otherwise, which is row i+1 of the characteristic matrix.
AronholdSet translate_aronhold(const AronholdSet& s, int i);

/// The symmetric 8x8 table indexed by {m0, n_1, .., n_7}:
/// (0,k) = n_k, (i,i) = m0, (i,k) = (m0 + n_i) + n_k.
class CharMatrix {
 public:
  using Table = std::array<std::array<Characteristic, 8>, 8>;

  explicit CharMatrix(const Table& entries) : entries_(entries) {}

  Characteristic operator()(int i, int j) const {
    return entries_.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(j));
  }
  Characteristic base() const { return entries_[0][0]; }
  const Table& entries() const { return entries_; }

  /// Row notation, one row per line: "[000,000] [111,111] ...".
  std::string to_string() const;
  /// Inverse of to_string(); any whitespace between tokens. Throws InputError.
  static CharMatrix parse(std::string_view text);

  friend bool operator==(const CharMatrix&, const CharMatrix&) = default;

 private:
  Table entries_;
};

CharMatrix build_char_matrix(const AronholdSet& s);

/// The matrix built from reference_aronhold_set(), as a literal table.
CharMatrix reference_char_matrix();

/// True iff some simultaneous row/column permutation maps a onto b.
bool equivalent_up_to_permutation(const CharMatrix& a, const CharMatrix& b);

}  // namespace bitangent
