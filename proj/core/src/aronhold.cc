#include "bitangent/aronhold.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "bitangent/errors.hpp"

namespace bitangent {

AronholdSet::AronholdSet(const std::array<Characteristic, 7>& members) : members_(members) {
  for (std::size_t i = 0; i < 7; ++i) {
    if (!is_odd(members_[i]))
      throw InvalidAronholdSet("member " + members_[i].to_string() + " is even");
    for (std::size_t j = 0; j < i; ++j)
      if (members_[i] == members_[j])
        throw InvalidAronholdSet("repeated member " + members_[i].to_string());
  }
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = i + 1; j < 7; ++j)
      for (std::size_t k = j + 1; k < 7; ++k)
        if (!is_azygetic(members_[i], members_[j], members_[k]))
          throw InvalidAronholdSet("syzygetic triple " + members_[i].to_string() + " " +
                                   members_[j].to_string() + " " + members_[k].to_string());
  base_ = std::accumulate(members_.begin(), members_.end(), Characteristic{});
  if (!is_even(base_)) throw InvalidAronholdSet("odd base " + base_.to_string());
}

AronholdSet AronholdSet::canonical() const {
  auto sorted = members_;
  std::sort(sorted.begin(), sorted.end());
  return AronholdSet(sorted);
}

bool AronholdSet::same_members(const AronholdSet& other) const {
  return canonical() == other.canonical();
}

AronholdSet reference_aronhold_set() {
  return AronholdSet({Characteristic::from_label(77), Characteristic::from_label(64),
                      Characteristic::from_label(51), Characteristic::from_label(46),
                      Characteristic::from_label(23), Characteristic::from_label(15),
                      Characteristic::from_label(32)});
}

std::vector<AronholdSet> enumerate_aronhold_sets() {
  const auto odd = odd_characteristics();
  std::vector<AronholdSet> out;
  std::array<Characteristic, 7> chosen{};

  // Depth-first over ascending 7-subsets, pruning as soon as a triple is syzygetic.
  auto extend = [&](auto&& self, std::size_t depth, std::size_t start) -> void {
    if (depth == 7) {
      out.emplace_back(chosen);
      return;
    }
    for (std::size_t c = start; c < odd.size(); ++c) {
      const Characteristic cand = odd[c];
      bool ok = true;
      for (std::size_t i = 0; i < depth && ok; ++i)
        for (std::size_t j = i + 1; j < depth && ok; ++j)
          ok = is_azygetic(chosen[i], chosen[j], cand);
      if (!ok) continue;
      chosen[depth] = cand;
      self(self, depth + 1, c + 1);
    }
  };
  extend(extend, 0, 0);
  return out;
}

AronholdSet translate_aronhold(const AronholdSet& s, int i) {
  if (i < 0 || i >= 7) throw InputError("member index out of range: " + std::to_string(i));
  const Characteristic shift = s.base() + s.member(i);
  std::array<Characteristic, 7> out{};
  for (int k = 0; k < 7; ++k) out[static_cast<std::size_t>(k)] = k == i ? s.member(i) : shift + s.member(k);
  return AronholdSet(out);
}

CharMatrix build_char_matrix(const AronholdSet& s) {
  CharMatrix::Table t{};
  const Characteristic m0 = s.base();
  for (int i = 0; i < 8; ++i) {
    for (int k = 0; k < 8; ++k) {
      Characteristic v;
      if (i == k) {
        v = m0;
      } else if (i == 0) {
        v = s.member(k - 1);
      } else if (k == 0) {
        v = s.member(i - 1);
      } else {
        v = (m0 + s.member(i - 1)) + s.member(k - 1);
      }
      t[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = v;
    }
  }
  return CharMatrix(t);
}

std::string CharMatrix::to_string() const {
  std::ostringstream os;
  for (const auto& row : entries_) {
    for (std::size_t k = 0; k < row.size(); ++k) os << (k ? " " : "") << row[k].to_string();
    os << '\n';
  }
  return os.str();
}

CharMatrix CharMatrix::parse(std::string_view text) {
  std::istringstream is{std::string(text)};
  Table t{};
  std::string token;
  for (auto& row : t) {
    for (auto& entry : row) {
      if (!(is >> token)) throw InputError("characteristic matrix: expected 64 entries");
      entry = Characteristic::parse(token);
    }
  }
  if (is >> token) throw InputError("characteristic matrix: trailing token '" + token + "'");
  return CharMatrix(t);
}

CharMatrix reference_char_matrix() {
  static constexpr const char* kRows =
      "[000,000] [111,111] [110,100] [101,001] [100,110] [010,011] [001,101] [011,010]\n"
      "[111,111] [000,000] [001,011] [010,110] [011,001] [101,100] [110,010] [100,101]\n"
      "[110,100] [001,011] [000,000] [011,101] [010,010] [100,111] [111,001] [101,110]\n"
      "[101,001] [010,110] [011,101] [000,000] [001,111] [111,010] [100,100] [110,011]\n"
      "[100,110] [011,001] [010,010] [001,111] [000,000] [110,101] [101,011] [111,100]\n"
      "[010,011] [101,100] [100,111] [111,010] [110,101] [000,000] [011,110] [001,001]\n"
      "[001,101] [110,010] [111,001] [100,100] [101,011] [011,110] [000,000] [010,111]\n"
      "[011,010] [100,101] [101,110] [110,011] [111,100] [001,001] [010,111] [000,000]\n";
  return CharMatrix::parse(kRows);
}

bool equivalent_up_to_permutation(const CharMatrix& a, const CharMatrix& b) {
  std::array<int, 8> perm{};
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool same = true;
    for (int i = 0; i < 8 && same; ++i)
      for (int k = 0; k < 8 && same; ++k) same = a(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(k)]) == b(i, k);
    if (same) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace bitangent
