#include <algorithm>
#include <map>
#include <set>

#include "bitangent/aronhold.hpp"
#include "bitangent/errors.hpp"
#include "doctest.h"

using namespace bitangent;

namespace {

Characteristic L(int label) { return Characteristic::from_label(label); }

std::set<int> member_labels(const AronholdSet& s) {
  std::set<int> out;
  for (Characteristic m : s.members()) out.insert(m.index());
  return out;
}

void check_invariants(const CharMatrix& cm, const AronholdSet& s) {
  std::set<int> seen;
  for (int i = 0; i < 8; ++i) {
    CHECK(cm(i, i) == s.base());
    for (int j = 0; j < 8; ++j) CHECK(cm(i, j) == cm(j, i));
    for (int j = i + 1; j < 8; ++j) {
      CHECK(is_odd(cm(i, j)));
      seen.insert(cm(i, j).index());
    }
  }
  for (int k = 1; k < 8; ++k) CHECK(cm(0, k) == s.member(k - 1));
  CHECK(seen.size() == 28);
}

}  // namespace

TEST_CASE("there are 288 Aronhold sets, eight per even base") {
  const auto sets = enumerate_aronhold_sets();
  REQUIRE(sets.size() == 288);
  std::map<int, int> per_base;
  for (const AronholdSet& s : sets) {
    per_base[s.base().index()]++;
    CHECK(is_even(s.base()));
  }
  CHECK(per_base.size() == 36);
  for (const auto& [base, n] : per_base) CHECK(n == 8);

  const auto ref = member_labels(reference_aronhold_set());
  CHECK(std::count_if(sets.begin(), sets.end(), [&](const AronholdSet& s) {
          return s.base() == Characteristic() && member_labels(s) == ref;
        }) == 1);
}

TEST_CASE("every triple of an Aronhold set is azygetic") {
  for (const AronholdSet& s : enumerate_aronhold_sets()) {
    const auto& m = s.members();
    for (int a = 0; a < 7; ++a)
      for (int b = a + 1; b < 7; ++b)
        for (int c = b + 1; c < 7; ++c) CHECK(triple_sign(m[a], m[b], m[c]) == -1);
  }
}

TEST_CASE("invalid Aronhold sets are rejected") {
  auto members = reference_aronhold_set().members();
  auto dup = members;
  dup[6] = dup[0];
  CHECK_THROWS_AS(AronholdSet{dup}, InvalidAronholdSet);
  auto with_even = members;
  with_even[3] = L(0);
  CHECK_THROWS_AS(AronholdSet{with_even}, InvalidAronholdSet);
  auto syz = members;
  syz[6] = L(13);  // odd, but syzygetic with some pair of the others
  CHECK_THROWS_AS(AronholdSet{syz}, InvalidAronholdSet);
}

TEST_CASE("translation by m0 + n_i") {
  const AronholdSet s = reference_aronhold_set();
  const AronholdSet t = translate_aronhold(s, 0);
  std::set<int> expected;
  for (const char* x : {"[111,111]", "[001,011]", "[010,110]", "[011,001]", "[101,100]", "[110,010]", "[100,101]"})
    expected.insert(Characteristic::parse(x).index());
  CHECK(member_labels(t) == expected);
  CHECK(t.base() == s.base());

  std::set<std::set<int>> distinct{member_labels(s)};
  for (int i = 0; i < 7; ++i) {
    const AronholdSet ti = translate_aronhold(s, i);
    CHECK(translate_aronhold(ti, i).members() == s.members());
    CHECK(ti.base() == s.base());
    distinct.insert(member_labels(ti));
  }
  CHECK(distinct.size() == 8);
  CHECK_THROWS(translate_aronhold(s, 7));
}

TEST_CASE("characteristic matrix of the reference set") {
  const CharMatrix cm = build_char_matrix(reference_aronhold_set());
  CHECK(cm == reference_char_matrix());
  CHECK(cm(2, 3) == Characteristic::parse("[011,101]"));
  for (int i = 0; i < 8; ++i) CHECK(cm(i, i) == Characteristic());
  check_invariants(cm, reference_aronhold_set());

  // Rows are Aronhold sets themselves; principal 3x3 minors carry azygetic triples.
  for (int i = 0; i < 8; ++i) {
    std::array<Characteristic, 7> row;
    int k = 0;
    for (int j = 0; j < 8; ++j)
      if (j != i) row[static_cast<std::size_t>(k++)] = cm(i, j);
    CHECK_NOTHROW(AronholdSet{row});
  }
  for (int a = 0; a < 8; ++a)
    for (int b = a + 1; b < 8; ++b)
      for (int c = b + 1; c < 8; ++c) CHECK(is_azygetic(cm(a, b), cm(a, c), cm(b, c)));
}

TEST_CASE("text form of characteristic matrices") {
  const CharMatrix cm = reference_char_matrix();
  CHECK(CharMatrix::parse(cm.to_string()) == cm);
  CHECK_THROWS_AS(CharMatrix::parse("[000,000]"), InputError);
  std::string text = cm.to_string();
  text.replace(text.find("[111,111]"), 9, "[111,11x]");
  CHECK_THROWS_AS(CharMatrix::parse(text), InputError);
}

TEST_CASE("all 288 sets give valid matrices; one class per base") {
  const auto sets = enumerate_aronhold_sets();
  std::map<int, std::vector<CharMatrix>> by_base;
  for (const AronholdSet& s : sets) {
    const CharMatrix cm = build_char_matrix(s);
    check_invariants(cm, s);
    by_base[s.base().index()].push_back(cm);
  }
  REQUIRE(by_base.size() == 36);
  for (const auto& [base, mats] : by_base) {
    REQUIRE(mats.size() == 8);
    for (std::size_t k = 1; k < mats.size(); ++k) CHECK(equivalent_up_to_permutation(mats[0], mats[k]));
  }
  CHECK_FALSE(equivalent_up_to_permutation(by_base.begin()->second[0], std::next(by_base.begin())->second[0]));
}
