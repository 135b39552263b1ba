#include "bitangent/characteristic.hpp"

#include <algorithm>
#include <cctype>

#include "bitangent/errors.hpp"

namespace bitangent {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

unsigned parse_bits(std::string_view bits, std::string_view whole) {
  if (bits.size() != 3) throw InputError("bad characteristic '" + std::string(whole) + "'");
  unsigned v = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw InputError("bad characteristic '" + std::string(whole) + "'");
    v = v * 2 + static_cast<unsigned>(c - '0');
  }
  return v;
}

unsigned parse_digit(char c, std::string_view whole) {
  if (c < '0' || c > '7') throw InputError("bad characteristic label '" + std::string(whole) + "'");
  return static_cast<unsigned>(c - '0');
}

}  // namespace

Characteristic Characteristic::parse(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.size() == 9 && s.front() == '[' && s.back() == ']' && s[4] == ',') {
    return {parse_bits(s.substr(1, 3), s), parse_bits(s.substr(5, 3), s)};
  }
  if (s.size() == 2) return {parse_digit(s[0], s), parse_digit(s[1], s)};
  if (s.size() == 5 && s.front() == '(' && s.back() == ')' && s[2] == ',') {
    return {parse_digit(s[1], s), parse_digit(s[3], s)};
  }
  throw InputError("bad characteristic '" + std::string(s) + "'");
}

std::string Characteristic::to_string() const {
  std::string out = "[000,000]";
  for (int k = 0; k < 3; ++k) {
    out[1 + k] = static_cast<char>('0' + top_bit(k));
    out[5 + k] = static_cast<char>('0' + bottom_bit(k));
  }
  return out;
}

std::string Characteristic::label_string() const {
  return {static_cast<char>('0' + top()), static_cast<char>('0' + bottom())};
}

bool is_fundamental_system(std::span<const Characteristic> chars) {
  if (chars.size() != 8) return false;
  for (std::size_t i = 0; i < chars.size(); ++i)
    for (std::size_t j = i + 1; j < chars.size(); ++j)
      if (chars[i] == chars[j]) return false;
  for (std::size_t i = 0; i < chars.size(); ++i)
    for (std::size_t j = i + 1; j < chars.size(); ++j)
      for (std::size_t k = j + 1; k < chars.size(); ++k)
        if (!is_azygetic(chars[i], chars[j], chars[k])) return false;
  return true;
}

std::vector<Characteristic> all_characteristics() {
  std::vector<Characteristic> out;
  out.reserve(64);
  for (int i = 0; i < 64; ++i) out.push_back(Characteristic::from_index(i));
  return out;
}

std::vector<Characteristic> even_characteristics() {
  auto all = all_characteristics();
  std::erase_if(all, [](Characteristic m) { return is_odd(m); });
  return all;
}

std::vector<Characteristic> odd_characteristics() {
  auto all = all_characteristics();
  std::erase_if(all, [](Characteristic m) { return is_even(m); });
  return all;
}

}  // namespace bitangent
