#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace neumaps {

enum class Gen { X, Y, Z };

struct Letter {
  Gen gen;
  int power;  // +1 or -1

  bool operator==(const Letter&) const = default;
};

/// A word in X, Y, Z. Words act on the right: the leftmost letter is applied
/// first, so `i (Z^2 Y)` means "advance twice along z, then apply y".
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  static Word gen(Gen g, int power = 1);

  const std::vector<Letter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }
  std::size_t size() const { return letters_.size(); }

  Word inverse() const;
  Word pow(int k) const;
  Word reduced() const;  // free reduction

  friend Word operator*(const Word& a, const Word& b);
  bool operator==(const Word&) const = default;

 private:
  std::vector<Letter> letters_;
};

/// Conjugate u w u^-1 (as words, left to right).
Word conjugate(const Word& u, const Word& w);

/// Compact grammar: "Z^2 Y", "Y X^-1 Y X", "(Y X^-1 Y X)^3", "Z^-3 X Z^3".
/// Whitespace optional; "1" or "" is the empty word.
Word parse_word(std::string_view text);
std::string to_string(const Word& w);

char gen_name(Gen g);

}  // namespace neumaps
