#include "neumaps/word.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace neumaps {

char gen_name(Gen g) {
  switch (g) {
    case Gen::X: return 'X';
    case Gen::Y: return 'Y';
    case Gen::Z: return 'Z';
  }
  return '?';
}

Word Word::gen(Gen g, int power) {
  std::vector<Letter> out;
  const int sign = power < 0 ? -1 : 1;
  for (int i = 0; i < power * sign; ++i) out.push_back({g, sign});
  return Word(std::move(out));
}

Word Word::inverse() const {
  std::vector<Letter> out(letters_.rbegin(), letters_.rend());
  for (auto& l : out) l.power = -l.power;
  return Word(std::move(out));
}

Word Word::pow(int k) const {
  const Word base = k < 0 ? inverse() : *this;
  Word out;
  for (int i = 0; i < (k < 0 ? -k : k); ++i) out = out * base;
  return out;
}

Word Word::reduced() const {
  std::vector<Letter> out;
  for (const auto& l : letters_) {
    if (!out.empty() && out.back().gen == l.gen && out.back().power == -l.power)
      out.pop_back();
    else
      out.push_back(l);
  }
  return Word(std::move(out));
}

Word operator*(const Word& a, const Word& b) {
  std::vector<Letter> out = a.letters_;
  out.insert(out.end(), b.letters_.begin(), b.letters_.end());
  return Word(std::move(out));
}

Word conjugate(const Word& u, const Word& w) { return u * w * u.inverse(); }

namespace {

struct WordParser {
  std::string_view s;
  std::size_t pos = 0;

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("word parse error at column " + std::to_string(pos + 1) + ": " + what);
  }

  int exponent() {
    skip();
    if (pos >= s.size() || s[pos] != '^') return 1;
    ++pos;
    skip();
    int sign = 1;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    }
    if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos]))) fail("expected exponent");
    int v = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) v = v * 10 + (s[pos++] - '0');
    return sign * v;
  }

  Word sequence(bool nested) {
    Word out;
    for (;;) {
      skip();
      if (pos >= s.size()) {
        if (nested) fail("missing ')'");
        return out;
      }
      const char c = s[pos];
      if (c == ')') {
        if (!nested) fail("unbalanced ')'");
        ++pos;
        return out;
      }
      if (c == '(') {
        ++pos;
        Word inner = sequence(true);
        out = out * inner.pow(exponent());
        continue;
      }
      if (c == '1' && out.empty()) {  // identity
        ++pos;
        continue;
      }
      Gen g;
      switch (std::toupper(static_cast<unsigned char>(c))) {
        case 'X': g = Gen::X; break;
        case 'Y': g = Gen::Y; break;
        case 'Z': g = Gen::Z; break;
        default: fail(std::string("unexpected '") + c + "'");
      }
      ++pos;
      out = out * Word::gen(g, exponent());
    }
  }
};

}  // namespace

Word parse_word(std::string_view text) {
  WordParser p{text};
  return p.sequence(false);
}

std::string to_string(const Word& w) {
  if (w.empty()) return "1";
  std::ostringstream os;
  const auto& ls = w.letters();
  bool first = true;
  for (std::size_t i = 0; i < ls.size();) {
    std::size_t j = i;
    while (j < ls.size() && ls[j] == ls[i]) ++j;
    const int run = static_cast<int>(j - i) * ls[i].power;
    if (!first) os << ' ';
    first = false;
    os << gen_name(ls[i].gen);
    if (run != 1) os << '^' << run;
    i = j;
  }
  return os.str();
}

}  // namespace neumaps
