#include "neumaps/sequence.hpp"

#include <cctype>
#include <sstream>

namespace neumaps {

namespace {

std::vector<std::string> split_items(std::string_view body, bool commas) {
  std::vector<std::string> items;
  if (commas) {
    std::string cur;
    for (char c : body) {
      if (c == ',') {
        if (!cur.empty()) items.push_back(cur);
        cur.clear();
      } else if (!std::isspace(static_cast<unsigned char>(c))) {
        cur.push_back(c);
      }
    }
    if (!cur.empty()) items.push_back(cur);
  } else {
    for (char c : body)
      if (!std::isspace(static_cast<unsigned char>(c))) items.emplace_back(1, c);
  }
  return items;
}

}  // namespace

EventuallyPeriodic<std::string> parse_sequence(std::string_view text) {
  EventuallyPeriodic<std::string> out;
  const bool commas = text.find(',') != std::string_view::npos;
  std::string_view body = text;
  bool ellipsis = false;
  if (body.size() >= 3 && body.substr(body.size() - 3) == "...") {
    ellipsis = true;
    body.remove_suffix(3);
  } else if (body.size() >= 3 && body.substr(body.size() - 3) == "\xE2\x80\xA6") {
    ellipsis = true;  // unicode ellipsis
    body.remove_suffix(3);
  }
  const auto open = body.find('(');
  if (open != std::string_view::npos) {
    if (ellipsis) throw std::invalid_argument("sequence cannot mix '(...)' and '...'");
    const auto close = body.find(')', open);
    if (close == std::string_view::npos || close + 1 != body.size())
      throw std::invalid_argument("sequence: period must be a trailing '(...)' group");
    out.prefix = split_items(body.substr(0, open), commas);
    out.period = split_items(body.substr(open + 1, close - open - 1), commas);
    if (out.period.empty()) throw std::invalid_argument("sequence: empty period");
    return out;
  }
  out.prefix = split_items(body, commas);
  if (ellipsis) {
    if (out.prefix.empty()) throw std::invalid_argument("sequence: nothing to repeat");
    out.period = {out.prefix.back()};
    out.prefix.pop_back();
  }
  return out;
}

BitSource parse_bits(std::string_view text) {
  const auto raw = parse_sequence(text);
  auto conv = [](const std::vector<std::string>& v) {
    std::vector<int> r;
    for (const auto& s : v) {
      if (s != "0" && s != "1") throw std::invalid_argument("bit sequence item '" + s + "' is not 0/1");
      r.push_back(s == "1");
    }
    return r;
  };
  return {conv(raw.prefix), conv(raw.period)};
}

IntSource parse_ints(std::string_view text) {
  const auto raw = parse_sequence(text);
  auto conv = [](const std::vector<std::string>& v) {
    std::vector<std::int64_t> r;
    for (const auto& s : v) {
      std::size_t used = 0;
      const long long x = std::stoll(s, &used);
      if (used != s.size()) throw std::invalid_argument("integer sequence item '" + s + "'");
      r.push_back(x);
    }
    return r;
  };
  return {conv(raw.prefix), conv(raw.period)};
}

std::string format_bits(const BitSource& s) {
  std::string out;
  for (int b : s.prefix) out.push_back(b ? '1' : '0');
  if (!s.period.empty()) {
    out.push_back('(');
    for (int b : s.period) out.push_back(b ? '1' : '0');
    out.push_back(')');
  }
  return out;
}

std::string format_ints(const IntSource& s) {
  std::ostringstream os;
  for (std::size_t i = 0; i < s.prefix.size(); ++i) os << (i ? "," : "") << s.prefix[i];
  if (!s.period.empty()) {
    if (!s.prefix.empty()) os << ',';
    os << '(';
    for (std::size_t i = 0; i < s.period.size(); ++i) os << (i ? "," : "") << s.period[i];
    os << ')';
  }
  return os.str();
}

}  // namespace neumaps
