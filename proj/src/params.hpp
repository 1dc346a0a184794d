#pragma once

// Parser for "name(a,b;key=value;key=value)" identifiers used by block ids
// and catalog expressions. Values may contain nested parentheses.

#include <map>
#include <string>
#include <vector>

#include "neumaps/block.hpp"

namespace neumaps {

struct Params {
  std::string name;
  std::vector<std::string> positional;
  std::map<std::string, std::string> named;
};

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline Params parse_params(const std::string& text) {
  Params out;
  const std::string s = trim(text);
  const auto open = s.find('(');
  if (open == std::string::npos) {
    out.name = s;
    return out;
  }
  if (s.back() != ')')
    throw MapError(MapErrorCode::InvalidDescription, "missing ')' at column " + std::to_string(s.size()) + " in '" + s + "'");
  out.name = trim(s.substr(0, open));
  const std::string body = s.substr(open + 1, s.size() - open - 2);
  std::vector<std::string> segments;
  std::string cur;
  int depth = 0;
  for (std::size_t i = 0; i < body.size(); ++i) {
    const char c = body[i];
    if (c == '(') ++depth;
    if (c == ')' && --depth < 0)
      throw MapError(MapErrorCode::InvalidDescription,
                     "unbalanced ')' at column " + std::to_string(open + 2 + i) + " in '" + s + "'");
    if (c == ';' && depth == 0) {
      segments.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (depth != 0) throw MapError(MapErrorCode::InvalidDescription, "unbalanced '(' in '" + s + "'");
  segments.push_back(trim(cur));
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const std::string& seg = segments[i];
    if (seg.empty()) continue;
    const auto eq = seg.find('=');
    if (eq == std::string::npos) {
      if (i != 0) throw MapError(MapErrorCode::InvalidDescription, "expected key=value, got '" + seg + "'");
      std::string item;
      for (char c : seg + ",") {
        if (c == ',') {
          out.positional.push_back(trim(item));
          item.clear();
        } else {
          item.push_back(c);
        }
      }
    } else {
      out.named[trim(seg.substr(0, eq))] = trim(seg.substr(eq + 1));
    }
  }
  return out;
}

}  // namespace neumaps
