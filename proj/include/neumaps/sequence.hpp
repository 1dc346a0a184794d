#pragma once

// Eventually periodic sequences: a finite prefix followed by a repeating
// period. These are the finite stand-ins for the infinite parameter
// sequences (h-bits, bulb counts, decorations, allocations).

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace neumaps {

template <class T>
struct EventuallyPeriodic {
  std::vector<T> prefix;
  std::vector<T> period;

  const T& at(std::size_t i) const {
    if (i < prefix.size()) return prefix[i];
    if (period.empty()) throw std::out_of_range("sequence has no periodic tail");
    return period[(i - prefix.size()) % period.size()];
  }

  bool operator==(const EventuallyPeriodic&) const = default;

  static EventuallyPeriodic constant(T v) { return {{}, {std::move(v)}}; }
};

using BitSource = EventuallyPeriodic<int>;
using IntSource = EventuallyPeriodic<std::int64_t>;

// Sequence grammar:
//   "0110(01)"   prefix 0110, then 01 repeated
//   "0111..."    trailing "..." repeats the last item
//   "2,0,1(3,1)" comma separated items (for multi-digit values)
//   "(1)"        purely periodic
// Without commas every character is one item.
EventuallyPeriodic<std::string> parse_sequence(std::string_view text);
BitSource parse_bits(std::string_view text);
IntSource parse_ints(std::string_view text);

std::string format_bits(const BitSource& s);
std::string format_ints(const IntSource& s);

}  // namespace neumaps
