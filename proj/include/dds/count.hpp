#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace dds {

// Solution counts are unbounded; #P-sized instances overflow 64 bits quickly.
using Count = boost::multiprecision::cpp_int;

inline std::string to_decimal(const Count& c) { return c.str(); }

inline Count from_decimal(const std::string& text) { return Count(text); }

// ceil(num / den) for den > 0.
inline Count ceil_div(const Count& num, const Count& den) {
  Count q = num / den;
  if (q * den < num) ++q;
  return q;
}

}  // namespace dds
