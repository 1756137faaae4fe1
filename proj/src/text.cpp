#include "towbandit/text.hpp"

#include <charconv>

namespace towbandit::text {

std::string format_double(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, value,
                                    std::chars_format::general, 15);
  return std::string(buffer, result.ptr);
}

std::string format_fixed(double value, int precision) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, value,
                                    std::chars_format::fixed, precision);
  return std::string(buffer, result.ptr);
}

}  // namespace towbandit::text
