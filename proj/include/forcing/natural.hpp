#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace forcing {

/// Arbitrary-precision non-negative integer used for sequence entries and codes.
using Natural = boost::multiprecision::cpp_int;

std::string to_string(const Natural& value);

/// Parses a decimal natural; throws forcing::Error(Parse) on anything else.
Natural parse_natural(std::string_view text);

}  // namespace forcing
