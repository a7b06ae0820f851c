#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace sdf {

// Exact time point. All time comparisons go through rational arithmetic.
using Time = boost::rational<std::int64_t>;

// Accepts "p", "p/q" and "-p/q" (negatives are rejected later by TimeAxis).
Time parse_time(std::string_view text);
std::string to_string(const Time& t);

}  // namespace sdf
