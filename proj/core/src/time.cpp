#include "sdf/time.hpp"

#include <charconv>

#include "sdf/error.hpp"

namespace sdf {

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
    std::int64_t v = 0;
    if (s.empty())
        throw Error(ErrorKind::invalid_argument, "malformed time '" + std::string(whole) + "'");
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw Error(ErrorKind::invalid_argument, "malformed time '" + std::string(whole) + "'");
    return v;
}

}  // namespace

Time parse_time(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Time(parse_int(text, text));
    std::int64_t num = parse_int(text.substr(0, slash), text);
    std::string_view den_text = text.substr(slash + 1);
    if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+'))
        throw Error(ErrorKind::invalid_argument, "malformed time '" + std::string(text) + "'");
    std::int64_t den = parse_int(den_text, text);
    if (den == 0)
        throw Error(ErrorKind::invalid_argument, "zero denominator in time '" + std::string(text) + "'");
    return Time(num, den);
}

std::string to_string(const Time& t) {
    if (t.denominator() == 1) return std::to_string(t.numerator());
    return std::to_string(t.numerator()) + "/" + std::to_string(t.denominator());
}

}  // namespace sdf
