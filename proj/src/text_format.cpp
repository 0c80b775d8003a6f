#include "qwalk/text_format.hpp"

#include <charconv>
#include <stdexcept>
#include <system_error>

#include "qwalk/types.hpp"

namespace qwalk {

std::string format_double(double value) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value,
                                   std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

double parse_angle(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty angle");
    std::string body = text;
    bool in_pi_units = false;
    if (body.size() >= 2 && body.compare(body.size() - 2, 2, "pi") == 0) {
        in_pi_units = true;
        body.erase(body.size() - 2);
        if (body.empty() || body == "+" || body == "-") body += "1";
    }
    double value = 0.0;
    const char* first = body.data();
    const char* last = first + body.size();
    if (*first == '+') ++first;  // from_chars rejects a leading plus
    const auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc() || res.ptr != last) {
        throw std::invalid_argument("malformed angle: '" + text + "'");
    }
    return in_pi_units ? value * pi : value;
}

}  // namespace qwalk
