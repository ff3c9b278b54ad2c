#include "kt/rat.hpp"

namespace kt {

Rat Rat::from_string(std::string_view s) {
    size_t start = 0, end = s.size();
    while (start < end && std::isspace((unsigned char)s[start])) ++start;
    while (end > start && std::isspace((unsigned char)s[end - 1])) --end;
    s = s.substr(start, end - start);
    if (s.empty()) throw parse_error("empty rational literal");
    auto slash = s.find('/');
    auto check_int = [](std::string_view t) {
        if (t.empty()) return false;
        size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit((unsigned char)t[i])) return false;
        return true;
    };
    if (slash == std::string_view::npos) {
        if (!check_int(s)) throw parse_error("bad rational literal: " + std::string(s));
        return Rat(Int(std::string(s)));
    }
    auto ns = s.substr(0, slash), ds = s.substr(slash + 1);
    if (!check_int(ns) || !check_int(ds))
        throw parse_error("bad rational literal: " + std::string(s));
    Int d{std::string(ds)};
    if (sgn(d) == 0) throw parse_error("zero denominator in literal: " + std::string(s));
    return Rat(Int(std::string(ns)), d);
}

std::string Rat::str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::string point_str(const Point& p) {
    return "(" + p.first.str() + ", " + p.second.str() + ")";
}

}  // namespace kt
