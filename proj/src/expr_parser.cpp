#include "kt/expr_parser.hpp"

#include <cctype>

namespace kt {

namespace {

struct Parser {
    std::string_view s;
    size_t pos = 0;
    const std::string& xn;
    const std::string& yn;

    [[noreturn]] void fail(const std::string& msg) const {
        throw parse_error("expression error at offset " + std::to_string(pos) + ": " + msg);
    }

    void skip_ws() {
        while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }

    RatFunc parse() {
        RatFunc r = expr();
        skip_ws();
        if (pos != s.size()) fail("trailing input");
        return r;
    }

    RatFunc expr() {
        RatFunc acc = term();
        while (true) {
            if (eat('+'))
                acc += term();
            else if (eat('-'))
                acc -= term();
            else
                return acc;
        }
    }

    RatFunc term() {
        RatFunc acc = factor();
        while (true) {
            if (eat('*'))
                acc *= factor();
            else if (eat('/')) {
                RatFunc d = factor();
                if (d.is_zero()) fail("division by zero");
                acc /= d;
            } else
                return acc;
        }
    }

    RatFunc factor() {
        if (eat('-')) return -factor();
        if (eat('+')) return factor();
        RatFunc base = atom();
        skip_ws();
        if (eat('^')) {
            skip_ws();
            if (pos >= s.size() || !std::isdigit((unsigned char)s[pos]))
                fail("expected nonnegative integer exponent");
            unsigned long e = 0;
            while (pos < s.size() && std::isdigit((unsigned char)s[pos])) {
                e = e * 10 + (s[pos] - '0');
                if (e > 1000) fail("exponent too large");
                ++pos;
            }
            return base.pow((unsigned)e);
        }
        return base;
    }

    RatFunc atom() {
        skip_ws();
        if (pos >= s.size()) fail("unexpected end of input");
        char c = s[pos];
        if (c == '(') {
            ++pos;
            RatFunc r = expr();
            if (!eat(')')) fail("expected ')'");
            return r;
        }
        if (std::isdigit((unsigned char)c)) {
            size_t start = pos;
            while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
            return RatFunc(Rat(Int(std::string(s.substr(start, pos - start)))));
        }
        if (std::isalpha((unsigned char)c) || c == '_') {
            size_t start = pos;
            while (pos < s.size() &&
                   (std::isalnum((unsigned char)s[pos]) || s[pos] == '_'))
                ++pos;
            std::string name(s.substr(start, pos - start));
            if (name == xn) return RatFunc::variable(0);
            if (name == yn) return RatFunc::variable(1);
            fail("unknown variable '" + name + "' (allowed: " + xn + ", " + yn + ")");
        }
        fail(std::string("unexpected character '") + c + "'");
    }
};

}  // namespace

RatFunc parse_expression(std::string_view text, const std::string& xname,
                         const std::string& yname) {
    Parser p{text, 0, xname, yname};
    return p.parse();
}

}  // namespace kt
