#include "kt/mompoly.hpp"

#include <sstream>

namespace kt {

MomPoly mom_monomial(const MExp& e, const RatFunc& c) {
    MomPoly p;
    p.add_term(e, c);
    return p;
}

MomPoly operator*(const MomPoly& a, const MomPoly& b) { return mixed_mul(a, b); }

MomPoly mom_pow(const MomPoly& a, unsigned n) {
    MomPoly r = mom_monomial(MExp{}, RatFunc(Rat(1)));
    MomPoly base = a;
    while (n) {
        if (n & 1) r = r * base;
        base = base * base;
        n >>= 1;
    }
    return r;
}

std::string mom_str(const MomPoly& p) {
    if (p.is_zero()) return "0";
    static const char* names[4] = {"px", "py", "pphi", "pt"};
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : p.terms()) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")";
        for (int i = 0; i < 4; ++i) {
            if (e.e[i] > 0) {
                os << "*" << names[i];
                if (e.e[i] > 1) os << "^" << e.e[i];
            }
        }
    }
    return os.str();
}

}  // namespace kt
