#include "dop/rational.hpp"

#include <cctype>
#include <ostream>

namespace dop {

Rational Rational::from_string(std::string_view s) {
    if (s.empty()) throw InvalidArgument("empty rational literal");
    auto slash = s.find('/');
    auto parse_int = [](std::string_view t) {
        if (t.empty()) throw InvalidArgument("empty integer literal");
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) throw InvalidArgument("sign without digits");
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i])))
                throw InvalidArgument("bad rational literal: " + std::string(t));
        return mpz_class(std::string(t), 10);
    };
    if (slash == std::string_view::npos) return Rational(parse_int(s));
    mpz_class num = parse_int(s.substr(0, slash));
    mpz_class den = parse_int(s.substr(slash + 1));
    return Rational(num, den);
}

std::string Rational::str() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational pow(const Rational& base, unsigned long e) {
    Rational acc(1);
    Rational b = base;
    while (e) {
        if (e & 1) acc *= b;
        b *= b;
        e >>= 1;
    }
    return acc;
}

Rational pochhammer(const Rational& a, unsigned long m) {
    Rational acc(1);
    Rational t = a;
    for (unsigned long j = 0; j < m; ++j) {
        acc *= t;
        t += Rational(1);
    }
    return acc;
}

Rational factorial(unsigned long n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rational(f);
}

Rational binom_shifted(unsigned long x, const Rational& a) {
    return pochhammer(a + Rational(1), x) / factorial(x);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
}

}  // namespace dop
