#include "pdm/rational.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace pdm {

namespace {

using i128 = __int128;

constexpr long long kMax = std::numeric_limits<long long>::max();

long long narrow(i128 v) {
    if (v > static_cast<i128>(kMax) || v < -static_cast<i128>(kMax))
        throw std::overflow_error("rational overflow");
    return static_cast<long long>(v);
}

i128 iabs(i128 v) { return v < 0 ? -v : v; }

i128 gcd128(i128 a, i128 b) {
    a = iabs(a);
    b = iabs(b);
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// Exact integer square root, or -1 if not a perfect square.
long long isqrt_exact(long long x) {
    if (x < 0) return -1;
    auto r = static_cast<long long>(std::llround(std::sqrt(static_cast<double>(x))));
    while (r > 0 && static_cast<i128>(r) * r > x) --r;
    while (static_cast<i128>(r + 1) * (r + 1) <= x) ++r;
    return static_cast<i128>(r) * r == x ? r : -1;
}

} // namespace

Rational::Rational(long long num, long long den) : num_(num), den_(den) {
    if (den_ == 0) throw std::invalid_argument("rational with zero denominator");
    if (den_ < 0) {
        num_ = narrow(-static_cast<i128>(num_));
        den_ = narrow(-static_cast<i128>(den_));
    }
    long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
}

Rational Rational::from_double(double x) {
    if (!std::isfinite(x)) throw std::overflow_error("non-finite value has no rational form");
    if (x == 0.0) return Rational(0);
    int exp = 0;
    double mant = std::frexp(x, &exp); // x = mant * 2^exp, |mant| in [0.5, 1)
    auto m = static_cast<long long>(std::ldexp(mant, 53));
    exp -= 53;
    while (m != 0 && (m % 2) == 0) {
        m /= 2;
        ++exp;
    }
    if (exp >= 0) {
        if (exp > 62) throw std::overflow_error("rational overflow converting double");
        return Rational(narrow(static_cast<i128>(m) << exp), 1);
    }
    if (exp < -62) throw std::overflow_error("rational overflow converting double");
    return Rational(m, narrow(static_cast<i128>(1) << -exp));
}

Rational Rational::parse(std::string_view text) {
    std::size_t i = 0;
    auto fail = [&](const char* why) -> Rational {
        throw std::invalid_argument("bad rational literal '" + std::string(text) + "': " + why);
    };
    auto skip_ws = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };

    skip_ws();
    bool neg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) neg = text[i++] == '-';

    i128 mant = 0;
    int digits = 0, frac_digits = 0;
    bool seen_dot = false;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            mant = mant * 10 + (c - '0');
            if (mant > static_cast<i128>(kMax)) return fail("too many digits");
            ++digits;
            if (seen_dot) ++frac_digits;
        } else if (c == '.' && !seen_dot) {
            seen_dot = true;
        } else {
            break;
        }
    }
    if (digits == 0) return fail("no digits");

    long long exp10 = -frac_digits;
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        bool eneg = false;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) eneg = text[i++] == '-';
        if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) return fail("bad exponent");
        long long e = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            e = e * 10 + (text[i++] - '0');
            if (e > 64) return fail("exponent out of range");
        }
        exp10 += eneg ? -e : e;
    }

    Rational value(narrow(neg ? -mant : mant), 1);
    Rational ten(10);
    for (long long k = 0; k < exp10; ++k) value *= ten;
    for (long long k = 0; k > exp10; --k) value /= ten;

    if (i < text.size() && text[i] == '/') {
        if (seen_dot || exp10 != 0) return fail("mixed fraction and decimal form");
        ++i;
        skip_ws();
        bool dneg = false;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) dneg = text[i++] == '-';
        i128 den = 0;
        int dd = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            den = den * 10 + (text[i++] - '0');
            if (den > static_cast<i128>(kMax)) return fail("denominator too large");
            ++dd;
        }
        if (dd == 0 || den == 0) return fail("bad denominator");
        value = Rational(value.num(), narrow(dneg ? -den : den));
    }
    skip_ws();
    if (i != text.size()) return fail("trailing characters");
    return value;
}

Rational Rational::operator-() const {
    Rational r;
    r.num_ = narrow(-static_cast<i128>(num_));
    r.den_ = den_;
    return r;
}

Rational& Rational::operator+=(const Rational& o) {
    i128 n = static_cast<i128>(num_) * o.den_ + static_cast<i128>(o.num_) * den_;
    i128 d = static_cast<i128>(den_) * o.den_;
    i128 g = gcd128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    num_ = narrow(n);
    den_ = narrow(d);
    return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
    i128 n = static_cast<i128>(num_) * o.num_;
    i128 d = static_cast<i128>(den_) * o.den_;
    i128 g = gcd128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    num_ = narrow(n);
    den_ = narrow(d);
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.num_ == 0) throw std::invalid_argument("rational division by zero");
    Rational inv;
    inv.num_ = o.num_ < 0 ? -o.den_ : o.den_;
    inv.den_ = o.num_ < 0 ? narrow(-static_cast<i128>(o.num_)) : o.num_;
    return *this *= inv;
}

bool operator<(const Rational& a, const Rational& b) {
    return static_cast<i128>(a.num_) * b.den_ < static_cast<i128>(b.num_) * a.den_;
}

std::optional<Rational> Rational::sqrt_exact() const {
    if (num_ < 0) return std::nullopt;
    long long sn = isqrt_exact(num_);
    long long sd = isqrt_exact(den_);
    if (sn < 0 || sd < 0) return std::nullopt;
    return Rational(sn, sd);
}

std::string Rational::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

} // namespace pdm
