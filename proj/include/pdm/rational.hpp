#ifndef PDM_RATIONAL_HPP
#define PDM_RATIONAL_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace pdm {

/// Exact rational number over 64-bit integers, always stored normalized
/// (positive denominator, gcd(|num|, den) = 1). Arithmetic that would
/// overflow the 64-bit representation throws std::overflow_error; callers
/// that can live with approximate values fall back to doubles.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {} // NOLINT: implicit by design
    Rational(long long num, long long den);

    /// Exact conversion: every finite double is a dyadic rational.
    static Rational from_double(double x);

    /// Accepts "p/q", integers, and decimal literals with optional exponent
    /// ("-0.25", "7/16", "2e-3"), all converted exactly.
    static Rational parse(std::string_view text);

    long long num() const { return num_; }
    long long den() const { return den_; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    bool is_zero() const { return num_ == 0; }
    int sign() const { return num_ > 0 ? 1 : num_ < 0 ? -1 : 0; }

    Rational operator-() const;
    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b);
    friend bool operator<=(const Rational& a, const Rational& b) { return a < b || a == b; }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return b <= a; }

    /// Exact square root if this is a perfect square of a rational, else nullopt.
    /// Negative values yield nullopt.
    std::optional<Rational> sqrt_exact() const;

    /// "p/q", or just "p" when the denominator is 1.
    std::string str() const;

private:
    long long num_;
    long long den_;
};

} // namespace pdm

#endif
