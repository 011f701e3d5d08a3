#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace stepdown {

// Exact rational arithmetic on 64-bit integers. Index computations such as
// floor(gamma*i) and ceil(m/gamma) go wrong in binary floating point at
// boundary cases (gamma=0.1, s=10), so every such quantity is derived from a
// Rational. Intermediates use 128-bit products; overflow throws.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t num, std::int64_t den);

    // Accepts "0.1", ".25", "3", "1/3". Throws std::invalid_argument on
    // anything else or on more than 18 fractional digits.
    static Rational parse(std::string_view text);
    // Same grammar minus the fraction form; the CLI only takes decimals.
    static Rational parse_decimal(std::string_view text);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const;
    bool operator<=(const Rational& o) const { return *this < o || *this == o; }
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator>=(const Rational& o) const { return o <= *this; }

    // floor(*this * n) for n >= 0, exact.
    std::int64_t floor_mul(std::int64_t n) const;
    // ceil(m / *this) for m >= 0; requires a positive value.
    std::int64_t ceil_div_into(std::int64_t m) const;
    // floor of the value itself.
    std::int64_t floor() const;

    double to_double() const;
    std::string str() const;

    static Rational from_int(std::int64_t n) { return Rational(n, 1); }

private:
    std::int64_t num_;
    std::int64_t den_;  // always > 0, gcd(|num|, den) == 1

    static Rational make(__int128 num, __int128 den);
};

}  // namespace stepdown
