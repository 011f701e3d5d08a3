#include "stepdown/rational.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace stepdown {

namespace {

__int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::int64_t narrow(__int128 v) {
    if (v > std::numeric_limits<std::int64_t>::max() ||
        v < std::numeric_limits<std::int64_t>::min()) {
        throw std::overflow_error("rational arithmetic overflow");
    }
    return static_cast<std::int64_t>(v);
}

// floor(a / b) for b > 0, correct for negative a.
__int128 floor_div(__int128 a, __int128 b) {
    __int128 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

std::int64_t parse_digits(std::string_view s) {
    if (s.size() > 18) throw std::invalid_argument("number has too many digits: " + std::string(s));
    std::int64_t v = 0;
    for (char c : s) v = v * 10 + (c - '0');
    return v;
}

}  // namespace

Rational Rational::make(__int128 num, __int128 den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    __int128 g = gcd128(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    Rational r;
    r.num_ = narrow(num);
    r.den_ = narrow(den);
    return r;
}

Rational::Rational(std::int64_t num, std::int64_t den) {
    *this = make(num, den);
}

Rational Rational::parse(std::string_view text) {
    auto slash = text.find('/');
    if (slash != std::string_view::npos) {
        std::string_view n = text.substr(0, slash);
        std::string_view d = text.substr(slash + 1);
        if (!all_digits(n) || !all_digits(d)) {
            throw std::invalid_argument("bad rational literal: " + std::string(text));
        }
        return Rational(parse_digits(n), parse_digits(d));
    }
    return parse_decimal(text);
}

Rational Rational::parse_decimal(std::string_view text) {
    std::string_view rest = text;
    bool neg = false;
    if (!rest.empty() && (rest[0] == '+' || rest[0] == '-')) {
        neg = rest[0] == '-';
        rest.remove_prefix(1);
    }
    auto dot = rest.find('.');
    std::string_view whole = dot == std::string_view::npos ? rest : rest.substr(0, dot);
    std::string_view frac = dot == std::string_view::npos ? std::string_view{} : rest.substr(dot + 1);
    if (whole.empty() && frac.empty()) {
        throw std::invalid_argument("bad decimal literal: " + std::string(text));
    }
    if (!whole.empty() && !all_digits(whole)) {
        throw std::invalid_argument("bad decimal literal: " + std::string(text));
    }
    if (!frac.empty() && !all_digits(frac)) {
        throw std::invalid_argument("bad decimal literal: " + std::string(text));
    }
    std::int64_t w = whole.empty() ? 0 : parse_digits(whole);
    std::int64_t f = frac.empty() ? 0 : parse_digits(frac);
    __int128 den = 1;
    for (size_t i = 0; i < frac.size(); ++i) den *= 10;
    __int128 num = static_cast<__int128>(w) * den + f;
    if (neg) num = -num;
    return make(num, den);
}

Rational Rational::operator+(const Rational& o) const {
    return make(static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_,
                static_cast<__int128>(den_) * o.den_);
}

Rational Rational::operator-(const Rational& o) const {
    return make(static_cast<__int128>(num_) * o.den_ - static_cast<__int128>(o.num_) * den_,
                static_cast<__int128>(den_) * o.den_);
}

Rational Rational::operator*(const Rational& o) const {
    return make(static_cast<__int128>(num_) * o.num_, static_cast<__int128>(den_) * o.den_);
}

Rational Rational::operator/(const Rational& o) const {
    if (o.num_ == 0) throw std::invalid_argument("rational division by zero");
    return make(static_cast<__int128>(num_) * o.den_, static_cast<__int128>(den_) * o.num_);
}

bool Rational::operator<(const Rational& o) const {
    return static_cast<__int128>(num_) * o.den_ < static_cast<__int128>(o.num_) * den_;
}

std::int64_t Rational::floor_mul(std::int64_t n) const {
    return narrow(floor_div(static_cast<__int128>(num_) * n, den_));
}

std::int64_t Rational::ceil_div_into(std::int64_t m) const {
    if (num_ <= 0) throw std::domain_error("ceil_div_into requires a positive rational");
    if (m < 0) throw std::domain_error("ceil_div_into requires m >= 0");
    __int128 num = static_cast<__int128>(m) * den_;
    return narrow(floor_div(num + num_ - 1, num_));
}

std::int64_t Rational::floor() const {
    return narrow(floor_div(num_, den_));
}

double Rational::to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

}  // namespace stepdown
