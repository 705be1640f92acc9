#include "gsmds/rational.hpp"

#include <cctype>
#include <cstdlib>
#include <numeric>

namespace gsmds {

namespace {

std::int64_t checked(__int128 v, const char* what) {
    if (v > INT64_MAX || v < INT64_MIN) {
        throw rational_error(std::string("rational overflow in ") + what);
    }
    return static_cast<std::int64_t>(v);
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
    if (den_ == 0) throw rational_error("zero denominator");
    normalize();
}

void Rational::normalize() {
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
    if (num_ == 0) den_ = 1;
}

Rational Rational::operator+(const Rational& o) const {
    __int128 n = static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_;
    __int128 d = static_cast<__int128>(den_) * o.den_;
    return Rational(checked(n, "+"), checked(d, "+"));
}

Rational Rational::operator-(const Rational& o) const { return *this + (-o); }

Rational Rational::operator*(const Rational& o) const {
    __int128 n = static_cast<__int128>(num_) * o.num_;
    __int128 d = static_cast<__int128>(den_) * o.den_;
    return Rational(checked(n, "*"), checked(d, "*"));
}

Rational Rational::operator/(const Rational& o) const {
    if (o.num_ == 0) throw rational_error("division by zero");
    __int128 n = static_cast<__int128>(num_) * o.den_;
    __int128 d = static_cast<__int128>(den_) * o.num_;
    return Rational(checked(n, "/"), checked(d, "/"));
}

bool Rational::operator<(const Rational& o) const {
    return static_cast<__int128>(num_) * o.den_ < static_cast<__int128>(o.num_) * den_;
}

std::string Rational::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

std::optional<Rational> Rational::parse(std::string_view text) {
    // Strip whitespace, '$', thousands separators and a trailing '%'.
    std::string s;
    s.reserve(text.size());
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == '$') continue;
        s.push_back(c);
    }
    if (!s.empty() && s.back() == '%') s.pop_back();
    if (s.empty()) return std::nullopt;

    bool negative = false;
    std::size_t i = 0;
    if (s[0] == '+' || s[0] == '-') {
        negative = s[0] == '-';
        i = 1;
    }
    if (i >= s.size()) return std::nullopt;

    auto digits = [&](std::size_t& pos) {
        std::string out;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) out.push_back(s[pos++]);
        return out;
    };

    std::string whole = digits(i);
    std::int64_t num = 0, den = 1;
    if (i < s.size() && s[i] == '/') {
        if (whole.empty()) return std::nullopt;
        ++i;
        std::string d = digits(i);
        if (d.empty() || i != s.size()) return std::nullopt;
        num = std::strtoll(whole.c_str(), nullptr, 10);
        den = std::strtoll(d.c_str(), nullptr, 10);
        if (den == 0) return std::nullopt;
    } else if (i < s.size() && s[i] == '.') {
        ++i;
        std::string frac = digits(i);
        if (i != s.size() || (whole.empty() && frac.empty())) return std::nullopt;
        if (frac.size() > 15) return std::nullopt;
        num = whole.empty() ? 0 : std::strtoll(whole.c_str(), nullptr, 10);
        for (char c : frac) {
            num = num * 10 + (c - '0');
            den *= 10;
        }
    } else {
        if (whole.empty() || i != s.size() || whole.size() > 18) return std::nullopt;
        num = std::strtoll(whole.c_str(), nullptr, 10);
    }
    if (negative) num = -num;
    return Rational(num, den);
}

}  // namespace gsmds
