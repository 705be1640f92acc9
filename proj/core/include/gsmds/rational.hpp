#pragma once
// Exact rational arithmetic for gold answers and extracted quantities.
// Scoring compares answers by exact equality, so no floating point anywhere
// in the value path.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gsmds {

struct rational_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Rational {
  public:
    Rational() = default;
    Rational(std::int64_t value) : num_(value), den_(1) {}
    Rational(std::int64_t num, std::int64_t den);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_integer() const { return den_ == 1; }
    bool is_zero() const { return num_ == 0; }

    Rational operator-() const { return Rational(-num_, den_); }
    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    // Throws rational_error on division by zero.
    Rational operator/(const Rational& o) const;

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const;

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    // "61", "-3/4", "2.5". Integers render without a denominator.
    std::string str() const;

    // Accepts integers, decimals ("2.5", ".3"), fractions ("1/2") and an
    // optional leading sign. Thousands separators and a trailing '%' are
    // tolerated and stripped. Returns nullopt when the text is not a number.
    static std::optional<Rational> parse(std::string_view text);

  private:
    void normalize();

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

}  // namespace gsmds
