#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

#include "equilib/errors.hpp"

namespace equilib {

/// Exact rational number. Always normalized: den > 0, gcd(|num|, den) == 1.
/// Arithmetic goes through 128-bit intermediates and throws if a result
/// leaves the 64-bit range after reduction; results are exact or loud.
class Rational {
public:
    constexpr Rational() : num_(0), den_(1) {}
    Rational(std::int64_t n) : num_(n), den_(1) {} // NOLINT: implicit by design
    Rational(std::int64_t num, std::int64_t den);

    /// Accepts "p/q", an integer literal, or a decimal literal ("-3.25").
    static Rational parse(const std::string& text);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return num_ < 0 ? -1 : (num_ > 0 ? 1 : 0); }

    Rational operator-() const { return Rational(-num_, den_, normalized_tag{}); }

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    /// "p/q" for proper fractions, plain integer text otherwise.
    std::string str() const;

private:
    struct normalized_tag {};
    Rational(std::int64_t num, std::int64_t den, normalized_tag) : num_(num), den_(den) {}

    std::int64_t num_;
    std::int64_t den_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Rational extended with +inf / -inf. Values are ordered and compared, never
/// summed, so no indeterminate forms arise.
class ExtRational {
public:
    constexpr ExtRational() : kind_(Kind::finite), value_() {}
    ExtRational(Rational r) : kind_(Kind::finite), value_(r) {} // NOLINT
    ExtRational(std::int64_t n) : kind_(Kind::finite), value_(n) {} // NOLINT

    static ExtRational pos_inf() { return ExtRational(Kind::pos_inf); }
    static ExtRational neg_inf() { return ExtRational(Kind::neg_inf); }

    /// Accepts "+inf"/"-inf"/"inf" or any finite rational literal.
    static ExtRational parse(const std::string& text);

    bool is_finite() const { return kind_ == Kind::finite; }
    bool is_pos_inf() const { return kind_ == Kind::pos_inf; }
    bool is_neg_inf() const { return kind_ == Kind::neg_inf; }

    const Rational& finite_value() const {
        if (!is_finite()) throw PreconditionError("extended rational is infinite");
        return value_;
    }

    friend bool operator==(const ExtRational& a, const ExtRational& b) {
        return a.kind_ == b.kind_ && (a.kind_ != Kind::finite || a.value_ == b.value_);
    }
    friend std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b);

    std::string str() const;

private:
    enum class Kind { neg_inf, finite, pos_inf };
    explicit ExtRational(Kind k) : kind_(k), value_() {}

    Kind kind_;
    Rational value_;
};

std::ostream& operator<<(std::ostream& os, const ExtRational& v);

} // namespace equilib
