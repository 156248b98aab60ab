#include "equilib/rational.hpp"

#include <cstdlib>
#include <ostream>

namespace equilib {

namespace {

using int128 = __int128;
using uint128 = unsigned __int128;

std::int64_t narrow(int128 v, const char* what) {
    if (v > INT64_MAX || v < INT64_MIN)
        throw InputError(std::string("rational overflow in ") + what);
    return static_cast<std::int64_t>(v);
}

uint128 uabs128(int128 v) {
    return v < 0 ? -static_cast<uint128>(v) : static_cast<uint128>(v);
}

uint128 gcd128(uint128 a, uint128 b) {
    while (b != 0) {
        uint128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// Reduce num/den (den != 0) to canonical form, den > 0.
std::pair<std::int64_t, std::int64_t> reduce(int128 num, int128 den, const char* what) {
    if (den < 0) {
        num = -num;
        den = -den;
    }
    if (num == 0) return {0, 1};
    uint128 g = gcd128(uabs128(num), uabs128(den));
    num /= static_cast<int128>(g);
    den /= static_cast<int128>(g);
    return {narrow(num, what), narrow(den, what)};
}

} // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw InputError("rational with zero denominator");
    auto [n, d] = reduce(num, den, "construction");
    num_ = n;
    den_ = d;
}

Rational operator+(const Rational& a, const Rational& b) {
    int128 num = int128(a.num_) * b.den_ + int128(b.num_) * a.den_;
    int128 den = int128(a.den_) * b.den_;
    auto [n, d] = reduce(num, den, "addition");
    return Rational(n, d, Rational::normalized_tag{});
}

Rational operator-(const Rational& a, const Rational& b) {
    int128 num = int128(a.num_) * b.den_ - int128(b.num_) * a.den_;
    int128 den = int128(a.den_) * b.den_;
    auto [n, d] = reduce(num, den, "subtraction");
    return Rational(n, d, Rational::normalized_tag{});
}

Rational operator*(const Rational& a, const Rational& b) {
    auto [n, d] = reduce(int128(a.num_) * b.num_, int128(a.den_) * b.den_, "multiplication");
    return Rational(n, d, Rational::normalized_tag{});
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw InputError("rational division by zero");
    auto [n, d] = reduce(int128(a.num_) * b.den_, int128(a.den_) * b.num_, "division");
    return Rational(n, d, Rational::normalized_tag{});
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int128 lhs = int128(a.num_) * b.den_;
    int128 rhs = int128(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

Rational Rational::parse(const std::string& text) {
    if (text.empty()) throw InputError("empty rational literal");
    auto parse_int = [](const std::string& s) -> std::int64_t {
        if (s.empty()) throw InputError("empty integer in rational literal");
        std::size_t pos = 0;
        long long v = 0;
        try {
            v = std::stoll(s, &pos);
        } catch (const std::exception&) {
            throw InputError("bad rational literal '" + s + "'");
        }
        if (pos != s.size()) throw InputError("bad rational literal '" + s + "'");
        return v;
    };

    auto slash = text.find('/');
    if (slash != std::string::npos) {
        std::int64_t n = parse_int(text.substr(0, slash));
        std::int64_t d = parse_int(text.substr(slash + 1));
        return Rational(n, d);
    }
    auto dot = text.find('.');
    if (dot != std::string::npos) {
        std::string whole = text.substr(0, dot);
        std::string frac = text.substr(dot + 1);
        if (frac.empty()) throw InputError("bad decimal literal '" + text + "'");
        for (char c : frac)
            if (c < '0' || c > '9') throw InputError("bad decimal literal '" + text + "'");
        bool negative = !whole.empty() && whole[0] == '-';
        if (whole == "-" || whole == "+" || whole.empty()) whole += "0";
        std::int64_t ip = parse_int(whole);
        std::int64_t den = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) {
            if (den > INT64_MAX / 10) throw InputError("decimal literal too long '" + text + "'");
            den *= 10;
        }
        std::int64_t fp = parse_int(frac);
        int128 num = int128(ip) * den + (negative ? -int128(fp) : int128(fp));
        auto [n, d] = reduce(num, den, "decimal literal");
        return Rational(n, d);
    }
    return Rational(parse_int(text));
}

std::string Rational::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

ExtRational ExtRational::parse(const std::string& text) {
    if (text == "+inf" || text == "inf") return pos_inf();
    if (text == "-inf") return neg_inf();
    return ExtRational(Rational::parse(text));
}

std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b) {
    using K = ExtRational::Kind;
    if (a.kind_ != b.kind_)
        return static_cast<int>(a.kind_) <=> static_cast<int>(b.kind_);
    if (a.kind_ == K::finite) return a.value_ <=> b.value_;
    return std::strong_ordering::equal;
}

std::string ExtRational::str() const {
    switch (kind_) {
        case Kind::pos_inf: return "+inf";
        case Kind::neg_inf: return "-inf";
        default: return value_.str();
    }
}

std::ostream& operator<<(std::ostream& os, const ExtRational& v) { return os << v.str(); }

} // namespace equilib
