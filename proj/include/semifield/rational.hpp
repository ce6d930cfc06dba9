#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>

#include "semifield/errors.hpp"

namespace semifield {

/// Non-negative fraction kept in lowest terms.
class Fraction {
public:
    constexpr Fraction() = default;
    Fraction(std::uint64_t num, std::uint64_t den = 1) : num_(num), den_(den) {
        if (den == 0) throw Error("fraction with zero denominator");
        reduce();
    }

    std::uint64_t num() const noexcept { return num_; }
    std::uint64_t den() const noexcept { return den_; }
    bool is_integer() const noexcept { return den_ == 1; }

    Fraction& operator+=(const Fraction& o) {
        const std::uint64_t g = std::gcd(den_, o.den_);
        const std::uint64_t l = den_ / g * o.den_;
        num_ = num_ * (l / den_) + o.num_ * (l / o.den_);
        den_ = l;
        reduce();
        return *this;
    }
    friend Fraction operator+(Fraction a, const Fraction& b) { return a += b; }

    /// Exact quotient a / b; b must be nonzero.
    friend Fraction operator/(const Fraction& a, const Fraction& b) {
        if (b.num_ == 0) throw Error("division by zero fraction");
        // (a.n / a.d) / (b.n / b.d) = (a.n * b.d) / (a.d * b.n), cross-reduced first
        const std::uint64_t g1 = std::gcd(a.num_, b.num_);
        const std::uint64_t g2 = std::gcd(b.den_, a.den_);
        return Fraction((a.num_ / g1) * (b.den_ / g2), (a.den_ / g2) * (b.num_ / g1));
    }

    friend bool operator==(const Fraction&, const Fraction&) = default;
    friend std::strong_ordering operator<=>(const Fraction& a, const Fraction& b) {
        const unsigned __int128 l = static_cast<unsigned __int128>(a.num_) * b.den_;
        const unsigned __int128 r = static_cast<unsigned __int128>(b.num_) * a.den_;
        return l <=> r;
    }

    std::string str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

private:
    void reduce() {
        if (num_ == 0) {
            den_ = 1;
            return;
        }
        const std::uint64_t g = std::gcd(num_, den_);
        num_ /= g;
        den_ /= g;
    }

    std::uint64_t num_ = 0;
    std::uint64_t den_ = 1;
};

inline std::ostream& operator<<(std::ostream& os, const Fraction& f) { return os << f.str(); }

}  // namespace semifield
