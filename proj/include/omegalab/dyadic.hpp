#pragma once
// Dyadic: exact nonnegative rational numerator / 2^exponent, kept canonical
// (numerator odd, or zero with exponent 0).

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <string>

#include "errors.hpp"
#include "integer.hpp"

namespace omegalab {

class Dyadic {
public:
    Dyadic() = default;

    Dyadic(PosInt numerator, std::uint64_t exponent) : num_(std::move(numerator)), exp_(exponent) {
        if (num_ < 0) throw DomainError("Dyadic numerator must be nonnegative");
        normalize();
    }

    /// 2^-k
    static Dyadic inverse_pow2(std::uint64_t k) { return Dyadic(PosInt(1), k); }

    [[nodiscard]] const PosInt& numerator() const noexcept { return num_; }
    [[nodiscard]] std::uint64_t exponent() const noexcept { return exp_; }
    [[nodiscard]] bool is_zero() const noexcept { return num_.is_zero(); }

    Dyadic& operator+=(const Dyadic& rhs) {
        if (exp_ >= rhs.exp_) {
            num_ += rhs.num_ << static_cast<unsigned>(exp_ - rhs.exp_);
        } else {
            num_ = (num_ << static_cast<unsigned>(rhs.exp_ - exp_)) + rhs.num_;
            exp_ = rhs.exp_;
        }
        normalize();
        return *this;
    }

    /// Exact subtraction; a negative result is a DomainError.
    Dyadic& operator-=(const Dyadic& rhs) {
        const std::uint64_t e = std::max(exp_, rhs.exp_);
        PosInt a = num_ << static_cast<unsigned>(e - exp_);
        PosInt b = rhs.num_ << static_cast<unsigned>(e - rhs.exp_);
        if (a < b) throw DomainError("Dyadic subtraction would be negative");
        num_ = a - b;
        exp_ = e;
        normalize();
        return *this;
    }

    /// Multiplies by 2^-k.
    [[nodiscard]] Dyadic scaled_down(std::uint64_t k) const { return Dyadic(num_, exp_ + k); }

    friend Dyadic operator+(Dyadic a, const Dyadic& b) { return a += b; }
    friend Dyadic operator-(Dyadic a, const Dyadic& b) { return a -= b; }

    friend bool operator==(const Dyadic&, const Dyadic&) = default;

    friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
        const std::uint64_t e = std::max(a.exp_, b.exp_);
        const PosInt lhs = a.num_ << static_cast<unsigned>(e - a.exp_);
        const PosInt rhs = b.num_ << static_cast<unsigned>(e - b.exp_);
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    [[nodiscard]] double to_double() const {
        return num_.convert_to<double>() * std::ldexp(1.0, -static_cast<int>(exp_));
    }

    /// "13/2^4"; integers print without a denominator.
    [[nodiscard]] std::string to_exact_string() const {
        if (exp_ == 0) return num_.str();
        return num_.str() + "/2^" + std::to_string(exp_);
    }

    /// Decimal expansion truncated (not rounded) to `digits` fractional digits.
    [[nodiscard]] std::string to_decimal(unsigned digits) const {
        PosInt scale = 1;
        for (unsigned i = 0; i < digits; ++i) scale *= 10;
        const PosInt scaled = (num_ * scale) >> static_cast<unsigned>(exp_);
        const PosInt whole = scaled / scale;
        std::string frac = PosInt(scaled % scale).str();
        if (digits == 0) return whole.str();
        frac.insert(0, digits - frac.size(), '0');
        return whole.str() + "." + frac;
    }

private:
    void normalize() {
        if (num_.is_zero()) {
            exp_ = 0;
            return;
        }
        const auto shift = static_cast<std::uint64_t>(boost::multiprecision::lsb(num_));
        const std::uint64_t k = std::min(shift, exp_);
        if (k > 0) {
            num_ >>= static_cast<unsigned>(k);
            exp_ -= k;
        }
    }

    PosInt num_ = 0;
    std::uint64_t exp_ = 0;
};

}  // namespace omegalab
