#pragma once
// Integer traits used by the codecs: arbitrary-precision PosInt plus the
// built-in unsigned types behind one small interface.

#include <boost/multiprecision/cpp_int.hpp>

#include <bit>
#include <concepts>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace omegalab {

using PosInt = boost::multiprecision::cpp_int;

template <typename T>
concept CodecInteger = std::unsigned_integral<T> || std::same_as<T, PosInt>;

/// Number of significant bits; 0 for zero.
template <std::unsigned_integral T>
constexpr std::uint64_t bit_length(T n) noexcept {
    return static_cast<std::uint64_t>(std::bit_width(n));
}

inline std::uint64_t bit_length(const PosInt& n) {
    if (n.is_zero()) return 0;
    return static_cast<std::uint64_t>(boost::multiprecision::msb(n)) + 1;
}

template <std::unsigned_integral T>
constexpr bool test_bit(T n, std::uint64_t i) noexcept {
    return i < std::numeric_limits<T>::digits && ((n >> i) & T{1}) != 0;
}

inline bool test_bit(const PosInt& n, std::uint64_t i) {
    return boost::multiprecision::bit_test(n, static_cast<unsigned>(i));
}

/// Maximum representable bit length for T; 0 means unbounded.
template <CodecInteger T>
constexpr std::uint64_t max_bits() noexcept {
    if constexpr (std::same_as<T, PosInt>) {
        return 0;
    } else {
        return std::numeric_limits<T>::digits;
    }
}

template <CodecInteger T>
void set_bit(T& n, std::uint64_t i) {
    if constexpr (std::same_as<T, PosInt>) {
        boost::multiprecision::bit_set(n, static_cast<unsigned>(i));
    } else {
        n |= T{1} << i;
    }
}

/// Parses a positive decimal integer; rejects signs, blanks and zero.
inline PosInt parse_positive(std::string_view text) {
    if (text.empty()) throw FormatError("empty integer");
    for (char c : text) {
        if (c < '0' || c > '9') throw FormatError("not a decimal integer: '" + std::string(text) + "'");
    }
    // cpp_int reads a leading 0 as an octal prefix
    const auto first = text.find_first_not_of('0');
    if (first == std::string_view::npos) throw FormatError("integer must be >= 1");
    return PosInt(std::string(text.substr(first)));
}

inline std::string to_decimal(const PosInt& n) { return n.str(); }

}  // namespace omegalab
